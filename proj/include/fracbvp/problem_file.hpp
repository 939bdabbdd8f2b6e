#pragma once

#include <string>

#include "fracbvp/problem.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp {

// Discretization and iteration settings; every field has a default, so the
// [numerics] section may be partial or absent.
struct NumericsConfig {
  int modes = 256;
  int panels = 64;
  int order = 12;
  NewtonConfig newton;
};

struct OutputConfig {
  std::string path;  // prefix for <prefix>.samples.tsv / .coeffs.tsv / .report.json
  std::string format = "tsv";
};

struct ProblemFile {
  ProblemSpec spec;
  NumericsConfig numerics;
  OutputConfig output;
};

// Declarative problem documents:
//
//   [problem]            # beta, m, r: all required
//   beta = 1.0
//   m = 2
//   r = 2
//   [problem.f]          # expressions f1..fm over t, x1..xm, u1..ur
//   f1 = "0.1*sin(x2) + t^(-1/3)*exp(u1)"
//   f2 = "0.1*cos(x1) + t*u2"
//   [problem.u]          # parameter trajectory u1..ur, t only
//   u1 = "0"
//   u2 = "0"
//   [problem.growth]     # optional majorant a(t) for the coercivity check
//   a = "0.25"
//   [numerics]           # optional, defaults shown in NumericsConfig
//   modes = 128
//   [output]             # optional
//   path = "example_run"
//
// '#' starts a comment. Strings are double-quoted. Structural problems throw
// ProblemFileError with a line number; bad expressions are rephrased into the
// same with the parser's byte offset in the message.
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem_file(const std::string& path);

}  // namespace fracbvp
