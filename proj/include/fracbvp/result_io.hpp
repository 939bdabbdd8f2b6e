#pragma once

#include <optional>
#include <string>

#include "fracbvp/sine_basis.hpp"
#include "fracbvp/solver.hpp"

namespace fracbvp {

// Run context reproduced at the top of every structured report.
struct ReportContext {
  std::string command;
  double beta = 0.0;
  int m = 0;
  int r = 0;
  int modes = 0;
  int panels = 0;
  int order = 0;
  double runtime_seconds = 0.0;
};

// 1001 uniform samples of the synthesis of x on [0, pi], endpoints included,
// tab-separated with a header row, 17 significant digits.
void write_samples(const std::string& path, const SineCoefficients& x);

// Rows "j<TAB>i<TAB>a" (1-based j, i) at full round-trip precision.
void write_coefficients(const std::string& path, const SineCoefficients& x);

// Inverse of write_coefficients; the values reload bit-identically.
SineCoefficients read_coefficients(const std::string& path);

// JSON report: context, convergence data, warnings (each exactly once),
// condition verdicts when present, and norms of x when given.
void write_report(const std::string& path, const ReportContext& ctx,
                  const SolveReport& report, const SineCoefficients* x);

}  // namespace fracbvp
