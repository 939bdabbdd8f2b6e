#include "fracbvp/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "fracbvp/errors.hpp"

namespace fracbvp {
namespace {

struct RawValue {
  std::string text;
  bool quoted = false;
  std::size_t line = 0;
};

using Section = std::map<std::string, RawValue>;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// first pass: sections of key/value pairs, values kept verbatim
std::map<std::string, Section> scan(const std::string& text) {
  std::map<std::string, Section> out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments outside quotes
    bool in_quote = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_quote = !in_quote;
      if (line[i] == '#' && !in_quote) {
        line.resize(i);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ProblemFileError("unterminated section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (section.empty()) throw ProblemFileError("empty section name", lineno);
      out.try_emplace(section);
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ProblemFileError("expected 'key = value'", lineno);
    }
    if (section.empty()) {
      throw ProblemFileError("key before any [section]", lineno);
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ProblemFileError("empty key", lineno);
    if (value.empty()) throw ProblemFileError("empty value for '" + key + "'", lineno);

    RawValue rv;
    rv.line = lineno;
    if (value.front() == '"') {
      if (value.size() < 2 || value.back() != '"') {
        throw ProblemFileError("unterminated string for '" + key + "'", lineno);
      }
      rv.text = value.substr(1, value.size() - 2);
      rv.quoted = true;
    } else {
      rv.text = value;
    }
    auto [it, inserted] = out[section].try_emplace(key, rv);
    if (!inserted) {
      throw ProblemFileError("duplicate key '" + key + "'", lineno);
    }
  }
  return out;
}

const RawValue& require(const Section& s, const std::string& section,
                        const std::string& key, std::size_t section_line) {
  auto it = s.find(key);
  if (it == s.end()) {
    throw ProblemFileError("missing key '" + key + "' in [" + section + "]",
                           section_line);
  }
  return it->second;
}

double as_number(const RawValue& v, const std::string& key) {
  if (v.quoted) throw ProblemFileError("'" + key + "' must be a number", v.line);
  double value = 0.0;
  const char* begin = v.text.data();
  const char* end = begin + v.text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ProblemFileError("'" + key + "' is not a valid number", v.line);
  }
  return value;
}

int as_int(const RawValue& v, const std::string& key) {
  const double d = as_number(v, key);
  if (std::floor(d) != d || std::fabs(d) > 1e9) {
    throw ProblemFileError("'" + key + "' must be an integer", v.line);
  }
  return static_cast<int>(d);
}

const std::string& as_string(const RawValue& v, const std::string& key) {
  if (!v.quoted) {
    throw ProblemFileError("'" + key + "' must be a quoted string", v.line);
  }
  return v.text;
}

Expression parse_expr_value(const RawValue& v, const std::string& key, int m, int r) {
  try {
    return Expression::parse(as_string(v, key), m, r);
  } catch (const ParseError& e) {
    throw ProblemFileError("in expression '" + key + "': " + e.what(), v.line);
  }
}

void reject_unknown(const Section& s, const std::string& section,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : s) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ProblemFileError("unknown key '" + key + "' in [" + section + "]",
                             value.line);
    }
  }
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text) {
  const auto sections = scan(text);

  for (const auto& [name, body] : sections) {
    if (name != "problem" && name != "problem.f" && name != "problem.u" &&
        name != "problem.growth" && name != "numerics" && name != "output") {
      throw ProblemFileError("unknown section [" + name + "]",
                             body.empty() ? 0 : body.begin()->second.line);
    }
  }

  const auto problem_it = sections.find("problem");
  if (problem_it == sections.end()) {
    throw ProblemFileError("missing [problem] section", 0);
  }
  const Section& problem = problem_it->second;
  reject_unknown(problem, "problem", {"beta", "m", "r"});

  const double beta_value = as_number(require(problem, "problem", "beta", 0), "beta");
  const int m = as_int(require(problem, "problem", "m", 0), "m");
  const int r = as_int(require(problem, "problem", "r", 0), "r");
  if (m < 1 || m > 64 || r < 1 || r > 64) {
    throw ProblemFileError("m and r must lie in [1, 64]",
                           require(problem, "problem", "m", 0).line);
  }
  if (!(beta_value > 0.0) || !std::isfinite(beta_value)) {
    throw ProblemFileError("beta must be positive",
                           require(problem, "problem", "beta", 0).line);
  }

  const auto f_it = sections.find("problem.f");
  if (f_it == sections.end()) {
    throw ProblemFileError("missing [problem.f] section", 0);
  }
  std::vector<Expression> f;
  f.reserve(m);
  for (int i = 1; i <= m; ++i) {
    const std::string key = "f" + std::to_string(i);
    f.push_back(parse_expr_value(require(f_it->second, "problem.f", key, 0), key, m, r));
  }
  if (f_it->second.size() != static_cast<std::size_t>(m)) {
    throw ProblemFileError("[problem.f] must hold exactly m = " + std::to_string(m) +
                               " entries f1..f" + std::to_string(m),
                           f_it->second.begin()->second.line);
  }

  const auto u_it = sections.find("problem.u");
  if (u_it == sections.end()) {
    throw ProblemFileError("missing [problem.u] section", 0);
  }
  std::vector<Expression> u;
  u.reserve(r);
  for (int i = 1; i <= r; ++i) {
    const std::string key = "u" + std::to_string(i);
    u.push_back(parse_expr_value(require(u_it->second, "problem.u", key, 0), key, 0, 0));
  }
  if (u_it->second.size() != static_cast<std::size_t>(r)) {
    throw ProblemFileError("[problem.u] must hold exactly r = " + std::to_string(r) +
                               " entries u1..u" + std::to_string(r),
                           u_it->second.begin()->second.line);
  }

  std::optional<Expression> growth;
  if (const auto g_it = sections.find("problem.growth"); g_it != sections.end()) {
    reject_unknown(g_it->second, "problem.growth", {"a"});
    growth = parse_expr_value(require(g_it->second, "problem.growth", "a", 0), "a", 0, 0);
  }

  NumericsConfig numerics;
  if (const auto n_it = sections.find("numerics"); n_it != sections.end()) {
    const Section& n = n_it->second;
    reject_unknown(n, "numerics",
                   {"modes", "panels", "order", "max_iters", "residual_tol",
                    "step_tol", "damping", "max_backtracks"});
    if (auto it = n.find("modes"); it != n.end()) numerics.modes = as_int(it->second, "modes");
    if (auto it = n.find("panels"); it != n.end()) numerics.panels = as_int(it->second, "panels");
    if (auto it = n.find("order"); it != n.end()) numerics.order = as_int(it->second, "order");
    if (auto it = n.find("max_iters"); it != n.end()) {
      numerics.newton.max_iters = as_int(it->second, "max_iters");
    }
    if (auto it = n.find("residual_tol"); it != n.end()) {
      numerics.newton.residual_tol = as_number(it->second, "residual_tol");
    }
    if (auto it = n.find("step_tol"); it != n.end()) {
      numerics.newton.step_tol = as_number(it->second, "step_tol");
    }
    if (auto it = n.find("damping"); it != n.end()) {
      numerics.newton.damping = as_number(it->second, "damping");
    }
    if (auto it = n.find("max_backtracks"); it != n.end()) {
      numerics.newton.max_backtracks = as_int(it->second, "max_backtracks");
    }
    if (numerics.modes < 1 || numerics.panels < 1 || numerics.order < 2 ||
        numerics.order > 32) {
      throw ProblemFileError("invalid [numerics] discretization values",
                             n.begin()->second.line);
    }
  }

  OutputConfig output;
  if (const auto o_it = sections.find("output"); o_it != sections.end()) {
    const Section& o = o_it->second;
    reject_unknown(o, "output", {"path", "format"});
    if (auto it = o.find("path"); it != o.end()) output.path = as_string(it->second, "path");
    if (auto it = o.find("format"); it != o.end()) {
      output.format = as_string(it->second, "format");
      if (output.format != "tsv") {
        throw ProblemFileError("unsupported output format '" + output.format + "'",
                               it->second.line);
      }
    }
  }

  try {
    return ProblemFile{
        ProblemSpec(FractionalOrder(beta_value), m, r, std::move(f), std::move(u),
                    std::move(growth)),
        numerics, output};
  } catch (const std::exception& e) {
    throw ProblemFileError(std::string("invalid problem: ") + e.what(), 0);
  }
}

ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ProblemFileError("cannot open problem file '" + path + "'", 0);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem_text(buf.str());
}

}  // namespace fracbvp
