#include "fracbvp/result_io.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <utility>
#include <vector>

#include "json.hpp"

namespace fracbvp {
namespace {

constexpr int kSamplePoints = 1001;

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  return out;
}

}  // namespace

void write_samples(const std::string& path, const SineCoefficients& x) {
  std::ofstream out = open_for_write(path);
  out << "t";
  for (int i = 1; i <= x.components(); ++i) {
    out << "\tx" << i;
  }
  out << "\n";
  std::vector<double> values(static_cast<size_t>(x.components()));
  const double pi = std::acos(-1.0);
  for (int q = 0; q < kSamplePoints; ++q) {
    const double t = pi * static_cast<double>(q) / (kSamplePoints - 1);
    evaluate_at(x, t, values);
    out << full_precision(t);
    for (double v : values) {
      out << "\t" << full_precision(v);
    }
    out << "\n";
  }
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

void write_coefficients(const std::string& path, const SineCoefficients& x) {
  std::ofstream out = open_for_write(path);
  out << "j\ti\ta\n";
  for (int j = 1; j <= x.modes(); ++j) {
    for (int i = 1; i <= x.components(); ++i) {
      out << j << "\t" << i << "\t" << full_precision(x.at(j - 1, i - 1)) << "\n";
    }
  }
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

SineCoefficients read_coefficients(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open '" + path + "' for reading");
  }
  std::string line;
  if (!std::getline(in, line) || line != "j\ti\ta") {
    throw std::runtime_error("'" + path + "': missing coefficient header");
  }
  std::map<std::pair<int, int>, double> entries;
  int max_j = 0;
  int max_i = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    std::istringstream row(line);
    int j = 0;
    int i = 0;
    std::string a_text;
    if (!(row >> j >> i >> a_text) || j < 1 || i < 1) {
      throw std::runtime_error("'" + path + "' line " + std::to_string(lineno) +
                               ": malformed coefficient row");
    }
    errno = 0;
    char* end = nullptr;
    const double a = std::strtod(a_text.c_str(), &end);
    if (end == a_text.c_str() || *end != '\0' || errno == ERANGE) {
      throw std::runtime_error("'" + path + "' line " + std::to_string(lineno) +
                               ": malformed coefficient value");
    }
    if (!entries.emplace(std::make_pair(j, i), a).second) {
      throw std::runtime_error("'" + path + "' line " + std::to_string(lineno) +
                               ": duplicate coefficient (" + std::to_string(j) +
                               ", " + std::to_string(i) + ")");
    }
    max_j = std::max(max_j, j);
    max_i = std::max(max_i, i);
  }
  if (max_j == 0 || max_i == 0) {
    throw std::runtime_error("'" + path + "': no coefficient rows");
  }
  if (entries.size() != static_cast<size_t>(max_j) * static_cast<size_t>(max_i)) {
    throw std::runtime_error("'" + path + "': incomplete coefficient table");
  }
  std::vector<double> data(entries.size());
  for (const auto& [key, a] : entries) {
    data[static_cast<size_t>(key.first - 1) * max_i + (key.second - 1)] = a;
  }
  return SineCoefficients(max_j, max_i, std::move(data));
}

void write_report(const std::string& path, const ReportContext& ctx,
                  const SolveReport& report, const SineCoefficients* x) {
  nlohmann::ordered_json doc;
  doc["command"] = ctx.command;
  doc["problem"] = {{"beta", ctx.beta}, {"m", ctx.m}, {"r", ctx.r}};
  doc["numerics"] = {
      {"modes", ctx.modes}, {"panels", ctx.panels}, {"order", ctx.order}};
  doc["converged"] = report.converged;
  doc["iterations"] = report.iterations;
  doc["residual_history"] = report.residual_history;
  doc["final_step_norm"] = report.final_step_norm;
  doc["final_grid_residual"] = report.final_grid_residual;
  doc["condition_estimate"] = report.condition_estimate;
  doc["warnings"] = report.warnings;
  if (report.condition_verdicts.has_value()) {
    const ConditionReport& c = *report.condition_verdicts;
    nlohmann::ordered_json cj;
    cj["a"] = {{"lhs", c.cond_a.lhs},
               {"threshold", c.cond_a.threshold},
               {"holds", c.cond_a.holds}};
    cj["b"] = {{"max_symmetric_eigenvalue", c.cond_b.max_symmetric_eigenvalue},
               {"holds", c.cond_b.holds}};
    cj["c"] = {{"sup_frobenius", c.cond_c.sup_frobenius},
               {"threshold", c.cond_c.threshold},
               {"holds", c.cond_c.holds}};
    if (c.coercivity.has_value()) {
      cj["coercivity"] = {{"lhs", c.coercivity->lhs},
                          {"holds", c.coercivity->holds}};
    }
    cj["any_holds"] = c.any_holds;
    doc["conditions"] = std::move(cj);
  } else {
    doc["conditions"] = nullptr;
  }
  if (x != nullptr) {
    nlohmann::ordered_json nj;
    nj["l2"] = norm_l2(*x);
    nj["tilde"] = norm_tilde(*x, FractionalOrder(ctx.beta));
    if (ctx.beta > 0.25) {
      nj["sup_bound"] = sup_bound(*x, FractionalOrder(ctx.beta));
    }
    doc["norms"] = std::move(nj);
  } else {
    doc["norms"] = nullptr;
  }
  doc["runtime_seconds"] = ctx.runtime_seconds;

  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << "\n";
  if (!out) {
    throw std::runtime_error("write failed for '" + path + "'");
  }
}

}  // namespace fracbvp
