#include "teamalloc/mission.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "teamalloc/error.hpp"

namespace teamalloc {

std::string_view to_string(AnalyticKind kind) {
  switch (kind) {
    case AnalyticKind::sqrt:
      return "sqrt";
    case AnalyticKind::log1p:
      return "log1p";
    case AnalyticKind::saturating_exp:
      return "saturating_exp";
  }
  return "unknown";
}

AnalyticKind parse_analytic_kind(std::string_view name) {
  if (name == "sqrt") return AnalyticKind::sqrt;
  if (name == "log1p") return AnalyticKind::log1p;
  if (name == "saturating_exp") return AnalyticKind::saturating_exp;
  throw std::invalid_argument("unknown analytic evaluator kind '" + std::string(name) + "'");
}

AnalyticEvaluator::AnalyticEvaluator(AnalyticKind kind, AnalyticParams params)
    : kind_(kind), params_(params) {
  if (!(params.scale > 0.0) || !std::isfinite(params.scale)) {
    throw std::invalid_argument("analytic evaluator scale must be a positive finite number");
  }
  if (kind == AnalyticKind::saturating_exp) {
    if (!(params.tau > 0.0) || !std::isfinite(params.tau)) {
      throw std::invalid_argument("saturating_exp requires tau > 0");
    }
    // Stop where the second difference scale*exp(-n/tau)*(1-exp(-1/tau))^2
    // sinks to 64 ulps of scale; past that point rounding decides concavity.
    const double curvature = std::pow(-std::expm1(-1.0 / params.tau), 2);
    const double limit = params.tau * std::log(curvature / (64.0 * std::numeric_limits<double>::epsilon()));
    domain_max_ = static_cast<int>(std::clamp(std::floor(limit), 1.0, 1.0e8));
  } else {
    domain_max_ = 100'000'000;
  }
}

double AnalyticEvaluator::evaluate(int n) const {
  if (!defined_at(n)) {
    throw DomainError(describe() + " is undefined at n=" + std::to_string(n));
  }
  const double x = static_cast<double>(n);
  switch (kind_) {
    case AnalyticKind::sqrt:
      return params_.scale * std::sqrt(x);
    case AnalyticKind::log1p:
      return params_.scale * std::log1p(x);
    case AnalyticKind::saturating_exp:
      return -params_.scale * std::expm1(-x / params_.tau);
  }
  return 0.0;
}

std::string AnalyticEvaluator::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind_) << "(scale=" << params_.scale;
  if (kind_ == AnalyticKind::saturating_exp) os << ", tau=" << params_.tau;
  os << ")";
  return os.str();
}

EvaluatorPtr make_analytic(AnalyticKind kind, AnalyticParams params) {
  return std::make_shared<AnalyticEvaluator>(kind, params);
}

TabulatedEvaluator::TabulatedEvaluator(int first_n, std::vector<double> values,
                                       std::vector<std::string> provenance)
    : first_n_(first_n), values_(std::move(values)), provenance_(std::move(provenance)) {
  if (first_n_ < 0) throw std::invalid_argument("table must start at n >= 0");
  if (values_.empty()) throw std::invalid_argument("table must hold at least one value");
  if (!provenance_.empty() && provenance_.size() != values_.size()) {
    throw std::invalid_argument("table provenance must have one entry per value");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("table values must be finite");
  }
}

double TabulatedEvaluator::evaluate(int n) const {
  if (!defined_at(n)) {
    throw DomainError("table is defined on [" + std::to_string(domain_min()) + ", " +
                      std::to_string(domain_max()) + "], queried at n=" + std::to_string(n));
  }
  return values_[static_cast<std::size_t>(n - first_n_)];
}

std::string TabulatedEvaluator::describe() const {
  return "table[" + std::to_string(domain_min()) + ".." + std::to_string(domain_max()) + "]";
}

const std::string& TabulatedEvaluator::provenance(int n) const {
  static const std::string kNone;
  if (provenance_.empty() || !defined_at(n)) return kNone;
  return provenance_[static_cast<std::size_t>(n - first_n_)];
}

void write_table(std::ostream& out, const TabulatedEvaluator& table) {
  out << "# teamalloc evaluator table v1\n";
  out << "# n F(n) provenance\n";
  char buf[64];
  for (int n = table.domain_min(); n <= table.domain_max(); ++n) {
    std::snprintf(buf, sizeof buf, "%.17g", table.evaluate(n));
    out << n << ' ' << buf;
    const std::string& prov = table.provenance(n);
    if (!prov.empty()) out << ' ' << prov;
    out << '\n';
  }
}

TabulatedEvaluator read_table(std::istream& in) {
  std::vector<double> values;
  std::vector<std::string> provenance;
  bool any_provenance = false;
  int first_n = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream row(line);
    std::string n_text, value_text;
    row >> n_text >> value_text;
    const std::string where = "line " + std::to_string(line_no);
    char* end = nullptr;
    errno = 0;
    const long n = std::strtol(n_text.c_str(), &end, 10);
    if (n_text.empty() || *end != '\0' || errno != 0 || n < 0) {
      throw ConfigError("expected a non-negative integer n, got '" + n_text + "'", where);
    }
    errno = 0;
    const double value = std::strtod(value_text.c_str(), &end);
    if (value_text.empty() || *end != '\0' || errno != 0 || !std::isfinite(value)) {
      throw ConfigError("expected a finite value, got '" + value_text + "'", where);
    }
    if (first_n < 0) {
      first_n = static_cast<int>(n);
    } else if (n != first_n + static_cast<long>(values.size())) {
      throw ConfigError("entries must be contiguous in n; expected " +
                            std::to_string(first_n + values.size()) + ", got " +
                            std::to_string(n),
                        where);
    }
    std::string prov;
    std::getline(row >> std::ws, prov);
    while (!prov.empty() && (prov.back() == '\r' || prov.back() == ' ')) prov.pop_back();
    any_provenance = any_provenance || !prov.empty();
    values.push_back(value);
    provenance.push_back(std::move(prov));
  }
  if (values.empty()) throw ConfigError("table holds no entries");
  if (!any_provenance) provenance.clear();
  return TabulatedEvaluator(first_n, std::move(values), std::move(provenance));
}

void save_table(const std::filesystem::path& path, const TabulatedEvaluator& table) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing", path.string());
  write_table(out, table);
}

TabulatedEvaluator load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table file", path.string());
  try {
    return read_table(in);
  } catch (const ConfigError& e) {
    throw ConfigError(e.what(), path.string());
  }
}

std::optional<int> ReturnsReport::first_violation() const {
  if (first_increasing_violation && first_concavity_violation) {
    return std::min(*first_increasing_violation, *first_concavity_violation);
  }
  return first_increasing_violation ? first_increasing_violation : first_concavity_violation;
}

ReturnsReport validate_diminishing_returns(const MissionEvaluator& evaluator, int n_max,
                                     double concavity_tolerance, int n_min) {
  ReturnsReport report;
  const int lo = std::max(n_min, evaluator.domain_min());
  const int hi = std::min(n_max, evaluator.domain_max());
  report.checked_from = lo;
  report.checked_to = hi;
  if (hi <= lo) return report;

  double prev = evaluator.evaluate(lo);
  double prev_gain = std::numeric_limits<double>::quiet_NaN();
  for (int n = lo; n < hi; ++n) {
    const double next = evaluator.evaluate(n + 1);
    const double gain = next - prev;
    if (!(gain > 0.0) && !report.first_increasing_violation) {
      report.increasing_ok = false;
      report.first_increasing_violation = n;
    }
    if (n > lo && gain > prev_gain + concavity_tolerance && !report.first_concavity_violation) {
      report.concave_ok = false;
      report.first_concavity_violation = n;
    }
    prev = next;
    prev_gain = gain;
  }
  return report;
}

}  // namespace teamalloc
