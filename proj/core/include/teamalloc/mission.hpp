#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace teamalloc {

/// A team's mission evaluation F(n): performance as a function of its agent count.
///
/// Valid evaluators are strictly increasing and discretely concave on their domain
/// (see validate_diminishing_returns). Queries outside [domain_min(), domain_max()] throw
/// DomainError.
class MissionEvaluator {
 public:
  virtual ~MissionEvaluator() = default;

  virtual double evaluate(int n) const = 0;
  /// 0 when F(0) is defined, 1 otherwise.
  virtual int domain_min() const = 0;
  virtual int domain_max() const = 0;
  virtual std::string describe() const = 0;

  /// Notification that the owning team now holds `n` agents after an accepted
  /// collaboration step. Stateless evaluators ignore it.
  virtual void commit(int n) { (void)n; }

  bool defined_at(int n) const { return n >= domain_min() && n <= domain_max(); }
};

using EvaluatorPtr = std::shared_ptr<MissionEvaluator>;

enum class AnalyticKind { sqrt, log1p, saturating_exp };

std::string_view to_string(AnalyticKind kind);
/// Throws std::invalid_argument for unknown names.
AnalyticKind parse_analytic_kind(std::string_view name);

struct AnalyticParams {
  double scale = 1.0;  // multiplies F; must be > 0
  double tau = 1.0;    // saturation length of saturating_exp; must be > 0
};

/// Closed-form evaluators: scale*sqrt(n), scale*log(1+n), scale*(1 - exp(-n/tau)).
///
/// All three define F(0) = 0. saturating_exp flattens to 1 in double precision,
/// so its domain stops once its curvature nears rounding noise (n = 30 for
/// tau = 1, roughly 18*tau for large tau).
class AnalyticEvaluator final : public MissionEvaluator {
 public:
  AnalyticEvaluator(AnalyticKind kind, AnalyticParams params);

  double evaluate(int n) const override;
  int domain_min() const override { return 0; }
  int domain_max() const override { return domain_max_; }
  std::string describe() const override;

  AnalyticKind kind() const { return kind_; }
  const AnalyticParams& params() const { return params_; }

 private:
  AnalyticKind kind_;
  AnalyticParams params_;
  int domain_max_;
};

EvaluatorPtr make_analytic(AnalyticKind kind, AnalyticParams params = {});

/// A finite table F(first_n), ..., F(first_n + size - 1), immutable after construction.
class TabulatedEvaluator final : public MissionEvaluator {
 public:
  /// `provenance` is either empty or has one entry per value.
  TabulatedEvaluator(int first_n, std::vector<double> values,
                     std::vector<std::string> provenance = {});

  double evaluate(int n) const override;
  int domain_min() const override { return first_n_; }
  int domain_max() const override { return first_n_ + static_cast<int>(values_.size()) - 1; }
  std::string describe() const override;

  std::span<const double> values() const { return values_; }
  /// Empty string when no provenance was recorded.
  const std::string& provenance(int n) const;

 private:
  int first_n_;
  std::vector<double> values_;
  std::vector<std::string> provenance_;
};

// Plain-text table format, one entry per line:
//
//   # free-form comment lines
//   <n> <F(n)> [provenance...]
//
// Values are written with 17 significant digits so a write/read cycle is exact.
void write_table(std::ostream& out, const TabulatedEvaluator& table);
/// Throws ConfigError on malformed input (non-contiguous n, unparsable values, empty table).
TabulatedEvaluator read_table(std::istream& in);
void save_table(const std::filesystem::path& path, const TabulatedEvaluator& table);
TabulatedEvaluator load_table(const std::filesystem::path& path);

struct ReturnsReport {
  bool increasing_ok = true;
  bool concave_ok = true;
  std::optional<int> first_increasing_violation;  // n with F(n+1) <= F(n)
  std::optional<int> first_concavity_violation;   // n with F(n+1)-F(n) > F(n)-F(n-1) + tol
  int checked_from = 1;
  int checked_to = 1;

  bool ok() const { return increasing_ok && concave_ok; }
  std::optional<int> first_violation() const;
};

/// Exhaustively checks strict increase for n in [n_min, n_max) and discrete
/// concavity for n in [n_min + 1, n_max). The range is clipped to the
/// evaluator's domain. With n_min = 1 this is exactly the textbook condition
/// (increase from n = 1, concavity from n = 2); pass n_min = 0 when teams may
/// be emptied.
ReturnsReport validate_diminishing_returns(const MissionEvaluator& evaluator, int n_max,
                                     double concavity_tolerance = 0.0, int n_min = 1);

}  // namespace teamalloc
