#ifndef PET_CONVERGENCE_HPP
#define PET_CONVERGENCE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "pet/averaging.hpp"
#include "pet/errors.hpp"
#include "pet/measure.hpp"

namespace pet {

enum class MetricKind { euclidean, spectral };

// ---------------------------------------------------------------------------
// A finite window of a net in a metric space.  Window-restricted spread and
// oscillation are lower bounds of the sup/inf quantities over the full index
// set; results carry an exact/estimate tag so a window artifact is never
// silently reported as the true value.
// ---------------------------------------------------------------------------

class PointNet {
 public:
  PointNet(std::int64_t lo, std::vector<Eigen::VectorXd> values);
  PointNet(std::int64_t lo, std::vector<Eigen::MatrixXd> values, MetricKind metric);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  MetricKind metric() const { return metric_; }
  const Eigen::MatrixXd& value(std::int64_t i) const;

  double distance(std::int64_t i, std::int64_t j) const;

  /// Max pairwise distance over window indices >= i.  Exact pairwise by
  /// default; beyond `pair_budget` pairs, vector nets fall back to the
  /// doubled max-distance-to-centroid bound (flagged by spread_is_exact).
  double spread_from(std::int64_t i) const;
  bool spread_is_exact(std::int64_t i) const;

  struct Oscillation {
    double value;
    bool exact;  // true only when a constant tail was detected in-window
  };

  /// Min over window indices i of spread_from(i).  Exact for
  /// eventually-constant nets; otherwise an estimate (the singleton tail
  /// makes the window minimum 0, a documented artifact).
  Oscillation oscillation() const;

  /// Start of the maximal constant suffix of length >= 2, or hi()+1 if the
  /// last two values already differ.
  std::int64_t constant_tail_start() const;

  static constexpr std::int64_t kDefaultPairBudget = 40'000'000;

 private:
  std::int64_t lo_;
  std::vector<Eigen::MatrixXd> values_;
  MetricKind metric_;
};

/// Sampling of future indices: eta_i is a finite nonempty subset of
/// {j : j >= i}.  Config templates: {i}, {i,i+k}, {i,2i}, {i,2i+1}.
struct Sampling {
  std::string description;
  std::function<std::vector<std::int64_t>(std::int64_t)> at;

  static Sampling parse(const std::string& text);
};

struct MetastabilityCertificate {
  double eps = 0.0;
  std::string sampling;
  bool found = false;
  std::int64_t witness = -1;
  double spread = 0.0;      // achieved sampled spread at the witness
  std::int64_t search_lo = 0;
  std::int64_t search_hi = 0;  // bound actually used
  bool partial = false;     // some eta_i was clipped to the window
};

/// spread_from(i) for every window index at once, by one backward sweep
/// (exact pairwise distances, O(window^2) total).
std::vector<double> suffix_spreads(const PointNet& net);

/// Least window index i whose sampled values eta_i are pairwise < eps apart;
/// eps <= 0 is a domain error.  Indices whose sampled set escapes the window
/// are recorded as partial evaluation and cannot certify a witness.
MetastabilityCertificate metastable_index(const PointNet& net, double eps,
                                          const Sampling& eta);

/// Lazy variant: values are produced on demand (and memoized) up to `bound`.
MetastabilityCertificate metastable_scan(
    const std::function<Eigen::VectorXd(std::int64_t)>& value, std::int64_t lo,
    std::int64_t bound, double eps, const Sampling& eta);

struct UniformRateReport {
  bool all_found = false;
  std::int64_t aggregate = -1;  // max of the per-instance least witnesses
  std::vector<MetastabilityCertificate> certificates;
};

/// Empirical uniform-rate search: per-instance least witnesses and their
/// maximum, scanned up to `bound`.
UniformRateReport uniform_rate_search(std::span<const PointNet> instances, double eps,
                                      const Sampling& eta, std::int64_t bound);

// ---------------------------------------------------------------------------
// Structured/pseudorandom decomposition at a finite cutoff M.
// ---------------------------------------------------------------------------

struct Decomposition {
  Eigen::VectorXd structured;
  Eigen::VectorXd random;
  std::int64_t cutoff = 0;
  int rank = 0;                       // numerical rank of Av_M
  double additivity_residual = 0.0;   // ||x_s + x_r - x||
  double orthogonality_residual = 0.0;  // |<x_s, x_r>|
  double killed_norm = 0.0;           // ||Av_M T (x_r)||
};

/// Splits x into the orthogonal projection onto the column space of
/// (Av_M T)^T and the remainder, which Av_M T annihilates to within
/// 1e-8 * ||x||.  Numerical rank uses the relative threshold 1e-10 floored
/// at the unit operator scale.
Decomposition structured_decompose(const UnitaryAction& t, const Eigen::VectorXd& x,
                                   std::int64_t cutoff);

// ---------------------------------------------------------------------------
// Finite Dominated Convergence check.
// ---------------------------------------------------------------------------

struct DctReport {
  double osc_lhs = 0.0;      // osc of n -> <<phi_n, mu>>
  double osc_rhs = 0.0;      // ||mu|| * max_x osc of n -> phi_n(x)
  bool osc_exact = false;
  double spread_lhs = 0.0;   // spread from the window start of the paired net
  double spread_rhs = 0.0;   // ||mu|| * max_x spread from the window start
  bool pass = false;
  bool equality = false;     // spread_lhs == spread_rhs to 1e-12
};

/// Verifies osc(<<phi,mu>>) <= ||mu|| sup_x osc(phi(x)) together with its
/// per-tail-index spread form, all sides enumerated exactly.  Fields must be
/// eventually constant at every point within the window (precondition;
/// constancy is what makes both sides exact), defined on all of `points`,
/// and mu must be supported inside `points`.
DctReport dct_check(const std::vector<std::int64_t>& points, std::int64_t lo,
                    const std::vector<VectorField<std::int64_t>>& fields,
                    const SignedMeasure& mu);

}  // namespace pet

#endif  // PET_CONVERGENCE_HPP
