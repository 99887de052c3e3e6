#ifndef PET_AVERAGING_HPP
#define PET_AVERAGING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pet/errors.hpp"
#include "pet/measure.hpp"
#include "pet/orthogonal.hpp"
#include "pet/sequence.hpp"

namespace pet {

// ---------------------------------------------------------------------------
// A Z-indexed family of orthogonal operators acting on R^d, realized either
// directly from a matrix-valued sequence or from a lamplighter sequence via
// the finite quotient and its regular representation.
// ---------------------------------------------------------------------------

class UnitaryAction {
 public:
  explicit UnitaryAction(GroupSequence<OrthogonalOperator> seq, std::string desc = "matrix");

  static UnitaryAction from_lamplighter(GroupSequence<LamplighterElement> seq, int m, int n,
                                        std::int64_t dimension_cap = 256);

  static UnitaryAction from_function(std::function<Eigen::MatrixXd(std::int64_t)> f, int dim,
                                     std::string desc = "function");

  int dim() const { return dim_; }
  const std::string& description() const { return desc_; }

  Eigen::MatrixXd operator()(std::int64_t j) const { return realize_(j); }

  Eigen::VectorXd apply(std::int64_t j, const Eigen::VectorXd& x) const;

  /// Pointwise adjoint family j -> T_j^T.
  UnitaryAction adjoint() const;

  /// Reverse difference family j -> T_j T_{i+j}^T.
  UnitaryAction nabla(std::int64_t i) const;

  /// Max orthogonality defect of the realized operators on [lo, hi]; a
  /// defect above 1e-9 * dim is a precondition error.
  double validate_window(std::int64_t lo, std::int64_t hi) const;

 private:
  UnitaryAction(std::function<Eigen::MatrixXd(std::int64_t)> f, int dim, std::string desc)
      : realize_(std::move(f)), dim_(dim), desc_(std::move(desc)) {}

  std::function<Eigen::MatrixXd(std::int64_t)> realize_;
  int dim_;
  std::string desc_;
};

/// Leibman mapping Z^d -> orthogonal operators: the product over coordinates
/// of abelian-binomial towers with one shared commuting generator pool.
class PolynomialMapZd {
 public:
  /// gens[c] are the generators (g_{c,0}, g_{c,1}, ...) for coordinate c; all
  /// generators across all coordinates must pairwise commute.
  explicit PolynomialMapZd(std::vector<std::vector<OrthogonalOperator>> gens);

  int dim() const { return dim_; }
  int domain_dim() const { return static_cast<int>(towers_.size()); }

  Eigen::MatrixXd operator()(const IntPoint& g) const;

 private:
  std::vector<GroupSequence<OrthogonalOperator>> towers_;
  int dim_;
};

struct AverageResult {
  std::optional<Eigen::MatrixXd> op;   // <T, mu>
  std::optional<Eigen::VectorXd> vec;  // <T, mu>(x)
  std::int64_t index = -1;
  std::string spec_hash;
  std::string folner;
};

/// <T, mu> = sum of weights times realized operators.
Eigen::MatrixXd avg_operator(const UnitaryAction& t, const SignedMeasure& mu);
Eigen::MatrixXd avg_operator(const PolynomialMapZd& t,
                             const BasicSignedMeasure<IntPoint, double>& mu);

/// <T, mu>(x), computed as the weighted sum of T_i(x).
Eigen::VectorXd avg_vector(const UnitaryAction& t, const Eigen::VectorXd& x,
                           const SignedMeasure& mu);
Eigen::VectorXd avg_vector(const PolynomialMapZd& t, const Eigen::VectorXd& x,
                           const BasicSignedMeasure<IntPoint, double>& mu);

/// Incremental Folner averages: a sweep over n = 0..N costs O(N) sequence
/// evaluations in total.  Symmetric mode averages over {-n..n} instead of
/// {0..n}.
class AverageSweep {
 public:
  AverageSweep(const UnitaryAction& t, Eigen::VectorXd x, bool symmetric = false);

  std::int64_t index() const { return n_; }

  /// Advances to the next index and returns Av_n T(x).
  Eigen::VectorXd next();

 private:
  UnitaryAction t_;
  Eigen::VectorXd x_;
  Eigen::VectorXd sum_;
  std::int64_t n_ = -1;
  bool symmetric_;
};

/// Smallest natural number m with m >= 2n/eps; eps <= 0 is a domain error.
std::int64_t m_threshold(double eps, std::int64_t n);

/// (Av_n T) (Av_m T)^T.
Eigen::MatrixXd descent_lhs(const UnitaryAction& t, std::int64_t n, std::int64_t m);

/// Integral over sigma_m of Av_n applied to the reverse differences:
/// sum_i w_i Av_n(nabla^i T).
Eigen::MatrixXd descent_rhs(const UnitaryAction& t, std::int64_t n, std::int64_t m);

/// Orthogonal projector onto the fixed space ker(U - I), by numerical-rank
/// null-space extraction with relative singular threshold 1e-10 (floored at
/// the unit operator scale).  Non-orthogonal input is a precondition error.
Eigen::MatrixXd fixed_space_projection(const Eigen::MatrixXd& u);

}  // namespace pet

#endif  // PET_AVERAGING_HPP
