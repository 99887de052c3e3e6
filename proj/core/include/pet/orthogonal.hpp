#ifndef PET_ORTHOGONAL_HPP
#define PET_ORTHOGONAL_HPP

#include <Eigen/Dense>
#include <cstdint>

#include "pet/errors.hpp"
#include "pet/group.hpp"

namespace pet {

/// Max-entry deviation of M^T M from the identity.
double orthogonality_defect(const Eigen::MatrixXd& m);

/// True iff the max-entry deviation of M^T M from I is <= tol.
/// Non-square input is a shape error.
bool is_orthogonal(const Eigen::MatrixXd& m, double tol);

/// Default tolerance scale for a dimension-d orthogonal operator.
inline double orthogonality_tolerance(int dim) { return 1e-9 * static_cast<double>(dim); }

// ---------------------------------------------------------------------------
// A real d x d orthogonal matrix acting as a unitary on R^d.  Adjoint equals
// transpose throughout; complex unitaries are not modeled.
// ---------------------------------------------------------------------------

class OrthogonalOperator {
 public:
  /// Validates the orthogonality invariant on construction; `tol < 0`
  /// selects the default 1e-9 * d.
  explicit OrthogonalOperator(Eigen::MatrixXd m, double tol = -1.0);

  static OrthogonalOperator identity(int dim) {
    return OrthogonalOperator(Eigen::MatrixXd::Identity(dim, dim), 0.0);
  }

  /// 2x2 rotation by angle theta.
  static OrthogonalOperator rotation(double theta);

  /// Block-diagonal assembly of operators.
  static OrthogonalOperator block_diagonal(const std::vector<OrthogonalOperator>& blocks);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }

  bool is_identity(double tol = -1.0) const {
    double t = tol < 0 ? orthogonality_tolerance(dim()) : tol;
    return (mat_ - Eigen::MatrixXd::Identity(mat_.rows(), mat_.cols()))
               .cwiseAbs()
               .maxCoeff() <= t;
  }

  friend OrthogonalOperator mul(const OrthogonalOperator& a, const OrthogonalOperator& b) {
    if (a.dim() != b.dim())
      throw ParameterError("orthogonal operators of different dimension");
    return OrthogonalOperator(a.mat_ * b.mat_, kSkipCheck);
  }

  friend OrthogonalOperator inverse(const OrthogonalOperator& a) {
    return OrthogonalOperator(a.mat_.transpose(), kSkipCheck);  // adjoint = transpose
  }

  friend OrthogonalOperator identity_like(const OrthogonalOperator& a) {
    return identity(a.dim());
  }

  friend bool is_identity(const OrthogonalOperator& a) { return a.is_identity(); }

  friend OrthogonalOperator operator*(const OrthogonalOperator& a,
                                      const OrthogonalOperator& b) {
    return mul(a, b);
  }

  friend bool approx_equal(const OrthogonalOperator& a, const OrthogonalOperator& b,
                           double tol) {
    return a.dim() == b.dim() && (a.mat_ - b.mat_).cwiseAbs().maxCoeff() <= tol;
  }

 private:
  struct SkipCheck {};
  static constexpr SkipCheck kSkipCheck{};
  OrthogonalOperator(Eigen::MatrixXd m, SkipCheck) : mat_(std::move(m)) {}

  Eigen::MatrixXd mat_;
};

/// Pairwise commutation up to the entrywise tolerance.
inline bool commutes(const OrthogonalOperator& a, const OrthogonalOperator& b, double tol) {
  return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).cwiseAbs().maxCoeff() <= tol;
}

/// Left-regular representation of (Z/m) wr (Z/n) as permutation matrices of
/// dimension m^n * n.  Exceeding `dimension_cap` is a capacity error, never a
/// truncation.
Eigen::MatrixXd regular_representation(const FiniteWreathElement& g,
                                       std::int64_t dimension_cap = 256);

/// Spectral norm by power iteration on A^T A (50 iterations, tolerance
/// 1e-10), cross-checked against the Frobenius upper bound.
double spectral_norm(const Eigen::MatrixXd& a);

}  // namespace pet

#endif  // PET_ORTHOGONAL_HPP
