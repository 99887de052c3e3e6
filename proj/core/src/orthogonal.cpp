#include "pet/orthogonal.hpp"

#include <cmath>
#include <vector>

namespace pet {

double orthogonality_defect(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw ShapeError("orthogonality check requires a square matrix");
  Eigen::MatrixXd g = m.transpose() * m;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

bool is_orthogonal(const Eigen::MatrixXd& m, double tol) {
  return orthogonality_defect(m) <= tol;
}

OrthogonalOperator::OrthogonalOperator(Eigen::MatrixXd m, double tol) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols())
    throw ShapeError("orthogonal operator requires a square matrix");
  double t = tol < 0 ? orthogonality_tolerance(dim()) : tol;
  double defect = orthogonality_defect(mat_);
  if (defect > t)
    throw PreconditionError("matrix is not orthogonal: defect " + std::to_string(defect) +
                            " exceeds tolerance " + std::to_string(t));
}

OrthogonalOperator OrthogonalOperator::rotation(double theta) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return OrthogonalOperator(std::move(r), 1e-14);
}

OrthogonalOperator OrthogonalOperator::block_diagonal(
    const std::vector<OrthogonalOperator>& blocks) {
  int d = 0;
  for (const auto& b : blocks) d += b.dim();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  int off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.dim(), b.dim()) = b.matrix();
    off += b.dim();
  }
  return OrthogonalOperator(std::move(m));
}

Eigen::MatrixXd regular_representation(const FiniteWreathElement& g,
                                       std::int64_t dimension_cap) {
  const int m = g.modulus(), n = g.positions();
  std::int64_t order = FiniteWreathElement::order(m, n, dimension_cap);
  if (order < 0)
    throw CapacityError("regular representation dimension m^n * n exceeds cap " +
                        std::to_string(dimension_cap));
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(order, order);
  for (std::int64_t x = 0; x < order; ++x) {
    FiniteWreathElement gx = mul(g, FiniteWreathElement::from_enumeration_index(m, n, x));
    rho(gx.enumeration_index(), x) = 1.0;
  }
  return rho;
}

double spectral_norm(const Eigen::MatrixXd& a) {
  double fro = a.norm();
  if (fro == 0.0) return 0.0;
  Eigen::MatrixXd gram = a.transpose() * a;
  // Deterministic start with all modes excited.
  Eigen::VectorXd v(a.cols());
  for (int i = 0; i < v.size(); ++i) v(i) = 1.0 + 1e-3 * static_cast<double>(i);
  v.normalize();
  double lambda = 0.0;
  for (int it = 0; it < 50; ++it) {
    Eigen::VectorXd w = gram * v;
    double norm = w.norm();
    if (norm == 0.0) return 0.0;
    w /= norm;
    double next = w.dot(gram * w);
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::max(1.0, std::abs(next))) {
      lambda = next;
      break;
    }
    lambda = next;
    v = std::move(w);
  }
  double sigma = std::sqrt(std::max(0.0, lambda));
  // Frobenius is an upper bound for the spectral norm.
  return std::min(sigma, fro);
}

}  // namespace pet
