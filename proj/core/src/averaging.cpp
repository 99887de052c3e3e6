#include "pet/averaging.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pet {

UnitaryAction::UnitaryAction(GroupSequence<OrthogonalOperator> seq, std::string desc)
    : realize_([seq](std::int64_t j) { return seq(j).matrix(); }),
      dim_(seq(0).dim()),
      desc_(std::move(desc)) {}

UnitaryAction UnitaryAction::from_lamplighter(GroupSequence<LamplighterElement> seq, int m,
                                              int n, std::int64_t dimension_cap) {
  std::int64_t order = FiniteWreathElement::order(m, n, dimension_cap);
  if (order < 0)
    throw CapacityError("representation dimension m^n * n exceeds cap " +
                        std::to_string(dimension_cap));
  auto realize = [seq, m, n, dimension_cap](std::int64_t j) {
    return regular_representation(reduce_mod(seq(j), m, n), dimension_cap);
  };
  return UnitaryAction(std::move(realize), static_cast<int>(order),
                       "lamplighter/regular(" + std::to_string(m) + "," + std::to_string(n) + ")");
}

UnitaryAction UnitaryAction::from_function(std::function<Eigen::MatrixXd(std::int64_t)> f,
                                           int dim, std::string desc) {
  return UnitaryAction(std::move(f), dim, std::move(desc));
}

Eigen::VectorXd UnitaryAction::apply(std::int64_t j, const Eigen::VectorXd& x) const {
  if (x.size() != dim_) throw ShapeError("vector dimension does not match the action");
  return realize_(j) * x;
}

UnitaryAction UnitaryAction::adjoint() const {
  auto f = realize_;
  return UnitaryAction([f](std::int64_t j) { return f(j).transpose().eval(); }, dim_,
                       desc_ + "^T");
}

UnitaryAction UnitaryAction::nabla(std::int64_t i) const {
  auto f = realize_;
  return UnitaryAction(
      [f, i](std::int64_t j) { return (f(j) * f(i + j).transpose()).eval(); }, dim_,
      "nabla^" + std::to_string(i) + " " + desc_);
}

double UnitaryAction::validate_window(std::int64_t lo, std::int64_t hi) const {
  double worst = 0.0;
  for (std::int64_t j = lo; j <= hi; ++j)
    worst = std::max(worst, orthogonality_defect(realize_(j)));
  if (worst > 1e-9 * dim_)
    throw PreconditionError("realized operator fails the orthogonality invariant");
  return worst;
}

PolynomialMapZd::PolynomialMapZd(std::vector<std::vector<OrthogonalOperator>> gens) {
  if (gens.empty()) throw ParameterError("polynomial map requires at least one coordinate");
  std::vector<OrthogonalOperator> pool;
  for (const auto& coord : gens) pool.insert(pool.end(), coord.begin(), coord.end());
  if (pool.empty()) throw ParameterError("polynomial map requires generators");
  dim_ = pool.front().dim();
  for (const auto& g : pool)
    if (g.dim() != dim_) throw ParameterError("generators of different dimension");
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i + 1; j < pool.size(); ++j)
      if (!commutes(pool[i], pool[j], orthogonality_tolerance(dim_)))
        throw PreconditionError("polynomial map generators must pairwise commute");
  for (auto& coord : gens) {
    if (coord.empty()) coord.push_back(OrthogonalOperator::identity(dim_));
    towers_.push_back(GroupSequence<OrthogonalOperator>::abelian_binomial(coord));
  }
}

Eigen::MatrixXd PolynomialMapZd::operator()(const IntPoint& g) const {
  if (g.dim() != domain_dim())
    throw ParameterError("lattice point dimension does not match the map");
  Eigen::MatrixXd acc = Eigen::MatrixXd::Identity(dim_, dim_);
  for (std::size_t c = 0; c < towers_.size(); ++c) acc *= towers_[c](g.c[c]).matrix();
  return acc;
}

Eigen::MatrixXd avg_operator(const UnitaryAction& t, const SignedMeasure& mu) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  for (const auto& [i, w] : mu.atoms()) acc += w * t(i);
  return acc;
}

Eigen::MatrixXd avg_operator(const PolynomialMapZd& t,
                             const BasicSignedMeasure<IntPoint, double>& mu) {
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  for (const auto& [g, w] : mu.atoms()) acc += w * t(g);
  return acc;
}

Eigen::VectorXd avg_vector(const UnitaryAction& t, const Eigen::VectorXd& x,
                           const SignedMeasure& mu) {
  if (x.size() != t.dim()) throw ShapeError("vector dimension does not match the action");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(t.dim());
  for (const auto& [i, w] : mu.atoms()) acc += w * (t(i) * x);
  return acc;
}

Eigen::VectorXd avg_vector(const PolynomialMapZd& t, const Eigen::VectorXd& x,
                           const BasicSignedMeasure<IntPoint, double>& mu) {
  if (x.size() != t.dim()) throw ShapeError("vector dimension does not match the map");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(t.dim());
  for (const auto& [g, w] : mu.atoms()) acc += w * (t(g) * x);
  return acc;
}

AverageSweep::AverageSweep(const UnitaryAction& t, Eigen::VectorXd x, bool symmetric)
    : t_(t), x_(std::move(x)), sum_(Eigen::VectorXd::Zero(t.dim())), symmetric_(symmetric) {
  if (x_.size() != t.dim()) throw ShapeError("vector dimension does not match the action");
}

Eigen::VectorXd AverageSweep::next() {
  ++n_;
  if (n_ == 0) {
    sum_ = t_(0) * x_;
    return sum_;
  }
  if (symmetric_) {
    sum_ += t_(n_) * x_ + t_(-n_) * x_;
    return sum_ / static_cast<double>(2 * n_ + 1);
  }
  sum_ += t_(n_) * x_;
  return sum_ / static_cast<double>(n_ + 1);
}

std::int64_t m_threshold(double eps, std::int64_t n) {
  if (eps <= 0.0) throw DomainError("m_threshold requires eps > 0");
  if (n < 0) throw DomainError("m_threshold requires n >= 0");
  if (n == 0) return 0;
  auto m = static_cast<std::int64_t>(std::ceil(2.0 * static_cast<double>(n) / eps));
  while (static_cast<double>(m) * eps < 2.0 * static_cast<double>(n)) ++m;
  while (m > 0 && (static_cast<double>(m) - 1.0) * eps >= 2.0 * static_cast<double>(n)) --m;
  return m;
}

Eigen::MatrixXd descent_lhs(const UnitaryAction& t, std::int64_t n, std::int64_t m) {
  return avg_operator(t, sigma_n(n)) * avg_operator(t, sigma_n(m)).transpose();
}

Eigen::MatrixXd descent_rhs(const UnitaryAction& t, std::int64_t n, std::int64_t m) {
  if (n < 0 || m < 0) throw DomainError("descent indices must be >= 0");
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(static_cast<std::size_t>(n + m) + 1);
  for (std::int64_t j = 0; j <= n + m; ++j) ops.push_back(t(j));
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(t.dim(), t.dim());
  double wm = 1.0 / static_cast<double>(m + 1);
  double wn = 1.0 / static_cast<double>(n + 1);
  for (std::int64_t i = 0; i <= m; ++i) {
    Eigen::MatrixXd inner = Eigen::MatrixXd::Zero(t.dim(), t.dim());
    for (std::int64_t j = 0; j <= n; ++j)
      inner += ops[static_cast<std::size_t>(j)] *
               ops[static_cast<std::size_t>(i + j)].transpose();
    acc += wm * (wn * inner);
  }
  return acc;
}

Eigen::MatrixXd fixed_space_projection(const Eigen::MatrixXd& u) {
  if (u.rows() != u.cols()) throw ShapeError("fixed-space projection requires a square matrix");
  int d = static_cast<int>(u.rows());
  if (!is_orthogonal(u, orthogonality_tolerance(d)))
    throw PreconditionError("fixed-space projection requires an orthogonal operator");
  Eigen::MatrixXd a = u - Eigen::MatrixXd::Identity(d, d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double scale = std::max(sv.size() > 0 ? sv(0) : 0.0, 1.0);
  double tau = 1e-10 * scale;
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < sv.size(); ++k) {
    if (sv(k) <= tau) {
      Eigen::VectorXd v = svd.matrixV().col(k);
      p += v * v.transpose();
    }
  }
  return p;
}

}  // namespace pet
