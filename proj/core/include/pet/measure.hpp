#ifndef PET_MEASURE_HPP
#define PET_MEASURE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <boost/rational.hpp>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pet/errors.hpp"
#include "pet/group.hpp"

namespace pet {

using Rational = boost::rational<std::int64_t>;

inline double weight_abs(double w) { return std::abs(w); }
inline Rational weight_abs(const Rational& w) { return w < Rational(0) ? -w : w; }

// ---------------------------------------------------------------------------
// Finitely supported signed measures mu = sum c_i delta_i.
//
// The atom list is canonical: sorted by point, no zero weights.  The weight
// type W is double on numerical paths and Rational in the exact mode used by
// the property suite; both share this one interface.
// ---------------------------------------------------------------------------

template <class P, class W = double>
class BasicSignedMeasure {
 public:
  using Atom = std::pair<P, W>;

  BasicSignedMeasure() = default;
  explicit BasicSignedMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    canonicalize();
  }

  static BasicSignedMeasure point_mass(P p, W w = W(1)) {
    return BasicSignedMeasure({{std::move(p), std::move(w)}});
  }

  /// Uniform probability weights on the given points.
  static BasicSignedMeasure uniform(const std::vector<P>& points) {
    if (points.empty()) throw DomainError("uniform measure requires a nonempty support");
    std::vector<Atom> atoms;
    atoms.reserve(points.size());
    W w = W(1) / W(static_cast<std::int64_t>(points.size()));
    for (const P& p : points) atoms.emplace_back(p, w);
    return BasicSignedMeasure(std::move(atoms));
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  W at(const P& p) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), p,
                               [](const Atom& a, const P& q) { return a.first < q; });
    return (it != atoms_.end() && it->first == p) ? it->second : W(0);
  }

  /// Total variation: sum of absolute atomic weights.
  W tv_norm() const {
    W s = W(0);
    for (const Atom& a : atoms_) s += weight_abs(a.second);
    return s;
  }

  /// mu(Omega) = sum of weights.
  W total() const {
    W s = W(0);
    for (const Atom& a : atoms_) s += a.second;
    return s;
  }

  /// |mu| = sum |c_i| delta_i.
  BasicSignedMeasure abs() const {
    std::vector<Atom> atoms = atoms_;
    for (Atom& a : atoms) a.second = weight_abs(a.second);
    return BasicSignedMeasure(std::move(atoms));
  }

  /// Mass c at point p moves to p + i.
  BasicSignedMeasure translated(const P& i) const {
    std::vector<Atom> atoms = atoms_;
    for (Atom& a : atoms) a.first = a.first + i;
    return BasicSignedMeasure(std::move(atoms));
  }

  friend BasicSignedMeasure operator+(const BasicSignedMeasure& a, const BasicSignedMeasure& b) {
    std::vector<Atom> atoms = a.atoms_;
    atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
    return BasicSignedMeasure(std::move(atoms));
  }

  friend BasicSignedMeasure operator-(const BasicSignedMeasure& a, const BasicSignedMeasure& b) {
    return a + (b * W(-1));
  }

  friend BasicSignedMeasure operator*(const BasicSignedMeasure& a, const W& s) {
    std::vector<Atom> atoms = a.atoms_;
    for (Atom& x : atoms) x.second = x.second * s;
    return BasicSignedMeasure(std::move(atoms));
  }

  friend BasicSignedMeasure operator*(const W& s, const BasicSignedMeasure& a) { return a * s; }

  friend bool operator==(const BasicSignedMeasure&, const BasicSignedMeasure&) = default;

 private:
  void canonicalize() {
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& x, const Atom& y) { return x.first < y.first; });
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (Atom& a : atoms_) {
      if (!out.empty() && out.back().first == a.first) {
        out.back().second += a.second;
        if (out.back().second == W(0)) out.pop_back();
      } else if (!(a.second == W(0))) {
        out.push_back(std::move(a));
      }
    }
    atoms_ = std::move(out);
  }

  std::vector<Atom> atoms_;
};

using SignedMeasure = BasicSignedMeasure<std::int64_t, double>;
using RationalMeasure = BasicSignedMeasure<std::int64_t, Rational>;

/// sigma_n: weights 1/(n+1) at each of 0..n.  n < 0 is a domain error.
template <class W = double>
BasicSignedMeasure<std::int64_t, W> sigma_n(std::int64_t n) {
  if (n < 0) throw DomainError("sigma_n requires n >= 0");
  std::vector<std::pair<std::int64_t, W>> atoms;
  atoms.reserve(static_cast<std::size_t>(n) + 1);
  W w = W(1) / W(n + 1);
  for (std::int64_t i = 0; i <= n; ++i) atoms.emplace_back(i, w);
  return BasicSignedMeasure<std::int64_t, W>(std::move(atoms));
}

/// Alternate preset: weights 1/(2n+1) at -n..n.
template <class W = double>
BasicSignedMeasure<std::int64_t, W> sigma_symmetric(std::int64_t n) {
  if (n < 0) throw DomainError("sigma_symmetric requires n >= 0");
  std::vector<std::pair<std::int64_t, W>> atoms;
  atoms.reserve(2 * static_cast<std::size_t>(n) + 1);
  W w = W(1) / W(2 * n + 1);
  for (std::int64_t i = -n; i <= n; ++i) atoms.emplace_back(i, w);
  return BasicSignedMeasure<std::int64_t, W>(std::move(atoms));
}

/// <f, mu> = sum_i c_i f(i) for a callable field.
template <class P, class W, class F>
  requires std::is_invocable_v<F&, const P&>
auto pair_scalar(F&& f, const BasicSignedMeasure<P, W>& mu) {
  using R = decltype(W(0) * f(mu.atoms().empty() ? P() : mu.atoms().front().first));
  R s = R(0);
  for (const auto& [p, w] : mu.atoms()) s += w * f(p);
  return s;
}

/// Map-backed scalar field: a value missing at a support point is a domain
/// error.
template <class P, class W>
W pair_scalar(const std::map<P, W>& f, const BasicSignedMeasure<P, W>& mu) {
  W s = W(0);
  for (const auto& [p, w] : mu.atoms()) {
    auto it = f.find(p);
    if (it == f.end()) throw DomainError("field has no value at a support point of the measure");
    s += w * it->second;
  }
  return s;
}

/// Finite-support field of vectors (or matrices) of one common dimension.
template <class P, class V = Eigen::VectorXd>
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::map<P, V> values) : values_(std::move(values)) {
    auto it = values_.begin();
    if (it == values_.end()) return;
    auto rows = it->second.rows();
    auto cols = it->second.cols();
    for (const auto& [p, v] : values_)
      if (v.rows() != rows || v.cols() != cols)
        throw ShapeError("vector field values must share one dimension");
  }

  const std::map<P, V>& values() const { return values_; }

  const V& at(const P& p) const {
    auto it = values_.find(p);
    if (it == values_.end())
      throw DomainError("field has no value at a support point of the measure");
    return it->second;
  }

  bool defined_at(const P& p) const { return values_.count(p) != 0; }

 private:
  std::map<P, V> values_;
};

/// <<F, mu>> = sum F(x) mu({x}); the finite-support Banach pairing.
template <class P, class V>
V pair_vector(const VectorField<P, V>& field, const BasicSignedMeasure<P, double>& mu) {
  if (mu.atoms().empty()) throw DomainError("pair_vector of the zero measure is ill-typed");
  const V& first = field.at(mu.atoms().front().first);
  V acc = V::Zero(first.rows(), first.cols());
  for (const auto& [p, w] : mu.atoms()) acc += w * field.at(p);
  return acc;
}

// ---------------------------------------------------------------------------
// Folner nets of finite subsets of Z^d, indexed by N.
// ---------------------------------------------------------------------------

class FolnerNet {
 public:
  /// F_n = {0..n} in Z.
  static FolnerNet z_initial_segments();
  /// F_n = {-n..n} in Z.
  static FolnerNet z_symmetric_intervals();
  /// F_n = [0,n]^d in Z^d.
  static FolnerNet zd_boxes(int d);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  /// The finite set F_i; i < 0 is a domain error.
  std::vector<IntPoint> set(std::int64_t i) const;

  /// Uniform probability measure on F_i.
  BasicSignedMeasure<IntPoint, double> sigma(std::int64_t i) const;

  /// |F_i symmetric-difference (g + F_i)| / |F_i|.
  double defect(std::int64_t i, const IntPoint& g) const;

 private:
  FolnerNet(std::string name, int dim, std::function<std::vector<IntPoint>(std::int64_t)> gen)
      : name_(std::move(name)), dim_(dim), gen_(std::move(gen)) {}

  std::string name_;
  int dim_;
  std::function<std::vector<IntPoint>(std::int64_t)> gen_;
};

}  // namespace pet

#endif  // PET_MEASURE_HPP
