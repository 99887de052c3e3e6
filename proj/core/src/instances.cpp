#include "pet/instances.hpp"

#include <Eigen/QR>
#include <cmath>
#include <numbers>

namespace pet {

LamplighterElement random_lamplighter(Rng& rng, int max_lamps, std::int64_t range) {
  int count = static_cast<int>(rng.uniform_int(0, max_lamps));
  std::vector<LamplighterElement::Lamp> lamps;
  lamps.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::int64_t val = rng.uniform_int(-range, range - 1);
    if (val >= 0) ++val;  // nonzero
    lamps.emplace_back(rng.uniform_int(-range, range), val);
  }
  return LamplighterElement(std::move(lamps), rng.uniform_int(-range, range));
}

std::pair<LamplighterElement, LamplighterElement> random_admissible_pair(Rng& rng) {
  if (rng.uniform_int(0, 9) == 0) {
    // both powers of beta: an abelian pair
    return {group_pow(LamplighterElement::beta(), rng.uniform_int(-3, 3)),
            group_pow(LamplighterElement::beta(), rng.uniform_int(-3, 3))};
  }
  int count = static_cast<int>(rng.uniform_int(1, 3));
  std::vector<LamplighterElement::Lamp> lamps;
  for (int i = 0; i < count; ++i) {
    std::int64_t val = rng.uniform_int(-4, 3);
    if (val >= 0) ++val;
    lamps.emplace_back(rng.uniform_int(-6, 6), val);
  }
  LamplighterElement a(std::move(lamps), 0);  // lamps-only
  LamplighterElement b = random_lamplighter(rng, 3, 6);
  return {a, b};
}

AbelianOrthogonalInstance random_abelian_degree2(Rng& rng, int dim_min, int dim_max) {
  int dim = static_cast<int>(rng.uniform_int(dim_min, dim_max));
  Eigen::MatrixXd seed(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) seed(i, j) = rng.uniform(-1.0, 1.0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(seed);
  Eigen::MatrixXd q = qr.householderQ();

  auto block_rotation = [&](bool allow_fixed) {
    Eigen::MatrixXd r = Eigen::MatrixXd::Identity(dim, dim);
    for (int off = 0; off + 1 < dim; off += 2) {
      double theta = rng.uniform(-std::numbers::pi, std::numbers::pi);
      if (allow_fixed && rng.uniform_int(0, 3) == 0) theta = 0.0;  // keep a fixed plane
      r(off, off) = std::cos(theta);
      r(off, off + 1) = -std::sin(theta);
      r(off + 1, off) = std::sin(theta);
      r(off + 1, off + 1) = std::cos(theta);
    }
    return r;
  };

  AbelianOrthogonalInstance out;
  out.dim = dim;
  for (int g = 0; g < 3; ++g) {
    Eigen::MatrixXd m = q * block_rotation(/*allow_fixed=*/true) * q.transpose();
    out.generators.emplace_back(std::move(m));
  }
  return out;
}

Eigen::VectorXd random_unit_vector(Rng& rng, int dim) {
  Eigen::VectorXd x(dim);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < dim; ++i) x(i) = rng.uniform(-1.0, 1.0);
    norm2 = x.squaredNorm();
  } while (norm2 < 1e-8);
  return x / std::sqrt(norm2);
}

}  // namespace pet
