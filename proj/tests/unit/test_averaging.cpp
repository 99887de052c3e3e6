#include <doctest.h>

#include <numbers>

#include "pet/averaging.hpp"
#include "pet/instances.hpp"
#include "pet/random.hpp"
#include "pet/sequence.hpp"

using namespace pet;

namespace {

UnitaryAction rotation_power_action(double theta) {
  return UnitaryAction(
      GroupSequence<OrthogonalOperator>::power_poly(OrthogonalOperator::rotation(theta), {0, 1}),
      "power_poly");
}

}  // namespace

TEST_CASE("operator averages") {
  auto id2 = OrthogonalOperator::identity(2);
  UnitaryAction constant(GroupSequence<OrthogonalOperator>::constant(id2));
  CHECK((avg_operator(constant, sigma_n(7)) - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);

  // power_poly with p(k) = k against sigma_1: (U^0 + U^1)/2 = (I + U)/2
  auto u = OrthogonalOperator::rotation(0.81);
  UnitaryAction act = rotation_power_action(0.81);
  Eigen::MatrixXd expect = 0.5 * (Eigen::MatrixXd::Identity(2, 2) + u.matrix());
  CHECK((avg_operator(act, sigma_n(1)) - expect).cwiseAbs().maxCoeff() < 1e-15);

  // averaging against a point mass picks out T_i
  CHECK((avg_operator(act, SignedMeasure::point_mass(5, 1.0)) - act(5)).norm() < 1e-13);
}

TEST_CASE("vector averages") {
  UnitaryAction act = rotation_power_action(std::numbers::pi / 2);
  Eigen::VectorXd zero = Eigen::VectorXd::Zero(2);
  CHECK(avg_vector(act, zero, sigma_n(9)).norm() == 0.0);

  Eigen::VectorXd x(2);
  x << 1.0, 0.0;
  // four quarter-turn rotates of (1,0) average to the origin
  CHECK(avg_vector(act, x, sigma_n(3)).norm() < 1e-15);

  UnitaryAction idact(GroupSequence<OrthogonalOperator>::constant(OrthogonalOperator::identity(2)));
  for (std::int64_t n : {0, 3, 17}) CHECK((avg_vector(idact, x, sigma_n(n)) - x).norm() < 1e-14);

  CHECK_THROWS_AS(avg_vector(act, Eigen::VectorXd::Zero(3), sigma_n(1)), ShapeError);
}

TEST_CASE("average sweep matches direct summation") {
  Rng rng(51);
  AbelianOrthogonalInstance inst = random_abelian_degree2(rng);
  UnitaryAction act(GroupSequence<OrthogonalOperator>::abelian_binomial(inst.generators));
  Eigen::VectorXd x = random_unit_vector(rng, inst.dim);

  AverageSweep sweep(act, x);
  for (std::int64_t n = 0; n <= 60; ++n) {
    Eigen::VectorXd via_sweep = sweep.next();
    Eigen::VectorXd direct = avg_vector(act, x, sigma_n(n));
    CHECK((via_sweep - direct).norm() < 1e-12);
  }

  AverageSweep sym(act, x, /*symmetric=*/true);
  for (std::int64_t n = 0; n <= 25; ++n) {
    Eigen::VectorXd via_sweep = sym.next();
    Eigen::VectorXd direct = avg_vector(act, x, sigma_symmetric(n));
    CHECK((via_sweep - direct).norm() < 1e-12);
  }
}

TEST_CASE("unitary contraction and operator-norm bound") {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    AbelianOrthogonalInstance inst = random_abelian_degree2(rng);
    UnitaryAction act(GroupSequence<OrthogonalOperator>::abelian_binomial(inst.generators));
    Eigen::VectorXd x = random_unit_vector(rng, inst.dim) * rng.uniform(0.1, 3.0);
    Eigen::VectorXd y = random_unit_vector(rng, inst.dim) * rng.uniform(0.1, 3.0);
    std::int64_t n = rng.uniform_int(0, 40);
    double lhs = (avg_vector(act, x, sigma_n(n)) - avg_vector(act, y, sigma_n(n))).norm();
    CHECK(lhs <= (x - y).norm() * (1.0 + 1e-9));
    CHECK(spectral_norm(avg_operator(act, sigma_n(n))) <= 1.0 + 1e-9);
  }
}

TEST_CASE("adjoint-average identity") {
  Rng rng(57);
  AbelianOrthogonalInstance inst = random_abelian_degree2(rng);
  UnitaryAction act(GroupSequence<OrthogonalOperator>::abelian_binomial(inst.generators));
  SignedMeasure mu({{0, 0.25}, {3, -1.5}, {7, 0.75}});
  Eigen::MatrixXd lhs = avg_operator(act, mu).transpose();
  Eigen::MatrixXd rhs = avg_operator(act.adjoint(), mu);
  CHECK((lhs - rhs).norm() == 0.0);
}

TEST_CASE("m_threshold") {
  CHECK(m_threshold(0.5, 3) == 12);
  CHECK(m_threshold(0.5, 5) == 20);
  CHECK(m_threshold(0.25, 10) == 80);
  CHECK(m_threshold(0.7, 0) == 0);
  CHECK(m_threshold(0.3, 4) == 27);  // 2*4/0.3 = 26.66..
  CHECK_THROWS_AS(m_threshold(0.0, 3), DomainError);
  CHECK_THROWS_AS(m_threshold(-1.0, 3), DomainError);
}

TEST_CASE("descent identity and inequality") {
  auto id3 = OrthogonalOperator::identity(3);
  UnitaryAction constant(GroupSequence<OrthogonalOperator>::constant(id3));
  CHECK((descent_lhs(constant, 4, 9) - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-14);
  CHECK((descent_rhs(constant, 4, 9) - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-14);

  // n = 0: both sides equal T_0 (Av_m T)^T exactly
  Rng rng(61);
  AbelianOrthogonalInstance inst = random_abelian_degree2(rng);
  UnitaryAction act(GroupSequence<OrthogonalOperator>::abelian_binomial(inst.generators));
  CHECK((descent_lhs(act, 0, 12) - descent_rhs(act, 0, 12)).cwiseAbs().maxCoeff() < 1e-13);

  // the quantitative bound at the threshold
  for (int trial = 0; trial < 5; ++trial) {
    AbelianOrthogonalInstance in2 = random_abelian_degree2(rng);
    UnitaryAction a2(GroupSequence<OrthogonalOperator>::abelian_binomial(in2.generators));
    std::int64_t n = 5;
    double eps = 0.5;
    std::int64_t m = m_threshold(eps, n);
    REQUIRE(m == 20);
    double err = spectral_norm(descent_lhs(a2, n, m) - descent_rhs(a2, n, m));
    CHECK(err <= eps + 1e-8);
  }
}

TEST_CASE("fixed-space projection") {
  Eigen::MatrixXd id4 = Eigen::MatrixXd::Identity(4, 4);
  CHECK((fixed_space_projection(id4) - id4).norm() < 1e-12);

  Eigen::MatrixXd rot = OrthogonalOperator::rotation(std::numbers::pi / 2).matrix();
  CHECK(fixed_space_projection(rot).norm() < 1e-12);

  auto block = OrthogonalOperator::block_diagonal(
      {OrthogonalOperator::rotation(std::numbers::pi / 3), OrthogonalOperator::identity(1)});
  Eigen::MatrixXd p = fixed_space_projection(block.matrix());
  Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(3, 3);
  expect(2, 2) = 1.0;
  CHECK((p - expect).cwiseAbs().maxCoeff() < 1e-10);

  // residual check: UPx = Px for random x
  Rng rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x = random_unit_vector(rng, 3);
    CHECK((block.matrix() * p * x - p * x).norm() < 1e-10);
  }

  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(fixed_space_projection(skew), PreconditionError);
}

TEST_CASE("spectral norm") {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  CHECK(spectral_norm(d) == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(spectral_norm(Eigen::MatrixXd::Zero(4, 4)) == 0.0);
  CHECK(spectral_norm(OrthogonalOperator::rotation(1.1).matrix()) ==
        doctest::Approx(1.0).epsilon(1e-9));
  Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-2.0, 2.0);
    double s = spectral_norm(a);
    CHECK(s <= a.norm() + 1e-12);               // Frobenius upper bound
    CHECK(s >= a.colwise().norm().maxCoeff() - 1e-9);  // column norm lower bound
  }
}

TEST_CASE("lamplighter-backed actions realize the group law") {
  auto seq = canonical_wreath_sequence();
  UnitaryAction act = UnitaryAction::from_lamplighter(seq, 2, 3);
  REQUIRE(act.dim() == 24);
  CHECK(act.validate_window(-6, 6) == 0.0);  // permutation matrices are exact

  for (std::int64_t i : {-3, 0, 2}) {
    for (std::int64_t j : {-1, 1, 4}) {
      Eigen::MatrixXd lhs =
          regular_representation(reduce_mod(mul(seq(i), seq(j)), 2, 3));
      CHECK((lhs - act(i) * act(j)).norm() == 0.0);
    }
  }

  // cap: (Z/2) wr (Z/8) has dimension 2^8 * 8 = 2048 > 256
  CHECK_THROWS_AS(UnitaryAction::from_lamplighter(seq, 2, 8), CapacityError);
}

TEST_CASE("polynomial maps on Z^2 under box averages") {
  auto u1 = OrthogonalOperator::rotation(0.9);
  auto u2 = OrthogonalOperator::rotation(-1.7);
  PolynomialMapZd map({{OrthogonalOperator::identity(2), u1},
                       {OrthogonalOperator::identity(2), u2, mul(u2, u2)}});
  REQUIRE(map.domain_dim() == 2);

  FolnerNet boxes = FolnerNet::zd_boxes(2);
  auto mu = boxes.sigma(6);
  Eigen::MatrixXd via_pairing = avg_operator(map, mu);

  Eigen::MatrixXd direct = Eigen::MatrixXd::Zero(2, 2);
  for (std::int64_t a = 0; a <= 6; ++a)
    for (std::int64_t b = 0; b <= 6; ++b) direct += map(IntPoint({a, b}));
  direct /= 49.0;
  CHECK((via_pairing - direct).cwiseAbs().maxCoeff() < 1e-12);

  // sampled triple differences of the degree-2 map vanish
  Rng rng(73);
  for (int trial = 0; trial < 12; ++trial) {
    auto rand_point = [&rng]() {
      return IntPoint({rng.uniform_int(-2, 2), rng.uniform_int(-2, 2)});
    };
    IntPoint g1 = rand_point(), g2 = rand_point(), g3 = rand_point(), h = rand_point();
    auto diff = [](const IntPoint& g, auto&& t) {
      return [g, t](const IntPoint& p) { return (t(mul(g, p)) * t(p).transpose()).eval(); };
    };
    auto base = [&map](const IntPoint& p) { return map(p); };
    auto d1 = diff(g1, base);
    auto d2 = diff(g2, d1);
    auto d3 = diff(g3, d2);
    CHECK((d3(h) - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-10);
  }

  CHECK_THROWS_AS(PolynomialMapZd({{u1}, {OrthogonalOperator::rotation(0.4),
                                          OrthogonalOperator::identity(3)}}),
                  ParameterError);
}
