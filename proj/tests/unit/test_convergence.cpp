#include <doctest.h>

#include <numbers>

#include "pet/convergence.hpp"
#include "pet/instances.hpp"
#include "pet/random.hpp"

using namespace pet;

namespace {

PointNet scalar_net(std::int64_t lo, const std::vector<double>& xs) {
  std::vector<Eigen::VectorXd> vals;
  for (double v : xs) {
    Eigen::VectorXd x(1);
    x << v;
    vals.push_back(x);
  }
  return PointNet(lo, std::move(vals));
}

}  // namespace

TEST_CASE("spread over window tails") {
  PointNet constant = scalar_net(0, {2.0, 2.0, 2.0, 2.0});
  for (std::int64_t i = 0; i <= 3; ++i) CHECK(constant.spread_from(i) == 0.0);

  PointNet bump = scalar_net(0, {0.0, 1.0, 0.0, 0.0, 0.0});
  CHECK(bump.spread_from(0) == 1.0);
  CHECK(bump.spread_from(2) == 0.0);

  // monotone in the tail index
  Rng rng(81);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> xs;
    int len = static_cast<int>(rng.uniform_int(2, 30));
    for (int i = 0; i < len; ++i) xs.push_back(rng.uniform(-3.0, 3.0));
    PointNet net = scalar_net(-5, xs);
    for (std::int64_t i = net.lo(); i < net.hi(); ++i)
      CHECK(net.spread_from(i + 1) <= net.spread_from(i));
  }

  CHECK_THROWS_AS(bump.spread_from(5), DomainError);
  CHECK_THROWS_AS(bump.spread_from(-1), DomainError);
}

TEST_CASE("suffix spreads agree with direct evaluation") {
  Rng rng(83);
  std::vector<double> xs;
  for (int i = 0; i < 40; ++i) xs.push_back(rng.uniform(-1.0, 1.0));
  PointNet net = scalar_net(3, xs);
  std::vector<double> all = suffix_spreads(net);
  for (std::int64_t i = net.lo(); i <= net.hi(); ++i)
    CHECK(all[static_cast<std::size_t>(i - net.lo())] == net.spread_from(i));
}

TEST_CASE("oscillation tagging") {
  PointNet constant = scalar_net(0, {1.0, 1.0, 1.0});
  auto osc = constant.oscillation();
  CHECK(osc.value == 0.0);
  CHECK(osc.exact);

  // eventually constant: exact zero, since the window tail is the true tail
  PointNet settles = scalar_net(0, {5.0, 2.0, 2.0, 2.0});
  CHECK(settles.oscillation().value == 0.0);
  CHECK(settles.oscillation().exact);
  CHECK(settles.constant_tail_start() == 1);

  // alternating net: every length->=2 tail has spread 2, but the window
  // minimum is the singleton-tail artifact 0 and is flagged as an estimate
  std::vector<double> alt;
  for (int i = 0; i < 11; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
  PointNet alternating = scalar_net(0, alt);
  for (std::int64_t i = 0; i < alternating.hi(); ++i)
    CHECK(alternating.spread_from(i) == 2.0);
  auto alt_osc = alternating.oscillation();
  CHECK(alt_osc.value == 0.0);
  CHECK_FALSE(alt_osc.exact);

  // 1/(n+1) on [0,100]: the same artifact, flagged
  std::vector<double> decay;
  for (int n = 0; n <= 100; ++n) decay.push_back(1.0 / (n + 1));
  auto decay_osc = scalar_net(0, decay).oscillation();
  CHECK(decay_osc.value == 0.0);
  CHECK_FALSE(decay_osc.exact);
}

TEST_CASE("oscillation is a lower bound for every tail spread") {
  Rng rng(87);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> xs;
    int len = static_cast<int>(rng.uniform_int(2, 25));
    for (int i = 0; i < len; ++i) xs.push_back(rng.uniform(-2.0, 2.0));
    PointNet net = scalar_net(0, xs);
    double osc = net.oscillation().value;
    for (std::int64_t i = net.lo(); i <= net.hi(); ++i) CHECK(osc <= net.spread_from(i));
  }
}

TEST_CASE("sampling templates") {
  Sampling s1 = Sampling::parse("{i}");
  CHECK(s1.at(4) == std::vector<std::int64_t>{4});
  Sampling s2 = Sampling::parse("{i, i+3}");
  CHECK(s2.at(4) == std::vector<std::int64_t>{4, 7});
  Sampling s3 = Sampling::parse("{i, 2i}");
  CHECK(s3.at(5) == std::vector<std::int64_t>{5, 10});
  CHECK(s3.at(0) == std::vector<std::int64_t>{0});  // degenerate singleton at 0
  Sampling s4 = Sampling::parse("{i, 2i+1}");
  CHECK(s4.at(3) == std::vector<std::int64_t>{3, 7});

  CHECK_THROWS_AS(Sampling::parse("i, 2i"), FormatError);
  CHECK_THROWS_AS(Sampling::parse("{j}"), FormatError);
  CHECK_THROWS_AS(Sampling::parse("{3i}"), FormatError);
  CHECK_THROWS_AS(Sampling::parse("{i-1}"), FormatError);
}

TEST_CASE("metastable witness search") {
  Sampling pair = Sampling::parse("{i, i+1}");

  PointNet constant = scalar_net(2, {1.0, 1.0, 1.0, 1.0});
  MetastabilityCertificate cert = metastable_index(constant, 0.5, pair);
  CHECK(cert.found);
  CHECK(cert.witness == 2);  // the first window index

  // alternating values never come eps-close for eps <= 2
  std::vector<double> alt;
  for (int i = 0; i < 50; ++i) alt.push_back(i % 2 == 0 ? 1.0 : -1.0);
  MetastabilityCertificate miss = metastable_index(scalar_net(0, alt), 1.0, pair);
  CHECK_FALSE(miss.found);

  // net 1/(n+1) with eta = {i, 2i}: i = 10 is a valid witness for eps = 0.1
  std::vector<double> decay;
  for (int n = 0; n <= 100; ++n) decay.push_back(1.0 / (n + 1));
  PointNet decay_net = scalar_net(0, decay);
  Sampling doubling = Sampling::parse("{i, 2i}");
  CHECK(std::abs(1.0 / 11 - 1.0 / 21) < 0.1);
  CHECK(decay_net.distance(10, 20) < 0.1);
  MetastabilityCertificate dc = metastable_index(decay_net, 0.1, doubling);
  CHECK(dc.found);
  CHECK(dc.witness <= 10);
  // least-witness property: every smaller index fails the eps test
  for (std::int64_t i = decay_net.lo(); i < dc.witness; ++i) {
    auto idx = doubling.at(i);
    double spread = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        spread = std::max(spread, decay_net.distance(idx[a], idx[b]));
    CHECK(spread >= 0.1);
  }

  CHECK_THROWS_AS(metastable_index(constant, 0.0, pair), DomainError);
  CHECK_THROWS_AS(metastable_index(constant, -1.0, pair), DomainError);

  // a clipped sampled set is recorded as partial and cannot certify
  PointNet short_net = scalar_net(1, {0.0, 100.0, 200.0});
  MetastabilityCertificate partial = metastable_index(short_net, 1.0, doubling);
  CHECK_FALSE(partial.found);
  CHECK(partial.partial);
}

TEST_CASE("lazy scan agrees with the materialized scan") {
  Rng rng(91);
  std::vector<double> xs;
  for (int i = 0; i < 200; ++i) xs.push_back(rng.uniform(0.0, 1.0) / (1.0 + i));
  PointNet net = scalar_net(0, xs);
  Sampling eta = Sampling::parse("{i, 2i}");
  MetastabilityCertificate dense = metastable_index(net, 0.05, eta);
  MetastabilityCertificate lazy = metastable_scan(
      [&xs](std::int64_t j) {
        Eigen::VectorXd v(1);
        v << xs[static_cast<std::size_t>(j)];
        return v;
      },
      0, net.hi(), 0.05, eta);
  CHECK(dense.found == lazy.found);
  CHECK(dense.witness == lazy.witness);
  CHECK(dense.spread == lazy.spread);
}

TEST_CASE("uniform rate search aggregates the least witnesses") {
  Sampling eta = Sampling::parse("{i, i+1}");
  std::vector<PointNet> instances;
  instances.push_back(scalar_net(0, {3.0, 3.0, 3.0, 3.0}));  // witness 0
  std::vector<double> slow;
  for (int n = 0; n < 30; ++n) slow.push_back(4.0 / (n + 1));
  instances.push_back(scalar_net(0, slow));  // positive witness

  UniformRateReport report = uniform_rate_search(instances, 0.3, eta, 29);
  CHECK(report.all_found);
  CHECK(report.certificates.size() == 2);
  CHECK(report.certificates[0].witness == 0);
  CHECK(report.aggregate ==
        std::max(report.certificates[0].witness, report.certificates[1].witness));
  CHECK(report.certificates[1].witness > 0);

  UniformRateReport not_found = uniform_rate_search(instances, 1e-9, eta, 29);
  CHECK_FALSE(not_found.all_found);
  CHECK(not_found.aggregate == -1);
}

TEST_CASE("structured/pseudorandom decomposition") {
  UnitaryAction idact(
      GroupSequence<OrthogonalOperator>::constant(OrthogonalOperator::identity(3)));
  Eigen::VectorXd x(3);
  x << 1.0, -2.0, 0.5;
  Decomposition all_structured = structured_decompose(idact, x, 16);
  CHECK((all_structured.structured - x).norm() < 1e-12);
  CHECK(all_structured.random.norm() < 1e-12);
  CHECK(all_structured.rank == 3);

  // quarter rotation: Av_3 vanishes exactly, so everything is pseudorandom
  UnitaryAction quarter(GroupSequence<OrthogonalOperator>::power_poly(
      OrthogonalOperator::rotation(std::numbers::pi / 2), {0, 1}));
  Eigen::VectorXd y(2);
  y << 0.3, -0.9;
  Decomposition all_random = structured_decompose(quarter, y, 3);
  CHECK(all_random.rank == 0);
  CHECK(all_random.structured.norm() < 1e-12);
  CHECK((all_random.random - y).norm() < 1e-12);
  CHECK(all_random.killed_norm < 1e-12);

  Rng rng(97);
  for (int trial = 0; trial < 10; ++trial) {
    AbelianOrthogonalInstance inst = random_abelian_degree2(rng);
    UnitaryAction act(GroupSequence<OrthogonalOperator>::abelian_binomial(inst.generators));
    Eigen::VectorXd v = random_unit_vector(rng, inst.dim) * rng.uniform(0.2, 2.5);
    Decomposition dec = structured_decompose(act, v, 257);
    double nv = v.norm();
    CHECK(dec.additivity_residual <= 1e-12 * nv);
    CHECK(dec.orthogonality_residual <= 1e-10 * nv * nv);
    CHECK(dec.killed_norm <= 1e-8 * nv);

    // idempotence: decomposing the structured part returns it unchanged
    Decomposition again = structured_decompose(act, dec.structured, 257);
    CHECK((again.structured - dec.structured).norm() <= 1e-9 * std::max(1.0, nv));
    CHECK(again.random.norm() <= 1e-9 * std::max(1.0, nv));
  }

  CHECK_THROWS_AS(structured_decompose(idact, y, 4), ShapeError);
  CHECK_THROWS_AS(structured_decompose(idact, x, -1), DomainError);
}

TEST_CASE("finite dominated convergence check") {
  std::vector<std::int64_t> points{0, 1, 2};
  Eigen::VectorXd a(2), b(2);
  a << 1.0, 0.0;
  b << 0.0, 2.0;

  // all fields constant: both sides are zero, equality
  std::vector<VectorField<std::int64_t>> constant_fields;
  for (int n = 0; n < 4; ++n)
    constant_fields.emplace_back(
        std::map<std::int64_t, Eigen::VectorXd>{{0, a}, {1, b}, {2, a}});
  SignedMeasure mu({{0, 0.5}, {2, -1.0}});
  DctReport r = dct_check(points, 0, constant_fields, mu);
  CHECK(r.pass);
  CHECK(r.osc_lhs == 0.0);
  CHECK(r.osc_rhs == 0.0);
  CHECK(r.osc_exact);
  CHECK(r.spread_lhs == 0.0);

  // single-point space: spread sides agree exactly for a unit atom
  std::vector<std::int64_t> one_point{5};
  std::vector<VectorField<std::int64_t>> moving;
  for (int n = 0; n < 5; ++n) {
    Eigen::VectorXd v(2);
    v << (n < 2 ? static_cast<double>(n) : 2.0), 0.0;
    moving.emplace_back(std::map<std::int64_t, Eigen::VectorXd>{{5, v}});
  }
  DctReport single = dct_check(one_point, 0, moving, SignedMeasure::point_mass(5, 1.0));
  CHECK(single.pass);
  CHECK(single.equality);
  CHECK(single.spread_lhs == 2.0);
  CHECK(single.spread_rhs == 2.0);

  // a field that never settles is refused
  std::vector<VectorField<std::int64_t>> restless;
  for (int n = 0; n < 4; ++n) {
    Eigen::VectorXd v(2);
    v << static_cast<double>(n), 0.0;
    restless.emplace_back(std::map<std::int64_t, Eigen::VectorXd>{{0, v}, {1, a}, {2, a}});
  }
  CHECK_THROWS_AS(dct_check(points, 0, restless, mu), PreconditionError);

  // measure support must live inside the point set
  CHECK_THROWS_AS(dct_check(points, 0, constant_fields, SignedMeasure::point_mass(9, 1.0)),
                  DomainError);
}
