#include <doctest.h>

#include <thread>

#include "pet/instances.hpp"
#include "pet/random.hpp"
#include "pet/sequence.hpp"

using namespace pet;
using L = LamplighterElement;
using LSeq = GroupSequence<L>;

TEST_CASE("generalized binomial coefficients") {
  CHECK(binom(7, 0) == 1);
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(-1, 2) == 1);
  CHECK(binom(-2, 2) == 3);
  CHECK(binom(-3, 3) == -10);
  CHECK(binom(2, 5) == 0);
  CHECK_THROWS_AS(binom(4, -1), DomainError);
}

TEST_CASE("ordered products: defining recurrences and negative ranges") {
  auto x = [](std::int64_t i) { return L::alpha(i); };

  CHECK(ordered_product<L>(x, 3, 2).is_identity());
  CHECK(ordered_product<L>(x, 3, 2, true).is_identity());

  // prod_{i=k}^{k-3} x_i = x_{k-1}^{-1} x_{k-2}^{-1}
  L fwd = ordered_product<L>(x, 1, -2);
  CHECK(fwd == mul(inverse(x(0)), inverse(x(-1))));

  // the reversed product equals (product of inverses)^{-1}
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<L> vals;
    for (int i = 0; i < 9; ++i) vals.push_back(random_lamplighter(rng, 3, 6));
    auto f = [&vals](std::int64_t i) { return vals[static_cast<std::size_t>(i + 4)]; };
    auto finv = [&f](std::int64_t i) { return inverse(f(i)); };
    std::int64_t k = rng.uniform_int(-4, 4), l = rng.uniform_int(-4, 4);
    CHECK(ordered_product<L>(f, k, l, true) == inverse(ordered_product<L>(finv, k, l)));
  }
}

TEST_CASE("sequence constructors evaluate as defined") {
  L g({{2, 3}}, -1);
  auto c = LSeq::constant(g);
  for (std::int64_t j : {-7, 0, 13}) CHECK(c(j) == g);

  // linear(a,b) at 3 is a^3 b
  L a = L::alpha(0), b = L::beta();
  auto lin = LSeq::linear(a, b);
  CHECK(lin(3) == mul(group_pow(a, 3), b));
  CHECK(lin(0) == b);
  CHECK(lin(-2) == mul(group_pow(a, -2), b));

  // quadratic: T_0 = c, T_1 = bc, T_2 = a b b c
  Rng rng(9);
  L cc = random_lamplighter(rng, 2, 5);
  auto quad = LSeq::quadratic_recurrence(a, b, cc);
  CHECK(quad(0) == cc);
  CHECK(quad(1) == mul(b, cc));
  CHECK(quad(2) == mul(mul(mul(a, b), b), cc));

  // canonical wreath data: T_2 = alpha_0 beta^2, T_{-2} frozen from the oracle
  auto canonical = canonical_wreath_sequence();
  CHECK(canonical(0).is_identity());
  CHECK(canonical(1) == b);
  CHECK(canonical(2) == L({{0, 1}}, 2));
  CHECK(canonical(-2) == L({{-2, 1}, {-1, 2}}, -2));

  CHECK(LSeq::quadratic_recurrence(identity_like(a), identity_like(a), cc)(9) == cc);
}

TEST_CASE("recurrence evaluation respects the window cap") {
  auto seq = LSeq::quadratic_recurrence(L::alpha(0), L::beta(), L(), /*cap=*/64);
  CHECK_NOTHROW(seq(64));
  CHECK_THROWS_AS(seq(65), CapacityError);
  CHECK_THROWS_AS(seq(-65), CapacityError);
}

TEST_CASE("recurrence cache is safe under concurrent readers") {
  auto seq = canonical_wreath_sequence();
  std::vector<L> serial;
  for (std::int64_t j = -50; j <= 50; ++j) serial.push_back(seq(j));

  auto fresh = canonical_wreath_sequence();
  std::vector<std::thread> pool;
  std::vector<bool> ok(4, false);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      bool good = true;
      for (std::int64_t j = -50; j <= 50; ++j)
        good = good && fresh(j) == serial[static_cast<std::size_t>(j + 50)];
      ok[static_cast<std::size_t>(t)] = good;
    });
  for (auto& th : pool) th.join();
  for (bool b : ok) CHECK(b);
}

TEST_CASE("explicit tables evaluate in-window only") {
  auto t = LSeq::table(-2, {L::alpha(0), L::alpha(1), L::alpha(2), L::alpha(3)});
  CHECK(t(-2) == L::alpha(0));
  CHECK(t(1) == L::alpha(3));
  CHECK_THROWS_AS(t(2), CapacityError);
  CHECK_THROWS_AS(t(-3), CapacityError);
}

TEST_CASE("difference operators") {
  L g({{1, 4}}, 2);
  auto c = LSeq::constant(g);
  for (std::int64_t i : {-3, 0, 5}) {
    CHECK(c.delta(i)(7).is_identity());
    CHECK(c.nabla(i)(7).is_identity());
  }

  // delta of a linear sequence is the constant a^i, with no commutation needed
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    L a = random_lamplighter(rng, 3, 6), b = random_lamplighter(rng, 3, 6);
    auto lin = GroupSequence<L>::linear(a, b);
    std::int64_t i = rng.uniform_int(-5, 5);
    for (std::int64_t j = -4; j <= 4; ++j) CHECK(lin.delta(i)(j) == group_pow(a, i));
  }

  auto quad = canonical_wreath_sequence();
  CHECK(quad.delta(1)(0) == L::beta());
  std::int64_t steps[] = {1, 1};
  CHECK(quad.iterated_delta(steps)(0) == L::alpha(0));

  // nabla(T, 0) is the constant identity
  for (std::int64_t j = -4; j <= 4; ++j) CHECK(quad.nabla(0)(j).is_identity());

  // shift semantics: eval(shift(T,2), 3) = eval(T, 5)
  CHECK(quad.shifted(2)(3) == quad(5));
  CHECK(quad.shifted(0)(3) == quad(3));
}

TEST_CASE("degree window checks") {
  auto c = LSeq::constant(L::alpha(2));
  CHECK(degree_upper_check(c, 0, 4));

  auto canonical = canonical_wreath_sequence();
  CHECK(degree_upper_check(canonical, 2, 6));
  CHECK_FALSE(degree_upper_check(canonical, 1, 3));
  // nesting: degree <= d implies degree <= d+1 on the same window
  CHECK(degree_upper_check(canonical, 3, 4));

  CHECK_THROWS_AS(degree_upper_check(canonical, 2, 6, /*budget=*/100), CapacityError);
  CHECK_THROWS_AS(degree_upper_check(canonical, -1, 3), DomainError);
  CHECK_THROWS_AS(degree_upper_check(canonical, 1, 0), DomainError);
}

TEST_CASE("commutation relations checker") {
  CHECK(check_commutation_relations(L::alpha(0), L::beta(), 10));
  CHECK(check_commutation_relations(L::alpha(3), group_pow(L::beta(), 2), 8));
  // commuting pairs always pass
  CHECK(check_commutation_relations(L::alpha(1), L::alpha(4), 6));
  // oracle-recorded refusal: a = (lamp 0 -> 1, shift 1), b = beta
  CHECK_FALSE(check_commutation_relations(L({{0, 1}}, 1), L::beta(), 10));
  CHECK_THROWS_AS(check_commutation_relations(L::alpha(0), L::beta(), -1), DomainError);
}

TEST_CASE("quadratic closed form matches the recurrence") {
  L a = L::alpha(0), b = L::beta(), e;
  CHECK(quadratic_closed_form(a, b, e, 0) == e);

  // j = 3: (a^2 b)(a b)(b) c
  L x1 = b, x2 = mul(a, b), x3 = mul(group_pow(a, 2), b);
  CHECK(quadratic_closed_form(a, b, e, 3) == mul(mul(x3, x2), x1));

  // j = -2: (a^-2 b)^-1 (a^-1 b)^-1 c, the reversed-product extension
  L xm1 = mul(group_pow(a, -2), b), x0 = mul(group_pow(a, -1), b);
  CHECK(quadratic_closed_form(a, b, e, -2) == mul(inverse(xm1), inverse(x0)));

  auto seq = LSeq::quadratic_recurrence(a, b, e);
  for (std::int64_t j = -12; j <= 12; ++j) CHECK(quadratic_closed_form(a, b, e, j) == seq(j));
}

TEST_CASE("iterated differences expose non-Leibman input") {
  // the pair fails the commutation relations, so some triple difference is
  // nontrivial within the step window
  auto bad = LSeq::quadratic_recurrence(L({{0, 1}}, 1), L::beta(), L());
  CHECK_FALSE(degree_upper_check(bad, 2, 4));
}

TEST_CASE("abelian binomial sequences") {
  // degree 0: constant g_0
  auto c = GroupSequence<IntPoint>::abelian_binomial({IntPoint({7})});
  CHECK(c(-3) == IntPoint({7}));

  // Z with gens (0,0,1): j -> C(j,2); j = 5 -> 10
  auto choose2 =
      GroupSequence<IntPoint>::abelian_binomial({IntPoint({0}), IntPoint({0}), IntPoint({1})});
  CHECK(choose2(5) == IntPoint({10}));
  CHECK(choose2(-1) == IntPoint({1}));

  // power_poly(U, k^2) = abelian_binomial([I, U, U^2]) since k^2 = C(k,1) + 2 C(k,2)
  auto u = OrthogonalOperator::rotation(0.37);
  auto direct = GroupSequence<OrthogonalOperator>::power_poly(u, {0, 0, 1});
  auto binom_form = GroupSequence<OrthogonalOperator>::abelian_binomial(
      {OrthogonalOperator::identity(2), u, mul(u, u)});
  for (std::int64_t k = -20; k <= 20; ++k)
    CHECK(approx_equal(direct(k), binom_form(k), 1e-12));

  // every integer polynomial of degree <= 3 factors through the binomial basis
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::int64_t> poly(4);
    for (auto& cf : poly) cf = rng.uniform_int(-4, 4);
    auto p = [&poly](std::int64_t k) {
      std::int64_t acc = 0, kp = 1;
      for (std::int64_t cf : poly) {
        acc += cf * kp;
        kp *= k;
      }
      return acc;
    };
    // finite differences at 0 give the binomial-basis coefficients
    auto dp = [&p](std::int64_t j) {
      std::int64_t m = 0;
      for (std::int64_t i = 0; i <= j; ++i)
        m += ((j - i) % 2 == 0 ? 1 : -1) * binom(j, i) * p(i);
      return m;
    };
    std::vector<OrthogonalOperator> gens;
    for (std::int64_t level = 0; level <= 3; ++level)
      gens.push_back(group_pow(u, dp(level)));
    auto via_binomial = GroupSequence<OrthogonalOperator>::abelian_binomial(gens);
    auto via_poly = GroupSequence<OrthogonalOperator>::power_poly(u, poly);
    for (std::int64_t k = -20; k <= 20; ++k)
      CHECK(approx_equal(via_binomial(k), via_poly(k), 1e-11));
  }

  // non-commuting generators are refused
  CHECK_THROWS_AS(
      GroupSequence<L>::abelian_binomial({L::alpha(0), L::beta()}), PreconditionError);
}

TEST_CASE("declared degree bounds survive the window falsifier") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    auto [a, b] = random_admissible_pair(rng);
    L c = random_lamplighter(rng, 2, 5);
    auto quad = LSeq::quadratic_recurrence(a, b, c);
    REQUIRE(quad.declared_degree() == 2);
    CHECK(degree_upper_check(quad, 2, 3));
    auto lin = LSeq::linear(a, b);
    CHECK(degree_upper_check(lin, 1, 4));
  }
}
