#ifndef PET_SEQUENCE_HPP
#define PET_SEQUENCE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pet/errors.hpp"
#include "pet/group.hpp"
#include "pet/orthogonal.hpp"

namespace pet {

/// Generalized integer binomial C(k, j) = k(k-1)...(k-j+1)/j!, valid for
/// negative k.  j < 0 is a domain error.
inline std::int64_t binom(std::int64_t k, std::int64_t j) {
  if (j < 0) throw DomainError("binomial coefficient requires j >= 0");
  __int128 num = 1;
  for (std::int64_t i = 0; i < j; ++i) {
    num *= (k - i);
    if (num > (__int128(1) << 100) || num < -(__int128(1) << 100))
      throw CapacityError("binomial coefficient overflow");
  }
  __int128 den = 1;
  for (std::int64_t i = 2; i <= j; ++i) den *= i;
  __int128 q = num / den;  // always exact: product of j consecutive integers
  if (q > INT64_MAX || q < INT64_MIN) throw CapacityError("binomial coefficient overflow");
  return static_cast<std::int64_t>(q);
}

// ---------------------------------------------------------------------------
// Ordered products over an integer range.
//
// prod_{i=k}^{l} x_i is characterized by the empty product at l = k-1 and the
// right-append recurrence; extending below the empty range yields inverse
// products (prod_{i=k}^{k-3} x_i = x_{k-1}^{-1} x_{k-2}^{-1}).  The reversed
// variant appends new terms on the left instead.
// ---------------------------------------------------------------------------

template <class G, class F>
G ordered_product(F&& x, std::int64_t k, std::int64_t l, bool reversed = false) {
  G acc = identity_like(x(k));
  if (l >= k) {
    for (std::int64_t i = k; i <= l; ++i) acc = reversed ? mul(x(i), acc) : mul(acc, x(i));
  } else if (l <= k - 2) {
    if (reversed) {
      for (std::int64_t i = l + 1; i <= k - 1; ++i) acc = mul(acc, inverse(x(i)));
    } else {
      for (std::int64_t i = k - 1; i >= l + 1; --i) acc = mul(acc, inverse(x(i)));
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Z-indexed group sequences with the discrete-difference calculus.
//
// A sequence of Leibman degree at most d has all (d+1)-fold iterated
// differences Delta^{i_d}...Delta^{i_0} T equal to the constant identity.
// Constructors produce that property by construction; degree_upper_check can
// only falsify it on a finite window.
// ---------------------------------------------------------------------------

inline constexpr std::int64_t kDefaultRecurrenceCap = 1'000'000;

template <class G>
class GroupSequence {
 public:
  using element_type = G;

  G operator()(std::int64_t j) const { return impl_->fn(j); }
  G eval(std::int64_t j) const { return impl_->fn(j); }

  const std::string& kind() const { return impl_->kind; }
  /// Upper bound on the Leibman degree when known from the constructor.
  std::optional<int> declared_degree() const { return impl_->degree_bound; }

  static GroupSequence constant(G g) {
    return make([g](std::int64_t) { return g; }, "constant", 0);
  }

  /// k -> a^k b, the unique degree-<=1 sequence with T_0 = b and
  /// Delta^1 T_0 = a.
  static GroupSequence linear(G a, G b) {
    return make([a, b](std::int64_t k) { return mul(group_pow(a, k), b); }, "linear", 1);
  }

  /// The unique quadratic candidate with Delta^1 Delta^1 T_0 = a,
  /// Delta^1 T_0 = b, T_0 = c, extended in both directions by
  ///   T_{k+2} = a T_{k+1} T_k^* T_{k+1}   and   T_k = T_{k+1} T_{k+2}^* a T_{k+1}.
  /// No commutation check is made here; check_commutation_relations and
  /// degree_upper_check are the separate gates.
  static GroupSequence quadratic_recurrence(G a, G b, G c,
                                            std::int64_t cap = kDefaultRecurrenceCap) {
    auto table = std::make_shared<QuadraticTable>(std::move(a), std::move(b), std::move(c), cap);
    return make([table](std::int64_t j) { return table->at(j); }, "quadratic_recurrence", 2);
  }

  /// j -> g_0 g_1^C(j,1) ... g_d^C(j,d) for pairwise-commuting generators.
  static GroupSequence abelian_binomial(std::vector<G> gens) {
    if (gens.empty()) throw ParameterError("abelian_binomial requires at least one generator");
    check_pairwise_commuting(gens);
    int degree = static_cast<int>(gens.size()) - 1;
    return make(
        [gens](std::int64_t j) {
          G acc = gens[0];
          for (std::size_t lvl = 1; lvl < gens.size(); ++lvl)
            acc = mul(acc, group_pow(gens[lvl], binom(j, static_cast<std::int64_t>(lvl))));
          return acc;
        },
        "abelian_binomial", degree);
  }

  /// k -> base^{p(k)} for an integer-coefficient polynomial p.
  static GroupSequence power_poly(G base, std::vector<std::int64_t> coeffs) {
    int degree = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) degree = static_cast<int>(i);
    return make(
        [base, coeffs](std::int64_t k) {
          __int128 p = 0, kp = 1;
          for (std::size_t i = 0; i < coeffs.size(); ++i) {
            p += kp * coeffs[i];
            kp *= k;
          }
          if (p > INT64_MAX || p < INT64_MIN)
            throw CapacityError("polynomial exponent overflow");
          return group_pow(base, static_cast<std::int64_t>(p));
        },
        "power_poly", degree);
  }

  /// Explicit finite table on [lo, lo + values.size()); evaluation outside
  /// the window is a capacity error.
  static GroupSequence table(std::int64_t lo, std::vector<G> values) {
    if (values.empty()) throw ParameterError("table sequence requires at least one value");
    return make(
        [lo, values](std::int64_t j) -> G {
          if (j < lo || j >= lo + static_cast<std::int64_t>(values.size()))
            throw CapacityError("index outside explicit table window");
          return values[static_cast<std::size_t>(j - lo)];
        },
        "explicit_table", std::nullopt);
  }

  static GroupSequence from_function(std::function<G(std::int64_t)> f,
                                     std::string kind = "function",
                                     std::optional<int> degree_bound = std::nullopt) {
    return make(std::move(f), std::move(kind), degree_bound);
  }

  /// Translation: j -> T_{i+j}.  Leibman degree is translation invariant.
  GroupSequence shifted(std::int64_t i) const {
    auto self = impl_;
    return make([self, i](std::int64_t j) { return self->fn(i + j); }, "shift",
                impl_->degree_bound);
  }

  /// Forward difference: j -> T_{i+j} T_j^*.
  GroupSequence delta(std::int64_t i) const {
    auto self = impl_;
    return make(
        [self, i](std::int64_t j) { return mul(self->fn(i + j), inverse(self->fn(j))); },
        "delta", reduce_degree(impl_->degree_bound));
  }

  /// Reverse difference: j -> T_j T_{i+j}^*; equals the translate by i of the
  /// forward difference with step -i.
  GroupSequence nabla(std::int64_t i) const {
    auto self = impl_;
    return make(
        [self, i](std::int64_t j) { return mul(self->fn(j), inverse(self->fn(i + j))); },
        "nabla", reduce_degree(impl_->degree_bound));
  }

  /// Left fold of delta, innermost first: steps (i_0, ..., i_d) produce
  /// Delta^{i_d} ... Delta^{i_0} T.
  GroupSequence iterated_delta(std::span<const std::int64_t> steps) const {
    if (steps.empty()) throw ParameterError("step vector must be nonempty");
    GroupSequence seq = *this;
    for (std::int64_t s : steps) seq = seq.delta(s);
    return seq;
  }

 private:
  struct Impl {
    std::function<G(std::int64_t)> fn;
    std::string kind;
    std::optional<int> degree_bound;
  };

  struct QuadraticTable {
    QuadraticTable(G a_, G b_, G c_, std::int64_t cap_)
        : a(std::move(a_)), cap(cap_) {
      fwd.push_back(c_);            // T_0
      fwd.push_back(mul(b_, c_));   // T_1 = b c
    }

    G at(std::int64_t j) const {
      if (j > cap || j < -cap)
        throw CapacityError("recurrence evaluation window cap |j| <= " + std::to_string(cap) +
                            " exceeded");
      std::scoped_lock lock(mu);
      if (j >= 0) {
        while (static_cast<std::int64_t>(fwd.size()) <= j) {
          std::size_t k = fwd.size();  // computing T_k from T_{k-1}, T_{k-2}
          fwd.push_back(mul(mul(mul(a, fwd[k - 1]), inverse(fwd[k - 2])), fwd[k - 1]));
        }
        return fwd[static_cast<std::size_t>(j)];
      }
      while (static_cast<std::int64_t>(bwd.size()) < -j) {
        // T_k = T_{k+1} T_{k+2}^* a T_{k+1} with k = -(bwd.size() + 1)
        std::int64_t k = -static_cast<std::int64_t>(bwd.size()) - 1;
        const G& t1 = k + 1 == 0 ? fwd[0] : bwd[static_cast<std::size_t>(-(k + 1) - 1)];
        const G& t2 = k + 2 == 0 ? fwd[0]
                      : k + 2 == 1 ? fwd[1]
                                   : bwd[static_cast<std::size_t>(-(k + 2) - 1)];
        bwd.push_back(mul(mul(mul(t1, inverse(t2)), a), t1));
      }
      return bwd[static_cast<std::size_t>(-j - 1)];
    }

    G a;
    std::int64_t cap;
    mutable std::mutex mu;
    mutable std::vector<G> fwd;  // T_0, T_1, ...
    mutable std::vector<G> bwd;  // T_{-1}, T_{-2}, ...
  };

  static std::optional<int> reduce_degree(std::optional<int> d) {
    if (!d) return std::nullopt;
    return std::max(0, *d - 1);
  }

  static GroupSequence make(std::function<G(std::int64_t)> f, std::string kind,
                            std::optional<int> degree_bound) {
    GroupSequence s;
    s.impl_ = std::make_shared<const Impl>(Impl{std::move(f), std::move(kind), degree_bound});
    return s;
  }

  static void check_pairwise_commuting(const std::vector<G>& gens) {
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (!elements_commute(gens[i], gens[j]))
          throw PreconditionError("abelian_binomial generators do not pairwise commute");
  }

  static bool elements_commute(const G& a, const G& b) {
    if constexpr (std::is_same_v<G, OrthogonalOperator>) {
      return commutes(a, b, orthogonality_tolerance(a.dim()));
    } else {
      return mul(a, b) == mul(b, a);
    }
  }

  std::shared_ptr<const Impl> impl_;
};

/// a commutes with b^k a b^{-k} for all |k| <= K.  These are exactly the
/// relations that make (a, b, c) admissible for a quadratic sequence.
template <class G>
bool check_commutation_relations(const G& a, const G& b, std::int64_t K) {
  if (K < 0) throw DomainError("commutation window K must be >= 0");
  for (std::int64_t k = -K; k <= K; ++k) {
    G t = conjugate(group_pow(b, k), a);
    if (!(mul(a, t) == mul(t, a))) return false;
  }
  return true;
}

/// Closed form of the quadratic sequence: the reversed ordered product of
/// a^{i-1} b for i = 1..j, times c.  Equals the recurrence when the
/// commutation relations hold on the touched window (caller-checked).
template <class G>
G quadratic_closed_form(const G& a, const G& b, const G& c, std::int64_t j) {
  G prod = ordered_product<G>(
      [&](std::int64_t i) { return mul(group_pow(a, i - 1), b); }, 1, j, /*reversed=*/true);
  return mul(prod, c);
}

/// g_0 g_1^C(j,1) ... g_d^C(j,d) evaluated at one index.
template <class G>
G abelian_binomial_eval(const std::vector<G>& gens, std::int64_t j) {
  return GroupSequence<G>::abelian_binomial(gens)(j);
}

/// The quadratic sequence in Z wr Z with Delta^1 Delta^1 T_0 = alpha_0,
/// Delta^1 T_0 = beta, T_0 = identity; its range generates the whole
/// lamplighter group.
inline GroupSequence<LamplighterElement> canonical_wreath_sequence(
    std::int64_t cap = kDefaultRecurrenceCap) {
  return GroupSequence<LamplighterElement>::quadratic_recurrence(
      LamplighterElement::alpha(0), LamplighterElement::beta(), LamplighterElement(), cap);
}

namespace detail {

template <class G>
G iterated_delta_point(const GroupSequence<G>& seq, std::span<const std::int64_t> steps,
                       std::int64_t j, std::int64_t& ops, std::int64_t budget) {
  if (steps.empty()) return seq(j);
  auto sub = steps.first(steps.size() - 1);
  std::int64_t s = steps.back();
  G top = iterated_delta_point(seq, sub, s + j, ops, budget);
  G bot = iterated_delta_point(seq, sub, j, ops, budget);
  ops += 2;  // one inversion + one multiplication
  if (ops > budget)
    throw CapacityError("degree check budget of " + std::to_string(budget) +
                        " group multiplications exceeded");
  return mul(top, inverse(bot));
}

}  // namespace detail

/// Window falsifier for "Leibman degree <= d": true iff every iterated
/// difference with d+1 steps in [-window, window], evaluated at every point
/// of [-window, window], is the identity.  This can refute the degree bound
/// but never prove it over all of Z.
template <class G, class Pred>
bool degree_upper_check_pred(const GroupSequence<G>& seq, int d, int window, Pred is_ident,
                             std::int64_t budget = 2'000'000) {
  if (d < 0) throw DomainError("degree bound must be >= 0");
  if (window < 1) throw DomainError("window must be >= 1");
  std::vector<std::int64_t> steps(static_cast<std::size_t>(d) + 1, -window);
  std::int64_t ops = 0;
  for (;;) {
    for (std::int64_t j = -window; j <= window; ++j) {
      G v = detail::iterated_delta_point(seq, std::span<const std::int64_t>(steps), j, ops,
                                         budget);
      if (!is_ident(v)) return false;
    }
    // odometer over step vectors in [-window, window]^{d+1}
    std::size_t pos = 0;
    while (pos < steps.size() && steps[pos] == window) steps[pos++] = -window;
    if (pos == steps.size()) break;
    ++steps[pos];
  }
  return true;
}

template <class G>
bool degree_upper_check(const GroupSequence<G>& seq, int d, int window,
                        std::int64_t budget = 2'000'000) {
  return degree_upper_check_pred(
      seq, d, window, [](const G& g) { return is_identity(g); }, budget);
}

}  // namespace pet

#endif  // PET_SEQUENCE_HPP
