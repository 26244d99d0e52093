#pragma once

// Degree bookkeeping shared by the series modules (internal).

#include <optional>

#include "anderson/drinfeld.hpp"
#include "anderson/error.hpp"

namespace anderson::detail {

inline Rational qpow(int64_t q, int64_t n) { return Rational(big_pow(q, n)); }

// Exponents below this cap are untouched by anything of degree <= bound.
inline int64_t cap_below(const Rational& bound, int m) { return ceil_to_int(-Rational(m) * bound); }

inline bool deep_enough(const LaurentElem& x, int64_t tail_cap, int64_t depth) {
  return x.is_zero() || tail_cap - x.val() >= depth;
}

inline int64_t ceil_div(int64_t a, int64_t b) { return (a + b - 1) / b; }

// max over n > N of q^n (A - ceil(n/r)) - kappa. Once the bracket is negative
// the terms decrease, so the scan stops at the first negative bracket.
inline Rational exp_type_tail(int64_t q, int r, const Rational& A, const Rational& kappa, int N) {
  std::optional<Rational> best;
  for (int n = N + 1;; ++n) {
    Rational bracket = A - Rational(ceil_div(n, r));
    Rational v = qpow(q, n) * bracket - kappa;
    if (!best || v > *best) best = v;
    if (bracket < 0) break;
    if (n > N + 200) throw Error(ErrorKind::PrecisionExhausted, "exponential tail does not settle");
  }
  return *best;
}

// kappa = max(0, deg A_i)
inline Rational kappa_of(const DrinfeldModule& phi) {
  Rational k = 0;
  for (int i : phi.support()) k = std::max(k, *phi.deg_A(i));
  return k;
}

constexpr int kMaxOrder = 40;

}  // namespace anderson::detail
