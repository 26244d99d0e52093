#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "anderson/ff.hpp"
#include "anderson/rational.hpp"

namespace anderson {

struct SeriesParams {
  int m = 1;      // ramification: u^m = 1/theta
  int prec = 64;  // relative precision W, in u-coefficients from the valuation
};

/// Shared, immutable environment of a computation: residue field, m and W.
class SeriesContext {
 public:
  SeriesContext(FieldPtr field, SeriesParams params);

  const FieldPtr& field() const { return field_; }
  const GaloisField& F() const { return *field_; }
  int m() const { return params_.m; }
  int prec() const { return params_.prec; }
  int q() const { return field_->q(); }
  const SeriesParams& params() const { return params_; }

 private:
  FieldPtr field_;
  SeriesParams params_;
};

using ContextPtr = std::shared_ptr<const SeriesContext>;

ContextPtr make_context(FieldPtr field, SeriesParams params);

/// Element of F_{q^s}((u)) known to a finite u-adic precision.
///
/// coeffs_[i] is the coefficient of u^(val+i). Coefficients at exponents in
/// [val, cap) are certain; stored entries beyond the vector are zero. Every
/// result keeps at most W = prec coefficients counted from its valuation, so
/// exact elements whose support is wider than W lose their exact flag.
class LaurentElem {
 public:
  using Code = GaloisField::Code;
  static constexpr int64_t kExact = INT64_MAX / 4;

  LaurentElem() = default;

  static LaurentElem zero(const ContextPtr& ctx);
  /// Zero known only below u^cap.
  static LaurentElem zero_to(const ContextPtr& ctx, int64_t cap);
  static LaurentElem one(const ContextPtr& ctx);
  static LaurentElem constant(const ContextPtr& ctx, Code c);
  /// c * u^exponent, exact.
  static LaurentElem monomial(const ContextPtr& ctx, Code c, int64_t exponent);
  static LaurentElem theta(const ContextPtr& ctx);
  /// theta^r; r*m must be an integer, else RamificationError.
  static LaurentElem theta_pow(const ContextPtr& ctx, const Rational& r, Code c = 1);
  /// Polynomial in theta, coefficient i of theta^i.
  static LaurentElem from_poly(const ContextPtr& ctx, const std::vector<Code>& coeffs);
  /// Raw construction; normalizes leading zeros and applies the precision policy.
  static LaurentElem from_coeffs(const ContextPtr& ctx, int64_t val, std::vector<Code> coeffs, int64_t cap);

  const ContextPtr& ctx() const { return ctx_; }
  int64_t val() const { return val_; }
  int64_t cap() const { return cap_; }
  bool exact() const { return cap_ >= kExact; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact_zero() const { return coeffs_.empty() && exact(); }
  const std::vector<Code>& coeffs() const { return coeffs_; }
  /// Coefficient of u^k; k must be below cap.
  Code coeff(int64_t k) const;
  Code leading() const { return coeffs_.empty() ? 0 : coeffs_.front(); }
  /// Relative precision cap - val (kExact for exact elements).
  int64_t rel_prec() const { return exact() ? kExact : cap_ - val_; }
  bool is_monomial() const { return coeffs_.size() == 1; }

  /// -val/m; nullopt for zero (exact or to precision).
  Degree degree() const;

  LaurentElem operator+(const LaurentElem& o) const;
  LaurentElem operator-(const LaurentElem& o) const;
  LaurentElem operator-() const;
  LaurentElem operator*(const LaurentElem& o) const;
  LaurentElem operator/(const LaurentElem& o) const;
  LaurentElem& operator+=(const LaurentElem& o) { return *this = *this + o; }
  LaurentElem& operator-=(const LaurentElem& o) { return *this = *this - o; }
  LaurentElem& operator*=(const LaurentElem& o) { return *this = *this * o; }

  LaurentElem scale(Code c) const;
  /// Multiplication by u^k.
  LaurentElem shift(int64_t k) const;
  LaurentElem invert() const;
  /// x^(q^k), k >= 0.
  LaurentElem pow_q(int64_t k) const;
  /// Ordinary power, n >= 0 (negative n inverts).
  LaurentElem pow(int64_t n) const;
  /// The canonical y with y^(q-1) = x.
  LaurentElem root_q_minus_1() const;
  /// Forget everything at exponents >= cap.
  LaurentElem truncate(int64_t cap) const;
  /// Same element with its precision pinned to at most `rel` coefficients.
  LaurentElem with_rel_prec(int64_t rel) const;
  LaurentElem with_context(const ContextPtr& ctx) const;

  /// Structural equality (val, cap, coefficients).
  bool operator==(const LaurentElem& o) const;
  /// Agreement on all exponents below min(cap, o.cap).
  bool agrees_with(const LaurentElem& o) const;

  std::string to_string() const;

 private:
  LaurentElem(ContextPtr ctx, int64_t val, std::vector<Code> coeffs, int64_t cap);
  void normalize();
  static LaurentElem add_impl(const LaurentElem& x, const LaurentElem& y, bool negate_y);

  ContextPtr ctx_;
  int64_t val_ = kExact;
  std::vector<Code> coeffs_;
  int64_t cap_ = kExact;
};

/// Convenience: theta^(q^k) - theta.
LaurentElem bracket(const ContextPtr& ctx, int64_t k);

}  // namespace anderson
