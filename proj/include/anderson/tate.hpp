#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "anderson/laurent.hpp"
#include "anderson/theta_poly.hpp"

namespace anderson {

/// Upper bound deg c_k <= a - b*k (degrees are log_q of absolute values).
/// a == nullopt means the coefficients vanish.
struct TailDecay {
  Degree a;
  Rational b;
};

/// Upper bound for deg x: the degree itself, -cap/m for zero-to-precision,
/// nullopt for exact zero.
Degree degree_bound(const LaurentElem& x);

/// Truncated element of the Tate algebra: sum_{k < t_prec} c_k t^k + O(t^t_prec).
///
/// An optional TailDecay certifies the coefficients at k >= t_prec; it is
/// propagated through ring operations and is what makes eval() possible.
class TateSeries {
 public:
  TateSeries() = default;
  /// Exact zero to order t_prec (tail known to vanish).
  TateSeries(ContextPtr ctx, int t_prec);
  TateSeries(ContextPtr ctx, std::vector<LaurentElem> coeffs, std::optional<TailDecay> tail);

  static TateSeries constant(const LaurentElem& c, int t_prec);
  /// Polynomial in t (exact, tail zero).
  static TateSeries polynomial(ContextPtr ctx, std::vector<LaurentElem> coeffs, int t_prec);

  const ContextPtr& ctx() const { return ctx_; }
  int t_prec() const { return static_cast<int>(c_.size()); }
  const LaurentElem& operator[](int k) const { return c_[static_cast<size_t>(k)]; }
  const std::vector<LaurentElem>& coeffs() const { return c_; }
  const std::optional<TailDecay>& tail() const { return tail_; }
  void set_tail(std::optional<TailDecay> t) { tail_ = std::move(t); }
  /// deg c_k <= a - b k for every k >= 0, when a tail bound is known.
  std::optional<TailDecay> global_decay() const;

  TateSeries operator+(const TateSeries& o) const;
  TateSeries operator-(const TateSeries& o) const;
  TateSeries operator-() const;
  TateSeries operator*(const TateSeries& o) const;
  TateSeries scale(const LaurentElem& c) const;
  /// c_k -> c_k^(q^k); k >= 0.
  TateSeries twist(int64_t k) const;
  TateSeries mul_t() const;
  /// (t - a) f
  TateSeries mul_linear(const LaurentElem& a) const;
  /// f / (t - a), expanded at t = 0 (a nonzero).
  TateSeries div_linear(const LaurentElem& a) const;
  TateSeries truncated(int t_prec) const;

  /// max_k deg c_k over known coefficients; nullopt for exact zero.
  Degree gauss_norm_logq() const;
  /// sum c_k z^k with the tail bound applied as a u-cap.
  LaurentElem eval(const LaurentElem& z) const;

  bool operator==(const TateSeries& o) const;

 private:
  ContextPtr ctx_;
  std::vector<LaurentElem> c_;
  std::optional<TailDecay> tail_;
};

/// Polynomial in t whose coefficients are exact theta-polynomials.
using ThetaTPoly = std::vector<ThetaPoly>;

/// Exact rational function numer(t) / prod (t - theta^(q^e))^mult, e >= 1.
class TateRational {
 public:
  TateRational() = default;
  TateRational(FieldPtr field, ThetaTPoly numer, std::map<int64_t, int> poles);

  static TateRational constant(const ThetaPoly& c);

  const FieldPtr& field() const { return field_; }
  const ThetaTPoly& numer() const { return numer_; }
  const std::map<int64_t, int>& poles() const { return poles_; }
  bool is_zero() const { return numer_.empty(); }

  TateRational operator+(const TateRational& o) const;
  TateRational operator*(const TateRational& o) const;
  TateRational twist(int64_t k) const;
  /// Equality of rational functions, decided by clearing to a common denominator.
  bool equals(const TateRational& o) const;

  /// Value at t = z; EvalAtPole if z is exactly a pole.
  LaurentElem eval(const LaurentElem& z) const;
  /// Geometric expansion of every pole factor, with a certified tail.
  TateSeries to_series(const ContextPtr& ctx, int t_prec) const;

 private:
  FieldPtr field_;
  ThetaTPoly numer_;
  std::map<int64_t, int> poles_;
};

/// Sum of terms c_P / prod_{e in P} (t - theta^(q^e)) with distinct simple
/// poles inside each term. Keys are pole bitmasks (bit e), so e <= 63.
class PoleSum {
 public:
  PoleSum() = default;
  explicit PoleSum(FieldPtr field) : field_(std::move(field)) {}

  static PoleSum one(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const std::map<uint64_t, ThetaPoly>& terms() const { return terms_; }
  void add_term(uint64_t mask, const ThetaPoly& c);

  PoleSum operator+(const PoleSum& o) const;
  PoleSum twist(int64_t k) const;
  /// Multiply by c / (t - theta^(q^e)); HigherOrderPole if e is already a pole of some term.
  PoleSum mul_pole(const ThetaPoly& c, int e) const;
  PoleSum scale(const ThetaPoly& c) const;

  /// Collapse to a single fraction over prod_{e in union} (t - theta^(q^e)).
  TateRational to_rational() const;
  /// Value at t = theta (every pole has e >= 1).
  LaurentElem eval_theta(const ContextPtr& ctx) const;
  /// x * (this), expanded term by term.
  TateSeries to_series(const ContextPtr& ctx, int t_prec, const LaurentElem& x) const;

 private:
  FieldPtr field_;
  std::map<uint64_t, ThetaPoly> terms_;
};

/// residue / (t - theta) + regular: the only pole at t = theta ever needed.
struct ThetaPoleSeries {
  LaurentElem residue;
  TateSeries regular;

  LaurentElem residue_at_theta() const { return residue; }
  /// (t - theta) * this, a series regular at theta.
  TateSeries times_t_minus_theta() const;
  /// Full expansion at t = 0 (1/(t - theta) lies in the Tate algebra).
  TateSeries expand() const;
};

/// Sum_i g_i f^(i).
TateSeries apply_delta(const std::vector<TateSeries>& g, const TateSeries& f);

/// Outcome of checking that a sum of terms vanishes.
///
/// For each coefficient the residual must be zero to at least `u_cap`
/// u-digits below the largest term (the reference valuation).
struct IdentityReport {
  std::string identity;
  bool passed = false;
  int t_prec = 0;
  int64_t u_cap = 0;
  /// min over coefficients of (residual cap or valuation) - reference valuation.
  /// The reference is the smallest term valuation at that power of t, or the
  /// smallest nonzero valuation in the whole identity when every term there is zero.
  int64_t residual_valuation = 0;
  std::string detail;
};

IdentityReport check_series_identity(const std::string& name, const std::vector<TateSeries>& terms, int64_t u_cap);
IdentityReport check_scalar_identity(const std::string& name, const std::vector<LaurentElem>& terms, int64_t u_cap);

}  // namespace anderson
