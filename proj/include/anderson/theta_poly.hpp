#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "anderson/laurent.hpp"

namespace anderson {

/// Exact sparse Laurent polynomial in theta over F_{q^s}: sum of c * theta^e.
/// Used wherever results must be compared exactly (A_i, numerators of
/// rational functions in t).
class ThetaPoly {
 public:
  using Code = GaloisField::Code;
  using Term = std::pair<int64_t, Code>;  // (exponent, coefficient), sorted by exponent

  ThetaPoly() = default;
  explicit ThetaPoly(FieldPtr field) : field_(std::move(field)) {}
  ThetaPoly(FieldPtr field, std::vector<Term> terms);

  static ThetaPoly constant(FieldPtr field, Code c) { return ThetaPoly(std::move(field), {{0, c}}); }
  static ThetaPoly monomial(FieldPtr field, Code c, int64_t e) { return ThetaPoly(std::move(field), {{e, c}}); }
  static ThetaPoly theta(FieldPtr field) { return monomial(std::move(field), 1, 1); }
  /// Dense coefficient list, entry i multiplies theta^i.
  static ThetaPoly from_coeffs(FieldPtr field, const std::vector<Code>& coeffs);

  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Largest exponent; nullopt for zero.
  Degree degree() const;
  int64_t max_exponent() const { return terms_.back().first; }
  int64_t min_exponent() const { return terms_.front().first; }
  Code leading() const { return terms_.empty() ? 0 : terms_.back().second; }
  /// True if every coefficient lies in F_q.
  bool over_base_field() const;

  ThetaPoly operator+(const ThetaPoly& o) const;
  ThetaPoly operator-(const ThetaPoly& o) const;
  ThetaPoly operator-() const;
  ThetaPoly operator*(const ThetaPoly& o) const;
  ThetaPoly& operator+=(const ThetaPoly& o) { return *this = *this + o; }
  ThetaPoly scale(Code c) const;
  /// The k-th Frobenius twist: theta^e -> theta^(e q^k), c -> c^(q^k).
  ThetaPoly frob(int64_t k) const;
  ThetaPoly pow(int64_t n) const;
  bool operator==(const ThetaPoly& o) const { return terms_ == o.terms_; }

  LaurentElem to_laurent(const ContextPtr& ctx) const;

  /// Value at theta = a in another field K that contains F_q (coefficients must
  /// lie in F_q; they are transported by their F_q coordinates).
  Code eval_in(const GaloisField& K, Code a) const;

 private:
  FieldPtr field_;
  std::vector<Term> terms_;
};

/// theta^(q^k) - theta as an exact polynomial.
ThetaPoly bracket_poly(const FieldPtr& field, int64_t k);

/// Transport an F_q element of one tower into another built over the same F_q.
GaloisField::Code transport_base(const GaloisField& from, GaloisField::Code c, const GaloisField& to);

}  // namespace anderson
