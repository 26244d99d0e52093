#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace anderson {

/// Parameters of the residue field F_{q^s} built as a tower F_p ⊂ F_q ⊂ F_{q^s}.
///
/// `modulus` is the monic irreducible polynomial over F_p defining F_q (low
/// degree first, e+1 entries). `modulus_s` is the monic irreducible polynomial
/// over F_q defining F_{q^s}; each of its s+1 coefficients is an F_q element
/// given by its e coordinates over F_p.
struct FieldParams {
  int p = 2;
  int e = 1;
  std::vector<int> modulus;
  int s = 1;
  std::vector<std::vector<int>> modulus_s;

  int q() const;
  int degree() const { return e * s; }

  /// Pinned moduli: the smallest monic irreducible polynomials (ordered by
  /// their coefficient vectors read as base-p / base-q integers, low degree
  /// first). Supported for q in {2,3,4,5,7,8,9} and q^s <= 2^20.
  static FieldParams defaults(int q, int s);
  /// Same F_q, pinned default modulus for degree s_new over it.
  FieldParams with_degree(int s_new) const;
};

/// Finite field F_{q^s} with Zech-logarithm tables.
///
/// Elements are handled as 32-bit codes: 0 is zero and c >= 1 is g^(c-1) for
/// a fixed primitive element g. Coordinates (length e*s over F_p) are laid
/// out as [coords of c_0 over F_p, coords of c_1, ...] for the element
/// c_0 + c_1 X + ... in F_q[X]/(modulus_s).
class GaloisField {
 public:
  using Code = uint32_t;

  explicit GaloisField(FieldParams params);

  const FieldParams& params() const { return params_; }
  int p() const { return params_.p; }
  int q() const { return q_; }
  int s() const { return params_.s; }
  uint32_t size() const { return size_; }
  int coord_length() const { return params_.degree(); }

  static constexpr Code zero() { return 0; }
  static constexpr Code one() { return 1; }

  Code add(Code a, Code b) const {
    if (a == 0) return b;
    if (b == 0) return a;
    uint32_t la = a - 1;
    uint32_t lb = b - 1;
    uint32_t d = lb >= la ? lb - la : lb + order_ - la;
    int64_t z = zech_[d];
    if (z < 0) return 0;
    uint32_t r = la + static_cast<uint32_t>(z);
    if (r >= order_) r -= order_;
    return r + 1;
  }
  Code neg(Code a) const {
    if (a == 0 || p() == 2) return a;
    uint32_t r = (a - 1) + half_;
    if (r >= order_) r -= order_;
    return r + 1;
  }
  Code sub(Code a, Code b) const { return add(a, neg(b)); }
  Code mul(Code a, Code b) const {
    if (a == 0 || b == 0) return 0;
    uint32_t r = (a - 1) + (b - 1);
    if (r >= order_) r -= order_;
    return r + 1;
  }
  Code inv(Code a) const;
  Code div(Code a, Code b) const { return mul(a, inv(b)); }
  Code pow(Code a, int64_t k) const;
  /// a^(q^k) for any integer k; Frobenius has order s.
  Code frob(Code a, int64_t k) const;

  Code from_coords(std::span<const int> coords) const;
  std::vector<int> coords(Code a) const;
  /// Element whose coordinates are the base-p digits of `index`.
  Code from_index(uint32_t index) const;
  uint32_t index(Code a) const;
  /// Embedding of a small integer (its residue mod p).
  Code from_int(int64_t n) const;

  bool in_base_field(Code a) const { return frob(a, 1) == a; }
  /// The q elements of F_q inside F_{q^s}, sorted lexicographically by coordinates.
  const std::vector<Code>& base_field() const { return base_field_; }
  /// True if the coordinates of a precede those of b lexicographically.
  bool coords_less(Code a, Code b) const;

  /// All solutions of y^(q-1) = c, sorted lexicographically by coordinates.
  std::vector<Code> roots_q_minus_1(Code c) const;

 private:
  FieldParams params_;
  int q_ = 0;
  uint32_t size_ = 0;
  uint32_t order_ = 0;  // size - 1
  uint32_t half_ = 0;   // log of -1 for odd p
  std::vector<uint32_t> exp_;  // log -> index
  std::vector<uint32_t> log_;  // index -> log (index 0 unused)
  std::vector<int64_t> zech_;  // d -> log(1 + g^d), -1 when 1 + g^d = 0
  std::vector<uint64_t> frob_mult_;  // q^k mod order for k = 0..s-1
  std::vector<Code> base_field_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

FieldPtr make_field(FieldParams params);

/// Value type for a single residue-field element.
class ResidueElem {
 public:
  ResidueElem() = default;
  ResidueElem(FieldPtr field, GaloisField::Code code) : field_(std::move(field)), code_(code) {}

  static ResidueElem zero(FieldPtr field) { return {std::move(field), 0}; }
  static ResidueElem one(FieldPtr field) { return {std::move(field), 1}; }

  const FieldPtr& field() const { return field_; }
  GaloisField::Code code() const { return code_; }
  bool is_zero() const { return code_ == 0; }
  std::vector<int> coords() const { return field_->coords(code_); }

  ResidueElem operator+(const ResidueElem& o) const { return {field_, field_->add(code_, o.code_)}; }
  ResidueElem operator-(const ResidueElem& o) const { return {field_, field_->sub(code_, o.code_)}; }
  ResidueElem operator-() const { return {field_, field_->neg(code_)}; }
  ResidueElem operator*(const ResidueElem& o) const { return {field_, field_->mul(code_, o.code_)}; }
  ResidueElem operator/(const ResidueElem& o) const;
  ResidueElem inverse() const;
  ResidueElem pow(int64_t k) const { return {field_, field_->pow(code_, k)}; }

  bool operator==(const ResidueElem& o) const { return code_ == o.code_; }
  bool operator!=(const ResidueElem& o) const { return code_ != o.code_; }

 private:
  FieldPtr field_;
  GaloisField::Code code_ = 0;
};

/// Builds an element from its e*s coordinates over F_p; throws InvalidElement
/// on a length mismatch or out-of-range coordinate.
ResidueElem ff_make(const FieldPtr& field, std::span<const int> coords);

/// x^(q^k); negative k applies the inverse Frobenius.
ResidueElem ff_pow_q(const ResidueElem& x, int64_t k);

/// The lexicographically smallest y with y^(q-1) = c; throws NoRootInField.
ResidueElem ff_root_q_minus_1(const ResidueElem& c);

}  // namespace anderson
