#include "anderson/theta_poly.hpp"

#include <algorithm>
#include <map>

#include "anderson/error.hpp"

namespace anderson {

namespace {

void canonicalize(const GaloisField& F, std::vector<ThetaPoly::Term>& t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ThetaPoly::Term> out;
  for (const auto& [e, c] : t) {
    if (!out.empty() && out.back().first == e)
      out.back().second = F.add(out.back().second, c);
    else
      out.emplace_back(e, c);
    if (out.back().second == 0) out.pop_back();
  }
  t.swap(out);
}

}  // namespace

ThetaPoly::ThetaPoly(FieldPtr field, std::vector<Term> terms) : field_(std::move(field)), terms_(std::move(terms)) {
  canonicalize(*field_, terms_);
}

ThetaPoly ThetaPoly::from_coeffs(FieldPtr field, const std::vector<Code>& coeffs) {
  std::vector<Term> t;
  for (size_t i = 0; i < coeffs.size(); ++i)
    if (coeffs[i] != 0) t.emplace_back(static_cast<int64_t>(i), coeffs[i]);
  return ThetaPoly(std::move(field), std::move(t));
}

Degree ThetaPoly::degree() const {
  if (terms_.empty()) return std::nullopt;
  return Rational(terms_.back().first);
}

bool ThetaPoly::over_base_field() const {
  return std::all_of(terms_.begin(), terms_.end(), [&](const Term& t) { return field_->in_base_field(t.second); });
}

ThetaPoly ThetaPoly::operator+(const ThetaPoly& o) const {
  if (!field_) return o;
  std::vector<Term> t;
  t.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      t.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      t.push_back(o.terms_[j++]);
    } else {
      Code c = field_->add(terms_[i].second, o.terms_[j].second);
      if (c != 0) t.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  ThetaPoly r(field_);
  r.terms_ = std::move(t);
  return r;
}

ThetaPoly ThetaPoly::operator-() const {
  return scale(field_->neg(1));
}

ThetaPoly ThetaPoly::operator-(const ThetaPoly& o) const {
  if (!field_) return -o;
  return *this + (-o);
}

ThetaPoly ThetaPoly::scale(Code c) const {
  ThetaPoly r(field_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = field_->mul(t.second, c);
  return r;
}

ThetaPoly ThetaPoly::operator*(const ThetaPoly& o) const {
  ThetaPoly r(field_ ? field_ : o.field_);
  if (is_zero() || o.is_zero()) return r;
  std::map<int64_t, Code> acc;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Code& slot = acc[e1 + e2];
      slot = field_->add(slot, field_->mul(c1, c2));
    }
  for (const auto& [e, c] : acc)
    if (c != 0) r.terms_.emplace_back(e, c);
  return r;
}

ThetaPoly ThetaPoly::frob(int64_t k) const {
  if (k == 0) return *this;
  if (k < 0) throw Error(ErrorKind::InvalidInput, "negative twist of a theta-polynomial");
  const int64_t Q = checked_pow(field_->q(), k);
  ThetaPoly r(field_);
  for (const auto& [e, c] : terms_) {
    __int128 ee = static_cast<__int128>(e) * Q;
    if (ee > (int64_t{1} << 61) || ee < -(int64_t{1} << 61))
      throw Error(ErrorKind::PrecisionExhausted, "theta exponent overflow in twist");
    r.terms_.emplace_back(static_cast<int64_t>(ee), field_->frob(c, k));
  }
  return r;
}

ThetaPoly ThetaPoly::pow(int64_t n) const {
  if (n < 0) throw Error(ErrorKind::InvalidInput, "negative power of a theta-polynomial");
  ThetaPoly result = constant(field_, 1);
  ThetaPoly base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

LaurentElem ThetaPoly::to_laurent(const ContextPtr& ctx) const {
  if (terms_.empty()) return LaurentElem::zero(ctx);
  const int64_t m = ctx->m();
  const int64_t W = ctx->prec();
  const int64_t top = terms_.back().first;
  const int64_t val = -m * top;
  const int64_t span = m * (top - terms_.front().first) + 1;
  const int64_t len = std::min(span, W);
  std::vector<Code> out(static_cast<size_t>(len), 0);
  for (const auto& [e, c] : terms_) {
    int64_t idx = m * (top - e);
    if (idx < len) out[static_cast<size_t>(idx)] = c;
  }
  return LaurentElem::from_coeffs(ctx, val, std::move(out), span > W ? val + W : LaurentElem::kExact);
}

GaloisField::Code transport_base(const GaloisField& from, GaloisField::Code c, const GaloisField& to) {
  if (c == 0) return 0;
  if (!from.in_base_field(c)) throw Error(ErrorKind::InvalidInput, "coefficient outside F_q cannot be transported");
  const int e = from.params().e;
  auto src = from.coords(c);
  std::vector<int> dst(static_cast<size_t>(to.coord_length()), 0);
  for (int i = 0; i < e; ++i) dst[static_cast<size_t>(i)] = src[static_cast<size_t>(i)];
  return to.from_coords(dst);
}

ThetaPoly::Code ThetaPoly::eval_in(const GaloisField& K, Code a) const {
  Code acc = 0;
  for (const auto& [e, c] : terms_) acc = K.add(acc, K.mul(transport_base(*field_, c, K), K.pow(a, e)));
  return acc;
}

ThetaPoly bracket_poly(const FieldPtr& field, int64_t k) {
  return ThetaPoly(field, {{checked_pow(field->q(), k), 1}, {1, field->neg(1)}});
}

}  // namespace anderson
