#include "anderson/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "anderson/error.hpp"

namespace anderson {

namespace {

constexpr int64_t kInf = LaurentElem::kExact;

int64_t clamp_cap(int64_t c) {
  return c >= kInf ? kInf : c;
}

int64_t mul_checked(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r >= kInf || r <= -kInf) throw Error(ErrorKind::PrecisionExhausted, "u-exponent overflow");
  return static_cast<int64_t>(r);
}

}  // namespace

SeriesContext::SeriesContext(FieldPtr field, SeriesParams params) : field_(std::move(field)), params_(params) {
  if (params_.m < 1) throw Error(ErrorKind::ConfigError, "ramification index m must be >= 1");
  if (params_.prec < 1) throw Error(ErrorKind::ConfigError, "precision must be >= 1");
}

ContextPtr make_context(FieldPtr field, SeriesParams params) {
  return std::make_shared<const SeriesContext>(std::move(field), params);
}

LaurentElem::LaurentElem(ContextPtr ctx, int64_t val, std::vector<Code> coeffs, int64_t cap)
    : ctx_(std::move(ctx)), val_(val), coeffs_(std::move(coeffs)), cap_(clamp_cap(cap)) {
  normalize();
}

void LaurentElem::normalize() {
  const int64_t W = ctx_->prec();
  size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int64_t>(lead);
  }
  if (!coeffs_.empty() && val_ >= cap_) coeffs_.clear();
  if (coeffs_.empty()) {
    val_ = cap_;
    return;
  }
  if (exact()) {
    while (coeffs_.back() == 0) coeffs_.pop_back();
    if (static_cast<int64_t>(coeffs_.size()) > W) {
      cap_ = val_ + W;
      coeffs_.resize(static_cast<size_t>(W));
    }
  } else {
    cap_ = std::min(cap_, val_ + W);
    if (static_cast<int64_t>(coeffs_.size()) > cap_ - val_) coeffs_.resize(static_cast<size_t>(cap_ - val_));
  }
  while (coeffs_.back() == 0) coeffs_.pop_back();
}

LaurentElem LaurentElem::zero(const ContextPtr& ctx) {
  return LaurentElem(ctx, kInf, {}, kInf);
}

LaurentElem LaurentElem::zero_to(const ContextPtr& ctx, int64_t cap) {
  return LaurentElem(ctx, cap, {}, cap);
}

LaurentElem LaurentElem::one(const ContextPtr& ctx) {
  return monomial(ctx, 1, 0);
}

LaurentElem LaurentElem::constant(const ContextPtr& ctx, Code c) {
  return monomial(ctx, c, 0);
}

LaurentElem LaurentElem::monomial(const ContextPtr& ctx, Code c, int64_t exponent) {
  if (c == 0) return zero(ctx);
  return LaurentElem(ctx, exponent, {c}, kInf);
}

LaurentElem LaurentElem::theta(const ContextPtr& ctx) {
  return monomial(ctx, 1, -ctx->m());
}

LaurentElem LaurentElem::theta_pow(const ContextPtr& ctx, const Rational& r, Code c) {
  Rational e = -r * ctx->m();
  if (boost::multiprecision::denominator(e) != 1) {
    std::ostringstream os;
    os << "theta^" << anderson::to_string(r) << " needs m to be a multiple of " << boost::multiprecision::denominator(r);
    throw Error(ErrorKind::RamificationError, os.str());
  }
  return monomial(ctx, c, boost::multiprecision::numerator(e).convert_to<int64_t>());
}

LaurentElem LaurentElem::from_poly(const ContextPtr& ctx, const std::vector<Code>& coeffs) {
  int64_t deg = static_cast<int64_t>(coeffs.size()) - 1;
  while (deg >= 0 && coeffs[static_cast<size_t>(deg)] == 0) --deg;
  if (deg < 0) return zero(ctx);
  const int64_t m = ctx->m();
  const int64_t W = ctx->prec();
  int64_t val = -m * deg;
  int64_t span = m * deg + 1;
  int64_t len = std::min(span, W);
  std::vector<Code> out(static_cast<size_t>(len), 0);
  for (int64_t i = 0; i <= deg; ++i) {
    int64_t idx = m * (deg - i);
    if (idx < len) out[static_cast<size_t>(idx)] = coeffs[static_cast<size_t>(i)];
  }
  return LaurentElem(ctx, val, std::move(out), span > W ? val + W : kInf);
}

LaurentElem LaurentElem::from_coeffs(const ContextPtr& ctx, int64_t val, std::vector<Code> coeffs, int64_t cap) {
  return LaurentElem(ctx, val, std::move(coeffs), cap);
}

LaurentElem::Code LaurentElem::coeff(int64_t k) const {
  if (k >= cap_) throw Error(ErrorKind::PrecisionExhausted, "coefficient beyond the precision cap requested");
  if (k < val_) return 0;
  int64_t i = k - val_;
  return i < static_cast<int64_t>(coeffs_.size()) ? coeffs_[static_cast<size_t>(i)] : 0;
}

Degree LaurentElem::degree() const {
  if (coeffs_.empty()) return std::nullopt;
  return Rational(-val_, ctx_->m());
}

LaurentElem LaurentElem::add_impl(const LaurentElem& x, const LaurentElem& y, bool negate_y) {
  const auto& ctx = x.ctx_ ? x.ctx_ : y.ctx_;
  const GaloisField& F = ctx->F();
  const int64_t W = ctx->prec();
  const int64_t capR = std::min(x.cap_, y.cap_);
  const int64_t xs = static_cast<int64_t>(x.coeffs_.size());
  const int64_t ys = static_cast<int64_t>(y.coeffs_.size());
  const int64_t xe = x.val_ + xs;
  const int64_t ye = y.val_ + ys;
  int64_t p = std::min(xs ? x.val_ : kInf, ys ? y.val_ : kInf);
  int64_t limit = capR;
  int64_t v = kInf;
  std::vector<Code> out;
  while (p < limit) {
    bool inx = p >= x.val_ && p < xe;
    bool iny = p >= y.val_ && p < ye;
    if (!inx && !iny) {
      int64_t next = kInf;
      if (p < x.val_ && xs) next = std::min(next, x.val_);
      if (p < y.val_ && ys) next = std::min(next, y.val_);
      if (next >= limit) break;
      p = next;
      continue;
    }
    Code a = inx ? x.coeffs_[static_cast<size_t>(p - x.val_)] : 0;
    Code b = iny ? y.coeffs_[static_cast<size_t>(p - y.val_)] : 0;
    if (negate_y) b = F.neg(b);
    Code c = F.add(a, b);
    if (v == kInf) {
      if (c != 0) {
        v = p;
        limit = std::min(limit, v + W);
        out.push_back(c);
      }
    } else {
      out.resize(static_cast<size_t>(p - v), 0);
      out.push_back(c);
    }
    ++p;
  }
  if (v == kInf) return LaurentElem(ctx, capR, {}, capR);
  int64_t cap = capR;
  // An exact sum whose support exceeds the window is no longer exact.
  if (cap >= kInf && std::max(xs ? xe : v, ys ? ye : v) - v > W) cap = v + W;
  return LaurentElem(ctx, v, std::move(out), cap);
}

LaurentElem LaurentElem::operator+(const LaurentElem& o) const {
  return add_impl(*this, o, false);
}

LaurentElem LaurentElem::operator-(const LaurentElem& o) const {
  return add_impl(*this, o, true);
}

LaurentElem LaurentElem::operator-() const {
  return scale(ctx_->F().neg(1));
}

LaurentElem LaurentElem::scale(Code c) const {
  if (c == 0) return zero(ctx_);
  LaurentElem r = *this;
  for (auto& x : r.coeffs_) x = ctx_->F().mul(x, c);
  return r;
}

LaurentElem LaurentElem::shift(int64_t k) const {
  if (is_exact_zero()) return *this;
  LaurentElem r = *this;
  r.val_ += k;
  if (!r.exact()) r.cap_ += k;
  return r;
}

LaurentElem LaurentElem::operator*(const LaurentElem& o) const {
  const LaurentElem& x = *this;
  const LaurentElem& y = o;
  if (x.is_exact_zero() || y.is_exact_zero()) return zero(ctx_);
  const int64_t W = ctx_->prec();
  const int64_t capR =
      x.exact() && y.exact() ? kInf : clamp_cap(std::min(x.exact() ? kInf : y.val_ + x.cap_, y.exact() ? kInf : x.val_ + y.cap_));
  if (x.is_zero() || y.is_zero()) return zero_to(ctx_, capR);
  const GaloisField& F = ctx_->F();
  const int64_t val = x.val_ + y.val_;
  const int64_t xs = static_cast<int64_t>(x.coeffs_.size());
  const int64_t ys = static_cast<int64_t>(y.coeffs_.size());
  const int64_t full = xs + ys - 1;
  const int64_t n = std::min({full, W, capR - val});
  std::vector<Code> out(static_cast<size_t>(n), 0);
  // iterate the nonzero entries of the sparser operand
  const LaurentElem* a = &x;
  const LaurentElem* b = &y;
  auto nnz = [](const LaurentElem& z) {
    return std::count_if(z.coeffs_.begin(), z.coeffs_.end(), [](Code c) { return c != 0; });
  };
  if (nnz(x) > nnz(y)) std::swap(a, b);
  const int64_t as = static_cast<int64_t>(a->coeffs_.size());
  const int64_t bs = static_cast<int64_t>(b->coeffs_.size());
  for (int64_t i = 0; i < as && i < n; ++i) {
    Code ci = a->coeffs_[static_cast<size_t>(i)];
    if (ci == 0) continue;
    int64_t jmax = std::min(bs, n - i);
    for (int64_t j = 0; j < jmax; ++j) {
      Code cj = b->coeffs_[static_cast<size_t>(j)];
      if (cj == 0) continue;
      out[static_cast<size_t>(i + j)] = F.add(out[static_cast<size_t>(i + j)], F.mul(ci, cj));
    }
  }
  int64_t cap = capR;
  if (cap >= kInf && full > W) cap = val + W;
  return LaurentElem(ctx_, val, std::move(out), cap);
}

LaurentElem LaurentElem::invert() const {
  if (is_exact_zero()) throw Error(ErrorKind::DivideByZero, "inverse of exact zero");
  if (is_zero()) throw Error(ErrorKind::PrecisionExhausted, "inverse of an element that is zero to its precision");
  const GaloisField& F = ctx_->F();
  if (is_monomial() && exact()) return monomial(ctx_, F.inv(coeffs_[0]), -val_);
  const int64_t W = ctx_->prec();
  const int64_t n = std::min<int64_t>(rel_prec(), W);
  const int64_t xs = static_cast<int64_t>(coeffs_.size());
  std::vector<std::pair<int64_t, Code>> nz;
  for (int64_t i = 1; i < xs && i < n; ++i)
    if (coeffs_[static_cast<size_t>(i)] != 0) nz.emplace_back(i, coeffs_[static_cast<size_t>(i)]);
  const Code inv0 = F.inv(coeffs_[0]);
  const Code minv0 = F.neg(inv0);
  std::vector<Code> out(static_cast<size_t>(n), 0);
  out[0] = inv0;
  for (int64_t k = 1; k < n; ++k) {
    Code acc = 0;
    for (const auto& [i, c] : nz) {
      if (i > k) break;
      acc = F.add(acc, F.mul(c, out[static_cast<size_t>(k - i)]));
    }
    out[static_cast<size_t>(k)] = F.mul(acc, minv0);
  }
  return LaurentElem(ctx_, -val_, std::move(out), -val_ + n);
}

LaurentElem LaurentElem::operator/(const LaurentElem& o) const {
  return *this * o.invert();
}

LaurentElem LaurentElem::pow_q(int64_t k) const {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "pow_q needs k >= 0");
  if (k == 0 || is_exact_zero()) return *this;
  const int64_t Q = checked_pow(ctx_->q(), k);
  const int64_t W = ctx_->prec();
  const int64_t cap = exact() ? kInf : mul_checked(cap_, Q);
  if (is_zero()) return zero_to(ctx_, cap);
  const int64_t val = mul_checked(val_, Q);
  const int64_t xs = static_cast<int64_t>(coeffs_.size());
  const __int128 full = static_cast<__int128>(xs - 1) * Q + 1;
  const int64_t len = full > W ? W : static_cast<int64_t>(full);
  std::vector<Code> out(static_cast<size_t>(len), 0);
  const GaloisField& F = ctx_->F();
  for (int64_t i = 0; i < xs && static_cast<__int128>(i) * Q < len; ++i)
    out[static_cast<size_t>(i * Q)] = F.frob(coeffs_[static_cast<size_t>(i)], k);
  int64_t c = cap;
  if (c >= kInf && full > W) c = val + W;
  return LaurentElem(ctx_, val, std::move(out), c);
}

LaurentElem LaurentElem::pow(int64_t n) const {
  if (n < 0) return invert().pow(-n);
  LaurentElem result = one(ctx_);
  LaurentElem base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

LaurentElem LaurentElem::root_q_minus_1() const {
  if (is_zero()) throw Error(ErrorKind::InvalidElement, "(q-1)-st root of zero requested");
  const int64_t q = ctx_->q();
  if (q == 2) return *this;
  if (val_ % (q - 1) != 0) {
    int64_t g = std::gcd(std::abs(val_), q - 1);
    std::ostringstream os;
    os << "(q-1) does not divide the valuation " << val_ << "; use m = " << ctx_->m() * ((q - 1) / g);
    throw Error(ErrorKind::RamificationError, os.str());
  }
  const GaloisField& F = ctx_->F();
  const Code c0 = ff_root_q_minus_1(ResidueElem(ctx_->field(), coeffs_[0])).code();
  const int64_t yval = val_ / (q - 1);
  if (exact() && is_monomial()) return monomial(ctx_, c0, yval);
  // y = c0 u^yval (1 + z) with (1+z)^(q-1) = w; since (1+z)^(q-1) = (1+z^q)/(1+z)
  // z is the fixed point of z -> (1 + z^q)/w - 1, whose error shrinks q-fold.
  const LaurentElem w = shift(-val_).scale(F.inv(coeffs_[0]));
  const LaurentElem winv = w.invert();
  const LaurentElem one_ = one(ctx_);
  LaurentElem z = zero(ctx_);
  for (int iter = 0; iter < 200; ++iter) {
    LaurentElem next = (one_ + z.pow_q(1)) * winv - one_;
    if (next == z) break;
    z = next;
  }
  return (one_ + z).shift(yval).scale(c0);
}

LaurentElem LaurentElem::truncate(int64_t cap) const {
  if (cap >= cap_) return *this;
  return LaurentElem(ctx_, val_, coeffs_, cap);
}

LaurentElem LaurentElem::with_rel_prec(int64_t rel) const {
  if (is_zero()) return *this;
  return truncate(val_ + rel);
}

LaurentElem LaurentElem::with_context(const ContextPtr& ctx) const {
  return LaurentElem(ctx, val_, coeffs_, cap_);
}

bool LaurentElem::operator==(const LaurentElem& o) const {
  return val_ == o.val_ && cap_ == o.cap_ && coeffs_ == o.coeffs_;
}

bool LaurentElem::agrees_with(const LaurentElem& o) const {
  const int64_t c = std::min(cap_, o.cap_);
  LaurentElem d = *this - o;
  return d.is_zero() || d.val_ >= c;
}

std::string LaurentElem::to_string() const {
  std::ostringstream os;
  if (coeffs_.empty()) {
    if (exact()) return "0";
    os << "O(u^" << cap_ << ")";
    return os.str();
  }
  bool first = true;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << ctx_->F().index(coeffs_[i]) << "]u^" << (val_ + static_cast<int64_t>(i));
  }
  if (!exact()) os << " + O(u^" << cap_ << ")";
  return os.str();
}

LaurentElem bracket(const ContextPtr& ctx, int64_t k) {
  const int64_t Q = checked_pow(ctx->q(), k);
  return LaurentElem::monomial(ctx, 1, mul_checked(-ctx->m(), Q)) - LaurentElem::theta(ctx);
}

}  // namespace anderson
