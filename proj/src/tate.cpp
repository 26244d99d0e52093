#include "anderson/tate.hpp"

#include <algorithm>
#include <sstream>

#include "anderson/error.hpp"

namespace anderson {

Degree degree_bound(const LaurentElem& x) {
  if (x.is_exact_zero()) return std::nullopt;
  const int64_t m = x.ctx()->m();
  if (x.is_zero()) return Rational(-x.cap(), m);
  return Rational(-x.val(), m);
}

// ---------------------------------------------------------------------------
// TateSeries

namespace {

// A tail with a == nullopt vanishes identically; its decay rate is irrelevant.
bool tail_vanishes(const std::optional<TailDecay>& t) {
  return t && !t->a;
}

// Decay rate shared by a set of operands: the slowest non-vanishing one.
// Finitely supported operands accept any rate, so 1 is used when all vanish.
Rational common_rate(std::initializer_list<const TateSeries*> fs) {
  std::optional<Rational> b;
  for (const auto* f : fs)
    if (!tail_vanishes(f->tail())) b = b ? std::min(*b, f->tail()->b) : f->tail()->b;
  return b ? *b : Rational(1);
}

// A with deg c_k <= A - b k for all k >= 0, for a rate b no faster than f's.
Degree global_a(const TateSeries& f, const Rational& b) {
  Degree A;
  const auto& t = f.tail();
  if (t->a) A = *t->a - (t->b - b) * f.t_prec();
  for (int j = 0; j < f.t_prec(); ++j)
    if (auto d = degree_bound(f[j])) A = degree_max(A, *d + b * j);
  return A;
}

void require_tail(const TateSeries& f) {
  if (!f.tail()) throw Error(ErrorKind::TailNotNegligible, "series has no certified tail bound");
}

}  // namespace

TateSeries::TateSeries(ContextPtr ctx, int t_prec)
    : ctx_(ctx), c_(static_cast<size_t>(t_prec), LaurentElem::zero(ctx)), tail_(TailDecay{std::nullopt, 1}) {}

TateSeries::TateSeries(ContextPtr ctx, std::vector<LaurentElem> coeffs, std::optional<TailDecay> tail)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)), tail_(std::move(tail)) {}

TateSeries TateSeries::constant(const LaurentElem& c, int t_prec) {
  TateSeries r(c.ctx(), t_prec);
  if (t_prec > 0) r.c_[0] = c;
  return r;
}

TateSeries TateSeries::polynomial(ContextPtr ctx, std::vector<LaurentElem> coeffs, int t_prec) {
  TateSeries r(ctx, t_prec);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (static_cast<int>(i) < t_prec) {
      r.c_[i] = coeffs[i];
    } else if (!coeffs[i].is_exact_zero()) {
      // coefficients past the truncation become tail; rate 1 is arbitrary
      TailDecay t{std::nullopt, 1};
      for (size_t k = static_cast<size_t>(t_prec); k < coeffs.size(); ++k)
        if (auto d = degree_bound(coeffs[k])) t.a = degree_max(t.a, *d + Rational(static_cast<int64_t>(k)));
      r.tail_ = t;
      break;
    }
  }
  return r;
}

std::optional<TailDecay> TateSeries::global_decay() const {
  if (!tail_) return std::nullopt;
  Rational b = common_rate({this});
  return TailDecay{global_a(*this, b), b};
}

TateSeries TateSeries::operator+(const TateSeries& o) const {
  const int T = std::min(t_prec(), o.t_prec());
  std::vector<LaurentElem> c(static_cast<size_t>(T));
  for (int k = 0; k < T; ++k) c[static_cast<size_t>(k)] = (*this)[k] + o[k];
  std::optional<TailDecay> tail;
  if (tail_ && o.tail_) {
    if (tail_vanishes(tail_) && tail_vanishes(o.tail_) && t_prec() == o.t_prec()) {
      tail = TailDecay{std::nullopt, 1};
    } else {
      Rational b = common_rate({this, &o});
      tail = TailDecay{degree_max(global_a(*this, b), global_a(o, b)), b};
    }
  }
  return TateSeries(ctx_, std::move(c), tail);
}

TateSeries TateSeries::operator-() const {
  TateSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

TateSeries TateSeries::operator-(const TateSeries& o) const {
  return *this + (-o);
}

TateSeries TateSeries::operator*(const TateSeries& o) const {
  const int T = std::min(t_prec(), o.t_prec());
  std::vector<LaurentElem> c(static_cast<size_t>(T), LaurentElem::zero(ctx_));
  for (int i = 0; i < T; ++i) {
    if ((*this)[i].is_exact_zero()) continue;
    for (int j = 0; i + j < T; ++j)
      if (!o[j].is_exact_zero()) c[static_cast<size_t>(i + j)] += (*this)[i] * o[j];
  }
  std::optional<TailDecay> tail;
  if (tail_ && o.tail_) {
    auto top = [](const TateSeries& f) {
      int d = -1;
      for (int k = 0; k < f.t_prec(); ++k)
        if (!f[k].is_exact_zero()) d = k;
      return d;
    };
    if (tail_vanishes(tail_) && tail_vanishes(o.tail_) && top(*this) + top(o) < T) {
      tail = TailDecay{std::nullopt, 1};
    } else {
      Rational b = common_rate({this, &o});
      Degree A = global_a(*this, b), B = global_a(o, b);
      tail = (A && B) ? TailDecay{*A + *B, b} : TailDecay{std::nullopt, 1};
    }
  }
  return TateSeries(ctx_, std::move(c), tail);
}

TateSeries TateSeries::scale(const LaurentElem& a) const {
  TateSeries r = *this;
  for (auto& x : r.c_) x = x * a;
  if (tail_ && tail_->a) {
    auto d = degree_bound(a);
    r.tail_ = d ? TailDecay{*tail_->a + *d, tail_->b} : TailDecay{std::nullopt, 1};
  }
  return r;
}

TateSeries TateSeries::twist(int64_t k) const {
  if (k < 0) throw Error(ErrorKind::InvalidInput, "negative twist of a series");
  TateSeries r = *this;
  for (auto& x : r.c_) x = x.pow_q(k);
  if (tail_ && tail_->a) {
    Rational Q(big_pow(ctx_->q(), k));
    r.tail_ = TailDecay{*tail_->a * Q, tail_->b * Q};
  }
  return r;
}

TateSeries TateSeries::mul_t() const {
  const int T = t_prec();
  TateSeries r(ctx_, T);
  for (int k = 1; k < T; ++k) r.c_[static_cast<size_t>(k)] = c_[static_cast<size_t>(k - 1)];
  if (!tail_) {
    r.tail_.reset();
  } else if (!(tail_vanishes(tail_) && (T == 0 || c_.back().is_exact_zero()))) {
    Rational b = common_rate({this});
    Degree A = global_a(*this, b);
    r.tail_ = A ? TailDecay{*A + b, b} : TailDecay{std::nullopt, 1};
  }
  return r;
}

TateSeries TateSeries::mul_linear(const LaurentElem& a) const {
  return mul_t() - scale(a);
}

TateSeries TateSeries::div_linear(const LaurentElem& a) const {
  if (a.is_zero()) throw Error(ErrorKind::DivideByZero, "division by t - 0");
  const LaurentElem ainv = a.invert();
  const int T = t_prec();
  std::vector<LaurentElem> y(static_cast<size_t>(T));
  LaurentElem prev = LaurentElem::zero(ctx_);
  for (int k = 0; k < T; ++k) {
    prev = (prev - c_[static_cast<size_t>(k)]) * ainv;
    y[static_cast<size_t>(k)] = prev;
  }
  std::optional<TailDecay> tail;
  if (tail_) {
    const Rational da = *a.degree();
    Rational b = tail_vanishes(tail_) ? da : std::min(tail_->b, da);
    Degree A = global_a(*this, b);
    tail = A ? TailDecay{*A - da, b} : TailDecay{std::nullopt, 1};
  }
  return TateSeries(ctx_, std::move(y), tail);
}

TateSeries TateSeries::truncated(int T) const {
  if (T >= t_prec()) return *this;
  std::optional<TailDecay> tail;
  if (tail_) {
    Rational b = common_rate({this});
    tail = TailDecay{global_a(*this, b), b};
  }
  return TateSeries(ctx_, std::vector<LaurentElem>(c_.begin(), c_.begin() + T), tail);
}

Degree TateSeries::gauss_norm_logq() const {
  Degree best;
  Degree unknown;  // largest degree a zero-to-precision coefficient could hide
  for (const auto& x : c_) {
    if (x.is_exact_zero()) continue;
    if (x.is_zero())
      unknown = degree_max(unknown, degree_bound(x));
    else
      best = degree_max(best, x.degree());
  }
  if (unknown && !degree_less(unknown, best))
    throw Error(ErrorKind::IndeterminateNorm, "no coefficient is known to dominate the zero-to-precision ones");
  return best;
}

LaurentElem TateSeries::eval(const LaurentElem& z) const {
  if (c_.empty()) return LaurentElem::zero(ctx_);
  if (z.is_exact_zero()) return c_[0];
  LaurentElem acc = LaurentElem::zero(ctx_);
  for (int k = t_prec() - 1; k >= 0; --k) acc = acc * z + c_[static_cast<size_t>(k)];
  require_tail(*this);
  if (tail_vanishes(tail_)) return acc;
  const Rational dz = *degree_bound(z);
  if (dz >= tail_->b) {
    throw Error(ErrorKind::TailNotNegligible, "|z| = q^" + to_string(dz) + " is not below the tail decay rate q^" +
                                                  to_string(tail_->b));
  }
  const Rational bound = *tail_->a + Rational(t_prec()) * (dz - tail_->b);
  return acc.truncate(ceil_to_int(-Rational(ctx_->m()) * bound));
}

bool TateSeries::operator==(const TateSeries& o) const {
  return c_ == o.c_;
}

// ---------------------------------------------------------------------------
// TateRational

namespace {

void trim(ThetaTPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

ThetaTPoly tpoly_mul(const ThetaTPoly& a, const ThetaTPoly& b) {
  if (a.empty() || b.empty()) return {};
  ThetaTPoly r(a.size() + b.size() - 1, ThetaPoly(a[0].field()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

ThetaTPoly tpoly_add(const ThetaTPoly& a, const ThetaTPoly& b) {
  ThetaTPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] += a[i];
    if (i < b.size()) r[i] += b[i];
  }
  trim(r);
  return r;
}

// t - theta^(q^e)
ThetaTPoly pole_factor(const FieldPtr& F, int64_t e) {
  return {ThetaPoly::monomial(F, F->neg(1), checked_pow(F->q(), e)), ThetaPoly::constant(F, 1)};
}

ThetaTPoly pole_power_product(const FieldPtr& F, const std::map<int64_t, int>& poles) {
  ThetaTPoly r{ThetaPoly::constant(F, 1)};
  for (const auto& [e, mult] : poles)
    for (int i = 0; i < mult; ++i) r = tpoly_mul(r, pole_factor(F, e));
  return r;
}

}  // namespace

TateRational::TateRational(FieldPtr field, ThetaTPoly numer, std::map<int64_t, int> poles)
    : field_(std::move(field)), numer_(std::move(numer)) {
  trim(numer_);
  for (const auto& [e, mult] : poles) {
    if (mult <= 0) continue;
    if (e < 1) throw Error(ErrorKind::InvalidInput, "pole exponent must be at least 1");
    poles_[e] = mult;
  }
  if (numer_.empty()) poles_.clear();
}

TateRational TateRational::constant(const ThetaPoly& c) {
  return TateRational(c.field(), {c}, {});
}

TateRational TateRational::operator*(const TateRational& o) const {
  auto poles = poles_;
  for (const auto& [e, mult] : o.poles_) poles[e] += mult;
  return TateRational(field_, tpoly_mul(numer_, o.numer_), poles);
}

TateRational TateRational::operator+(const TateRational& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  std::map<int64_t, int> lcm = poles_, extra_a, extra_b;
  for (const auto& [e, mult] : o.poles_) lcm[e] = std::max(lcm[e], mult);
  for (const auto& [e, mult] : lcm) {
    auto ia = poles_.find(e), ib = o.poles_.find(e);
    extra_a[e] = mult - (ia == poles_.end() ? 0 : ia->second);
    extra_b[e] = mult - (ib == o.poles_.end() ? 0 : ib->second);
  }
  ThetaTPoly num = tpoly_add(tpoly_mul(numer_, pole_power_product(field_, extra_a)),
                             tpoly_mul(o.numer_, pole_power_product(field_, extra_b)));
  return TateRational(field_, num, lcm);
}

TateRational TateRational::twist(int64_t k) const {
  ThetaTPoly num;
  for (const auto& c : numer_) num.push_back(c.frob(k));
  std::map<int64_t, int> poles;
  for (const auto& [e, mult] : poles_) poles[e + k] = mult;
  return TateRational(field_, num, poles);
}

bool TateRational::equals(const TateRational& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  std::map<int64_t, int> extra_a, extra_b;
  std::map<int64_t, int> lcm = poles_;
  for (const auto& [e, mult] : o.poles_) lcm[e] = std::max(lcm[e], mult);
  for (const auto& [e, mult] : lcm) {
    auto ia = poles_.find(e), ib = o.poles_.find(e);
    extra_a[e] = mult - (ia == poles_.end() ? 0 : ia->second);
    extra_b[e] = mult - (ib == o.poles_.end() ? 0 : ib->second);
  }
  return tpoly_mul(numer_, pole_power_product(field_, extra_a)) ==
         tpoly_mul(o.numer_, pole_power_product(field_, extra_b));
}

LaurentElem TateRational::eval(const LaurentElem& z) const {
  const auto& ctx = z.ctx();
  LaurentElem num = LaurentElem::zero(ctx);
  for (size_t i = numer_.size(); i-- > 0;) num = num * z + numer_[i].to_laurent(ctx);
  LaurentElem den = LaurentElem::one(ctx);
  for (const auto& [e, mult] : poles_) {
    LaurentElem d = z - ThetaPoly::monomial(field_, 1, checked_pow(field_->q(), e)).to_laurent(ctx);
    if (d.is_zero()) throw Error(ErrorKind::EvalAtPole, "t = theta^(q^" + std::to_string(e) + ") is a pole");
    den = den * d.pow(mult);
  }
  return num / den;
}

TateSeries TateRational::to_series(const ContextPtr& ctx, int t_prec) const {
  std::vector<LaurentElem> c;
  for (const auto& x : numer_) c.push_back(x.to_laurent(ctx));
  TateSeries s = TateSeries::polynomial(ctx, c, t_prec);
  for (const auto& [e, mult] : poles_) {
    LaurentElem a = ThetaPoly::monomial(field_, 1, checked_pow(field_->q(), e)).to_laurent(ctx);
    for (int i = 0; i < mult; ++i) s = s.div_linear(a);
  }
  return s;
}

// ---------------------------------------------------------------------------
// PoleSum

PoleSum PoleSum::one(FieldPtr field) {
  PoleSum r(field);
  r.terms_.emplace(0, ThetaPoly::constant(field, 1));
  return r;
}

void PoleSum::add_term(uint64_t mask, const ThetaPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(mask, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

PoleSum PoleSum::operator+(const PoleSum& o) const {
  PoleSum r = field_ ? *this : PoleSum(o.field_);
  for (const auto& [mask, c] : o.terms_) r.add_term(mask, c);
  return r;
}

PoleSum PoleSum::twist(int64_t k) const {
  PoleSum r(field_);
  for (const auto& [mask, c] : terms_) {
    if (k > 0 && (mask >> (64 - k)) != 0) throw Error(ErrorKind::PrecisionExhausted, "pole exponent exceeds 63");
    r.terms_.emplace(mask << k, c.frob(k));
  }
  return r;
}

PoleSum PoleSum::mul_pole(const ThetaPoly& c, int e) const {
  if (e < 1 || e > 63) throw Error(ErrorKind::InvalidInput, "pole exponent out of range");
  PoleSum r(field_);
  const uint64_t bit = uint64_t{1} << e;
  for (const auto& [mask, x] : terms_) {
    if (mask & bit) throw Error(ErrorKind::HigherOrderPole, "repeated pole at theta^(q^" + std::to_string(e) + ")");
    r.add_term(mask | bit, x * c);
  }
  return r;
}

PoleSum PoleSum::scale(const ThetaPoly& c) const {
  PoleSum r(field_);
  for (const auto& [mask, x] : terms_) r.add_term(mask, x * c);
  return r;
}

TateRational PoleSum::to_rational() const {
  uint64_t all = 0;
  for (const auto& [mask, c] : terms_) all |= mask;
  std::map<int64_t, int> poles;
  for (int e = 1; e < 64; ++e)
    if (all >> e & 1) poles[e] = 1;
  ThetaTPoly num;
  for (const auto& [mask, c] : terms_) {
    ThetaTPoly part{c};
    for (int e = 1; e < 64; ++e)
      if ((all >> e & 1) && !(mask >> e & 1)) part = tpoly_mul(part, pole_factor(field_, e));
    num = tpoly_add(num, part);
  }
  return TateRational(field_, num, poles);
}

LaurentElem PoleSum::eval_theta(const ContextPtr& ctx) const {
  // 1/(theta - theta^(q^e)) = -1/[e]
  std::map<int, LaurentElem> inv;
  LaurentElem acc = LaurentElem::zero(ctx);
  for (const auto& [mask, c] : terms_) {
    LaurentElem term = c.to_laurent(ctx);
    for (int e = 1; e < 64; ++e) {
      if (!(mask >> e & 1)) continue;
      auto it = inv.find(e);
      if (it == inv.end()) it = inv.emplace(e, -bracket(ctx, e).invert()).first;
      term = term * it->second;
    }
    acc += term;
  }
  return acc;
}

TateSeries PoleSum::to_series(const ContextPtr& ctx, int t_prec, const LaurentElem& x) const {
  TateSeries acc(ctx, t_prec);
  for (const auto& [mask, c] : terms_) {
    TateSeries s = TateSeries::constant(x * c.to_laurent(ctx), t_prec);
    for (int e = 1; e < 64; ++e)
      if (mask >> e & 1) s = s.div_linear(ThetaPoly::monomial(field_, 1, checked_pow(field_->q(), e)).to_laurent(ctx));
    acc = acc + s;
  }
  return acc;
}

// ---------------------------------------------------------------------------

TateSeries ThetaPoleSeries::times_t_minus_theta() const {
  const auto& ctx = regular.ctx();
  return regular.mul_linear(LaurentElem::theta(ctx)) + TateSeries::constant(residue, regular.t_prec());
}

TateSeries ThetaPoleSeries::expand() const {
  const auto& ctx = regular.ctx();
  return TateSeries::constant(residue, regular.t_prec()).div_linear(LaurentElem::theta(ctx)) + regular;
}

TateSeries apply_delta(const std::vector<TateSeries>& g, const TateSeries& f) {
  TateSeries acc(f.ctx(), f.t_prec());
  for (size_t i = 0; i < g.size(); ++i) acc = acc + g[i] * f.twist(static_cast<int64_t>(i));
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

// Verified relative depth of one coefficient: kExact when every term is exact zero.
// When no term has a nonzero value, depth is measured from `scale` if one is given.
int64_t residual_depth(const std::vector<const LaurentElem*>& xs, std::string* why,
                       int64_t scale = LaurentElem::kExact) {
  int64_t ref = LaurentElem::kExact;
  bool any_value = false;
  LaurentElem sum;
  bool first = true;
  for (const auto* x : xs) {
    any_value = any_value || !x->is_zero();
    if (!x->is_exact_zero()) ref = std::min(ref, x->is_zero() ? x->cap() : x->val());
    sum = first ? *x : sum + *x;
    first = false;
  }
  if (ref >= LaurentElem::kExact) return LaurentElem::kExact;
  if (!any_value && scale < ref) ref = scale;
  if (!sum.is_zero()) {
    if (why) *why = "residual " + sum.to_string();
    return sum.val() - ref;
  }
  return sum.exact() ? LaurentElem::kExact : sum.cap() - ref;
}

}  // namespace

IdentityReport check_series_identity(const std::string& name, const std::vector<TateSeries>& terms, int64_t u_cap) {
  IdentityReport rep;
  rep.identity = name;
  rep.u_cap = u_cap;
  int T = terms.empty() ? 0 : terms[0].t_prec();
  for (const auto& f : terms) T = std::min(T, f.t_prec());
  rep.t_prec = T;
  rep.residual_valuation = LaurentElem::kExact;
  // smallest valuation of a nonzero coefficient anywhere in the identity
  int64_t scale = LaurentElem::kExact;
  for (const auto& f : terms)
    for (int k = 0; k < T; ++k)
      if (!f[k].is_zero()) scale = std::min(scale, f[k].val());
  for (int k = 0; k < T; ++k) {
    std::vector<const LaurentElem*> xs;
    for (const auto& f : terms) xs.push_back(&f[k]);
    std::string why;
    int64_t d = residual_depth(xs, &why, scale);
    if (d < rep.residual_valuation) {
      rep.residual_valuation = d;
      if (d < u_cap) {
        std::ostringstream os;
        os << "t^" << k << ": verified " << d << " of " << u_cap << " u-digits";
        if (!why.empty()) os << ", " << why;
        rep.detail = os.str();
      }
    }
  }
  rep.passed = rep.residual_valuation >= u_cap;
  return rep;
}

IdentityReport check_scalar_identity(const std::string& name, const std::vector<LaurentElem>& terms, int64_t u_cap) {
  IdentityReport rep;
  rep.identity = name;
  rep.u_cap = u_cap;
  rep.t_prec = 0;
  std::vector<const LaurentElem*> xs;
  for (const auto& x : terms) xs.push_back(&x);
  std::string why;
  rep.residual_valuation = residual_depth(xs, &why);
  rep.passed = rep.residual_valuation >= u_cap;
  if (!rep.passed) rep.detail = "verified " + std::to_string(rep.residual_valuation) + " u-digits" + (why.empty() ? "" : ", " + why);
  return rep;
}

}  // namespace anderson
