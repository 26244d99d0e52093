#include "anderson/agf.hpp"

#include <algorithm>
#include <sstream>

#include "anderson/error.hpp"
#include "bounds.hpp"

namespace anderson {

namespace {

using Code = GaloisField::Code;

using namespace detail;

}  // namespace

const char* broute_name(BRoute r) {
  switch (r) {
    case BRoute::Definition: return "definition";
    case BRoute::TwistRecurrence: return "twist-recurrence";
    case BRoute::UntwistedRecurrence: return "untwisted-recurrence";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// B_n

PoleSum partition_term(const DrinfeldModule& phi, const ShadowedPartition& S) {
  PoleSum out(phi.field());
  uint64_t mask = 0;
  for (int i = 1; i <= S.r(); ++i)
    for (int j : S.elements(i)) {
      if (i + j > 63) throw Error(ErrorKind::PrecisionExhausted, "pole exponent exceeds 63");
      mask |= uint64_t{1} << (i + j);
    }
  out.add_term(mask, partition_monomial(phi, S));
  return out;
}

BSeq b_seq(const DrinfeldModule& phi, int N, BRoute route) {
  if (N < 0) throw Error(ErrorKind::InvalidInput, "N must be non-negative");
  const auto& F = phi.field();
  BSeq b;
  b.route = route;
  b.entries.push_back(PoleSum::one(F));
  for (int n = 1; n <= N; ++n) {
    PoleSum acc(F);
    switch (route) {
      case BRoute::Definition:
        for (const auto& S : supported_partitions(phi, n)) acc = acc + partition_term(phi, S);
        break;
      case BRoute::TwistRecurrence:
        for (int k : phi.support())
          if (k <= n) acc = acc + b.entries[static_cast<size_t>(n - k)].twist(k).mul_pole(phi.A(k), k);
        break;
      case BRoute::UntwistedRecurrence:
        for (int k : phi.support())
          if (k <= n) acc = acc + b.entries[static_cast<size_t>(n - k)].mul_pole(phi.A(k).frob(n - k), n);
        break;
    }
    b.entries.push_back(std::move(acc));
  }
  return b;
}

bool poles_in_range(const DrinfeldModule&, const BSeq& b) {
  for (size_t n = 0; n < b.entries.size(); ++n) {
    const uint64_t allowed = n == 0 ? 0 : ((uint64_t{1} << (n + 1)) - 2);  // bits 1..n
    for (const auto& [mask, c] : b.entries[n].terms())
      if (mask & ~allowed) return false;
  }
  return true;
}

Certificate certify_b_at_theta(const DrinfeldModule& phi, const BSeq& b) {
  const int N = static_cast<int>(b.entries.size()) - 1;
  const std::string statement = std::string("B_n(theta) = beta_n for n <= ") + std::to_string(N) + " (" +
                                broute_name(b.route) + " route)";
  Certificate none;
  none.statement = statement;
  if (!phi.is_polynomial_over_fq()) {
    none.detail = "coefficients must be polynomials in theta over F_q";
    return none;
  }
  const int64_t q = phi.q();
  const auto bb = log_degree_bounds(phi, N);
  // both sides times prod_{e <= n} [e] are polynomials
  Degree worst;
  for (int n = 1; n <= N; ++n) {
    Rational clear = 0;
    for (int e = 1; e <= n; ++e) clear += qpow(q, e);
    Degree piece = bb[static_cast<size_t>(n)];
    for (const auto& [mask, c] : b.entries[static_cast<size_t>(n)].terms()) {
      Rational d = *c.degree();
      for (int e = 1; e < 64; ++e)
        if (mask >> e & 1) d -= qpow(q, e);
      piece = degree_max(piece, d);
    }
    if (piece) worst = degree_max(worst, clear + *piece);
  }
  const int64_t bound = worst ? std::max<int64_t>(0, ceil_to_int(*worst)) : 0;
  return certify_identity(statement, phi.field(), bound, N + 1, [&](const GaloisField& K, Code a) {
    auto beta = log_coeffs_at(phi, N, K, a);
    for (int n = 1; n <= N; ++n) {
      Code acc = 0;
      for (const auto& [mask, c] : b.entries[static_cast<size_t>(n)].terms()) {
        Code v = c.eval_in(K, a);
        // 1/(theta - theta^(q^e)) = -1/[e]
        for (int e = 1; e < 64; ++e)
          if (mask >> e & 1) v = K.div(v, K.sub(a, K.frob(a, e)));
        acc = K.add(acc, v);
      }
      if (acc != beta[static_cast<size_t>(n)]) return false;
    }
    return true;
  });
}

BRouteReport compare_b_routes(const DrinfeldModule& phi, int N) {
  BRouteReport rep;
  auto def = b_seq(phi, N, BRoute::Definition);
  auto tw = b_seq(phi, N, BRoute::TwistRecurrence);
  auto un = b_seq(phi, N, BRoute::UntwistedRecurrence);
  for (int n = 0; n <= N; ++n) {
    auto r0 = def.entries[static_cast<size_t>(n)].to_rational();
    if (!r0.equals(tw.entries[static_cast<size_t>(n)].to_rational()) ||
        !r0.equals(un.entries[static_cast<size_t>(n)].to_rational()))
      rep.mismatched.push_back(n);
  }
  rep.poles_ok = poles_in_range(phi, def) && poles_in_range(phi, tw) && poles_in_range(phi, un);
  rep.at_theta = certify_b_at_theta(phi, tw);
  rep.passed = rep.mismatched.empty() && rep.poles_ok && rep.at_theta.passed;
  return rep;
}

// ---------------------------------------------------------------------------
// Norms

Rational lemma_norm(const DrinfeldModule& phi, const ConvergenceData& cd, const ShadowedPartition& S, int i) {
  const int64_t q = phi.q();
  Rational v = (qpow(q, S.n) - 1) / (qpow(q, i) - 1) * (*phi.deg_A(i) - qpow(q, i));
  for (int k : cd.support) v += (qpow(q, k) - 1) * Rational(weight(S.set(k), q)) * cd.mu(i, k);
  return v;
}

Rational b_norm_bound(const DrinfeldModule& phi, const ConvergenceData& cd, int n) {
  const int64_t q = phi.q();
  return (qpow(q, n) - 1) / (qpow(q, cd.s) - 1) * (*phi.deg_A(cd.s) - qpow(q, cd.s));
}

namespace {

// Gauss norm of a series whose tail is known to stay strictly below it.
Degree certified_norm(const TateSeries& s) {
  Degree norm = s.gauss_norm_logq();
  const auto& t = s.tail();
  if (!t) throw Error(ErrorKind::IndeterminateNorm, "series has no tail bound");
  if (t->a && !degree_less(Rational(*t->a - t->b * s.t_prec()), norm))
    throw Error(ErrorKind::IndeterminateNorm, "tail could reach the Gauss norm; raise t_prec");
  return norm;
}

}  // namespace

NormReport norm_analysis(const DrinfeldModule& phi, int N, const ContextPtr& ctx, int t_prec) {
  NormReport rep;
  rep.passed = true;
  const auto cd = convergence_data(phi);
  const auto one = LaurentElem::one(ctx);
  for (int n = 0; n <= N; ++n) {
    for (const auto& S : supported_partitions(phi, n)) {
      NormRow row;
      row.n = n;
      row.partition = S.to_string();
      PoleSum X = partition_term(phi, S);
      row.from_series = *certified_norm(X.to_series(ctx, t_prec, one));
      row.closed_form = lemma_norm(phi, cd, S, cd.support.front());
      row.at_theta = *X.eval_theta(ctx).degree();
      row.match = row.from_series == row.closed_form && row.at_theta == row.closed_form;
      for (int i : cd.support) row.match = row.match && lemma_norm(phi, cd, S, i) == row.closed_form;
      rep.passed = rep.passed && row.match;
      rep.partitions.push_back(std::move(row));
    }
  }
  auto B = b_seq(phi, N, BRoute::Definition);
  for (int n = 0; n <= N; ++n) {
    BoundRow row;
    row.n = n;
    row.bound = b_norm_bound(phi, cd, n);
    const auto& Bn = B.entries[static_cast<size_t>(n)];
    if (!Bn.terms().empty()) row.norm = certified_norm(Bn.to_series(ctx, t_prec, one));
    row.holds = !row.norm || *row.norm <= row.bound;
    rep.passed = rep.passed && row.holds;
    rep.bounds.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Deformed logarithm

namespace {

struct LogSetup {
  Rational c;   // (deg A_s - q^s)/(q^s - 1) = -log_q R
  Degree d;     // deg xi (an upper bound when xi is zero to precision)
};

LogSetup log_setup(const DrinfeldModule& phi, const LaurentElem& xi) {
  auto cd = convergence_data(phi);
  LogSetup s{-cd.logq_R, degree_bound(xi)};
  if (s.d && *s.d >= cd.logq_R) {
    throw Error(ErrorKind::OutsideRadius, "deg xi = " + to_string(*s.d) + " is not below log_q R_phi = " +
                                              to_string(cd.logq_R));
  }
  return s;
}

// log_q bound on coefficient k of sum_{n > N} B_n(t) xi^(q^n); k = -1 gives the bound at t = theta.
Rational log_tail(int64_t q, const LogSetup& s, int N, int k) {
  Rational v = qpow(q, N + 1) * (s.c + *s.d) - s.c;
  if (k >= 0) v -= Rational(q) * k;
  return v;
}

}  // namespace

DeformedLog deformed_log(const DrinfeldModule& phi, const LaurentElem& xi, int N, int t_prec) {
  if (N < 0 || t_prec < 1) throw Error(ErrorKind::InvalidInput, "need N >= 0 and t_prec >= 1");
  const auto& ctx = xi.ctx();
  const int64_t q = phi.q();
  const int m = ctx->m();
  const LogSetup s = log_setup(phi, xi);
  DeformedLog out;
  out.xi = xi;
  out.N = N;
  if (xi.is_exact_zero()) {
    out.series = TateSeries(ctx, t_prec);
    out.at_theta = xi;
    out.tail_logq_bound = 0;
    return out;
  }
  auto B = b_seq(phi, N, BRoute::Definition);
  TateSeries acc(ctx, t_prec);
  LaurentElem at = LaurentElem::zero(ctx);
  LaurentElem xq = xi;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) xq = xq.pow_q(1);
    const auto& Bn = B.entries[static_cast<size_t>(n)];
    acc = acc + Bn.to_series(ctx, t_prec, xq);
    at += Bn.eval_theta(ctx) * xq;
  }
  std::vector<LaurentElem> c = acc.coeffs();
  for (int k = 0; k < t_prec; ++k)
    c[static_cast<size_t>(k)] = c[static_cast<size_t>(k)].truncate(cap_below(log_tail(q, s, N, k), m));
  // for n >= 1 and k >= 1: deg <= q^n (c + d - k) - c <= q (c + d) - c - q k
  out.series = TateSeries(ctx, std::move(c), TailDecay{Rational(q) * (s.c + *s.d) - s.c, Rational(q)});
  out.at_theta = at.truncate(cap_below(log_tail(q, s, N, -1), m));
  out.tail_logq_bound = log_tail(q, s, N, 0);
  return out;
}

DeformedLog deformed_log_auto(const DrinfeldModule& phi, const LaurentElem& xi, int t_prec, int64_t depth) {
  const auto& ctx = xi.ctx();
  const int64_t q = phi.q();
  const int m = ctx->m();
  const LogSetup s = log_setup(phi, xi);
  if (xi.is_exact_zero()) return deformed_log(phi, xi, 0, t_prec);
  // first guess: the t^0 coefficient is about as large as xi
  int N = 0;
  while (N < kMaxOrder && cap_below(log_tail(q, s, N, 0), m) - cap_below(*s.d, m) < depth) ++N;
  for (; N <= kMaxOrder; ++N) {
    DeformedLog L = deformed_log(phi, xi, N, t_prec);
    bool ok = deep_enough(L.at_theta, cap_below(log_tail(q, s, N, -1), m), depth);
    for (int k = 0; k < t_prec && ok; ++k) ok = deep_enough(L.series[k], cap_below(log_tail(q, s, N, k), m), depth);
    if (ok) return L;
  }
  throw Error(ErrorKind::PrecisionExhausted, "deformed logarithm needs more than " + std::to_string(kMaxOrder) + " terms");
}

LaurentElem log_phi(const DrinfeldModule& phi, const LaurentElem& xi, int64_t depth) {
  const auto& ctx = xi.ctx();
  const int64_t q = phi.q();
  const int m = ctx->m();
  const LogSetup s = log_setup(phi, xi);
  if (xi.is_exact_zero()) return xi;
  for (int N = 1; N <= kMaxOrder; ++N) {
    auto beta = log_coeffs_partitions(phi, N, ctx);
    LaurentElem acc = LaurentElem::zero(ctx);
    LaurentElem xq = xi;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) xq = xq.pow_q(1);
      acc += beta[static_cast<size_t>(n)] * xq;
    }
    // deg beta_n = deg B_n(theta) <= (q^n - 1) c
    const int64_t cap = cap_below(log_tail(q, s, N, -1), m);
    if (deep_enough(acc, cap, depth)) return acc.truncate(cap);
  }
  throw Error(ErrorKind::PrecisionExhausted, "logarithm needs more than " + std::to_string(kMaxOrder) + " terms");
}

LaurentElem exp_phi(const DrinfeldModule& phi, const LaurentElem& z, int64_t depth) {
  const auto& ctx = z.ctx();
  if (z.is_exact_zero()) return z;
  const int64_t q = phi.q();
  const int m = ctx->m();
  const int r = phi.rank();
  const Rational kappa = kappa_of(phi);
  const Rational dz = *degree_bound(z);
  // deg alpha_n z^(q^n) <= q^n (kappa + dz - ceil(n/r)) - kappa
  int N = 0;
  while (N < kMaxOrder && cap_below(exp_type_tail(q, r, kappa + dz, kappa, N), m) - cap_below(dz, m) < depth) ++N;
  for (; N <= kMaxOrder; ++N) {
    auto alpha = exp_coeffs_recurrence(phi, N, ctx);
    LaurentElem acc = LaurentElem::zero(ctx);
    LaurentElem zq = z;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) zq = zq.pow_q(1);
      acc += alpha[static_cast<size_t>(n)] * zq;
    }
    const int64_t cap = cap_below(exp_type_tail(q, r, kappa + dz, kappa, N), m);
    // a vanishing value (z a period) is measured against the size of z
    const int64_t ref = acc.is_zero() ? z.val() : acc.val();
    if (cap - ref >= depth) return acc.truncate(cap);
  }
  throw Error(ErrorKind::PrecisionExhausted, "exponential needs more than " + std::to_string(kMaxOrder) + " terms");
}

// ---------------------------------------------------------------------------
// Anderson generating function

LaurentElem AGFValue::residue(int n) const {
  if (n < 0 || n >= static_cast<int>(alpha.size())) throw Error(ErrorKind::InvalidInput, "residue index out of range");
  return -(alpha[static_cast<size_t>(n)] * u.pow_q(n));
}

AGFValue agf(const DrinfeldModule& phi, const LaurentElem& u, int t_prec, int64_t depth) {
  if (t_prec < 1) throw Error(ErrorKind::InvalidInput, "t_prec must be positive");
  const auto& ctx = u.ctx();
  const int64_t q = phi.q();
  const int m = ctx->m();
  const int r = phi.rank();
  AGFValue out;
  out.u = u;
  if (u.is_exact_zero()) {
    out.series = TateSeries(ctx, t_prec);
    out.parts = ThetaPoleSeries{u, TateSeries(ctx, t_prec)};
    out.alpha = {LaurentElem::one(ctx)};
    return out;
  }
  const Rational kappa = kappa_of(phi);
  const Rational du = *degree_bound(u);
  // coefficient k, term n: deg <= q^n (kappa + du - k - 1 - ceil(n/r)) - kappa
  auto tail_cap = [&](int N, int k) { return cap_below(exp_type_tail(q, r, kappa + du - k - 1, kappa, N), m); };
  const TailDecay decay{exp_type_tail(q, r, kappa + du - 1, kappa, -1), Rational(1)};
  int N = 0;
  while (N < kMaxOrder && tail_cap(N, 0) - cap_below(du - 1, m) < depth) ++N;
  for (; N <= kMaxOrder; ++N) {
    auto alpha = exp_coeffs_recurrence(phi, N, ctx);
    std::vector<LaurentElem> w, x;  // alpha_n u^(q^n), theta^(-q^n)
    LaurentElem uq = u;
    for (int n = 0; n <= N; ++n) {
      if (n > 0) uq = uq.pow_q(1);
      w.push_back(alpha[static_cast<size_t>(n)] * uq);
      x.push_back(LaurentElem::monomial(ctx, 1, m * checked_pow(q, n)));
    }
    std::vector<LaurentElem> full, reg;
    bool ok = true;
    std::vector<LaurentElem> xp = x;  // theta^(-q^n (k+1))
    for (int k = 0; k < t_prec; ++k) {
      LaurentElem f = LaurentElem::zero(ctx), g = LaurentElem::zero(ctx);
      for (int n = 0; n <= N; ++n) {
        LaurentElem term = w[static_cast<size_t>(n)] * xp[static_cast<size_t>(n)];
        f += term;
        if (n > 0) g += term;
        xp[static_cast<size_t>(n)] = xp[static_cast<size_t>(n)] * x[static_cast<size_t>(n)];
      }
      const int64_t cap = tail_cap(N, k);
      ok = ok && deep_enough(f, cap, depth);
      full.push_back(f.truncate(cap));
      reg.push_back(g.truncate(cap));
    }
    if (!ok && N < kMaxOrder) continue;
    out.N = N;
    out.alpha = std::move(alpha);
    out.series = TateSeries(ctx, std::move(full), decay);
    out.parts = ThetaPoleSeries{-u, TateSeries(ctx, std::move(reg), decay)};
    return out;
  }
  throw Error(ErrorKind::PrecisionExhausted, "generating function needs more than " + std::to_string(kMaxOrder) + " terms");
}

std::vector<TateSeries> delta_coefficients(const DrinfeldModule& phi, const ContextPtr& ctx, int t_prec) {
  std::vector<TateSeries> g;
  g.push_back(TateSeries::polynomial(ctx, {LaurentElem::theta(ctx), -LaurentElem::one(ctx)}, t_prec));
  for (int k = 1; k <= phi.rank(); ++k) g.push_back(TateSeries::constant(phi.A(k).to_laurent(ctx), t_prec));
  return g;
}

TateSeries delta_phi(const DrinfeldModule& phi, const TateSeries& g) {
  return apply_delta(delta_coefficients(phi, g.ctx(), g.t_prec()), g);
}

// ---------------------------------------------------------------------------
// Main theorem

MainTheoremReport check_main_theorem(const DrinfeldModule& phi, const LaurentElem& xi, int t_prec, int64_t u_cap) {
  const auto& ctx = xi.ctx();
  if (ctx->prec() < u_cap + 16) {
    throw Error(ErrorKind::InvalidInput, "working precision " + std::to_string(ctx->prec()) + " must exceed u_cap + 16 = " +
                                             std::to_string(u_cap + 16));
  }
  const int64_t depth = u_cap + 8;
  const auto cd = convergence_data(phi);
  log_setup(phi, xi);
  {
    // compatibility needs every |A_i xi^(q^i)| < R_phi, A_0 = theta
    std::vector<int> bad;
    for (int i = 0; i <= phi.rank(); ++i) {
      Degree d = degree_bound(phi.A(i).to_laurent(ctx) * xi.pow_q(i));
      if (d && *d >= cd.logq_R) bad.push_back(i);
    }
    if (!bad.empty()) {
      std::ostringstream os;
      os << "|A_i xi^(q^i)| >= R_phi for i in {";
      for (size_t j = 0; j < bad.size(); ++j) os << (j ? "," : "") << bad[j];
      os << "}";
      throw Error(ErrorKind::CompatPreconditionFailed, os.str());
    }
  }
  MainTheoremReport rep;
  rep.xi = xi;
  const auto th = LaurentElem::theta(ctx);
  const auto L = deformed_log_auto(phi, xi, t_prec, depth);
  rep.log_order = L.N;
  rep.u = L.at_theta;
  const auto xi_t = TateSeries::constant(xi, t_prec);

  rep.identities.push_back(check_scalar_identity("specialization: L(xi; theta) = log(xi)", {rep.u, -log_phi(phi, xi, depth)}, u_cap));
  rep.identities.push_back(check_scalar_identity("specialization: exp(L(xi; theta)) = xi", {exp_phi(phi, rep.u, depth), -xi}, u_cap));

  {
    TateSeries g = -L.series.div_linear(th);
    std::vector<TateSeries> terms;
    for (int k : phi.support()) terms.push_back(g.twist(k).scale(phi.A(k).to_laurent(ctx)));
    terms.push_back(-g.mul_t());
    terms.push_back(g.scale(th));
    terms.push_back(-xi_t);
    rep.identities.push_back(check_series_identity("difference: Delta(-L/(t - theta)) = xi", terms, u_cap));
  }
  {
    auto f = agf(phi, rep.u, t_prec, depth);
    rep.exp_order = f.N;
    rep.identities.push_back(
        check_series_identity("link: L(xi; t) = -(t - theta) f(u; t)", {L.series, f.series.mul_t(), -f.series.scale(th)}, u_cap));
  }
  {
    const auto L2 = deformed_log_auto(phi, phi_t(phi, xi), t_prec, depth);
    const auto lin = TateSeries::polynomial(ctx, {-(th * xi), xi}, t_prec);
    rep.identities.push_back(check_series_identity("compatibility: L(phi_t(xi); t) = t L(xi; t) - (t - theta) xi",
                                                   {L2.series, -L.series.mul_t(), lin}, u_cap));
  }
  rep.passed = std::all_of(rep.identities.begin(), rep.identities.end(), [](const IdentityReport& r) { return r.passed; });
  return rep;
}

// ---------------------------------------------------------------------------
// Carlitz

namespace {

// Number of factors (1 - t/theta^(q^i))^(-1), i <= I, after which the rest is 1 to precision.
int omega_factors(const ContextPtr& ctx) {
  const int64_t q = ctx->q();
  int I = 0;
  while (Rational(ctx->m()) * (qpow(q, I + 1) - 1) < ctx->prec() + 1) ++I;
  return I;
}

TateSeries omega_product(const ContextPtr& ctx, int t_prec, int first, const LaurentElem& lead, const Rational& a,
                         const Rational& b) {
  const int64_t q = ctx->q();
  const int m = ctx->m();
  const int I = omega_factors(ctx);
  TateSeries s = TateSeries::constant(lead, t_prec);
  for (int i = first; i <= I; ++i) {
    const auto ti = LaurentElem::monomial(ctx, 1, -m * checked_pow(q, i));
    s = s.div_linear(ti).scale(-ti);
  }
  // the omitted factors change coefficient k by degree <= a - b k - (q^(I+1) - 1)
  std::vector<LaurentElem> c = s.coeffs();
  for (int k = 0; k < t_prec; ++k)
    c[static_cast<size_t>(k)] = c[static_cast<size_t>(k)].truncate(cap_below(a - b * k - (qpow(q, I + 1) - 1), m));
  return TateSeries(ctx, std::move(c), TailDecay{a, b});
}

}  // namespace

TateSeries omega_carlitz(const ContextPtr& ctx, int t_prec) {
  const int64_t q = ctx->q();
  const auto root = (-LaurentElem::theta(ctx)).root_q_minus_1();
  return omega_product(ctx, t_prec, 0, root, Rational(1, q - 1), Rational(1));
}

TateSeries omega_carlitz_regular(const ContextPtr& ctx, int t_prec) {
  const int64_t q = ctx->q();
  const auto th = LaurentElem::theta(ctx);
  const auto root = (-th).root_q_minus_1();
  return omega_product(ctx, t_prec, 1, -(th * root), Rational(1) + Rational(1, q - 1), Rational(q));
}

IdentityReport omega_difference_check(const TateSeries& omega, int64_t u_cap) {
  const auto th = LaurentElem::theta(omega.ctx());
  return check_series_identity("omega^(1) = (t - theta) omega", {omega.twist(1), -omega.mul_t(), omega.scale(th)}, u_cap);
}

namespace {

// L_C(xi; t) = sum_n xi^(q^n) / ((t - theta^q) ... (t - theta^(q^n))), truncated with its tail bound.
TateSeries carlitz_log_series(const ContextPtr& ctx, const LaurentElem& xi, int t_prec, int64_t depth) {
  const int64_t q = ctx->q();
  const int m = ctx->m();
  const Rational R(q, q - 1);
  const Degree d = degree_bound(xi);
  if (!d) return TateSeries(ctx, t_prec);
  if (*d >= R) throw Error(ErrorKind::OutsideRadius, "deg xi = " + to_string(*d) + " is not below q/(q-1)");
  // term n, coefficient k: deg <= q^n (d - R) + R - q k
  auto cap = [&](int N, int k) { return cap_below(qpow(q, N + 1) * (*d - R) + R - Rational(q) * k, m); };
  TateSeries prod = TateSeries::constant(LaurentElem::one(ctx), t_prec);
  TateSeries acc = TateSeries::constant(xi, t_prec);
  LaurentElem xq = xi;
  for (int N = 0; N <= kMaxOrder; ++N) {
    if (N > 0) {
      prod = prod.div_linear(LaurentElem::monomial(ctx, 1, -m * checked_pow(q, N)));
      xq = xq.pow_q(1);
      acc = acc + prod.scale(xq);
    }
    bool ok = true;
    for (int k = 0; k < t_prec && ok; ++k) ok = deep_enough(acc[k], cap(N, k), depth);
    if (!ok) continue;
    std::vector<LaurentElem> c = acc.coeffs();
    for (int k = 0; k < t_prec; ++k) c[static_cast<size_t>(k)] = c[static_cast<size_t>(k)].truncate(cap(N, k));
    return TateSeries(ctx, std::move(c), TailDecay{Rational(q) * (*d - R) + R, Rational(q)});
  }
  throw Error(ErrorKind::PrecisionExhausted, "Carlitz logarithm series needs more terms");
}

}  // namespace

IdentityReport carlitz_compat_check(const ContextPtr& ctx, const LaurentElem& xi, int t_prec, int64_t u_cap) {
  const auto th = LaurentElem::theta(ctx);
  const LaurentElem ct = th * xi + xi.pow_q(1);
  const Rational R(ctx->q(), ctx->q() - 1);
  for (const auto& v : {th * xi, xi.pow_q(1)}) {
    Degree d = degree_bound(v);
    if (d && *d >= R) throw Error(ErrorKind::CompatPreconditionFailed, "theta xi and xi^q must lie below q/(q-1)");
  }
  const int64_t depth = u_cap + 8;
  auto L = carlitz_log_series(ctx, xi, t_prec, depth);
  auto L2 = carlitz_log_series(ctx, ct, t_prec, depth);
  auto lin = TateSeries::polynomial(ctx, {-(th * xi), xi}, t_prec);
  return check_series_identity("Carlitz: L_C(C_t(xi); t) = t L_C(xi; t) - (t - theta) xi", {L2, -L.mul_t(), lin}, u_cap);
}

}  // namespace anderson
