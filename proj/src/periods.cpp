#include "anderson/periods.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "anderson/error.hpp"
#include "bounds.hpp"

namespace anderson {

using namespace detail;

namespace {

using Code = GaloisField::Code;

void require_prec(const ContextPtr& ctx, int64_t u_cap) {
  if (ctx->prec() < u_cap + 16) {
    throw Error(ErrorKind::InvalidInput, "working precision " + std::to_string(ctx->prec()) + " must exceed u_cap + 16 = " +
                                             std::to_string(u_cap + 16));
  }
}

int64_t ilcm(int64_t a, int64_t b) { return std::lcm(a, b); }

// 0 and the support: the tau indices carrying a point of the polygon
std::vector<int> active_indices(const DrinfeldModule& phi) {
  std::vector<int> idx{0};
  for (int i : phi.support()) idx.push_back(i);
  return idx;
}

int64_t tau_index(int64_t q, int64_t exponent) {
  int i = 0;
  for (int64_t e = 1; e < exponent; e *= q) ++i;
  return i;
}

// indices whose points lie on the segment of `sl`
std::vector<int> segment_points(const DrinfeldModule& phi, const NewtonPolygon& np, const NewtonSlope& sl) {
  const int64_t q = phi.q();
  const Rational v0 = -*phi.deg_A(sl.from);
  const Rational e0(big_pow(q, sl.from));
  std::vector<int> out;
  for (const auto& [e, v] : np.points) {
    const int i = static_cast<int>(tau_index(q, e));
    if (i < sl.from || i > sl.to) continue;
    if (v == v0 + sl.slope * (Rational(e) - e0)) out.push_back(i);
  }
  return out;
}

// F_q element of one tower level carried to another by its coordinates
Code embed_fq(Code a, const GaloisField& from, const GaloisField& to) {
  std::vector<int> c = from.coords(a);
  const int e = from.params().e;
  std::vector<int> out(static_cast<size_t>(to.coord_length()), 0);
  std::copy(c.begin(), c.begin() + e, out.begin());
  return to.from_coords(out);
}

// sum_{i in D} a_i c^(q^i) over K
Code residual_value(const GaloisField& K, const std::vector<std::pair<int, Code>>& terms, Code c) {
  Code acc = 0;
  for (const auto& [i, a] : terms) acc = K.add(acc, K.mul(a, K.frob(c, i)));
  return acc;
}

std::vector<Code> residual_roots(const GaloisField& K, const std::vector<std::pair<int, Code>>& terms) {
  std::vector<Code> roots;
  for (uint32_t idx = 1; idx < K.size(); ++idx) {
    const Code c = K.from_index(idx);
    if (residual_value(K, terms, c) == 0) roots.push_back(c);
  }
  return roots;
}

// leading digits of the roots: A_i leading coefficients, theta has leading coefficient 1
std::vector<std::pair<int, Code>> residual_terms(const DrinfeldModule& phi, const std::vector<int>& on_segment) {
  std::vector<std::pair<int, Code>> t;
  for (int i : on_segment) t.emplace_back(i, phi.A(i).leading());
  return t;
}

int64_t slope_root_val(const NewtonSlope& sl, int m) {
  Rational v = -sl.slope * Rational(m);
  return boost::multiprecision::numerator(v).convert_to<int64_t>();
}

Code solve_affine(const GaloisField& K, const std::vector<std::pair<int, Code>>& terms, Code rhs) {
  if (terms.size() == 1) return K.frob(K.div(rhs, terms[0].second), -terms[0].first);
  for (uint32_t idx = 0; idx < K.size(); ++idx) {
    const Code c = K.from_index(idx);
    if (residual_value(K, terms, c) == rhs) return c;
  }
  std::ostringstream os;
  os << "a residual equation has no root in F_{q^" << K.s() << "}; use s = " << K.s() * K.p();
  throw Error(ErrorKind::ResidueSplittingError, os.str());
}

// Refine c u^w0 to a root of phi_t. While the correction is smaller than every
// root, theta dominates and x <- x - phi_t(x)/theta is exact Newton (the
// derivative of phi_t is theta); otherwise one digit is fixed from the
// dominant terms of phi_t.
LaurentElem lift_root(const DrinfeldModule& phi, const ContextPtr& ctx, Code c, int64_t w0) {
  const GaloisField& K = ctx->F();
  const int m = ctx->m();
  const int64_t q = phi.q();
  const auto idx = active_indices(phi);
  std::vector<int64_t> vals;
  std::vector<Code> leads;
  for (int i : idx) {
    auto a = phi.A(i).to_laurent(ctx);
    vals.push_back(a.val());
    leads.push_back(a.leading());
  }
  LaurentElem x = LaurentElem::monomial(ctx, c, w0);
  const int limit = 4 * ctx->prec() + 64;
  for (int it = 0; it < limit; ++it) {
    const LaurentElem y = phi_t(phi, x);
    if (y.is_zero()) return x;
    std::optional<Rational> w;
    std::vector<std::pair<int, Code>> dom;
    for (size_t k = 0; k < idx.size(); ++k) {
      Rational wk = Rational(y.val() - vals[k]) / qpow(q, idx[k]);
      if (!w || wk > *w) {
        w = wk;
        dom.clear();
      }
      if (wk == *w) dom.emplace_back(idx[k], leads[k]);
    }
    if (dom.size() == 1 && dom[0].first == 0) {
      x = x - y.shift(m);
      continue;
    }
    if (boost::multiprecision::denominator(*w) != 1) {
      std::ostringstream os;
      os << "a torsion digit sits at u-exponent " << to_string(*w) << "; use m = "
         << m * boost::multiprecision::denominator(*w).convert_to<int64_t>();
      throw Error(ErrorKind::RamificationError, os.str());
    }
    const Code d = solve_affine(K, dom, K.neg(y.leading()));
    x = x + LaurentElem::monomial(ctx, d, boost::multiprecision::numerator(*w).convert_to<int64_t>());
  }
  throw Error(ErrorKind::PrecisionExhausted, "torsion refinement did not settle");
}

// F_q-span of `basis` inside K
std::vector<Code> fq_span(const GaloisField& K, const std::vector<Code>& basis) {
  std::vector<Code> span{0};
  for (Code b : basis) {
    std::vector<Code> next;
    for (Code a : K.base_field())
      for (Code x : span) next.push_back(K.add(x, K.mul(a, b)));
    span = std::move(next);
  }
  return span;
}

}  // namespace

NewtonPolygon newton_polygon(const DrinfeldModule& phi) {
  const int64_t q = phi.q();
  NewtonPolygon np;
  for (int i : active_indices(phi)) np.points.emplace_back(big_pow(q, i).convert_to<int64_t>(), -*phi.deg_A(i));
  // lower hull, monotone chain
  std::vector<std::pair<int64_t, Rational>> hull;
  for (const auto& p : np.points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // drop b when it is on or above the segment a-p
      Rational lhs = (b.second - a.second) * Rational(p.first - a.first);
      Rational rhs = (p.second - a.second) * Rational(b.first - a.first);
      if (lhs >= rhs) hull.pop_back();
      else break;
    }
    hull.push_back(p);
  }
  for (size_t k = 1; k < hull.size(); ++k) {
    NewtonSlope s;
    s.length = hull[k].first - hull[k - 1].first;
    s.slope = (hull[k].second - hull[k - 1].second) / Rational(s.length);
    s.from = static_cast<int>(tau_index(q, hull[k - 1].first));
    s.to = static_cast<int>(tau_index(q, hull[k].first));
    np.slopes.push_back(s);
  }
  return np;
}

TowerRequirement required_tower(const DrinfeldModule& phi) {
  const auto np = newton_polygon(phi);
  const auto& F = *phi.field();
  TowerRequirement req;
  int64_t m = 1;
  for (const auto& sl : np.slopes) m = ilcm(m, boost::multiprecision::denominator(sl.slope).convert_to<int64_t>());
  req.m = static_cast<int>(m);
  if (!phi.is_polynomial_over_fq()) {
    req.s = F.s();
    req.s_known = false;
    return req;
  }
  int64_t s = 1;
  for (const auto& sl : np.slopes) {
    const auto terms = residual_terms(phi, segment_points(phi, np, sl));
    const int64_t want = big_pow(phi.q(), sl.to - sl.from).convert_to<int64_t>() - 1;
    int found = 0;
    for (int t = 1; big_pow(phi.q(), t) <= (int64_t{1} << 20); ++t) {
      auto K = make_field(F.params().with_degree(t));
      std::vector<std::pair<int, Code>> kt;
      for (const auto& [i, a] : terms) kt.emplace_back(i, embed_fq(a, F, *K));
      if (static_cast<int64_t>(residual_roots(*K, kt).size()) == want) {
        found = t;
        break;
      }
    }
    if (!found) {
      req.s_known = false;
      return req;
    }
    s = ilcm(s, found);
  }
  req.s = static_cast<int>(s);
  return req;
}

TorsionBasis torsion_roots(const DrinfeldModule& phi, const ContextPtr& ctx, int64_t u_cap) {
  require_prec(ctx, u_cap);
  {
    const auto& a = ctx->field()->params();
    const auto& b = phi.field()->params();
    if (a.p != b.p || a.modulus != b.modulus || a.s != b.s || a.modulus_s != b.modulus_s)
      throw Error(ErrorKind::InvalidInput, "the module must be defined over the session field");
  }
  const GaloisField& K = ctx->F();
  const int m = ctx->m();
  TorsionBasis tb;
  tb.polygon = newton_polygon(phi);
  for (const auto& sl : tb.polygon.slopes) {
    if (boost::multiprecision::denominator(sl.slope * Rational(m)) != 1) {
      auto req = required_tower(phi);
      std::ostringstream os;
      os << "torsion of valuation " << to_string(-sl.slope) << " needs m divisible by " << req.m
         << "; use m = " << ilcm(m, req.m);
      throw Error(ErrorKind::RamificationError, os.str());
    }
  }
  for (const auto& sl : tb.polygon.slopes) {
    const auto terms = residual_terms(phi, segment_points(phi, tb.polygon, sl));
    const auto roots = residual_roots(K, terms);
    const int dim = sl.to - sl.from;
    const size_t want = big_pow(phi.q(), dim).convert_to<size_t>() - 1;
    if (roots.size() < want) {
      auto req = required_tower(phi);
      std::ostringstream os;
      os << "only " << roots.size() << " of " << want << " leading torsion digits lie in F_{q^" << K.s() << "}";
      if (req.s_known) os << "; use s = " << ilcm(K.s(), req.s);
      throw Error(ErrorKind::ResidueSplittingError, os.str());
    }
    std::vector<Code> chosen;
    std::vector<Code> span{0};
    for (Code c : roots) {
      if (static_cast<int>(chosen.size()) == dim) break;
      if (std::find(span.begin(), span.end(), c) != span.end()) continue;
      chosen.push_back(c);
      span = fq_span(K, chosen);
    }
    for (Code c : chosen) {
      tb.zetas.push_back(lift_root(phi, ctx, c, slope_root_val(sl, m)));
      tb.leading.push_back(c);
    }
  }
  const auto logR = convergence_data(phi).logq_R;
  for (const auto& z : tb.zetas) tb.in_radius.push_back(*z.degree() < logR);

  // all q^r combinations
  const int r = static_cast<int>(tb.zetas.size());
  const auto& base = K.base_field();
  const size_t total = big_pow(phi.q(), r).convert_to<size_t>();
  std::map<int64_t, int64_t> by_val;
  bool ok = r == phi.rank();
  tb.residual_depth = LaurentElem::kExact;
  tb.distinct_roots = 1;
  for (size_t code = 1; code < total; ++code) {
    LaurentElem z = LaurentElem::zero(ctx);
    size_t rest = code;
    for (int i = 0; i < r; ++i) {
      z += tb.zetas[static_cast<size_t>(i)].scale(base[rest % base.size()]);
      rest /= base.size();
    }
    if (z.is_zero()) {
      ok = false;
      continue;
    }
    ++tb.distinct_roots;
    ++by_val[z.val()];
    std::vector<LaurentElem> terms{LaurentElem::theta(ctx) * z};
    for (int i : phi.support()) terms.push_back(phi.A(i).to_laurent(ctx) * z.pow_q(i));
    tb.residual_depth = std::min(tb.residual_depth, check_scalar_identity("phi_t(zeta) = 0", terms, u_cap).residual_valuation);
  }
  for (const auto& sl : tb.polygon.slopes) {
    auto it = by_val.find(slope_root_val(sl, m));
    if (it == by_val.end() || it->second != sl.length) ok = false;
  }
  tb.combinations_ok = ok && tb.residual_depth >= u_cap && tb.distinct_roots == total;
  return tb;
}

// ---------------------------------------------------------------------------

PeriodValue period_from_torsion(const DrinfeldModule& phi, const LaurentElem& zeta, int ell, int64_t u_cap) {
  const auto& ctx = zeta.ctx();
  require_prec(ctx, u_cap);
  if (ell < 0) throw Error(ErrorKind::InvalidInput, "the shift l must be >= 0");
  const int64_t depth = u_cap + 8;
  PeriodValue pv;
  pv.zeta = zeta;
  pv.ell = ell;
  const auto L = deformed_log_auto(phi, zeta, 1, depth);
  pv.omega = L.at_theta.shift(-int64_t{ctx->m()} * ell);
  pv.exp_check = check_scalar_identity("exp(omega/theta^l) = zeta", {exp_phi(phi, L.at_theta, depth), -zeta}, u_cap);
  return pv;
}

LaurentElem twisted_log_at_theta(const DrinfeldModule& phi, const LaurentElem& zeta, int j, int64_t depth) {
  const auto& ctx = zeta.ctx();
  if (zeta.is_exact_zero()) return zeta;
  const auto th = LaurentElem::theta(ctx);
  const int64_t q = phi.q();
  const Rational c = -convergence_data(phi).logq_R;
  const Rational a = Rational(q) * (c + *degree_bound(zeta)) - c;
  const Rational aj = qpow(q, j) * a;
  const Rational bj = qpow(q, j + 1);
  // enough t-coefficients that the evaluation tail a_j + T (1 - b_j) sits depth digits below a_j
  Rational need = (Rational(depth) / Rational(ctx->m()) + 2 * abs(aj) + 2) / (bj - 1);
  int T = std::max<int64_t>(4, ceil_to_int(need) + 1);
  for (; T <= 512; T *= 2) {
    const auto L = deformed_log_auto(phi, zeta, T, depth);
    const LaurentElem v = L.series.twist(j).eval(th);
    if (!v.is_zero() && v.rel_prec() >= depth) return v;
  }
  throw Error(ErrorKind::PrecisionExhausted, "twisted deformed logarithm at theta needs more than 512 t-coefficients");
}

std::vector<LaurentElem> quasi_periodic_coeffs(const DrinfeldModule& phi, int j, int N, const ContextPtr& ctx) {
  std::vector<LaurentElem> b(static_cast<size_t>(N + 1), LaurentElem::zero(ctx));
  if (N < j) return b;
  const auto alpha = exp_coeffs_recurrence(phi, N - j, ctx);
  const auto th = LaurentElem::theta(ctx);
  for (int n = std::max(j, 1); n <= N; ++n)
    b[static_cast<size_t>(n)] = alpha[static_cast<size_t>(n - j)].pow_q(j) / (th.pow_q(n) - th);
  return b;
}

std::vector<QuasiPeriod> quasi_periods(const DrinfeldModule& phi, const PeriodValue& w, int64_t u_cap, int M) {
  const auto& ctx = w.omega.ctx();
  require_prec(ctx, u_cap);
  std::vector<QuasiPeriod> out;
  const int r = phi.rank();
  if (r < 2) return out;
  const int64_t depth = u_cap + 8;
  const int64_t q = phi.q();
  const int m = ctx->m();
  const auto th = LaurentElem::theta(ctx);
  const Rational kappa = kappa_of(phi);
  const Rational dw = *degree_bound(w.omega);
  const LaurentElem th_inv = th.invert();
  // exp(omega/theta^(k+1)) for the correction sum and the direct series
  auto exp_at = [&](int k) { return exp_phi(phi, w.omega * th_inv.pow(k + 1), depth); };

  for (int j = 1; j < r; ++j) {
    QuasiPeriod qp;
    qp.j = j;
    LaurentElem v = twisted_log_at_theta(phi, w.zeta, j, depth) * th.pow(w.ell) / (th.pow_q(j) - th);
    for (int k = 0; k < w.ell; ++k) v += exp_at(k).pow_q(j) * th.pow(k);
    qp.value = v;

    // direct series; |exp(z)| <= |z| once kappa + deg z <= 1
    const Rational dz = dw - Rational(M + 1);
    if (kappa + dz > 1) throw Error(ErrorKind::InvalidInput, "M = " + std::to_string(M) + " is too small for this period");
    LaurentElem d = LaurentElem::zero(ctx);
    for (int k = 0; k < M; ++k) d += exp_at(k).pow_q(j) * th.pow(k);
    qp.direct_tail = qpow(q, j) * dz + Rational(M);
    qp.direct = d;
    {
      const int64_t lim = cap_below(qp.direct_tail, m);
      const LaurentElem diff = v - d;
      const int64_t reach = diff.is_zero() ? diff.cap() : diff.val();
      const bool within = diff.is_zero() || diff.val() >= lim;
      qp.direct_ok = within && reach - v.val() >= std::min<int64_t>(u_cap, lim - v.val());
    }

    // entire quasi-periodic function: deg b_(j,n) omega^(q^n) <= q^j (q^k (A - ceil(k/r)) - kappa), k = n - j
    const Rational A = kappa + dw - 1;
    for (int N = j; N <= j + kMaxOrder; ++N) {
      const auto b = quasi_periodic_coeffs(phi, j, N, ctx);
      LaurentElem s = LaurentElem::zero(ctx);
      LaurentElem wq = w.omega;
      for (int n = 1; n <= N; ++n) {
        wq = wq.pow_q(1);
        if (n >= j) s += b[static_cast<size_t>(n)] * wq;
      }
      const int64_t cap = cap_below(qpow(q, j) * exp_type_tail(q, r, A, kappa, N - j), m);
      if (deep_enough(s, cap, depth)) {
        qp.entire = s.truncate(cap);
        qp.entire_ok = check_scalar_identity("quasi-period by the entire series", {v, -qp.entire}, u_cap).passed;
        break;
      }
    }
    out.push_back(qp);
  }
  return out;
}

// ---------------------------------------------------------------------------

LaurentElem carlitz_period(const ContextPtr& ctx) {
  const int64_t q = ctx->q();
  const int m = ctx->m();
  const auto th = LaurentElem::theta(ctx);
  LaurentElem pi = th * (-th).root_q_minus_1();
  const auto one = LaurentElem::one(ctx);
  // factor i moves digits from relative order m (q^i - 1) on
  for (int i = 1; m * (big_pow(q, i) - 1) < ctx->prec(); ++i)
    pi = pi * (one - LaurentElem::theta_pow(ctx, Rational(1) - qpow(q, i))).invert();
  return pi;
}

CarlitzPeriodReport carlitz_period_routes(const ContextPtr& ctx, int64_t u_cap) {
  require_prec(ctx, u_cap);
  const int64_t depth = u_cap + 8;
  const int64_t q = ctx->q();
  const int m = ctx->m();
  CarlitzPeriodReport rep;
  rep.product = carlitz_period(ctx);
  rep.valuation_ok = Rational(rep.product.val()) == -Rational(m) * Rational(q, q - 1);

  const auto th = LaurentElem::theta(ctx);
  for (int T = static_cast<int>((depth + 8) / (m * (q - 1)) + 2);; T *= 2) {
    if (T > 4096) throw Error(ErrorKind::PrecisionExhausted, "residue of omega_C needs more than 4096 t-coefficients");
    rep.residue = -omega_carlitz_regular(ctx, T).eval(th);
    if (rep.residue.rel_prec() >= depth) break;
  }
  rep.checks.push_back(check_scalar_identity("-Res omega_C = product formula", {rep.residue, -rep.product}, u_cap));

  const auto C = DrinfeldModule::carlitz(ctx->field());
  const auto tb = torsion_roots(C, ctx, u_cap);
  const auto pv = period_from_torsion(C, tb.zetas.at(0), 1, u_cap);
  rep.torsion = pv.omega;
  const GaloisField& K = ctx->F();
  rep.unit = K.div(pv.omega.leading(), rep.product.leading());
  rep.checks.push_back(pv.exp_check);
  rep.checks.push_back(check_scalar_identity("theta log_C(zeta) = c * product formula",
                                             {pv.omega, -rep.product.scale(rep.unit)}, u_cap));
  rep.passed = rep.valuation_ok && tb.combinations_ok && K.in_base_field(rep.unit) &&
               std::all_of(rep.checks.begin(), rep.checks.end(), [](const IdentityReport& r) { return r.passed; });
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

void legendre_gate(const DrinfeldModule& phi, LegendreReport& rep) {
  if (phi.rank() != 2) throw Error(ErrorKind::InvalidInput, "the Legendre check needs a rank-2 module");
  const int64_t q = phi.q();
  const auto dA = phi.deg_A(1);
  if (!dA) {
    rep.j_zero = true;
    return;
  }
  rep.deg_j = Rational(q + 1) * *dA - *phi.deg_A(2);
  if (rep.deg_j >= Rational(q * q)) {
    throw Error(ErrorKind::GateFailed,
                "deg j(phi) = " + to_string(rep.deg_j) + " is not below q^2 = " + std::to_string(q * q));
  }
}

}  // namespace

LegendreReport legendre_from_torsion(const DrinfeldModule& phi, const LaurentElem& zeta1, const LaurentElem& zeta2, int t_prec,
                                     int64_t u_cap) {
  LegendreReport rep;
  legendre_gate(phi, rep);
  const auto& ctx = zeta1.ctx();
  require_prec(ctx, u_cap);
  const int64_t depth = u_cap + 8;
  const GaloisField& K = ctx->F();
  const auto th = LaurentElem::theta(ctx);
  const LaurentElem zs[2] = {zeta1, zeta2};
  LaurentElem om[2], et[2];
  TateSeries P1[2], P2[2];
  for (int i = 0; i < 2; ++i) {
    const auto pv = period_from_torsion(phi, zs[i], 1, u_cap);
    const auto qp = quasi_periods(phi, pv, u_cap).at(0);
    om[i] = pv.omega;
    et[i] = qp.value;
    rep.periods.push_back(pv.exp_check);
    rep.periods.push_back(check_scalar_identity("quasi-period by the entire series", {qp.value, -qp.entire}, u_cap));
    IdentityReport direct;
    direct.identity = "quasi-period by the direct series";
    direct.passed = qp.direct_ok;
    direct.u_cap = u_cap;
    rep.periods.push_back(direct);

    const auto L = deformed_log_auto(phi, zs[i], t_prec, depth).series;
    P1[i] = TateSeries::constant(zs[i], t_prec) - L.div_linear(th).mul_t();
    P2[i] = TateSeries::constant(zs[i].pow_q(1), t_prec) - L.twist(1).div_linear(th.pow_q(1)).mul_t();
  }
  rep.omega1 = om[0];
  rep.omega2 = om[1];
  rep.eta1 = et[0];
  rep.eta2 = et[1];
  rep.value = om[0] * et[1] - om[1] * et[0];

  const auto B = phi.A(2).to_laurent(ctx);
  const auto rootB = (-B).root_q_minus_1();
  rep.expected = carlitz_period(ctx) / rootB;
  rep.c = rep.value.is_zero() ? 0 : K.div(rep.value.leading(), rep.expected.leading());
  rep.relation = check_scalar_identity("omega1 eta2 - omega2 eta1 = c pi / (-B)^(1/(q-1))",
                                       {rep.value, -rep.expected.scale(rep.c)}, u_cap);

  const TateSeries det = P1[0] * P2[1] - P2[0] * P1[1];
  rep.twist_equation =
      check_series_identity("B det P^(1) + (t - theta) det P = 0", {det.twist(1).scale(B), det.mul_t(), -det.scale(th)}, u_cap);
  const TateSeries w = omega_carlitz(ctx, t_prec).scale(rootB.invert());
  rep.c_det = det[0].is_zero() ? 0 : K.div(det[0].leading(), w[0].leading());
  rep.det_vs_omega = check_series_identity("det P = c omega_C / (-B)^(1/(q-1))",
                                           {det, -w.scale(LaurentElem::constant(ctx, rep.c_det))}, u_cap);

  rep.passed = rep.c != 0 && K.in_base_field(rep.c) && rep.c == rep.c_det && rep.relation.passed &&
               rep.twist_equation.passed && rep.det_vs_omega.passed &&
               std::all_of(rep.periods.begin(), rep.periods.end(), [](const IdentityReport& r) { return r.passed; });
  return rep;
}

LegendreReport legendre_check(const DrinfeldModule& phi, const ContextPtr& ctx, int t_prec, int64_t u_cap) {
  LegendreReport gate;
  legendre_gate(phi, gate);
  const auto tb = torsion_roots(phi, ctx, u_cap);
  if (!tb.combinations_ok) throw Error(ErrorKind::PrecisionExhausted, "torsion points could not be verified to the cap");
  for (size_t i = 0; i < 2; ++i) {
    if (!tb.in_radius[i]) throw Error(ErrorKind::OutsideRadius, "a torsion point lies outside the convergence radius");
  }
  return legendre_from_torsion(phi, tb.zetas[0], tb.zetas[1], t_prec, u_cap);
}

}  // namespace anderson
