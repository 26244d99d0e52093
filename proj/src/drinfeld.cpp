#include "anderson/drinfeld.hpp"

#include <algorithm>
#include <mutex>
#include <tuple>

#include "anderson/error.hpp"

namespace anderson {

using Code = GaloisField::Code;

DrinfeldModule::DrinfeldModule(FieldPtr field, std::vector<ThetaPoly> A) : field_(std::move(field)), A_(std::move(A)) {
  if (!field_) throw Error(ErrorKind::InvalidInput, "Drinfeld module needs a field");
  if (A_.empty()) throw Error(ErrorKind::InvalidInput, "rank must be at least 1");
  for (auto& a : A_)
    if (!a.field()) a = ThetaPoly(field_);
  if (A_.back().is_zero()) throw Error(ErrorKind::InvalidInput, "leading coefficient A_r must be nonzero");
}

DrinfeldModule DrinfeldModule::carlitz(FieldPtr field) {
  auto one = ThetaPoly::constant(field, 1);
  return DrinfeldModule(std::move(field), {one});
}

ThetaPoly DrinfeldModule::A(int i) const {
  if (i == 0) return ThetaPoly::theta(field_);
  if (i < 0 || i > rank()) return ThetaPoly(field_);
  return A_[static_cast<size_t>(i - 1)];
}

std::vector<int> DrinfeldModule::support() const {
  std::vector<int> out;
  for (int i = 1; i <= rank(); ++i)
    if (!A_[static_cast<size_t>(i - 1)].is_zero()) out.push_back(i);
  return out;
}

bool DrinfeldModule::is_polynomial_over_fq() const {
  return std::all_of(A_.begin(), A_.end(),
                     [](const ThetaPoly& a) { return a.is_zero() || (a.min_exponent() >= 0 && a.over_base_field()); });
}

ConvergenceData convergence_data(const DrinfeldModule& phi) {
  ConvergenceData cd;
  cd.support = phi.support();
  const int64_t q = phi.q();
  std::optional<Rational> best;
  for (int i : cd.support) {
    const Rational qi(big_pow(q, i));
    Rational ratio = (*phi.deg_A(i) - qi) / (qi - 1);
    cd.ratios[i] = ratio;
    if (!best || ratio > *best) {
      best = ratio;
      cd.s = i;
    }
  }
  for (const auto& [i, ratio] : cd.ratios)
    if (i != cd.s && ratio == *best) cd.strict = false;
  cd.logq_R = -*best;
  return cd;
}

LaurentElem phi_t(const DrinfeldModule& phi, const LaurentElem& x) {
  const auto& ctx = x.ctx();
  LaurentElem acc = LaurentElem::theta(ctx) * x;
  for (int i : phi.support()) acc += phi.A(i).to_laurent(ctx) * x.pow_q(i);
  return acc;
}

LaurentElem phi_action(const DrinfeldModule& phi, const std::vector<Code>& a, const LaurentElem& x) {
  LaurentElem acc = LaurentElem::zero(x.ctx());
  LaurentElem y = x;
  for (size_t k = 0; k < a.size(); ++k) {
    if (k > 0) y = phi_t(phi, y);
    if (a[k] != 0) acc += y.scale(a[k]);
  }
  return acc;
}

ThetaPoly partition_monomial(const DrinfeldModule& phi, const ShadowedPartition& p) {
  ThetaPoly acc = ThetaPoly::constant(phi.field(), 1);
  for (int i = 1; i <= p.r(); ++i)
    for (int j : p.elements(i)) acc = acc * phi.A(i).frob(j);
  return acc;
}

std::vector<ShadowedPartition> supported_partitions(const DrinfeldModule& phi, int n) {
  return restrict_to_support(enumerate_partitions(phi.rank(), n), phi.support());
}

namespace {

// theta^(q^(k+i)) - theta^(q^i) = [k]^(q^i)
ThetaPoly bracket_power(const FieldPtr& F, int k, int i) {
  return ThetaPoly(F, {{checked_pow(F->q(), k + i), 1}, {checked_pow(F->q(), i), F->neg(1)}});
}

// Laurent caches shared by the closed-form routes.
struct LaurentTables {
  const DrinfeldModule& phi;
  ContextPtr ctx;
  std::map<std::pair<int, int>, LaurentElem> apow;     // (i, j) -> A_i^(q^j)
  std::map<std::pair<int, int>, LaurentElem> inv_bp;   // (k, i) -> 1/[k]^(q^i)

  const LaurentElem& A_pow(int i, int j) {
    auto it = apow.find({i, j});
    if (it == apow.end()) it = apow.emplace(std::pair{i, j}, phi.A(i).to_laurent(ctx).pow_q(j)).first;
    return it->second;
  }
  const LaurentElem& inv_bracket_pow(int k, int i) {
    auto it = inv_bp.find({k, i});
    if (it == inv_bp.end())
      it = inv_bp.emplace(std::pair{k, i}, bracket_power(phi.field(), k, i).to_laurent(ctx).invert()).first;
    return it->second;
  }
  LaurentElem monomial(const ShadowedPartition& p) {
    LaurentElem acc = LaurentElem::one(ctx);
    for (int i = 1; i <= p.r(); ++i)
      for (int j : p.elements(i)) acc = acc * A_pow(i, j);
    return acc;
  }
};

}  // namespace

std::vector<LaurentElem> exp_coeffs_partitions(const DrinfeldModule& phi, int N, const ContextPtr& ctx) {
  LaurentTables tab{phi, ctx, {}, {}};
  std::vector<LaurentElem> out;
  for (int n = 0; n <= N; ++n) {
    LaurentElem acc = LaurentElem::zero(ctx);
    for (const auto& p : supported_partitions(phi, n)) {
      LaurentElem term = tab.monomial(p);
      const uint64_t u = p.union_mask();
      for (int i = 0; i < n; ++i)
        if ((u >> i) & 1) term = term * tab.inv_bracket_pow(n - i, i);
      acc += term;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<LaurentElem> log_coeffs_partitions(const DrinfeldModule& phi, int N, const ContextPtr& ctx) {
  LaurentTables tab{phi, ctx, {}, {}};
  std::vector<LaurentElem> out;
  for (int n = 0; n <= N; ++n) {
    LaurentElem acc = LaurentElem::zero(ctx);
    for (const auto& p : supported_partitions(phi, n)) {
      LaurentElem term = tab.monomial(p);
      for (int j = 1; j <= p.r(); ++j)
        for (int i : p.elements(j)) term = -(term * tab.inv_bracket_pow(i + j, 0));
      acc += term;
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<LaurentElem> exp_coeffs_recurrence(const DrinfeldModule& phi, int N, const ContextPtr& ctx) {
  std::vector<LaurentElem> alpha{LaurentElem::one(ctx)};
  std::vector<LaurentElem> A;
  for (int i = 0; i <= phi.rank(); ++i) A.push_back(phi.A(i).to_laurent(ctx));
  for (int n = 1; n <= N; ++n) {
    LaurentElem acc = LaurentElem::zero(ctx);
    for (int i = 1; i <= std::min(n, phi.rank()); ++i)
      if (!A[static_cast<size_t>(i)].is_zero()) acc += A[static_cast<size_t>(i)] * alpha[static_cast<size_t>(n - i)].pow_q(i);
    alpha.push_back(acc * bracket(ctx, n).invert());
  }
  return alpha;
}

std::vector<LaurentElem> log_coeffs_inversion(const std::vector<LaurentElem>& alpha) {
  if (alpha.empty()) return {};
  const auto& ctx = alpha[0].ctx();
  std::vector<LaurentElem> beta{LaurentElem::one(ctx)};
  for (size_t n = 1; n < alpha.size(); ++n) {
    LaurentElem acc = LaurentElem::zero(ctx);
    for (size_t k = 0; k < n; ++k) acc += beta[k] * alpha[n - k].pow_q(static_cast<int64_t>(k));
    beta.push_back(-acc);
  }
  return beta;
}

ThetaFraction exp_coeff_fraction(const DrinfeldModule& phi, int n) {
  const auto& F = phi.field();
  ThetaFraction out{ThetaPoly(F), ThetaPoly::constant(F, 1)};
  for (int i = 0; i < n; ++i) out.den = out.den * bracket_power(F, n - i, i);
  for (const auto& p : supported_partitions(phi, n)) {
    ThetaPoly term = partition_monomial(phi, p);
    const uint64_t u = p.union_mask();
    for (int i = 0; i < n; ++i)
      if (!((u >> i) & 1)) term = term * bracket_power(F, n - i, i);
    out.num += term;
  }
  return out;
}

ThetaFraction log_coeff_fraction(const DrinfeldModule& phi, int n) {
  const auto& F = phi.field();
  const int top = n + phi.rank() - 1;
  ThetaFraction out{ThetaPoly(F), ThetaPoly::constant(F, 1)};
  for (int e = 1; e <= top; ++e) out.den = out.den * (-bracket_poly(F, e));
  for (const auto& p : supported_partitions(phi, n)) {
    ThetaPoly term = partition_monomial(phi, p);
    std::vector<bool> used(static_cast<size_t>(top) + 1, false);
    for (int j = 1; j <= p.r(); ++j)
      for (int i : p.elements(j)) used[static_cast<size_t>(i + j)] = true;
    for (int e = 1; e <= top; ++e)
      if (!used[static_cast<size_t>(e)]) term = term * (-bracket_poly(F, e));
    out.num += term;
  }
  return out;
}

ThetaPoly carlitz_D(const FieldPtr& field, int n) {
  ThetaPoly D = ThetaPoly::constant(field, 1);
  for (int k = 1; k <= n; ++k) D = bracket_poly(field, k) * D.frob(1);
  return D;
}

ThetaPoly carlitz_L(const FieldPtr& field, int n) {
  ThetaPoly L = ThetaPoly::constant(field, n % 2 == 0 ? 1 : field->neg(1));
  for (int k = 1; k <= n; ++k) L = L * bracket_poly(field, k);
  return L;
}

// ---------------------------------------------------------------------------
// Point-evaluation certificates

namespace {

bool is_prime_int(int k) {
  if (k < 2) return false;
  for (int d = 2; d * d <= k; ++d)
    if (k % d == 0) return false;
  return true;
}

FieldPtr extension_field(const FieldParams& base, int K) {
  static std::mutex mu;
  static std::map<std::tuple<int, std::vector<int>, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::tuple{base.p, base.modulus, K};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_field(base.with_degree(K))).first;
  return it->second;
}

// Partition data flattened for fast evaluation: (i, j) pairs and bracket indices.
struct FlatTerm {
  std::vector<std::pair<int, int>> a;     // A_i^(q^j)
  std::vector<std::pair<int, int>> den;   // [k]^(q^i)
  bool negate = false;
};

std::vector<std::vector<FlatTerm>> flat_exp(const DrinfeldModule& phi, int N) {
  std::vector<std::vector<FlatTerm>> out;
  for (int n = 0; n <= N; ++n) {
    std::vector<FlatTerm> terms;
    for (const auto& p : supported_partitions(phi, n)) {
      FlatTerm t;
      for (int i = 1; i <= p.r(); ++i)
        for (int j : p.elements(i)) t.a.emplace_back(i, j);
      const uint64_t u = p.union_mask();
      for (int i = 0; i < n; ++i)
        if ((u >> i) & 1) t.den.emplace_back(n - i, i);
      terms.push_back(std::move(t));
    }
    out.push_back(std::move(terms));
  }
  return out;
}

std::vector<std::vector<FlatTerm>> flat_log(const DrinfeldModule& phi, int N) {
  std::vector<std::vector<FlatTerm>> out;
  for (int n = 0; n <= N; ++n) {
    std::vector<FlatTerm> terms;
    for (const auto& p : supported_partitions(phi, n)) {
      FlatTerm t;
      for (int i = 1; i <= p.r(); ++i)
        for (int j : p.elements(i)) {
          t.a.emplace_back(i, j);
          t.den.emplace_back(i + j, 0);
        }
      t.negate = p.size() % 2 == 1;
      terms.push_back(std::move(t));
    }
    out.push_back(std::move(terms));
  }
  return out;
}

std::vector<Code> eval_flat(const DrinfeldModule& phi, const std::vector<std::vector<FlatTerm>>& flat, const GaloisField& K,
                            Code a) {
  std::vector<Code> Aval(static_cast<size_t>(phi.rank()) + 1);
  for (int i = 1; i <= phi.rank(); ++i) Aval[static_cast<size_t>(i)] = phi.A(i).eval_in(K, a);
  std::vector<Code> out;
  for (const auto& terms : flat) {
    Code acc = 0;
    for (const auto& t : terms) {
      Code num = 1, den = 1;
      for (auto [i, j] : t.a) num = K.mul(num, K.frob(Aval[static_cast<size_t>(i)], j));
      for (auto [k, i] : t.den) den = K.mul(den, K.frob(K.sub(K.frob(a, k), a), i));
      Code v = K.div(num, den);
      acc = K.add(acc, t.negate ? K.neg(v) : v);
    }
    out.push_back(acc);
  }
  return out;
}

std::vector<Code> exp_recurrence_at(const DrinfeldModule& phi, int N, const GaloisField& K, Code a) {
  std::vector<Code> Aval(static_cast<size_t>(phi.rank()) + 1);
  for (int i = 1; i <= phi.rank(); ++i) Aval[static_cast<size_t>(i)] = phi.A(i).eval_in(K, a);
  std::vector<Code> alpha{1};
  for (int n = 1; n <= N; ++n) {
    Code acc = 0;
    for (int i = 1; i <= std::min(n, phi.rank()); ++i)
      acc = K.add(acc, K.mul(Aval[static_cast<size_t>(i)], K.frob(alpha[static_cast<size_t>(n - i)], i)));
    alpha.push_back(K.div(acc, K.sub(K.frob(a, n), a)));
  }
  return alpha;
}

// Degree bounds of the recurrence route: b_n = max_i (deg A_i + q^i b_{n-i}) - q^n.
std::vector<Degree> recurrence_degree_bounds(const DrinfeldModule& phi, int N) {
  std::vector<Degree> b{Rational(0)};
  for (int n = 1; n <= N; ++n) {
    Degree best;
    for (int i : phi.support())
      if (i <= n && b[static_cast<size_t>(n - i)])
        best = degree_max(best, *phi.deg_A(i) + Rational(big_pow(phi.q(), i)) * *b[static_cast<size_t>(n - i)]);
    b.push_back(best ? Degree(*best - Rational(big_pow(phi.q(), n))) : std::nullopt);
  }
  return b;
}

int64_t to_bound(const Degree& d) {
  if (!d) return 0;
  return std::max<int64_t>(0, ceil_to_int(*d));
}

Certificate not_applicable(const std::string& statement, const std::string& why) {
  Certificate c;
  c.statement = statement;
  c.detail = why;
  return c;
}

}  // namespace

Certificate certify_identity(const std::string& statement, const FieldPtr& base, int64_t bound, int min_ext,
                             const std::function<bool(const GaloisField&, Code)>& holds_at) {
  Certificate cert;
  cert.statement = statement;
  cert.degree_bound = bound;
  const int64_t q = base->q();
  int K = 0;
  for (int k = std::max(min_ext, 2);; ++k) {
    BigInt size = big_pow(q, k);
    if (size > (BigInt(1) << 20)) break;
    if (is_prime_int(k) && size - q > bound) {
      K = k;
      break;
    }
  }
  if (K == 0) {
    cert.detail = "degree bound " + std::to_string(bound) + " exceeds the points of every usable extension";
    return cert;
  }
  cert.extension_degree = K;
  auto field = extension_field(base->params(), K);
  const GaloisField& F = *field;
  for (uint32_t idx = 0; idx < F.size() && cert.points <= bound; ++idx) {
    Code a = F.from_index(idx);
    if (F.in_base_field(a)) continue;
    if (!holds_at(F, a)) {
      cert.detail = "identity fails at the point with index " + std::to_string(idx) + " of F_{q^" + std::to_string(K) + "}";
      return cert;
    }
    ++cert.points;
  }
  cert.passed = cert.points > bound;
  return cert;
}

std::vector<Code> exp_coeffs_at(const DrinfeldModule& phi, int N, const GaloisField& K, Code a) {
  return eval_flat(phi, flat_exp(phi, N), K, a);
}

std::vector<Code> log_coeffs_at(const DrinfeldModule& phi, int N, const GaloisField& K, Code a) {
  return eval_flat(phi, flat_log(phi, N), K, a);
}

std::vector<Degree> exp_degree_bounds(const DrinfeldModule& phi, int N) {
  std::vector<Degree> out;
  for (int n = 0; n <= N; ++n) {
    Degree best;
    const Rational qn(big_pow(phi.q(), n));
    for (const auto& p : supported_partitions(phi, n)) {
      Rational d = -Rational(p.size()) * qn;
      for (int i = 1; i <= p.r(); ++i)
        if (p.set(i)) d += Rational(weight(p.set(i), phi.q())) * *phi.deg_A(i);
      best = degree_max(best, d);
    }
    out.push_back(best);
  }
  return out;
}

std::vector<Degree> log_degree_bounds(const DrinfeldModule& phi, int N) {
  std::vector<Degree> out;
  for (int n = 0; n <= N; ++n) {
    Degree best;
    for (const auto& p : supported_partitions(phi, n)) {
      Rational d = 0;
      for (int i = 1; i <= p.r(); ++i) {
        if (p.set(i)) d += Rational(weight(p.set(i), phi.q())) * *phi.deg_A(i);
        for (int j : p.elements(i)) d -= Rational(big_pow(phi.q(), i + j));
      }
      best = degree_max(best, d);
    }
    out.push_back(best);
  }
  return out;
}

Certificate certify_exp_coeffs(const DrinfeldModule& phi, int N) {
  const std::string statement = "closed-form alpha_n satisfy [n] alpha_n = sum A_i alpha_{n-i}^(q^i), n <= " + std::to_string(N);
  if (!phi.is_polynomial_over_fq()) return not_applicable(statement, "coefficients must be polynomials in theta over F_q");
  const auto b1 = exp_degree_bounds(phi, N);
  const int64_t q = phi.q();
  Degree worst;
  for (int n = 1; n <= N; ++n) {
    const Rational qn(big_pow(q, n));
    Degree piece;
    if (b1[static_cast<size_t>(n)]) piece = qn + *b1[static_cast<size_t>(n)];
    for (int i : phi.support())
      if (i <= n && b1[static_cast<size_t>(n - i)])
        piece = degree_max(piece, *phi.deg_A(i) + Rational(big_pow(q, i)) * *b1[static_cast<size_t>(n - i)]);
    // the identity times D_n is a polynomial; deg D_n = n q^n
    if (piece) worst = degree_max(worst, Rational(n) * qn + *piece);
  }
  const auto flat = flat_exp(phi, N);
  return certify_identity(statement, phi.field(), to_bound(worst), N + 1, [&](const GaloisField& K, Code a) {
    auto al = eval_flat(phi, flat, K, a);
    for (int n = 1; n <= N; ++n) {
      Code rhs = 0;
      for (int i = 1; i <= std::min(n, phi.rank()); ++i)
        rhs = K.add(rhs, K.mul(phi.A(i).eval_in(K, a), K.frob(al[static_cast<size_t>(n - i)], i)));
      if (K.mul(K.sub(K.frob(a, n), a), al[static_cast<size_t>(n)]) != rhs) return false;
    }
    return true;
  });
}

Certificate certify_log_coeffs(const DrinfeldModule& phi, int N) {
  const std::string statement =
      "closed-form beta_n satisfy sum_{k<=n} beta_k alpha_{n-k}^(q^k) = 0 with recurrence alpha, 1 <= n <= " + std::to_string(N);
  if (!phi.is_polynomial_over_fq()) return not_applicable(statement, "coefficients must be polynomials in theta over F_q");
  const auto bb = log_degree_bounds(phi, N);
  const auto ba = recurrence_degree_bounds(phi, N);
  const int64_t q = phi.q();
  Degree worst;
  for (int n = 1; n <= N; ++n) {
    Degree piece;
    for (int k = 0; k <= n; ++k)
      if (bb[static_cast<size_t>(k)] && ba[static_cast<size_t>(n - k)])
        piece = degree_max(piece, *bb[static_cast<size_t>(k)] + Rational(big_pow(q, k)) * *ba[static_cast<size_t>(n - k)]);
    // clear by prod_{e <= n+r-1} [e] (closed-form beta) and D_n (recurrence alpha)
    Rational clear = Rational(n) * Rational(big_pow(q, n));
    for (int e = 1; e <= n + phi.rank() - 1; ++e) clear += Rational(big_pow(q, e));
    if (piece) worst = degree_max(worst, clear + *piece);
  }
  const auto flat = flat_log(phi, N);
  return certify_identity(statement, phi.field(), to_bound(worst), N + phi.rank(), [&](const GaloisField& K, Code a) {
    auto be = eval_flat(phi, flat, K, a);
    auto al = exp_recurrence_at(phi, N, K, a);
    for (int n = 1; n <= N; ++n) {
      Code acc = 0;
      for (int k = 0; k <= n; ++k)
        acc = K.add(acc, K.mul(be[static_cast<size_t>(k)], K.frob(al[static_cast<size_t>(n - k)], k)));
      if (acc != 0) return false;
    }
    return true;
  });
}

CoefficientSet coefficients(const DrinfeldModule& phi, int N, const ContextPtr& ctx) {
  CoefficientSet cs;
  cs.alpha = exp_coeffs_partitions(phi, N, ctx);
  cs.beta = log_coeffs_partitions(phi, N, ctx);
  auto a2 = exp_coeffs_recurrence(phi, N, ctx);
  auto b2 = log_coeffs_inversion(a2);
  cs.numeric_agree = true;
  for (int n = 0; n <= N; ++n)
    cs.numeric_agree = cs.numeric_agree && cs.alpha[static_cast<size_t>(n)].agrees_with(a2[static_cast<size_t>(n)]) &&
                       cs.beta[static_cast<size_t>(n)].agrees_with(b2[static_cast<size_t>(n)]);
  cs.alpha_check = certify_exp_coeffs(phi, N);
  cs.beta_check = certify_log_coeffs(phi, N);
  return cs;
}

ComposeReport compose_check(const std::vector<LaurentElem>& alpha, const std::vector<LaurentElem>& beta, int64_t u_cap) {
  ComposeReport rep;
  rep.passed = true;
  const size_t N = std::min(alpha.size(), beta.size());
  for (size_t n = 1; n < N; ++n) {
    std::vector<LaurentElem> terms;
    for (size_t k = 0; k <= n; ++k) terms.push_back(beta[k] * alpha[n - k].pow_q(static_cast<int64_t>(k)));
    auto r = check_scalar_identity("z^(q^" + std::to_string(n) + ") coefficient of log(exp(z))", terms, u_cap);
    if (!r.passed) {
      rep.passed = false;
      rep.failing_orders.push_back(static_cast<int>(n));
    }
    rep.orders.push_back(std::move(r));
  }
  return rep;
}

}  // namespace anderson
