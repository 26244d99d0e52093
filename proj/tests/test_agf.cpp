#include "anderson/agf.hpp"
#include "anderson/error.hpp"
#include "doctest.h"

using namespace anderson;

namespace {

ThetaPoly one(const FieldPtr& F) { return ThetaPoly::constant(F, 1); }

DrinfeldModule module(int q, std::vector<std::vector<uint32_t>> A) {
  auto F = make_field(FieldParams::defaults(q, 1));
  std::vector<ThetaPoly> polys;
  for (const auto& v : A) polys.push_back(ThetaPoly::from_coeffs(F, v));
  return DrinfeldModule(F, polys);
}

LaurentElem th_pow(const ContextPtr& ctx, int64_t k, uint32_t c = 1) { return LaurentElem::theta_pow(ctx, Rational(k), c); }

}  // namespace

TEST_CASE("B_n small cases") {
  auto phi = module(2, {{1}, {0, 1}});
  auto F = phi.field();
  for (auto route : {BRoute::Definition, BRoute::TwistRecurrence, BRoute::UntwistedRecurrence}) {
    auto b = b_seq(phi, 3, route);
    CHECK(b.entries[0].terms() == PoleSum::one(F).terms());
    REQUIRE(b.entries[1].terms().size() == 1);
    CHECK(b.entries[1].terms().begin()->first == uint64_t{1} << 1);
    CHECK(b.entries[1].terms().begin()->second == phi.A(1));
    CHECK(poles_in_range(phi, b));
  }
  for (int q : {2, 3}) {
    auto C = DrinfeldModule::carlitz(make_field(FieldParams::defaults(q, 1)));
    auto b = b_seq(C, 6, BRoute::Definition);
    for (int n = 0; n <= 6; ++n) {
      REQUIRE(b.entries[static_cast<size_t>(n)].terms().size() == 1);
      auto [mask, c] = *b.entries[static_cast<size_t>(n)].terms().begin();
      CHECK(mask == ((uint64_t{1} << (n + 1)) - 2));  // poles at theta^q, ..., theta^(q^n)
      CHECK(c == one(C.field()));
    }
  }
}

TEST_CASE("three routes for B_n agree and B_n(theta) = beta_n") {
  std::vector<DrinfeldModule> mods = {module(2, {{1}}),          module(2, {{1}, {1}}),    module(2, {{0, 1}, {}, {1}}),
                                      module(2, {{1}, {1}, {1}}), module(3, {{1}, {2, 1}}), module(3, {{1}, {1}, {1}})};
  for (const auto& phi : mods) {
    auto rep = compare_b_routes(phi, 6);
    INFO("q=" << phi.q() << " r=" << phi.rank());
    CHECK(rep.mismatched.empty());
    CHECK(rep.poles_ok);
    CHECK(rep.at_theta.passed);
    CHECK(rep.passed);
    auto ctx = make_context(phi.field(), {1, 64});
    auto beta = log_coeffs_partitions(phi, 6, ctx);
    auto b = b_seq(phi, 6, BRoute::UntwistedRecurrence);
    for (int n = 0; n <= 6; ++n) CHECK(b.entries[static_cast<size_t>(n)].eval_theta(ctx).agrees_with(beta[static_cast<size_t>(n)]));
  }
  // a corrupted sequence is caught by the certificate
  auto phi = module(2, {{1}, {1}});
  auto b = b_seq(phi, 4, BRoute::TwistRecurrence);
  b.entries[3].add_term(uint64_t{1} << 3, one(phi.field()));
  CHECK(!certify_b_at_theta(phi, b).passed);
}

TEST_CASE("norms of the partition terms") {
  for (const auto& phi : {module(2, {{1}, {1}}), module(2, {{0, 1}, {1}, {1}}), module(3, {{1}, {1}})}) {
    auto ctx = make_context(phi.field(), {1, 48});
    auto rep = norm_analysis(phi, 6, ctx, 8);
    CHECK(rep.passed);
    CHECK(!rep.partitions.empty());
    for (const auto& row : rep.bounds) CHECK(row.holds);
  }
  auto phi = module(2, {{1}, {1}});
  auto cd = convergence_data(phi);
  CHECK(b_norm_bound(phi, cd, 0) == 0);
  CHECK(b_norm_bound(phi, cd, 2) == Rational(-4));
}

TEST_CASE("deformed logarithm") {
  auto F = make_field(FieldParams::defaults(2, 1));
  auto C = DrinfeldModule::carlitz(F);
  auto ctx = make_context(F, {1, 96});
  auto zero = deformed_log(C, LaurentElem::zero(ctx), 5, 8);
  for (int k = 0; k < 8; ++k) CHECK(zero.series[k].is_exact_zero());
  CHECK_THROWS_AS(deformed_log(C, th_pow(ctx, 2), 4, 8), Error);

  // at t = theta the partial sums are sum xi^(q^n)/L_n
  auto xi = th_pow(ctx, -1);
  for (int N = 0; N <= 6; ++N) {
    auto L = deformed_log(C, xi, N, 8);
    LaurentElem direct = LaurentElem::zero(ctx);
    for (int n = 0; n <= N; ++n) direct += xi.pow_q(n) * carlitz_L(F, n).to_laurent(ctx).invert();
    CHECK(L.at_theta.agrees_with(direct));
    CHECK(L.at_theta.cap() < LaurentElem::kExact);
  }
  // more terms only change digits below the certified caps
  auto phi = module(2, {{1}, {1}});
  auto x2 = th_pow(ctx, -1) + LaurentElem::one(ctx);
  auto a = deformed_log(phi, x2, 3, 10), b = deformed_log(phi, x2, 8, 10);
  CHECK(a.at_theta.agrees_with(b.at_theta));
  for (int k = 0; k < 10; ++k) {
    CHECK(a.series[k].agrees_with(b.series[k]));
    CHECK(a.series[k].cap() < b.series[k].cap());
  }
  auto autoL = deformed_log_auto(phi, x2, 10, 60);
  CHECK(autoL.at_theta.rel_prec() >= 60);
}

TEST_CASE("Anderson generating function") {
  auto phi = module(2, {{1}, {1}});
  auto ctx = make_context(phi.field(), {1, 96});
  auto u = th_pow(ctx, 1) + LaurentElem::one(ctx);
  auto f = agf(phi, u, 12, 64);
  CHECK(f.parts.residue_at_theta() == -u);
  CHECK(f.residue(0) == -u);
  auto expanded = f.parts.expand();
  for (int k = 0; k < 12; ++k) CHECK(expanded[k].agrees_with(f.series[k]));
  auto z = agf(phi, LaurentElem::zero(ctx), 12, 64);
  for (int k = 0; k < 12; ++k) CHECK(z.series[k].is_exact_zero());

  // Delta_phi(f(u; t)) = exp(u)
  auto lhs = delta_phi(phi, f.series);
  auto xi = exp_phi(phi, u, 64);
  auto rep = check_series_identity("Delta f = exp u", {lhs.truncated(11), -TateSeries::constant(xi, 11)}, 56);
  INFO(rep.detail);
  CHECK(rep.passed);

  // shift: f(u; t) = t f(u/theta; t) + exp(u/theta)
  auto f1 = agf(phi, u * th_pow(ctx, -1), 12, 64);
  auto e1 = exp_phi(phi, u * th_pow(ctx, -1), 64);
  auto shift = check_series_identity("shift", {f.series, -f1.series.mul_t(), -TateSeries::constant(e1, 12)}, 56);
  CHECK(shift.passed);
}

TEST_CASE("exp and log invert each other") {
  for (const auto& phi : {module(2, {{1}}), module(2, {{1}, {1}}), module(3, {{1}, {1}, {1}})}) {
    auto ctx = make_context(phi.field(), {1, 80});
    auto xi = th_pow(ctx, -1) + th_pow(ctx, -3);
    auto u = log_phi(phi, xi, 64);
    CHECK(check_scalar_identity("exp log", {exp_phi(phi, u, 64), -xi}, 60).passed);
  }
}

TEST_CASE("main theorem identities") {
  auto phi = module(2, {{1}, {1}});
  auto ctx = make_context(phi.field(), {1, 128});
  auto rep = check_main_theorem(phi, th_pow(ctx, -2), 16, 96);
  for (const auto& id : rep.identities) {
    INFO(id.identity << " " << id.detail);
    CHECK(id.passed);
  }
  CHECK(rep.passed);
  CHECK(rep.identities.size() == 5);

  // the link fails for a perturbed u
  auto L = deformed_log(phi, rep.xi, rep.log_order, 16);
  auto f = agf(phi, rep.u + th_pow(ctx, 40), 16, 96);
  auto tf = f.series.mul_t() - f.series.scale(LaurentElem::theta(ctx));
  CHECK(!check_series_identity("perturbed link", {L.series, tf}, 96).passed);
  auto f0 = agf(phi, rep.u, 16, 96);
  CHECK(check_series_identity("link", {L.series, f0.series.mul_t() - f0.series.scale(LaurentElem::theta(ctx))}, 96).passed);

  auto zero = check_main_theorem(phi, LaurentElem::zero(ctx), 8, 96);
  CHECK(zero.passed);

  // deg xi >= log_q R
  CHECK_THROWS_AS(check_main_theorem(phi, th_pow(ctx, 2), 8, 96), Error);
  try {
    check_main_theorem(phi, th_pow(ctx, 1), 8, 96);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CompatPreconditionFailed);
  }
  try {
    check_main_theorem(phi, th_pow(ctx, 2), 8, 96);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideRadius);
  }
}

TEST_CASE("Carlitz omega") {
  for (auto [q, s, m] : {std::tuple{2, 1, 1}, std::tuple{3, 2, 2}}) {
    auto F = make_field(FieldParams::defaults(q, s));
    auto ctx = make_context(F, {m, 160});
    auto w = omega_carlitz(ctx, 32);
    CHECK(omega_difference_check(w, 128).passed);
    // pi = theta (-theta)^(1/(q-1)) prod_{i >= 1} (1 - theta^(1 - q^i))^(-1)
    auto th = LaurentElem::theta(ctx);
    auto pi = th * (-th).root_q_minus_1();
    for (int i = 1; i <= 10; ++i)
      pi = pi * (LaurentElem::one(ctx) - th_pow(ctx, 1 - static_cast<int64_t>(big_pow(q, i)))).invert();
    auto G = omega_carlitz_regular(ctx, 200 / (m * (q - 1)));
    auto res = G.eval(th);
    CHECK(check_scalar_identity("-Res omega = pi", {res, pi}, 128).passed);
    CHECK(pi.val() == -m * q / (q - 1));
  }
  auto F = make_field(FieldParams::defaults(2, 1));
  auto ctx = make_context(F, {1, 64});
  CHECK(omega_carlitz(ctx, 4)[0].agrees_with(LaurentElem::theta(ctx) * LaurentElem::one(ctx) +
                                            LaurentElem::zero_to(ctx, 0)));
  CHECK(omega_carlitz(ctx, 4)[0].leading() == 1);
  CHECK(omega_carlitz(ctx, 4)[0].val() == -1);
}

TEST_CASE("Carlitz compatibility") {
  for (auto [q, s, m] : {std::tuple{2, 1, 1}, std::tuple{3, 2, 2}}) {
    auto F = make_field(FieldParams::defaults(q, s));
    auto ctx = make_context(F, {m, 128});
    for (auto xi : {LaurentElem::one(ctx), th_pow(ctx, -1), LaurentElem::one(ctx) + th_pow(ctx, -2)}) {
      auto rep = carlitz_compat_check(ctx, xi, 16, 96);
      INFO(rep.detail);
      CHECK(rep.passed);
    }
    CHECK_THROWS_AS(carlitz_compat_check(ctx, th_pow(ctx, 1), 8, 96), Error);
  }
}
