#include "anderson/drinfeld.hpp"
#include "anderson/error.hpp"
#include "doctest.h"

using namespace anderson;

namespace {

ThetaPoly one(const FieldPtr& F) { return ThetaPoly::constant(F, 1); }
ThetaPoly br(const FieldPtr& F, int k) { return bracket_poly(F, k); }

ThetaFraction frac(ThetaPoly num, ThetaPoly den) { return {std::move(num), std::move(den)}; }
ThetaFraction operator+(const ThetaFraction& a, const ThetaFraction& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}

DrinfeldModule module(const FieldPtr& F, std::vector<ThetaPoly> A) { return DrinfeldModule(F, std::move(A)); }

}  // namespace

TEST_CASE("construction and convergence data") {
  auto F = make_field(FieldParams::defaults(2, 1));
  CHECK_THROWS_AS(DrinfeldModule(F, {}), Error);
  CHECK_THROWS_AS(DrinfeldModule(F, {one(F), ThetaPoly(F)}), Error);

  auto phi = module(F, {one(F), one(F)});
  auto cd = convergence_data(phi);
  CHECK(cd.ratios.at(1) == Rational(-2));
  CHECK(cd.ratios.at(2) == Rational(-4, 3));
  CHECK(cd.s == 2);
  CHECK(cd.strict);
  CHECK(cd.logq_R == Rational(4, 3));
  CHECK(cd.mu(2, 2) == 0);
  CHECK(cd.mu(1, 2) > 0);

  for (int q : {2, 3, 4, 5}) {
    auto c = convergence_data(DrinfeldModule::carlitz(make_field(FieldParams::defaults(q, 1))));
    CHECK(c.s == 1);
    CHECK(c.logq_R == Rational(q, q - 1));
  }

  // A_2 = 0 leaves only index 1 and 3 in the support
  auto F3 = make_field(FieldParams::defaults(3, 1));
  auto gap = module(F3, {ThetaPoly::theta(F3), ThetaPoly(F3), one(F3)});
  CHECK(gap.support() == std::vector<int>{1, 3});
  CHECK(gap.is_polynomial_over_fq());
  auto tie = convergence_data(module(F, {ThetaPoly::monomial(F, 1, 2), ThetaPoly::monomial(F, 1, 4)}));
  CHECK(tie.ratios.at(1) == 0);
  CHECK(tie.ratios.at(2) == 0);
  CHECK(tie.s == 1);
  CHECK(!tie.strict);
}

TEST_CASE("phi action") {
  for (int q : {2, 3}) {
    auto F = make_field(FieldParams::defaults(q, 1));
    auto ctx = make_context(F, {1, 80});
    auto phi = DrinfeldModule::carlitz(F);
    auto th = LaurentElem::theta(ctx);
    auto want = (ThetaPoly::monomial(F, 1, 2) + ThetaPoly::monomial(F, 1, q)).to_laurent(ctx);
    CHECK(phi_t(phi, th) == want);
    auto t2 = phi_action(phi, {0, 0, 1}, th);
    CHECK(t2.agrees_with(phi_t(phi, phi_t(phi, th))));
    // phi_{1 + t} = id + phi_t
    CHECK(phi_action(phi, {1, 1}, th).agrees_with(th + want));
  }
}

TEST_CASE("Carlitz closed forms are 1/D_n and 1/L_n") {
  for (int q : {2, 3}) {
    auto F = make_field(FieldParams::defaults(q, 1));
    auto phi = DrinfeldModule::carlitz(F);
    for (int n = 0; n <= (q == 2 ? 6 : 4); ++n) {
      CHECK(exp_coeff_fraction(phi, n).equals(frac(one(F), carlitz_D(F, n))));
      CHECK(log_coeff_fraction(phi, n).equals(frac(one(F), carlitz_L(F, n))));
    }
    auto D3 = carlitz_D(F, 3);
    CHECK(D3 == br(F, 3) * br(F, 2).frob(1) * br(F, 1).frob(2));
    auto ctx = make_context(F, {1, 60});
    auto a = exp_coeffs_partitions(phi, 5, ctx);
    auto b = log_coeffs_partitions(phi, 5, ctx);
    CHECK(a[0] == LaurentElem::one(ctx));
    CHECK(b[0] == LaurentElem::one(ctx));
    for (int n = 1; n <= 5; ++n) {
      CHECK(a[static_cast<size_t>(n)].agrees_with(carlitz_D(F, n).to_laurent(ctx).invert()));
      CHECK(b[static_cast<size_t>(n)].agrees_with(carlitz_L(F, n).to_laurent(ctx).invert()));
    }
  }
}

TEST_CASE("third coefficients in rank 2 and 3") {
  auto F = make_field(FieldParams::defaults(3, 1));
  const int q = 3;
  auto A1 = ThetaPoly::theta(F) + one(F);
  auto A2 = ThetaPoly::monomial(F, 2, 2);
  auto A3 = ThetaPoly::theta(F);
  auto phi2 = module(F, {A1, A2});
  auto phi3 = module(F, {A1, A2, A3});

  auto ps = supported_partitions(phi2, 3);
  REQUIRE(ps.size() == 3);
  CHECK(partition_monomial(phi2, ps[0]) * one(F) == A1.frob(2) * A2);        // ({2}, {0})
  CHECK(ps[0].to_string() == "({2}, {0})");
  CHECK(ps[1].to_string() == "({0}, {1})");
  CHECK(partition_monomial(phi2, ps[1]) == A1 * A2.frob(1));
  CHECK(ps[2].to_string() == "({0,1,2}, {})");
  CHECK(partition_monomial(phi2, ps[2]) == A1 * A1.frob(1) * A1.frob(2));
  (void)q;

  auto A1w = A1 * A1.frob(1) * A1.frob(2);
  auto alpha3 = frac(A1w, br(F, 1).frob(2) * br(F, 2).frob(1) * br(F, 3)) +
                frac(A1 * A2.frob(1), br(F, 2).frob(1) * br(F, 3)) +
                frac(A1.frob(2) * A2, br(F, 1).frob(2) * br(F, 3));
  auto beta3 = frac(-A1w, br(F, 1) * br(F, 2) * br(F, 3)) + frac(A1 * A2.frob(1), br(F, 1) * br(F, 3)) +
               frac(A1.frob(2) * A2, br(F, 2) * br(F, 3));
  CHECK(exp_coeff_fraction(phi2, 3).equals(alpha3));
  CHECK(log_coeff_fraction(phi2, 3).equals(beta3));
  CHECK(exp_coeff_fraction(phi3, 3).equals(alpha3 + frac(A3, br(F, 3))));
  CHECK(log_coeff_fraction(phi3, 3).equals(beta3 + frac(-A3, br(F, 3))));
  // a wrong sign is caught
  CHECK(!log_coeff_fraction(phi3, 3).equals(beta3 + frac(A3, br(F, 3))));
}

TEST_CASE("closed forms agree with the recurrence") {
  struct Case {
    int q;
    std::vector<std::vector<uint32_t>> A;  // dense theta-coefficients of each A_i
    int N;
  };
  std::vector<Case> cases = {
      {2, {{1}}, 8}, {2, {{1}, {1}}, 8}, {2, {{0, 1}, {1}, {1}}, 7}, {3, {{1}}, 6}, {3, {{1}, {2}}, 5}, {3, {{0, 1}, {}, {1}}, 5},
  };
  for (const auto& c : cases) {
    auto F = make_field(FieldParams::defaults(c.q, 1));
    std::vector<ThetaPoly> A;
    for (const auto& v : c.A) A.push_back(ThetaPoly::from_coeffs(F, v));
    auto phi = module(F, A);
    auto ctx = make_context(F, {1, 96});
    auto cs = coefficients(phi, c.N, ctx);
    INFO("q=" << c.q << " r=" << phi.rank());
    CHECK(cs.numeric_agree);
    CHECK(cs.alpha_check.passed);
    CHECK(cs.beta_check.passed);
    CHECK(cs.alpha_check.points > cs.alpha_check.degree_bound);
    CHECK(cs.beta_check.points > cs.beta_check.degree_bound);
    auto rep = compose_check(cs.alpha, cs.beta, 40);
    CHECK(rep.passed);
    CHECK(rep.failing_orders.empty());

    // degree bounds dominate the actual degrees
    auto ba = exp_degree_bounds(phi, c.N), bb = log_degree_bounds(phi, c.N);
    for (int n = 0; n <= c.N; ++n) {
      CHECK(!degree_less(ba[static_cast<size_t>(n)], cs.alpha[static_cast<size_t>(n)].degree()));
      CHECK(!degree_less(bb[static_cast<size_t>(n)], cs.beta[static_cast<size_t>(n)].degree()));
    }
  }
}

TEST_CASE("certificates reject false identities") {
  auto F = make_field(FieldParams::defaults(2, 1));
  auto c = certify_identity("a = a^2", F, 3, 2, [](const GaloisField& K, GaloisField::Code a) { return K.mul(a, a) == a; });
  CHECK(!c.passed);
  CHECK(!c.detail.empty());
  auto big = certify_identity("too many roots", F, int64_t{1} << 30, 2, [](const GaloisField&, GaloisField::Code) { return true; });
  CHECK(!big.passed);
  CHECK(big.extension_degree == 0);
  auto ok = certify_identity("frobenius is additive", F, 8, 3, [](const GaloisField& K, GaloisField::Code a) {
    auto b = K.add(a, 1);
    return K.frob(b, 1) == K.add(K.frob(a, 1), 1);
  });
  CHECK(ok.passed);
  CHECK(ok.extension_degree == 5);
  CHECK(ok.points == 9);

  // non-polynomial coefficients are outside the certificate's scope
  auto Fs = make_field(FieldParams::defaults(2, 2));
  auto phi = module(Fs, {ThetaPoly::constant(Fs, 2)});
  CHECK(!certify_exp_coeffs(phi, 3).passed);
}

TEST_CASE("compose check flags a corrupted coefficient") {
  auto F = make_field(FieldParams::defaults(2, 1));
  auto ctx = make_context(F, {1, 64});
  auto phi = module(F, {one(F), one(F)});
  auto a = exp_coeffs_partitions(phi, 5, ctx);
  auto b = log_coeffs_partitions(phi, 5, ctx);
  b[3] = b[3] + LaurentElem::theta_pow(ctx, Rational(-40));
  auto rep = compose_check(a, b, 50);
  CHECK(!rep.passed);
  CHECK(rep.failing_orders.front() == 3);
}
