#include <random>

#include "anderson/error.hpp"
#include "anderson/ff.hpp"
#include "doctest.h"

using namespace anderson;

namespace {

ResidueElem el(const FieldPtr& f, std::vector<int> c) {
  return ff_make(f, c);
}

// Schoolbook product in F_p[X]/(X^2 + X + 1) style quadratic extensions,
// written independently of the Zech tables: modulus X^2 + b X + c over F_p.
std::vector<int> quad_mul(std::vector<int> a, std::vector<int> b, int p, int mb, int mc) {
  int c0 = a[0] * b[0];
  int c1 = a[0] * b[1] + a[1] * b[0];
  int c2 = a[1] * b[1];
  // X^2 = -b X - c
  c1 -= mb * c2;
  c0 -= mc * c2;
  return {((c0 % p) + p) % p, ((c1 % p) + p) % p};
}

}  // namespace

TEST_CASE("default moduli are the smallest irreducibles") {
  auto f4 = FieldParams::defaults(4, 1);
  CHECK(f4.p == 2);
  CHECK(f4.e == 2);
  CHECK(f4.modulus == std::vector<int>{1, 1, 1});
  auto f8 = FieldParams::defaults(8, 1);
  CHECK(f8.modulus == std::vector<int>{1, 1, 0, 1});
  auto f9 = FieldParams::defaults(9, 1);
  CHECK(f9.modulus == std::vector<int>{1, 0, 1});
  auto f22 = FieldParams::defaults(2, 2);
  CHECK(f22.modulus_s == std::vector<std::vector<int>>{{1}, {1}, {1}});
  auto f32 = FieldParams::defaults(3, 2);
  CHECK(f32.modulus_s == std::vector<std::vector<int>>{{1}, {0}, {1}});
  CHECK_THROWS_AS(FieldParams::defaults(6, 1), Error);
}

TEST_CASE("ff_make basics") {
  auto f2 = make_field(FieldParams::defaults(2, 1));
  CHECK(el(f2, {1}) == ResidueElem::one(f2));
  auto f3 = make_field(FieldParams::defaults(3, 1));
  auto m1 = el(f3, {2});
  CHECK(m1 + ResidueElem::one(f3) == ResidueElem::zero(f3));
  CHECK(m1 == -ResidueElem::one(f3));
  CHECK_THROWS_AS(el(f3, {1, 0}), Error);
  try {
    el(f3, {1, 0});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidElement);
  }
}

TEST_CASE("generator of F_4 has order 3") {
  auto f = make_field(FieldParams::defaults(2, 2));
  auto g = el(f, {0, 1});
  auto one = ResidueElem::one(f);
  CHECK(g * g + g + one == ResidueElem::zero(f));
  CHECK(g * g * g == one);
  CHECK(g * g != one);
  // g^2 = g + 1 by direct multiplication
  CHECK((g * g).coords() == quad_mul({0, 1}, {0, 1}, 2, 1, 1));
}

TEST_CASE("multiplication matches schoolbook in F_9 and F_25") {
  for (auto [q, mb, mc] : {std::tuple{3, 0, 1}, std::tuple{5, 0, 2}}) {
    auto f = make_field(FieldParams::defaults(q, 2));
    auto fp = f->params();
    CHECK(fp.modulus_s[1][0] == mb);
    CHECK(fp.modulus_s[0][0] == mc);
    for (int a0 = 0; a0 < q; ++a0)
      for (int a1 = 0; a1 < q; ++a1)
        for (int b0 = 0; b0 < q; ++b0)
          for (int b1 = 0; b1 < q; ++b1) {
            auto x = el(f, {a0, a1});
            auto y = el(f, {b0, b1});
            CHECK((x * y).coords() == quad_mul({a0, a1}, {b0, b1}, q, mb, mc));
          }
  }
}

TEST_CASE("Frobenius examples") {
  auto f = make_field(FieldParams::defaults(2, 2));
  auto g = el(f, {0, 1});
  CHECK(ff_pow_q(g, 1) == g * g);
  CHECK(ff_pow_q(g, 1) == g + ResidueElem::one(f));
  CHECK(ff_pow_q(g, 2) == g);
  CHECK(ff_pow_q(g, -1) == ff_pow_q(g, 1));
  for (auto c : f->base_field()) CHECK(ff_pow_q(ResidueElem(f, c), 1) == ResidueElem(f, c));
  auto f9 = make_field(FieldParams::defaults(9, 3));
  for (int i = 0; i < 9; ++i) {
    ResidueElem x(f9, f9->from_index(static_cast<uint32_t>(i)));
    CHECK(ff_pow_q(x, 5) == x);
  }
}

TEST_CASE("roots of y^(q-1) = c") {
  auto f2 = make_field(FieldParams::defaults(2, 1));
  CHECK(ff_root_q_minus_1(ResidueElem::one(f2)) == ResidueElem::one(f2));
  auto f3 = make_field(FieldParams::defaults(3, 1));
  CHECK(ff_root_q_minus_1(ResidueElem::one(f3)).coords() == std::vector<int>{1});
  try {
    ff_root_q_minus_1(el(f3, {2}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoRootInField);
  }
  auto f9 = make_field(FieldParams::defaults(3, 2));
  auto r = ff_root_q_minus_1(el(f9, {2, 0}));
  CHECK(r * r == el(f9, {2, 0}));
  // exhaustive: the returned root is the lexicographically smallest solution
  for (uint32_t ci = 1; ci < f9->size(); ++ci) {
    ResidueElem c(f9, f9->from_index(ci));
    std::vector<std::vector<int>> sols;
    for (uint32_t yi = 1; yi < f9->size(); ++yi) {
      ResidueElem y(f9, f9->from_index(yi));
      if (y * y == c) sols.push_back(y.coords());
    }
    if (sols.empty()) {
      CHECK_THROWS_AS(ff_root_q_minus_1(c), Error);
    } else {
      std::sort(sols.begin(), sols.end());
      CHECK(ff_root_q_minus_1(c).coords() == sols.front());
    }
  }
}

TEST_CASE("caller-supplied moduli are verified") {
  FieldParams bad;
  bad.p = 2;
  bad.e = 2;
  bad.modulus = {1, 0, 1};  // X^2 + 1 = (X+1)^2
  bad.s = 1;
  bad.modulus_s = {{0, 0}, {1, 0}};
  CHECK_THROWS_AS(make_field(bad), Error);
  FieldParams ok = bad;
  ok.modulus = {1, 1, 1};
  CHECK_NOTHROW(make_field(ok));
  FieldParams bad_s = FieldParams::defaults(3, 2);
  bad_s.modulus_s = {{2}, {0}, {1}};  // X^2 - 1
  CHECK_THROWS_AS(make_field(bad_s), Error);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937 rng(7);
  for (auto [q, s] : {std::pair{2, 5}, std::pair{3, 3}, std::pair{4, 2}, std::pair{7, 2}, std::pair{8, 2}, std::pair{9, 2}}) {
    auto f = make_field(FieldParams::defaults(q, s));
    std::uniform_int_distribution<uint32_t> d(0, f->size() - 1);
    auto rnd = [&] { return ResidueElem(f, f->from_index(d(rng))); };
    for (int i = 0; i < 300; ++i) {
      auto a = rnd(), b = rnd(), c = rnd();
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a - a == ResidueElem::zero(f));
      if (!a.is_zero()) CHECK(a * a.inverse() == ResidueElem::one(f));
      CHECK(ff_pow_q(a + b, 1) == ff_pow_q(a, 1) + ff_pow_q(b, 1));
      CHECK(ff_pow_q(a * b, 1) == ff_pow_q(a, 1) * ff_pow_q(b, 1));
      CHECK(ff_pow_q(a, s) == a);
      CHECK(ff_pow_q(a, 1) == a.pow(q));
      if (!a.is_zero()) {
        try {
          auto r = ff_root_q_minus_1(a);
          CHECK(r.pow(q - 1) == a);
        } catch (const Error& e) {
          CHECK(e.kind() == ErrorKind::NoRootInField);
        }
      }
    }
  }
}
