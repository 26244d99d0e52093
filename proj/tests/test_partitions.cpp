#include <algorithm>
#include <set>

#include "anderson/error.hpp"
#include "anderson/partitions.hpp"
#include "doctest.h"

using namespace anderson;

namespace {

ShadowedPartition sp(int n, std::vector<std::vector<int>> sets) {
  ShadowedPartition p;
  p.n = n;
  for (const auto& s : sets) {
    uint64_t m = 0;
    for (int j : s) m |= uint64_t{1} << j;
    p.sets.push_back(m);
  }
  return p;
}

// Exhaustive filter over all subset tuples, checking the tiling by explicit sets.
std::vector<ShadowedPartition> brute_force(int r, int n) {
  std::vector<ShadowedPartition> out;
  const uint64_t per = uint64_t{1} << n;
  uint64_t total = 1;
  for (int i = 0; i < r; ++i) total *= per;
  for (uint64_t code = 0; code < total; ++code) {
    ShadowedPartition p;
    p.n = n;
    uint64_t c = code;
    for (int i = 0; i < r; ++i) {
      p.sets.push_back(c % per);
      c /= per;
    }
    std::multiset<int> covered;
    for (int i = 1; i <= r; ++i)
      for (int j = 0; j < i; ++j)
        for (int x : p.elements(i)) covered.insert(x + j);
    std::multiset<int> want;
    for (int x = 0; x < n; ++x) want.insert(x);
    if (covered == want) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("small cases") {
  for (int r = 1; r <= 4; ++r) {
    auto p0 = enumerate_partitions(r, 0);
    REQUIRE(p0.size() == 1);
    CHECK(p0[0].size() == 0);
    CHECK(count_partitions(r, 0) == 1);
    CHECK(enumerate_partitions(r, -3).empty());
  }
  for (int n = 1; n < 10; ++n) {
    auto p = enumerate_partitions(1, n);
    REQUIRE(p.size() == 1);
    CHECK(p[0].set(1) == (uint64_t{1} << n) - 1);
  }
  auto p22 = enumerate_partitions(2, 2);
  REQUIRE(p22.size() == 2);
  std::set<std::vector<uint64_t>> got{p22[0].sets, p22[1].sets};
  CHECK(got == std::set<std::vector<uint64_t>>{sp(2, {{0, 1}, {}}).sets, sp(2, {{}, {0}}).sets});
  CHECK(count_partitions(2, 5) == 8);
  CHECK(count_partitions(3, 5) == 13);
}

TEST_CASE("enumeration matches the exhaustive filter") {
  for (int r = 1; r <= 4; ++r)
    for (int n = 0; n * r <= 20 && n <= 8; ++n) CHECK(enumerate_partitions(r, n) == brute_force(r, n));
}

TEST_CASE("counts, validity and weights") {
  for (int r = 1; r <= 4; ++r)
    for (int n = 0; n <= 14; ++n) {
      auto ps = enumerate_partitions(r, n);
      CHECK(BigInt(ps.size()) == count_partitions(r, n));
      CHECK(std::is_sorted(ps.begin(), ps.end()));
      CHECK(std::adjacent_find(ps.begin(), ps.end()) == ps.end());
      for (const auto& p : ps) {
        CHECK(is_shadowed_partition(p));
        for (int q : {2, 3, 4, 5}) CHECK(weight_identity_holds(p, q));
      }
    }
}

TEST_CASE("weight identity characterizes partitions once q >= 4") {
  // for q = 2 base-q carries let non-tilings through, e.g. ({1,2}, {0,1}) with n = 4
  CHECK(weight_identity_holds(sp(4, {{1, 2}, {0, 1}}), 2));
  CHECK(!is_shadowed_partition(sp(4, {{1, 2}, {0, 1}})));
  for (int r = 1; r <= 3; ++r)
    for (int n = 0; n <= 5; ++n) {
      auto good = brute_force(r, n);
      const uint64_t per = uint64_t{1} << n;
      uint64_t total = 1;
      for (int i = 0; i < r; ++i) total *= per;
      size_t hits = 0;
      for (uint64_t code = 0; code < total; ++code) {
        ShadowedPartition p;
        p.n = n;
        uint64_t c = code;
        for (int i = 0; i < r; ++i) {
          p.sets.push_back(c % per);
          c /= per;
        }
        bool w = weight_identity_holds(p, 4);
        CHECK(w == is_shadowed_partition(p));
        hits += w;
      }
      CHECK(hits == good.size());
    }
}

TEST_CASE("Pi and Psi maps") {
  auto img = pi_bijection(1, sp(2, {{0, 1}}));
  CHECK(img == sp(3, {{0, 1, 2}}));
  CHECK(is_shadowed_partition(img));
  CHECK(psi_injection(2, sp(0, {{}, {}})) == sp(2, {{}, {0}}));
  CHECK_THROWS_AS(pi_bijection(1, sp(2, {{0}, {}})), Error);
  CHECK_THROWS_AS(psi_injection(3, sp(1, {{0}, {}})), Error);

  for (int r = 1; r <= 4; ++r)
    for (int n = 1; n <= 10; ++n) {
      auto target = enumerate_partitions(r, n);
      std::vector<ShadowedPartition> pis, psis;
      for (int i = 1; i <= r; ++i)
        for (const auto& p : enumerate_partitions(r, n - i)) {
          auto a = pi_bijection(i, p);
          CHECK(a.contains(i, 0));
          CHECK(pi_inverse(a) == p);
          pis.push_back(a);
          psis.push_back(psi_injection(i, p));
        }
      std::sort(pis.begin(), pis.end());
      std::sort(psis.begin(), psis.end());
      // disjoint images covering P_r(n)
      CHECK(pis == target);
      CHECK(psis == target);
    }
}

TEST_CASE("restriction to the support") {
  auto all = enumerate_partitions(3, 7);
  CHECK(restrict_to_support(all, {1, 2, 3}) == all);
  for (int n = 1; n <= 11; n += 2) CHECK(restrict_to_support(enumerate_partitions(2, n), {2}).empty());
  auto r4 = restrict_to_support(enumerate_partitions(2, 4), {2});
  REQUIRE(r4.size() == 1);
  CHECK(r4[0] == sp(4, {{}, {0, 2}}));
}
