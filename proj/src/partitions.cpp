#include "anderson/partitions.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "anderson/error.hpp"

namespace anderson {

std::vector<int> ShadowedPartition::elements(int i) const {
  std::vector<int> out;
  for (int j = 0; j < n; ++j)
    if (contains(i, j)) out.push_back(j);
  return out;
}

uint64_t ShadowedPartition::union_mask() const {
  uint64_t u = 0;
  for (auto s : sets) u |= s;
  return u;
}

int ShadowedPartition::size() const {
  int c = 0;
  for (auto s : sets) c += std::popcount(s);
  return c;
}

std::string ShadowedPartition::to_string() const {
  std::ostringstream os;
  os << "(";
  for (int i = 1; i <= r(); ++i) {
    if (i > 1) os << ", ";
    os << "{";
    bool first = true;
    for (int j : elements(i)) {
      os << (first ? "" : ",") << j;
      first = false;
    }
    os << "}";
  }
  os << ")";
  return os.str();
}

bool ShadowedPartition::operator<(const ShadowedPartition& o) const {
  for (size_t i = 0; i < sets.size() && i < o.sets.size(); ++i) {
    uint64_t diff = sets[i] ^ o.sets[i];
    if (diff == 0) continue;
    // first differing position is the lowest differing bit; a 0 there sorts first
    int j = std::countr_zero(diff);
    return ((sets[i] >> j) & 1) == 0;
  }
  return sets.size() < o.sets.size();
}

BigInt weight(uint64_t mask, int64_t q) {
  BigInt w = 0;
  for (int j = 0; j < 64; ++j)
    if ((mask >> j) & 1) w += big_pow(q, j);
  return w;
}

bool is_shadowed_partition(const ShadowedPartition& p) {
  if (p.n < 0 || p.n > 62 || p.r() < 1) return false;
  const uint64_t full = p.n == 0 ? 0 : (uint64_t{1} << p.n) - 1;
  uint64_t cover = 0;
  for (int i = 1; i <= p.r(); ++i) {
    const uint64_t s = p.set(i);
    if (s & ~full) return false;
    for (int j = 0; j < i; ++j) {
      const uint64_t shifted = s << j;
      // S_i + j must stay inside {0..n-1}
      if ((shifted >> j) != s || (shifted & ~full)) return false;
      if (cover & shifted) return false;
      cover |= shifted;
    }
  }
  return cover == full;
}

bool weight_identity_holds(const ShadowedPartition& p, int64_t q) {
  BigInt lhs = 0;
  for (int i = 1; i <= p.r(); ++i) lhs += (big_pow(q, i) - 1) * weight(p.set(i), q);
  return lhs == big_pow(q, p.n) - 1;
}

std::vector<ShadowedPartition> enumerate_partitions(int r, int n) {
  if (r < 1) throw Error(ErrorKind::InvalidInput, "rank must be at least 1");
  if (n > 62) throw Error(ErrorKind::InvalidInput, "n must be at most 62");
  if (n < 0) return {};
  // level[k] holds P_r(k); P_r(k) is the disjoint union of Psi_i(P_r(k-i))
  std::vector<std::vector<ShadowedPartition>> level(static_cast<size_t>(n) + 1);
  level[0].push_back(ShadowedPartition{0, std::vector<uint64_t>(static_cast<size_t>(r), 0)});
  for (int k = 1; k <= n; ++k) {
    auto& cur = level[static_cast<size_t>(k)];
    for (int i = 1; i <= r && i <= k; ++i)
      for (const auto& p : level[static_cast<size_t>(k - i)]) {
        ShadowedPartition np = p;
        np.n = k;
        np.sets[static_cast<size_t>(i - 1)] |= uint64_t{1} << (k - i);
        cur.push_back(std::move(np));
      }
  }
  auto out = std::move(level[static_cast<size_t>(n)]);
  std::sort(out.begin(), out.end());
  return out;
}

BigInt count_partitions(int r, int n) {
  if (r < 1) throw Error(ErrorKind::InvalidInput, "rank must be at least 1");
  if (n < 0) return 0;
  std::vector<BigInt> F(static_cast<size_t>(n) + 1, 0);
  F[0] = 1;
  for (int k = 1; k <= n; ++k)
    for (int i = std::max(0, k - r); i < k; ++i) F[static_cast<size_t>(k)] += F[static_cast<size_t>(i)];
  return F[static_cast<size_t>(n)];
}

namespace {

void require_valid(const ShadowedPartition& p, int i) {
  if (i < 1 || i > p.r()) throw Error(ErrorKind::InvalidInput, "index i out of range 1..r");
  if (!is_shadowed_partition(p)) throw Error(ErrorKind::InvalidInput, "not a shadowed partition: " + p.to_string());
  if (p.n + i > 62) throw Error(ErrorKind::InvalidInput, "n exceeds 62");
}

}  // namespace

ShadowedPartition pi_bijection(int i, const ShadowedPartition& p) {
  require_valid(p, i);
  ShadowedPartition out = p;
  out.n = p.n + i;
  for (auto& s : out.sets) s <<= i;
  out.sets[static_cast<size_t>(i - 1)] |= 1;
  return out;
}

ShadowedPartition pi_inverse(const ShadowedPartition& p) {
  if (!is_shadowed_partition(p) || p.n == 0) throw Error(ErrorKind::InvalidInput, "no preimage under Pi");
  for (int i = 1; i <= p.r(); ++i) {
    if (!p.contains(i, 0)) continue;
    ShadowedPartition out = p;
    out.n = p.n - i;
    out.sets[static_cast<size_t>(i - 1)] &= ~uint64_t{1};
    for (auto& s : out.sets) s >>= i;
    return out;
  }
  throw Error(ErrorKind::InvalidInput, "0 lies in no set");
}

ShadowedPartition psi_injection(int i, const ShadowedPartition& p) {
  require_valid(p, i);
  ShadowedPartition out = p;
  out.n = p.n + i;
  out.sets[static_cast<size_t>(i - 1)] |= uint64_t{1} << p.n;
  return out;
}

std::vector<ShadowedPartition> restrict_to_support(const std::vector<ShadowedPartition>& ps,
                                                   const std::vector<int>& support) {
  std::vector<ShadowedPartition> out;
  for (const auto& p : ps) {
    bool ok = true;
    for (int i = 1; i <= p.r() && ok; ++i)
      if (p.set(i) != 0 && std::find(support.begin(), support.end(), i) == support.end()) ok = false;
    if (ok) out.push_back(p);
  }
  return out;
}

}  // namespace anderson
