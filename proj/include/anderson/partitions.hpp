#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "anderson/rational.hpp"

namespace anderson {

/// Tuple (S_1, ..., S_r) of subsets of {0, ..., n-1} whose shifted copies
/// S_i + j (0 <= j < i) tile {0, ..., n-1}. Sets are bitmasks, so n <= 62.
struct ShadowedPartition {
  int n = 0;
  std::vector<uint64_t> sets;  // sets[i-1] is S_i

  int r() const { return static_cast<int>(sets.size()); }
  uint64_t set(int i) const { return sets[static_cast<size_t>(i - 1)]; }
  bool contains(int i, int j) const { return (set(i) >> j) & 1; }
  std::vector<int> elements(int i) const;
  uint64_t union_mask() const;
  /// |S_1| + ... + |S_r|
  int size() const;
  std::string to_string() const;

  bool operator==(const ShadowedPartition& o) const { return n == o.n && sets == o.sets; }
  /// Lexicographic order on the flattened membership vector (S_1 bits 0..n-1, then S_2, ...).
  bool operator<(const ShadowedPartition& o) const;
};

/// w(S) = sum_{j in S} q^j
BigInt weight(uint64_t mask, int64_t q);

/// The defining tiling check.
bool is_shadowed_partition(const ShadowedPartition& p);

/// sum_i (q^i - 1) w(S_i) == q^n - 1
bool weight_identity_holds(const ShadowedPartition& p, int64_t q);

/// All of P_r(n), built by the Psi recursion and sorted. n < 0 gives nothing.
std::vector<ShadowedPartition> enumerate_partitions(int r, int n);

/// |P_r(n)| from the r-step Fibonacci recurrence.
BigInt count_partitions(int r, int n);

/// Pi_i : P_r(n-i) -> P_r(n), 0 joins S_i and every set shifts by i.
ShadowedPartition pi_bijection(int i, const ShadowedPartition& p);
/// Left inverse of Pi: drop 0 from the set containing it and shift back.
ShadowedPartition pi_inverse(const ShadowedPartition& p);
/// Psi_i : P_r(n-i) -> P_r(n), n-i joins S_i.
ShadowedPartition psi_injection(int i, const ShadowedPartition& p);

/// Keep partitions with S_i empty for every i outside `support` (1-based indices).
std::vector<ShadowedPartition> restrict_to_support(const std::vector<ShadowedPartition>& ps,
                                                   const std::vector<int>& support);

}  // namespace anderson
