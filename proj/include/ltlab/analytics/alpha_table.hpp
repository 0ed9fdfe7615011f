#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace ltlab::analytics {

using BigInt = boost::multiprecision::cpp_int;

/// Exact table of α_h(k), 1 ≤ h ≤ k ≤ k_max, built only from the recursion
/// α_h(k+1) = h α_h(k) + α_{h−1}(k) with α_1(k) = α_k(k) = 1.
class AlphaTable {
public:
  explicit AlphaTable(std::size_t k_max);

  std::size_t k_max() const { return k_max_; }
  /// α_h(k); 0 for h > k or h = 0.
  const BigInt& at(std::size_t h, std::size_t k) const;

  /// α_h(k) ≤ k^k for every entry with k ≤ up_to.
  bool bound_holds(std::size_t up_to) const;
  /// Smallest C with max_h α_h(k) ≤ C^k k^k.
  double minimal_constant(std::size_t k) const;

private:
  std::size_t k_max_;
  std::vector<std::vector<BigInt>> rows_;  // rows_[k][h]
  BigInt zero_{0};
};

AlphaTable alpha_table(std::size_t k_max);

double log_big(const BigInt& x);

struct SharpnessRow {
  std::size_t k = 0;
  std::size_t j = 0;           // ⌈δk⌉
  bool lower_bound_holds = false;  // α_j(k) ≥ j^{k−j}, exact
  double log_ratio = 0.0;      // log α_j(k) / (k log k)
};

struct SharpnessReport {
  double delta = 0.5;
  std::vector<SharpnessRow> rows;
  bool all_hold = false;
  bool increasing = false;  // log_ratio non-decreasing along k
};

SharpnessReport alpha_sharpness_probe(const std::vector<std::size_t>& k_list, double delta);

}  // namespace ltlab::analytics

namespace ltlab::analytics {

/// counts[k][h] = number of partitions of {1..k} into h non-empty blocks,
/// found by walking all restricted growth strings (k ≤ 14).
std::vector<std::vector<std::uint64_t>> partition_counts_by_enumeration(std::size_t k_max);

}  // namespace ltlab::analytics
