#include "ltlab/analytics/alpha_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ltlab::analytics {

AlphaTable::AlphaTable(std::size_t k_max) : k_max_(k_max) {
  if (k_max < 1) throw std::invalid_argument("alpha_table: k_max must be >= 1");
  rows_.resize(k_max + 1);
  rows_[1] = {BigInt(0), BigInt(1)};
  for (std::size_t k = 1; k < k_max; ++k) {
    auto& next = rows_[k + 1];
    next.assign(k + 2, BigInt(0));
    next[1] = 1;
    next[k + 1] = 1;
    for (std::size_t h = 2; h <= k; ++h) next[h] = BigInt(h) * rows_[k][h] + rows_[k][h - 1];
  }
}

const BigInt& AlphaTable::at(std::size_t h, std::size_t k) const {
  if (k < 1 || k > k_max_) throw std::out_of_range("alpha_table: k outside [1, k_max]");
  if (h == 0 || h > k) return zero_;
  return rows_[k][h];
}

bool AlphaTable::bound_holds(std::size_t up_to) const {
  for (std::size_t k = 1; k <= std::min(up_to, k_max_); ++k) {
    const BigInt kk = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k));
    for (std::size_t h = 1; h <= k; ++h)
      if (rows_[k][h] > kk) return false;
  }
  return true;
}

double log_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log_big: non-positive argument");
  // log(x) = log(top bits) + shift·log 2, exact enough for reporting.
  const std::size_t bits = boost::multiprecision::msb(x) + 1;
  if (bits <= 60) return std::log(static_cast<double>(x.convert_to<unsigned long long>()));
  const std::size_t shift = bits - 60;
  const BigInt top = x >> shift;
  return std::log(static_cast<double>(top.convert_to<unsigned long long>())) + static_cast<double>(shift) * std::log(2.0);
}

double AlphaTable::minimal_constant(std::size_t k) const {
  BigInt mx = 0;
  for (std::size_t h = 1; h <= k; ++h) mx = std::max(mx, at(h, k));
  const double kd = static_cast<double>(k);
  return std::exp(log_big(mx) / kd) / kd;
}

AlphaTable alpha_table(std::size_t k_max) { return AlphaTable(k_max); }

SharpnessReport alpha_sharpness_probe(const std::vector<std::size_t>& k_list, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("alpha_sharpness_probe: delta must lie in (0,1)");
  if (k_list.empty()) throw std::invalid_argument("alpha_sharpness_probe: empty k list");
  const std::size_t k_max = *std::max_element(k_list.begin(), k_list.end());
  const AlphaTable table(std::max<std::size_t>(k_max, 1));
  SharpnessReport rep;
  rep.delta = delta;
  rep.all_hold = true;
  rep.increasing = true;
  for (std::size_t k : k_list) {
    SharpnessRow row;
    row.k = k;
    row.j = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(delta * static_cast<double>(k) - 1e-12)));
    const BigInt& a = table.at(row.j, k);
    const BigInt lower = boost::multiprecision::pow(BigInt(row.j), static_cast<unsigned>(k - row.j));
    row.lower_bound_holds = a >= lower;
    row.log_ratio = k > 1 ? log_big(a) / (static_cast<double>(k) * std::log(static_cast<double>(k))) : 0.0;
    if (!rep.rows.empty() && row.log_ratio < rep.rows.back().log_ratio) rep.increasing = false;
    rep.all_hold = rep.all_hold && row.lower_bound_holds;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace ltlab::analytics

namespace ltlab::analytics {

namespace {
// a[i] ≤ 1 + max(a[0..i)); `blocks` is that running maximum plus one.
void walk(std::size_t i, std::size_t k, std::size_t blocks, std::vector<std::uint64_t>& counts) {
  if (i == k) {
    ++counts[blocks];
    return;
  }
  for (std::size_t b = 0; b <= blocks; ++b) walk(i + 1, k, std::max(blocks, b + 1), counts);
}
}  // namespace

std::vector<std::vector<std::uint64_t>> partition_counts_by_enumeration(std::size_t k_max) {
  if (k_max < 1 || k_max > 14) throw std::invalid_argument("partition enumeration supports 1 <= k <= 14");
  std::vector<std::vector<std::uint64_t>> out(k_max + 1);
  for (std::size_t k = 1; k <= k_max; ++k) {
    out[k].assign(k + 1, 0);
    // Element 0 always opens block 0.
    walk(1, k, 1, out[k]);
  }
  return out;
}

}  // namespace ltlab::analytics
