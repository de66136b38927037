#include "citelens/infotheory.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>

#include "citelens/error.hpp"

namespace citelens::infotheory {

namespace {

// Entropy from a count vector: ln n - (sum c ln c) / n. The counts are
// sorted first so the summation order (and thus the rounding) depends only
// on the count multiset; this is what makes MI exactly symmetric.
double entropy_from_counts(std::vector<std::uint64_t> counts, Estimator est) {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  if (n == 0) throw DataError("entropy of an empty sample");
  std::sort(counts.begin(), counts.end());
  double sum_clnc = 0.0;
  for (auto c : counts) {
    if (c > 0) sum_clnc += static_cast<double>(c) * std::log(static_cast<double>(c));
  }
  double h = std::log(static_cast<double>(n)) - sum_clnc / static_cast<double>(n);
  if (est == Estimator::miller_madow) {
    h += (static_cast<double>(counts.size()) - 1.0) / (2.0 * static_cast<double>(n));
  }
  return h;
}

// Sums far below one ulp of the entropies involved are arithmetic noise,
// not empirical dependence.
double denoise(double v) { return std::fabs(v) < 1e-13 ? 0.0 : v; }

void check_lengths(std::size_t a, std::size_t b) {
  if (a == 0) throw DataError("information measure over an empty sample");
  if (a != b) throw DataError("information measure over mismatched sample lengths");
}

}  // namespace

std::int32_t log2_bin(double v) {
  if (std::isnan(v)) throw DataError("log2_bins: missing value");
  if (v < 0.0) throw DataError("log2_bins: negative value " + std::to_string(v));
  if (v == std::floor(v) && v < 9.0e18) {
    // exact integer path; avoids FP log edge cases at powers of two
    return static_cast<std::int32_t>(std::bit_width(static_cast<std::uint64_t>(v) + 1) - 1);
  }
  return static_cast<std::int32_t>(std::floor(std::log2(v + 1.0)));
}

std::vector<std::int32_t> discretize(std::span<const double> values, Scheme scheme) {
  std::vector<std::int32_t> out;
  out.reserve(values.size());
  for (double v : values) {
    if (scheme == Scheme::identity) {
      if (std::isnan(v)) throw DataError("discretize: missing value");
      out.push_back(static_cast<std::int32_t>(std::llround(v)));
    } else {
      out.push_back(log2_bin(v));
    }
  }
  return out;
}

double entropy(std::span<const std::int32_t> x, Estimator est) {
  std::map<std::int32_t, std::uint64_t> counts;
  for (auto v : x) ++counts[v];
  std::vector<std::uint64_t> c;
  c.reserve(counts.size());
  for (const auto& [_, cnt] : counts) c.push_back(cnt);
  return entropy_from_counts(std::move(c), est);
}

JointTable JointTable::from_samples(std::span<const std::int32_t> x,
                                    std::span<const std::int32_t> y) {
  check_lengths(x.size(), y.size());
  JointTable t;
  t.arity_ = 2;
  t.n_ = x.size();
  std::map<std::array<std::int32_t, 3>, std::uint64_t> cells;
  for (std::size_t i = 0; i < x.size(); ++i) ++cells[{x[i], y[i], 0}];
  t.cells_.assign(cells.begin(), cells.end());
  return t;
}

JointTable JointTable::from_samples(std::span<const std::int32_t> x,
                                    std::span<const std::int32_t> y,
                                    std::span<const std::int32_t> z) {
  check_lengths(x.size(), y.size());
  check_lengths(x.size(), z.size());
  JointTable t;
  t.arity_ = 3;
  t.n_ = x.size();
  std::map<std::array<std::int32_t, 3>, std::uint64_t> cells;
  for (std::size_t i = 0; i < x.size(); ++i) ++cells[{x[i], y[i], z[i]}];
  t.cells_.assign(cells.begin(), cells.end());
  return t;
}

std::size_t JointTable::distinct_bins(int var) const {
  std::map<std::int32_t, bool> seen;
  for (const auto& [key, _] : cells_) seen[key[static_cast<std::size_t>(var)]] = true;
  return seen.size();
}

std::vector<std::uint64_t> JointTable::joint_counts() const {
  std::vector<std::uint64_t> out;
  out.reserve(cells_.size());
  for (const auto& [_, c] : cells_) out.push_back(c);
  return out;
}

std::vector<std::uint64_t> JointTable::marginal_counts(int var) const {
  std::map<std::int32_t, std::uint64_t> agg;
  for (const auto& [key, c] : cells_) agg[key[static_cast<std::size_t>(var)]] += c;
  std::vector<std::uint64_t> out;
  out.reserve(agg.size());
  for (const auto& [_, c] : agg) out.push_back(c);
  return out;
}

double mutual_information(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                          Estimator est) {
  auto t = JointTable::from_samples(x, y);
  const double hx = entropy_from_counts(t.marginal_counts(0), est);
  const double hy = entropy_from_counts(t.marginal_counts(1), est);
  const double hxy = entropy_from_counts(t.joint_counts(), est);
  return denoise(hx + hy - hxy);
}

double conditional_mi(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                      std::span<const std::int32_t> z, Estimator est) {
  check_lengths(x.size(), y.size());
  check_lengths(x.size(), z.size());
  // fuse (y, z) into one variable, then apply I(X;Y|Z) = I(X;(Y,Z)) - I(X;Z)
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> code;
  for (std::size_t i = 0; i < y.size(); ++i) code.emplace(std::pair(y[i], z[i]), 0);
  std::int32_t next = 0;
  for (auto& [_, c] : code) c = next++;
  std::vector<std::int32_t> yz(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) yz[i] = code.at(std::pair(y[i], z[i]));
  return denoise(mutual_information(x, yz, est) - mutual_information(x, z, est));
}

double interaction_information(std::span<const std::int32_t> x,
                               std::span<const std::int32_t> y,
                               std::span<const std::int32_t> z, Estimator est) {
  return denoise(conditional_mi(x, y, z, est) - mutual_information(x, y, est));
}

}  // namespace citelens::infotheory
