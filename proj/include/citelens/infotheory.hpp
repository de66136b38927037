#pragma once

// Discrete plug-in information measures, in nats.
//
// mutual_information uses H(X) + H(Y) - H(X,Y) with each entropy computed
// from a sorted count vector, which makes MI(x,y) == MI(y,x) bit-for-bit and
// keeps it invariant under bijective relabeling of bins. Conditional MI is
// the difference I(X;(Y,Z)) - I(X;Z) with (y,z) fused into one variable, so
// the chain rule holds by construction. Interaction information is
// CMI - MI: positive means Z reveals shared information (synergy), negative
// means Z explains the X-Y association away.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace citelens::infotheory {

enum class Scheme {
  identity,   // integer-valued inputs kept as-is
  log2_bins,  // v -> floor(log2(v + 1)); requires v >= 0
};

enum class Estimator {
  plug_in,
  miller_madow,  // plug-in plus (K - 1) / (2n) per entropy term
};

// Bin index for one value under log2_bins.
std::int32_t log2_bin(double v);

std::vector<std::int32_t> discretize(std::span<const double> values, Scheme scheme);

// Plug-in (or Miller-Madow) entropy of one discrete sample, in nats.
double entropy(std::span<const std::int32_t> x, Estimator est = Estimator::plug_in);

// Inputs must have equal, nonzero length (DataError otherwise).
double mutual_information(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                          Estimator est = Estimator::plug_in);
double conditional_mi(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                      std::span<const std::int32_t> z, Estimator est = Estimator::plug_in);
double interaction_information(std::span<const std::int32_t> x, std::span<const std::int32_t> y,
                               std::span<const std::int32_t> z,
                               Estimator est = Estimator::plug_in);

// Contingency table over 2 or 3 discretized variables.
class JointTable {
 public:
  static JointTable from_samples(std::span<const std::int32_t> x,
                                 std::span<const std::int32_t> y);
  static JointTable from_samples(std::span<const std::int32_t> x,
                                 std::span<const std::int32_t> y,
                                 std::span<const std::int32_t> z);

  int arity() const { return arity_; }
  std::size_t samples() const { return n_; }
  std::size_t distinct_bins(int var) const;           // observed bins of one variable
  std::vector<std::uint64_t> joint_counts() const;    // all nonzero cells
  std::vector<std::uint64_t> marginal_counts(int var) const;

 private:
  int arity_ = 0;
  std::size_t n_ = 0;
  // cell key = (x, y, z) with z = 0 for arity 2, sorted for determinism
  std::vector<std::pair<std::array<std::int32_t, 3>, std::uint64_t>> cells_;
};

}  // namespace citelens::infotheory
