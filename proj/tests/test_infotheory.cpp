#include <doctest.h>

#include <cmath>
#include <vector>

#include "citelens/error.hpp"
#include "citelens/infotheory.hpp"
#include "citelens/rng.hpp"

using namespace citelens;
using namespace citelens::infotheory;
using doctest::Approx;

namespace {
const std::vector<std::int32_t> kBit{0, 0, 1, 1};
const std::vector<std::int32_t> kAlt{0, 1, 0, 1};
}  // namespace

TEST_CASE("independent balanced bits carry exactly zero information") {
  CHECK(mutual_information(kBit, kAlt) == 0.0);  // arithmetic noise is snapped to 0
  CHECK(mutual_information(kAlt, kBit) == 0.0);
}

TEST_CASE("a variable about itself is one bit") {
  CHECK(mutual_information(kBit, kBit) == Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("diagonal-heavy 2x2 table") {
  // joint counts {3,1;1,3} over n=8: MI = 0.75 ln 3 - ln 2
  std::vector<std::int32_t> x{0, 0, 0, 0, 1, 1, 1, 1};
  std::vector<std::int32_t> y{0, 0, 0, 1, 1, 1, 1, 0};
  CHECK(mutual_information(x, y) == Approx(0.1308120).epsilon(1e-6));
}

TEST_CASE("xor is pure synergy") {
  std::vector<std::int32_t> x{0, 0, 1, 1};
  std::vector<std::int32_t> y{0, 1, 0, 1};
  std::vector<std::int32_t> z{0, 1, 1, 0};  // x xor y
  CHECK(mutual_information(x, y) == 0.0);
  CHECK(conditional_mi(x, y, z) == Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(interaction_information(x, y, z) == Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("conditioning on y itself removes all association") {
  std::vector<std::int32_t> x{0, 0, 0, 1, 1, 2, 2, 2};
  std::vector<std::int32_t> y{0, 1, 0, 1, 1, 0, 2, 2};
  CHECK(conditional_mi(x, y, y) == 0.0);  // bit-exact: same partition both sides
  CHECK(interaction_information(x, y, y) == -mutual_information(x, y));
}

TEST_CASE("a constant z changes nothing") {
  std::vector<std::int32_t> x{0, 0, 0, 1, 1, 2, 2, 2};
  std::vector<std::int32_t> y{0, 1, 0, 1, 1, 0, 2, 2};
  std::vector<std::int32_t> z(x.size(), 7);
  CHECK(mutual_information(x, z) == 0.0);
  CHECK(conditional_mi(x, y, z) == mutual_information(x, y));
  CHECK(interaction_information(x, y, z) == 0.0);
}

TEST_CASE("MI is exactly symmetric and relabel-invariant") {
  auto eng = citelens::rng::make_engine(42, 0);
  std::vector<std::int32_t> x, y;
  for (int i = 0; i < 1000; ++i) {
    auto a = static_cast<std::int32_t>(rng::uniform_below(eng, 6));
    x.push_back(a);
    y.push_back((a + static_cast<std::int32_t>(rng::uniform_below(eng, 3))) % 5);
  }
  CHECK(mutual_information(x, y) == mutual_information(y, x));  // bitwise

  auto fx = x;
  auto gy = y;
  for (auto& v : fx) v = 1000 - 3 * v;  // arbitrary bijections
  for (auto& v : gy) v = -v;
  CHECK(mutual_information(fx, gy) == mutual_information(x, y));
  CHECK(entropy(fx) == entropy(x));
}

TEST_CASE("independent draws show near-zero MI at large n") {
  auto eng = citelens::rng::make_engine(42, 1);
  std::vector<std::int32_t> x, y;
  for (int i = 0; i < 100000; ++i) {
    x.push_back(static_cast<std::int32_t>(rng::uniform_below(eng, 8)));
    y.push_back(static_cast<std::int32_t>(rng::uniform_below(eng, 8)));
  }
  const double plug = mutual_information(x, y);
  CHECK(plug >= 0.0);
  CHECK(plug < 0.01);
  // Miller-Madow strips most of the plug-in bias
  CHECK(std::fabs(mutual_information(x, y, Estimator::miller_madow)) < plug);
}

TEST_CASE("Miller-Madow applies (K-1)/(2n) per entropy term") {
  std::vector<std::int32_t> x{0, 0, 1, 1, 2, 2, 2, 3};
  CHECK(entropy(x, Estimator::miller_madow) == entropy(x) + 3.0 / 16.0);

  std::vector<std::int32_t> y{0, 1, 0, 1, 0, 1, 1, 1};
  auto t = JointTable::from_samples(x, y);
  const double kx = 4, ky = 2, kxy = static_cast<double>(t.joint_counts().size());
  const double n = 8;
  CHECK(mutual_information(x, y, Estimator::miller_madow) ==
        Approx(mutual_information(x, y) + (kx + ky - kxy - 1) / (2 * n)).epsilon(1e-12));
}

TEST_CASE("entropy ground truths") {
  std::vector<std::int32_t> uniform{0, 1, 2, 3, 4};
  CHECK(entropy(uniform) == std::log(5.0));  // all counts 1: exact
  std::vector<std::int32_t> constant{3, 3, 3, 3};
  CHECK(std::fabs(entropy(constant)) < 1e-13);
  std::vector<std::int32_t> half{0, 0, 1, 1};
  CHECK(entropy(half) == Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("input validation") {
  std::vector<std::int32_t> empty, one{1}, two{1, 2};
  CHECK_THROWS_AS(entropy(empty), DataError);
  CHECK_THROWS_AS(mutual_information(empty, empty), DataError);
  CHECK_THROWS_AS(mutual_information(one, two), DataError);
  CHECK_THROWS_AS(conditional_mi(two, two, one), DataError);
  CHECK_THROWS_AS(JointTable::from_samples(one, two), DataError);
}

TEST_CASE("log2 binning") {
  CHECK(log2_bin(0) == 0);
  CHECK(log2_bin(1) == 1);
  CHECK(log2_bin(2) == 1);
  CHECK(log2_bin(3) == 2);
  CHECK(log2_bin(6) == 2);
  CHECK(log2_bin(7) == 3);
  CHECK(log2_bin(14) == 3);
  CHECK(log2_bin(15) == 4);
  CHECK(log2_bin(2.5) == 1);   // non-integers fall in the enclosing bin
  CHECK(log2_bin(1e12) == 39);
  CHECK_THROWS_AS(log2_bin(-1), DataError);
  CHECK_THROWS_AS(log2_bin(std::numeric_limits<double>::quiet_NaN()), DataError);

  std::vector<double> vals{0, 1, 2, 3, 6, 7};
  CHECK(discretize(vals, Scheme::log2_bins) ==
        std::vector<std::int32_t>{0, 1, 1, 2, 2, 3});
  CHECK(discretize(std::vector<double>{2.4, -3.0, 2.6}, Scheme::identity) ==
        std::vector<std::int32_t>{2, -3, 3});
  CHECK_THROWS_AS(discretize(std::vector<double>{-1.0}, Scheme::log2_bins), DataError);
}

TEST_CASE("joint tables expose counts and marginals") {
  std::vector<std::int32_t> x{0, 0, 1, 1};
  std::vector<std::int32_t> y{0, 1, 0, 2};
  auto t = JointTable::from_samples(x, y);
  CHECK(t.arity() == 2);
  CHECK(t.samples() == 4);
  CHECK(t.distinct_bins(0) == 2);
  CHECK(t.distinct_bins(1) == 3);
  CHECK(t.marginal_counts(0) == std::vector<std::uint64_t>{2, 2});
  CHECK(t.marginal_counts(1) == std::vector<std::uint64_t>{2, 1, 1});
  CHECK(t.joint_counts() == std::vector<std::uint64_t>{1, 1, 1, 1});

  std::vector<std::int32_t> z{5, 5, 5, 5};
  auto t3 = JointTable::from_samples(x, y, z);
  CHECK(t3.arity() == 3);
  CHECK(t3.distinct_bins(2) == 1);
  CHECK(t3.marginal_counts(2) == std::vector<std::uint64_t>{4});
}
