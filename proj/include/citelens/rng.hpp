#pragma once

// Deterministic randomness helpers. Engines are std::mt19937_64 (the output
// sequence is pinned by the standard); the uniform/normal transforms are
// written out here because std::uniform_*/normal_distribution are
// implementation-defined and would break byte-identical reruns.

#include <cmath>
#include <cstdint>
#include <random>

namespace citelens::rng {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic stream split: one seed value per (a, b, c) tuple.
inline std::uint64_t mix(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = a;
  std::uint64_t h = splitmix64(s);
  s ^= b + 0x9e3779b97f4a7c15ull;
  h ^= splitmix64(s);
  s ^= c + 0xc2b2ae3d27d4eb4full;
  h ^= splitmix64(s);
  return h;
}

inline std::mt19937_64 make_engine(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  return std::mt19937_64(mix(a, b, c));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n), n >= 1 (rejection sampling).
inline std::uint64_t uniform_below(std::mt19937_64& g, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

// Standard normal via Box-Muller; consumes exactly two engine outputs.
inline double normal01(std::mt19937_64& g) {
  double u1 = uniform01(g);
  double u2 = uniform01(g);
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

}  // namespace citelens::rng
