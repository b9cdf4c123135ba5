#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace eotrack {

using Rng = std::mt19937_64;

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child-seed derivation from a master seed, a purpose tag and up to two
/// indices. Every random stream in the project is derived through this, so a
/// single top-level seed fixes all of them.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose,
                                 std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ master;
  for (unsigned char c : purpose) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  h = mix64(h ^ mix64(a));
  h = mix64(h ^ mix64(b + 0x9e3779b97f4a7c15ULL));
  return h;
}

inline Rng make_rng(std::uint64_t master, std::string_view purpose,
                    std::uint64_t a = 0, std::uint64_t b = 0) {
  return Rng(derive_seed(master, purpose, a, b));
}

/// Zero-mean Gaussian draw; a non-positive stddev yields 0 without consuming
/// randomness so noiseless configurations stay deterministic.
inline double draw_normal(Rng& rng, double stddev) {
  if (stddev <= 0.0) return 0.0;
  std::normal_distribution<double> d(0.0, stddev);
  return d(rng);
}

inline int draw_poisson(Rng& rng, double mean) {
  if (mean <= 0.0) return 0;
  std::poisson_distribution<int> d(mean);
  return d(rng);
}

inline double draw_uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

}  // namespace eotrack
