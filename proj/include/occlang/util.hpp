#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace occlang {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// splitmix64 finalizer; good avalanche, used to derive independent sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ (splitmix64(b) + 0x9e3779b97f4a7c15ULL));
}

template <class... Rest>
std::uint64_t seed_mix(std::uint64_t a, std::uint64_t b, std::uint64_t c, Rest... rest) {
  return seed_mix(seed_mix(a, b), c, rest...);
}

// Deterministic RNG. std::mt19937_64 output is pinned by the standard; the
// distribution helpers below replace the implementation-defined
// std::*_distribution adaptors so results are stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased via rejection. n must be > 0.
  std::uint64_t below(std::uint64_t n);

  /// Standard normal, Box-Muller with cached spare.
  double normal();

  /// Gamma(shape, 1), Marsaglia-Tsang squeeze.
  double gamma(double shape);

  std::vector<double> dirichlet(const std::vector<double>& alpha);

  /// Fisher-Yates using below(); stable across platforms.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

  /// k distinct indices drawn uniformly from [0, n), in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Shortest representation that round-trips the exact double.
std::string format_double(double v);

std::string join(const std::vector<std::string>& parts, const std::string& sep);
std::string lower_ascii(std::string s);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace occlang
