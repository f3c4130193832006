#ifndef SACUT_COMMON_HPP
#define SACUT_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace sacut {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line()` is 1-based, 0 when the error is not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent streams from one user seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix_seed(mix_seed(seed) ^ (stream * 0xd1b54a32d192ed03ULL));
}

/// Uniform double in [0, 1) with 53 random bits; platform independent unlike
/// std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound).
inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(bound));
}

/// Inverse-CDF draw from a discrete distribution. Outcomes with probability at
/// or below `floor` are never drawn; the remaining mass is renormalized.
inline std::size_t sample_discrete(const std::vector<double>& probs, Rng& rng, double floor = 1e-12) {
  double total = 0.0;
  for (double p : probs) {
    if (p > floor) total += p;
  }
  if (total <= 0.0) throw Error("sample_discrete: no outcome has positive probability");
  double target = uniform01(rng) * total;
  std::size_t last = probs.size();
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= floor) continue;
    last = i;
    if (target < probs[i]) return i;
    target -= probs[i];
  }
  return last;
}

}  // namespace sacut

#endif  // SACUT_COMMON_HPP
