#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace facering {

// Error with a stable machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

// Deterministic RNG. mt19937_64 is fully specified by the standard, and we
// avoid std::uniform_int_distribution (implementation-defined) so that seeds
// reproduce bit-identically across platforms.
class Rng {
public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // Uniform in [0, n). Rejection sampling, unbiased.
  uint64_t below(uint64_t n) {
    if (n == 0) fail("BadParams", "Rng::below(0)");
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = eng_();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [lo, hi] inclusive.
  int64_t range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }

  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  Rng fork() { return Rng(eng_()); }

private:
  std::mt19937_64 eng_;
};

std::string sha256_hex(const std::string& data);

}  // namespace facering
