#pragma once

// Exact coefficient fields: prime fields F_p, binary extension fields
// F_{2^k} with a computed irreducible modulus, and big rationals.
//
// All element types share one duck-typed interface so the polynomial and
// linear-algebra layers can be written once:
//   - arithmetic operators, operator==, is_zero()
//   - a nested Field descriptor with zero()/one()/from_int()/random(Rng&)
//   - element.field() recovers the descriptor.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <mutex>
#include <string>

#include "facering/util.hpp"

namespace facering {

// ---------------------------------------------------------------------------
// F_p, p an odd-or-even prime < 2^31.
// ---------------------------------------------------------------------------
class Fp {
public:
  struct Field {
    uint64_t p = 2;
    Fp zero() const;
    Fp one() const;
    Fp from_int(long long v) const;
    Fp random(Rng& rng) const;
    uint64_t characteristic() const { return p; }
    bool operator==(const Field&) const = default;
  };

  Fp() : v_(0), p_(2) {}
  Fp(uint64_t v, uint64_t p) : v_(v % p), p_(p) {}

  uint64_t value() const { return v_; }
  Field field() const { return Field{p_}; }
  bool is_zero() const { return v_ == 0; }

  Fp operator+(const Fp& o) const { return Fp(v_ + o.v_, p_); }
  Fp operator-(const Fp& o) const { return Fp(v_ + p_ - o.v_, p_); }
  Fp operator-() const { return Fp(p_ - v_, p_); }
  Fp operator*(const Fp& o) const {
    return Fp((unsigned __int128)v_ * o.v_ % p_, p_);
  }
  Fp inv() const {
    if (v_ == 0) fail("DivisionByZero", "inverse of 0 in F_p");
    // extended Euclid
    int64_t t = 0, nt = 1;
    int64_t r = (int64_t)p_, nr = (int64_t)v_;
    while (nr != 0) {
      int64_t q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    if (t < 0) t += (int64_t)p_;
    return Fp((uint64_t)t, p_);
  }
  Fp operator/(const Fp& o) const { return *this * o.inv(); }
  bool operator==(const Fp& o) const { return v_ == o.v_ && p_ == o.p_; }
  bool operator!=(const Fp& o) const { return !(*this == o); }

  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  std::string str() const { return std::to_string(v_); }

private:
  uint64_t v_;
  uint64_t p_;
};

inline Fp Fp::Field::zero() const { return Fp(0, p); }
inline Fp Fp::Field::one() const { return Fp(1, p); }
inline Fp Fp::Field::from_int(long long v) const {
  long long r = v % (long long)p;
  if (r < 0) r += (long long)p;
  return Fp((uint64_t)r, p);
}
inline Fp Fp::Field::random(Rng& rng) const { return Fp(rng.below(p), p); }

// ---------------------------------------------------------------------------
// Polynomials over F_2 packed into 64-bit words, used to set up F_{2^k}.
// ---------------------------------------------------------------------------
namespace gf2x {

inline int degree(uint64_t f) { return f == 0 ? -1 : 63 - __builtin_clzll(f); }

// (a*b) mod f, deg f = k <= 62.
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t f, int k) {
  uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> k) a ^= f;
  }
  return r;
}

inline uint64_t gcd(uint64_t a, uint64_t b) {
  while (b) {
    int da = degree(a), db = degree(b);
    if (da < db) {
      std::swap(a, b);
      std::swap(da, db);
    }
    if (db < 0) break;
    while (da >= db && a) {
      a ^= b << (da - db);
      da = degree(a);
    }
    std::swap(a, b);
  }
  return a;
}

// x^(2^n) mod f by repeated squaring.
inline uint64_t frob_x(int n, uint64_t f, int k) {
  uint64_t r = 2;  // x
  for (int i = 0; i < n; ++i) r = mulmod(r, r, f, k);
  return r;
}

inline bool is_irreducible(uint64_t f, int k) {
  if (gf2x::frob_x(k, f, k) != 2) return false;
  for (int p = 2; p <= k; ++p) {
    if (k % p != 0) continue;
    bool prime = true;
    for (int q = 2; q * q <= p; ++q)
      if (p % q == 0) prime = false;
    if (!prime) continue;
    if (gcd(frob_x(k / p, f, k) ^ 2, f) != 1) return false;
  }
  return true;
}

// First irreducible of degree k in an ascending scan of low parts.
inline uint64_t find_irreducible(int k) {
  if (k < 1 || k > 62) fail("BadParams", "GF(2^k) supports 1 <= k <= 62");
  if (k == 1) return 0b10;  // x
  for (uint64_t c = 1; c < (uint64_t(1) << k); c += 2) {
    uint64_t f = (uint64_t(1) << k) | c;
    if (is_irreducible(f, k)) return f;
  }
  fail("Internal", "no irreducible polynomial found");
}

inline uint64_t modulus_for(int k) {
  static std::map<int, uint64_t> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  uint64_t f = find_irreducible(k);
  cache[k] = f;
  return f;
}

}  // namespace gf2x

// ---------------------------------------------------------------------------
// F_{2^k}, default k = 20. Elements are bit-polynomials mod a fixed
// irreducible; the modulus is derived deterministically from k.
// ---------------------------------------------------------------------------
class GF2k {
public:
  struct Field {
    int k = 20;
    GF2k zero() const { return GF2k(0, k); }
    GF2k one() const { return GF2k(1, k); }
    GF2k from_int(long long v) const { return GF2k((v % 2 + 2) % 2, k); }
    GF2k random(Rng& rng) const { return GF2k(rng.below(uint64_t(1) << k), k); }
    uint64_t characteristic() const { return 2; }
    bool operator==(const Field&) const = default;
  };

  GF2k() : bits_(0), k_(20) {}
  GF2k(uint64_t bits, int k) : bits_(bits), k_(k) {}

  uint64_t bits() const { return bits_; }
  Field field() const { return Field{k_}; }
  bool is_zero() const { return bits_ == 0; }

  GF2k operator+(const GF2k& o) const { return GF2k(bits_ ^ o.bits_, k_); }
  GF2k operator-(const GF2k& o) const { return *this + o; }
  GF2k operator-() const { return *this; }
  GF2k operator*(const GF2k& o) const {
    return GF2k(gf2x::mulmod(bits_, o.bits_, gf2x::modulus_for(k_), k_), k_);
  }
  GF2k inv() const {
    if (bits_ == 0) fail("DivisionByZero", "inverse of 0 in GF(2^k)");
    // a^(2^k - 2)
    GF2k r = GF2k(1, k_), a = *this;
    for (int i = 1; i < k_; ++i) {
      a = a * a;
      r = r * a;
    }
    return r;
  }
  GF2k operator/(const GF2k& o) const { return *this * o.inv(); }
  // Frobenius square root: a^(2^(k-1)).
  GF2k sqrt() const {
    GF2k a = *this;
    for (int i = 1; i < k_; ++i) a = a * a;
    return a;
  }
  bool operator==(const GF2k& o) const { return bits_ == o.bits_ && k_ == o.k_; }
  bool operator!=(const GF2k& o) const { return !(*this == o); }
  GF2k& operator+=(const GF2k& o) { return *this = *this + o; }
  GF2k& operator-=(const GF2k& o) { return *this = *this + o; }
  GF2k& operator*=(const GF2k& o) { return *this = *this * o; }

  std::string str() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%llx", (unsigned long long)bits_);
    return buf;
  }

private:
  uint64_t bits_;
  int k_;
};

// ---------------------------------------------------------------------------
// Q via boost cpp_rational.
// ---------------------------------------------------------------------------
class Rat {
public:
  using rep = boost::multiprecision::cpp_rational;

  struct Field {
    Rat zero() const { return Rat(0); }
    Rat one() const { return Rat(1); }
    Rat from_int(long long v) const { return Rat(v); }
    Rat random(Rng& rng) const { return Rat((long long)rng.range(-1000, 1000)); }
    uint64_t characteristic() const { return 0; }
    bool operator==(const Field&) const = default;
  };

  Rat() : v_(0) {}
  Rat(long long v) : v_(v) {}
  explicit Rat(rep v) : v_(std::move(v)) {}

  const rep& value() const { return v_; }
  Field field() const { return Field{}; }
  bool is_zero() const { return v_ == 0; }

  Rat operator+(const Rat& o) const { return Rat(v_ + o.v_); }
  Rat operator-(const Rat& o) const { return Rat(v_ - o.v_); }
  Rat operator-() const { return Rat(-v_); }
  Rat operator*(const Rat& o) const { return Rat(v_ * o.v_); }
  Rat operator/(const Rat& o) const {
    if (o.v_ == 0) fail("DivisionByZero", "division by zero in Q");
    return Rat(v_ / o.v_);
  }
  Rat inv() const { return Rat(1) / *this; }
  bool operator==(const Rat& o) const { return v_ == o.v_; }
  bool operator!=(const Rat& o) const { return v_ != o.v_; }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }

  std::string str() const { return v_.str(); }

private:
  rep v_;
};

}  // namespace facering
