#pragma once

// Normalized fractions of multivariate polynomials. Invariants: den != 0,
// gcd(num, den) = 1, den monic in graded-lex. RatFunc<K> itself satisfies the
// coefficient-field interface so matrices and Lee's formula can run over it.

#include <optional>

#include "facering/multipoly.hpp"

namespace facering {

template <class K>
class RatFunc {
public:
  using Poly = MultiPoly<K>;

  struct Field {
    typename K::Field base;
    RatFunc zero() const { return RatFunc(Poly::zero(base), Poly::one(base)); }
    RatFunc one() const { return RatFunc(Poly::one(base), Poly::one(base)); }
    RatFunc from_int(long long v) const {
      return RatFunc(Poly(base.from_int(v)), Poly::one(base));
    }
    RatFunc random(Rng& rng) const {
      return RatFunc(Poly(base.random(rng)), Poly::one(base));
    }
    uint64_t characteristic() const { return base.characteristic(); }
    bool operator==(const Field&) const = default;
  };

  RatFunc() = default;
  RatFunc(Poly num, Poly den, bool reduce = true)
      : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail("DivisionByZeroPoly", "rational function with zero denominator");
    if (reduce) normalize();
    else scale_monic();
  }
  explicit RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}
  static RatFunc of_var(VarId v, typename K::Field f) {
    return RatFunc(Poly::var(v, f), Poly::one(f));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  Field field() const { return Field{num_.field()}; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RatFunc operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    Poly g = poly_gcd(den_, o.den_);
    Poly d1 = divide_exact(den_, g), d2 = divide_exact(o.den_, g);
    return RatFunc(num_ * d2 + o.num_ * d1, den_ * d2);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_, false); }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return field().zero();
    // cross-reduce before multiplying to keep intermediates small
    Poly g1 = poly_gcd(num_, o.den_), g2 = poly_gcd(o.num_, den_);
    Poly n = divide_exact(num_, g1) * divide_exact(o.num_, g2);
    Poly d = divide_exact(den_, g2) * divide_exact(o.den_, g1);
    return RatFunc(std::move(n), std::move(d), false);
  }
  RatFunc inv() const {
    if (is_zero()) fail("DivisionByZeroPoly", "inverse of zero rational function");
    return RatFunc(den_, num_, false);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  // Exact equality; valid for any representatives via cross-multiplication.
  bool operator==(const RatFunc& o) const { return num_ * o.den_ == o.num_ * den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  RatFunc pow(uint32_t n) const {
    RatFunc r = field().one(), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

  // Quotient rule.
  RatFunc derivative(VarId v) const {
    Poly n = num_.derivative(v) * den_ - num_ * den_.derivative(v);
    return RatFunc(std::move(n), den_ * den_);
  }

  std::string str() const {
    if (is_polynomial() && den_ == Poly::one(num_.field())) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly::one(num_.field());
      return;
    }
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant() || !(g == Poly::one(num_.field()))) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
    scale_monic();
  }
  void scale_monic() {
    if (num_.is_zero()) {
      den_ = Poly::one(num_.field());
      return;
    }
    K lc = den_.leading_coeff();
    if (!(lc == num_.field().one())) {
      K inv = lc.inv();
      num_ = num_ * inv;
      den_ = den_ * inv;
    }
  }

  Poly num_;
  Poly den_;
};

// ---------------------------------------------------------------------------
// Degree / leading-coefficient calculus in one variable, with the rational
// function viewed over the field of the remaining variables. deg(0) = -inf
// (represented as nullopt) and L(0) = 0.
// ---------------------------------------------------------------------------
template <class K>
struct DegreeLC {
  std::optional<int> deg;  // nullopt encodes -infinity
  RatFunc<K> leading;
};

template <class K>
DegreeLC<K> degree_lc(const RatFunc<K>& phi, VarId v) {
  if (phi.is_zero()) return {std::nullopt, phi.field().zero()};
  int dn = phi.num().degree_in(v), dd = phi.den().degree_in(v);
  RatFunc<K> lead(phi.num().coeff_of(v, (uint32_t)dn), phi.den().coeff_of(v, (uint32_t)dd));
  return {dn - dd, lead};
}

template <class K, class F>
F specialize(const RatFunc<K>& phi, const std::map<uint32_t, F>& point,
             const typename F::Field& fld) {
  F den = specialize(phi.den(), point, fld);
  if (den.is_zero()) fail("DenominatorVanishes", "denominator vanishes at specialization point");
  return specialize(phi.num(), point, fld) / den;
}

}  // namespace facering
