#pragma once

// Sparse multivariate polynomials over an exact coefficient field, in the
// named variables a[i][j] (l.s.o.p. matrix entries), b[i] (structured
// l.s.o.p. parameters), c[i] (replacement-vector entries) and w[i] (generic
// linear-form coefficients). Canonical graded-lex term order on a fixed
// total variable order: a-major row-major, then b, c, w ascending.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "facering/fields.hpp"
#include "facering/util.hpp"

namespace facering {

// ---------------------------------------------------------------------------
// Variables
// ---------------------------------------------------------------------------
struct VarId {
  // kind 0 = a[i][j], 1 = b[i], 2 = c[i], 3 = w[i].
  // Packed so numeric order == the canonical total order.
  uint32_t id;

  static VarId a(int i, int j) {
    return VarId{(uint32_t)((0u << 28) | ((uint32_t)i << 14) | (uint32_t)j)};
  }
  static VarId b(int i) { return VarId{(1u << 28) | (uint32_t)i}; }
  static VarId c(int i) { return VarId{(2u << 28) | (uint32_t)i}; }
  static VarId w(int i) { return VarId{(3u << 28) | (uint32_t)i}; }

  int kind() const { return (int)(id >> 28); }
  int index1() const { return kind() == 0 ? (int)((id >> 14) & 0x3fff) : (int)(id & 0xfffffff); }
  int index2() const { return (int)(id & 0x3fff); }

  bool operator==(const VarId& o) const { return id == o.id; }
  bool operator!=(const VarId& o) const { return id != o.id; }
  bool operator<(const VarId& o) const { return id < o.id; }

  std::string str() const {
    std::ostringstream os;
    switch (kind()) {
      case 0: os << "a[" << index1() << "][" << index2() << "]"; break;
      case 1: os << "b[" << index1() << "]"; break;
      case 2: os << "c[" << index1() << "]"; break;
      default: os << "w[" << index1() << "]"; break;
    }
    return os.str();
  }
};

// ---------------------------------------------------------------------------
// Monomials: sorted sparse (var, exponent) pairs. Zero exponents never stored.
// ---------------------------------------------------------------------------
struct Mono {
  std::vector<std::pair<uint32_t, uint32_t>> e;  // sorted by var id
  uint32_t deg = 0;

  static Mono one() { return Mono{}; }
  static Mono var(VarId v, uint32_t k = 1) {
    Mono m;
    if (k) {
      m.e.push_back({v.id, k});
      m.deg = k;
    }
    return m;
  }

  bool is_one() const { return e.empty(); }

  uint32_t exp(VarId v) const {
    auto it = std::lower_bound(e.begin(), e.end(), std::make_pair(v.id, 0u));
    return (it != e.end() && it->first == v.id) ? it->second : 0;
  }

  Mono operator*(const Mono& o) const {
    Mono r;
    r.e.reserve(e.size() + o.e.size());
    size_t i = 0, j = 0;
    while (i < e.size() || j < o.e.size()) {
      if (j == o.e.size() || (i < e.size() && e[i].first < o.e[j].first))
        r.e.push_back(e[i++]);
      else if (i == e.size() || o.e[j].first < e[i].first)
        r.e.push_back(o.e[j++]);
      else {
        r.e.push_back({e[i].first, e[i].second + o.e[j].second});
        ++i, ++j;
      }
    }
    r.deg = deg + o.deg;
    return r;
  }

  bool divides(const Mono& o) const {
    size_t j = 0;
    for (const auto& [v, k] : e) {
      while (j < o.e.size() && o.e[j].first < v) ++j;
      if (j == o.e.size() || o.e[j].first != v || o.e[j].second < k) return false;
    }
    return true;
  }

  // this / o, assuming o.divides(*this).
  Mono operator/(const Mono& o) const {
    Mono r;
    size_t j = 0;
    for (const auto& [v, k] : e) {
      uint32_t sub = 0;
      while (j < o.e.size() && o.e[j].first < v) ++j;
      if (j < o.e.size() && o.e[j].first == v) sub = o.e[j].second;
      if (k > sub) r.e.push_back({v, k - sub});
    }
    r.deg = deg - o.deg;
    return r;
  }

  bool operator==(const Mono& o) const { return deg == o.deg && e == o.e; }
};

// Graded lex: higher total degree first; ties broken lexicographically with
// the earlier variable's higher power winning.
inline bool grlex_greater(const Mono& x, const Mono& y) {
  if (x.deg != y.deg) return x.deg > y.deg;
  size_t i = 0, j = 0;
  while (i < x.e.size() && j < y.e.size()) {
    if (x.e[i].first != y.e[j].first) return x.e[i].first < y.e[j].first;
    if (x.e[i].second != y.e[j].second) return x.e[i].second > y.e[j].second;
    ++i, ++j;
  }
  return i < x.e.size();
}

struct GrlexGreater {
  bool operator()(const Mono& x, const Mono& y) const { return grlex_greater(x, y); }
};

// ---------------------------------------------------------------------------
// MultiPoly
// ---------------------------------------------------------------------------
template <class K>
class MultiPoly {
public:
  using Field = typename K::Field;
  using Terms = std::map<Mono, K, GrlexGreater>;

  explicit MultiPoly(Field f = Field{}) : fld_(f) {}
  MultiPoly(const K& c) : fld_(c.field()) {
    if (!c.is_zero()) terms_.emplace(Mono::one(), c);
  }
  MultiPoly(VarId v, Field f) : fld_(f) { terms_.emplace(Mono::var(v), f.one()); }

  static MultiPoly zero(Field f) { return MultiPoly(f); }
  static MultiPoly one(Field f) { return MultiPoly(f.one()); }
  static MultiPoly var(VarId v, Field f) { return MultiPoly(v, f); }
  static MultiPoly term(const Mono& m, const K& c) {
    MultiPoly r(c.field());
    if (!c.is_zero()) r.terms_.emplace(m, c);
    return r;
  }

  const Field& field() const { return fld_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  size_t num_terms() const { return terms_.size(); }
  int total_degree() const {
    return terms_.empty() ? -1 : (int)terms_.begin()->first.deg;
  }

  const Mono& leading_mono() const { return terms_.begin()->first; }
  const K& leading_coeff() const { return terms_.begin()->second; }
  K constant_term() const {
    auto it = terms_.find(Mono::one());
    return it == terms_.end() ? fld_.zero() : it->second;
  }

  void add_term(const Mono& m, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(fld_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  MultiPoly operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MultiPoly operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly operator*(const MultiPoly& o) const {
    MultiPoly r(fld_);
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
  }
  MultiPoly operator*(const K& c) const {
    MultiPoly r(fld_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) {
      K v = k * c;
      if (!v.is_zero()) r.terms_.emplace(m, v);
    }
    return r;
  }
  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly pow(uint32_t n) const {
    MultiPoly r = one(fld_), base = *this;
    while (n) {
      if (n & 1) r = r * base;
      base = base * base;  // final squaring is wasted when n becomes 0; fine
      n >>= 1;
      if (n == 0) break;
    }
    return r;
  }

  std::vector<VarId> variables() const {
    std::vector<uint32_t> ids;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, k] : m.e) ids.push_back(v);
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::vector<VarId> out;
    for (uint32_t v : ids) out.push_back(VarId{v});
    return out;
  }

  int degree_in(VarId v) const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max(d, (int)m.exp(v));
    return terms_.empty() ? -1 : std::max(d, 0);
  }

  // Coefficient of v^k, a polynomial in the remaining variables.
  MultiPoly coeff_of(VarId v, uint32_t k) const {
    MultiPoly r(fld_);
    for (const auto& [m, c] : terms_) {
      if (m.exp(v) != k) continue;
      Mono q = m / Mono::var(v, k);
      r.terms_.emplace(q, c);
    }
    return r;
  }

  // Leading coefficient with respect to one variable.
  MultiPoly lead_coeff_in(VarId v) const {
    int d = degree_in(v);
    return d <= 0 && is_zero() ? *this : coeff_of(v, (uint32_t)std::max(d, 0));
  }

  MultiPoly derivative(VarId v) const {
    MultiPoly r(fld_);
    for (const auto& [m, c] : terms_) {
      uint32_t k = m.exp(v);
      if (k == 0) continue;
      K nc = c * fld_.from_int((long long)k);
      if (nc.is_zero()) continue;
      r.add_term(m / Mono::var(v), nc);
    }
    return r;
  }

  // Normalize leading coefficient to 1.
  MultiPoly monic() const {
    if (is_zero()) return *this;
    return *this * leading_coeff().inv();
  }

  std::string str() const;

private:
  Field fld_;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// Exact division: q = f / g, failing hard if g does not divide f.
// ---------------------------------------------------------------------------
template <class K>
bool try_divide_exact(const MultiPoly<K>& f, const MultiPoly<K>& g, MultiPoly<K>* q) {
  if (g.is_zero()) fail("DivisionByZeroPoly", "polynomial division by zero");
  MultiPoly<K> rem = f, quo(f.field());
  const Mono& gm = g.leading_mono();
  K ginv = g.leading_coeff().inv();
  while (!rem.is_zero()) {
    const Mono& rm = rem.leading_mono();
    if (!gm.divides(rm)) return false;
    Mono m = rm / gm;
    K c = rem.leading_coeff() * ginv;
    MultiPoly<K> t = MultiPoly<K>::term(m, c);
    quo += t;
    rem -= t * g;
  }
  if (q) *q = quo;
  return true;
}

template <class K>
MultiPoly<K> divide_exact(const MultiPoly<K>& f, const MultiPoly<K>& g) {
  MultiPoly<K> q(f.field());
  if (!try_divide_exact(f, g, &q)) fail("InexactDivision", "polynomial division was not exact");
  return q;
}

// ---------------------------------------------------------------------------
// GCD via primitive pseudo-remainder sequences, recursing on the variable
// set. Result is monic. Adequate at desk scale; exact everywhere.
// ---------------------------------------------------------------------------
namespace detail {

template <class K>
MultiPoly<K> content_in(const MultiPoly<K>& f, VarId v);

template <class K>
MultiPoly<K> gcd_impl(MultiPoly<K> f, MultiPoly<K> g) {
  using P = MultiPoly<K>;
  if (f.is_zero()) return g.monic();
  if (g.is_zero()) return f.monic();
  if (f.is_constant() || g.is_constant()) return P::one(f.field());

  auto vf = f.variables(), vg = g.variables();
  VarId v = vf.empty() ? vg.front() : (vg.empty() ? vf.front() : std::min(vf.front(), vg.front()));
  bool inf = f.degree_in(v) > 0, ing = g.degree_in(v) > 0;
  if (!inf) return gcd_impl(f, content_in(g, v));
  if (!ing) return gcd_impl(content_in(f, v), g);

  P cf = content_in(f, v), cg = content_in(g, v);
  P c = gcd_impl(cf, cg);
  P fp = divide_exact(f, cf), gp = divide_exact(g, cg);
  if (fp.degree_in(v) < gp.degree_in(v)) std::swap(fp, gp);

  while (true) {
    // Pseudo-remainder of fp by gp in v.
    int dg = gp.degree_in(v);
    P lcg = gp.coeff_of(v, (uint32_t)dg);
    P r = fp;
    while (!r.is_zero() && r.degree_in(v) >= dg) {
      int dr = r.degree_in(v);
      P lcr = r.coeff_of(v, (uint32_t)dr);
      // r <- lcg*r - lcr*v^(dr-dg)*gp  (degree in v strictly drops)
      P shift = P::term(Mono::var(v, (uint32_t)(dr - dg)), f.field().one());
      r = r * lcg - gp * (lcr * shift);
    }
    if (r.is_zero()) {
      P pp = divide_exact(gp, content_in(gp, v));
      return (c * pp).monic();
    }
    if (r.degree_in(v) == 0) return c.monic();
    fp = gp;
    gp = divide_exact(r, content_in(r, v));
  }
}

template <class K>
MultiPoly<K> content_in(const MultiPoly<K>& f, VarId v) {
  MultiPoly<K> c(f.field());
  int d = f.degree_in(v);
  for (int k = 0; k <= d; ++k) {
    MultiPoly<K> ck = f.coeff_of(v, (uint32_t)k);
    if (ck.is_zero()) continue;
    c = gcd_impl(c, ck);
    if (c.is_constant() && !c.is_zero()) return MultiPoly<K>::one(f.field());
  }
  return c;
}

}  // namespace detail

template <class K>
MultiPoly<K> poly_gcd(const MultiPoly<K>& f, const MultiPoly<K>& g) {
  return detail::gcd_impl(f, g);
}

// ---------------------------------------------------------------------------
// Characteristic-2 parity (Frobenius) decomposition: f = sum_e m_e * P_e^2
// over squarefree monomials m_e. Coefficient square roots exist in F_2 and
// F_{2^k} (Frobenius is bijective).
// ---------------------------------------------------------------------------
template <class K>
struct ParityDecomposition {
  typename MultiPoly<K>::Field fld;
  // parity class (squarefree monomial) -> P_e
  std::map<Mono, MultiPoly<K>, GrlexGreater> classes;

  MultiPoly<K> reassemble() const {
    MultiPoly<K> r(fld);
    for (const auto& [m, p] : classes) r += MultiPoly<K>::term(m, fld.one()) * (p * p);
    return r;
  }
};

inline Fp coeff_sqrt(const Fp& c) { return c; }  // only called with p = 2
inline GF2k coeff_sqrt(const GF2k& c) { return c.sqrt(); }
inline Rat coeff_sqrt(const Rat&) {
  fail("WrongCharacteristic", "parity decomposition requires characteristic 2");
}

template <class K>
ParityDecomposition<K> frobenius_decompose(const MultiPoly<K>& f) {
  if (f.field().characteristic() != 2)
    fail("WrongCharacteristic", "parity decomposition requires characteristic 2");
  ParityDecomposition<K> out{f.field(), {}};
  for (const auto& [m, c] : f.terms()) {
    Mono cls, half;
    for (const auto& [v, k] : m.e) {
      if (k & 1) {
        cls.e.push_back({v, 1});
        cls.deg += 1;
      }
      if (k >> 1) {
        half.e.push_back({v, k >> 1});
        half.deg += k >> 1;
      }
    }
    auto [it, ins] = out.classes.try_emplace(cls, MultiPoly<K>(f.field()));
    it->second.add_term(half, coeff_sqrt(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Specialization: exact evaluation into a (possibly larger) field F, with a
// coefficient embedding K -> F.
// ---------------------------------------------------------------------------
inline Fp embed_coeff(const Fp& c, const Fp::Field& f) {
  if (c.field().p != f.p) fail("WrongCharacteristic", "F_p embedding with mismatched p");
  return c;
}
inline GF2k embed_coeff(const Fp& c, const GF2k::Field& f) {
  if (c.field().p != 2) fail("WrongCharacteristic", "only F_2 embeds into GF(2^k)");
  return GF2k(c.value() & 1, f.k);
}
inline Rat embed_coeff(const Rat& c, const Rat::Field&) { return c; }
inline Fp embed_coeff(const Rat& c, const Fp::Field& f) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(c.value()) % (long long)f.p;
  cpp_int den = boost::multiprecision::denominator(c.value()) % (long long)f.p;
  if (den == 0) fail("DenominatorVanishes", "rational has no image mod p");
  long long n = (long long)num, d = (long long)den;
  return f.from_int(n) / f.from_int(d);
}

template <class K, class F>
F specialize(const MultiPoly<K>& f, const std::map<uint32_t, F>& point,
             const typename F::Field& fld) {
  F acc = fld.zero();
  for (const auto& [m, c] : f.terms()) {
    F t = embed_coeff(c, fld);
    for (const auto& [v, k] : m.e) {
      auto it = point.find(v);
      if (it == point.end()) fail("BadParams", "specialization point misses variable " + VarId{v}.str());
      F p = it->second;
      for (uint32_t i = 0; i < k; ++i) t = t * p;
    }
    acc = acc + t;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Text format: sum of terms `c * a[i][j]^e * b[i]^e`, round-trip exact.
// ---------------------------------------------------------------------------
template <class K>
std::string MultiPoly<K>::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (const auto& [v, k] : m.e) {
      os << " * " << VarId{v}.str();
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline long long parse_int(const std::string& s, size_t& i) {
  skip_ws(s, i);
  size_t start = i;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  while (i < s.size() && isdigit((unsigned char)s[i])) ++i;
  if (i == start) fail("ParseError", "expected integer in polynomial text at pos " + std::to_string(i));
  return std::stoll(s.substr(start, i - start));
}

}  // namespace detail

// Parses the printed form. Coefficients are read as integers (optionally
// `n/d` for rationals) and mapped through Field::from_int.
template <class K>
MultiPoly<K> parse_poly(const std::string& s, typename K::Field fld) {
  using detail::parse_int;
  using detail::skip_ws;
  MultiPoly<K> out(fld);
  size_t i = 0;
  skip_ws(s, i);
  if (i < s.size() && s.compare(i, 1, "0") == 0 && i + 1 >= s.size()) return out;
  bool neg = false;
  while (i < s.size()) {
    skip_ws(s, i);
    long long cnum = parse_int(s, i);
    K coeff = fld.from_int(neg ? -cnum : cnum);
    skip_ws(s, i);
    if (i < s.size() && s[i] == '/') {
      ++i;
      coeff = coeff / fld.from_int(parse_int(s, i));
    }
    Mono m;
    skip_ws(s, i);
    while (i < s.size() && s[i] == '*') {
      ++i;
      skip_ws(s, i);
      char kind = s[i];
      ++i;
      if (s[i] != '[') fail("ParseError", "expected [ after variable name");
      ++i;
      long long i1 = parse_int(s, i);
      if (s[i] != ']') fail("ParseError", "expected ]");
      ++i;
      VarId v{};
      if (kind == 'a') {
        if (s[i] != '[') fail("ParseError", "expected second index for a");
        ++i;
        long long i2 = parse_int(s, i);
        if (s[i] != ']') fail("ParseError", "expected ]");
        ++i;
        v = VarId::a((int)i1, (int)i2);
      } else if (kind == 'b') {
        v = VarId::b((int)i1);
      } else if (kind == 'c') {
        v = VarId::c((int)i1);
      } else if (kind == 'w') {
        v = VarId::w((int)i1);
      } else {
        fail("ParseError", std::string("unknown variable kind ") + kind);
      }
      uint32_t e = 1;
      skip_ws(s, i);
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = (uint32_t)parse_int(s, i);
      }
      m = m * Mono::var(v, e);
      skip_ws(s, i);
    }
    out.add_term(m, coeff);
    skip_ws(s, i);
    if (i >= s.size()) break;
    if (s[i] == '+') {
      neg = false;
      ++i;
    } else if (s[i] == '-') {
      neg = true;
      ++i;
    } else {
      fail("ParseError", "unexpected character in polynomial text");
    }
  }
  return out;
}

}  // namespace facering
