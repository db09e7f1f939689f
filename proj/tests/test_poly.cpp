#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facering/multipoly.hpp"
#include "facering/ratfunc.hpp"

using namespace facering;

namespace {

using PQ = MultiPoly<Rat>;
using P2 = MultiPoly<Fp>;

PQ rand_poly(Rng& rng, int nvars, int nterms, Rat::Field f) {
  PQ p(f);
  for (int t = 0; t < nterms; ++t) {
    Mono m;
    for (int v = 0; v < nvars; ++v) {
      uint32_t e = (uint32_t)rng.below(3);
      if (e) m = m * Mono::var(VarId::b(v + 1), e);
    }
    p.add_term(m, f.from_int((long long)rng.range(-5, 5)));
  }
  return p;
}

P2 rand_poly2(Rng& rng, int nvars, int nterms, Fp::Field f) {
  P2 p(f);
  for (int t = 0; t < nterms; ++t) {
    Mono m;
    for (int v = 0; v < nvars; ++v) {
      uint32_t e = (uint32_t)rng.below(4);
      if (e) m = m * Mono::var(VarId::b(v + 1), e);
    }
    p.add_term(m, f.random(rng));
  }
  return p;
}

}  // namespace

TEST_CASE("variable order is a-major row-major then b, c, w") {
  CHECK(VarId::a(1, 1) < VarId::a(1, 2));
  CHECK(VarId::a(1, 9) < VarId::a(2, 1));
  CHECK(VarId::a(9, 9) < VarId::b(1));
  CHECK(VarId::b(7) < VarId::c(1));
  CHECK(VarId::c(7) < VarId::w(1));
  CHECK(VarId::a(3, 4).str() == "a[3][4]");
  CHECK(VarId::b(12).str() == "b[12]");
}

TEST_CASE("grlex order: degree first, then lexicographic") {
  Mono x = Mono::var(VarId::b(1)), y = Mono::var(VarId::b(2));
  CHECK(grlex_greater(x * x, y));          // deg 2 > deg 1
  CHECK(grlex_greater(x, y));              // same degree, earlier var wins
  CHECK(grlex_greater(x * x, x * y));      // x^2 > xy
  CHECK(grlex_greater(x * y, y * y));
  CHECK(!grlex_greater(x, x));
}

TEST_CASE("polynomial ring axioms on random samples") {
  Rat::Field f;
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    PQ a = rand_poly(rng, 3, 4, f), b = rand_poly(rng, 3, 4, f),
       c = rand_poly(rng, 3, 4, f);
    CHECK((a * b) == (b * a));
    CHECK((a * (b + c)) == (a * b + a * c));
    CHECK(((a * b) * c) == (a * (b * c)));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("exact division inverts multiplication") {
  Rng rng(12);
  Rat::Field f;
  for (int t = 0; t < 50; ++t) {
    PQ a = rand_poly(rng, 3, 4, f), b = rand_poly(rng, 3, 4, f);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(divide_exact(a * b, b) == a);
    PQ q(f);
    // a*b + 1 is not divisible by b unless b is a unit
    if (!b.is_constant()) CHECK(!try_divide_exact(a * b + PQ::one(f), b, &q));
  }
}

TEST_CASE("gcd divides both arguments and extracts common factors") {
  Rng rng(13);
  Rat::Field f;
  for (int t = 0; t < 25; ++t) {
    PQ a = rand_poly(rng, 2, 3, f), b = rand_poly(rng, 2, 3, f),
       c = rand_poly(rng, 2, 3, f);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    PQ g = poly_gcd(a * c, b * c);
    PQ q(f);
    CHECK(try_divide_exact(a * c, g, &q));
    CHECK(try_divide_exact(b * c, g, &q));
    CHECK(try_divide_exact(g, c, &q));  // common factor survives
  }
}

TEST_CASE("gcd over F_2 coefficients") {
  Fp::Field f{2};
  Rng rng(14);
  for (int t = 0; t < 25; ++t) {
    P2 a = rand_poly2(rng, 2, 3, f), b = rand_poly2(rng, 2, 3, f),
       c = rand_poly2(rng, 2, 3, f);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    P2 g = poly_gcd(a * c, b * c);
    P2 q2(f);
    CHECK(try_divide_exact(a * c, g, &q2));
    CHECK(try_divide_exact(b * c, g, &q2));
    CHECK(try_divide_exact(g, c, &q2));
  }
}

TEST_CASE("derivative rules") {
  Rat::Field f;
  VarId x = VarId::b(1), y = VarId::b(2);
  PQ px = PQ::var(x, f), py = PQ::var(y, f);
  PQ p = px * px * py + px;  // d/dx = 2xy + 1
  CHECK(p.derivative(x) == px * py * f.from_int(2) + PQ::one(f));
  CHECK(p.derivative(y) == px * px);
  CHECK(PQ::one(f).derivative(x).is_zero());
}

TEST_CASE("frobenius decomposition in characteristic 2") {
  Fp::Field f{2};
  Rng rng(15);
  for (int t = 0; t < 100; ++t) {
    P2 p = rand_poly2(rng, 3, 5, f);
    auto dec = frobenius_decompose(p);
    CHECK(dec.reassemble() == p);
    // each class has all-distinct square-free parts: p = sum m * q_m^2
    for (const auto& [m, q] : dec.classes) {
      for (const auto& [v, e] : m.e) CHECK(e == 1);
    }
  }
}

TEST_CASE("derivative of a square vanishes in characteristic 2") {
  Fp::Field f{2};
  Rng rng(16);
  for (int t = 0; t < 50; ++t) {
    P2 p = rand_poly2(rng, 3, 5, f);
    P2 sq = p * p;
    for (VarId v : sq.variables()) CHECK(sq.derivative(v).is_zero());
  }
}

TEST_CASE("rational functions: normalization and arithmetic") {
  Rat::Field f;
  using R = RatFunc<Rat>;
  VarId x = VarId::b(1), y = VarId::b(2);
  PQ px = PQ::var(x, f), py = PQ::var(y, f);

  R r1(px * px - py * py, px - py);  // reduces to x + y
  CHECK(r1.is_polynomial());
  CHECK(r1.num() == px + py);

  R a(px, py), b(py, px);
  CHECK((a * b) == R::Field{f}.one());
  CHECK((a + (-a)).is_zero());
  CHECK((a + b) == R(px * px + py * py, px * py));
  CHECK_THROWS_AS(R(px, PQ::zero(f)), Error);

  // equality across representatives
  R u(px * py, py * py, false);
  CHECK(u == R(px, py));
}

TEST_CASE("degree and leading coefficient calculus") {
  Rat::Field f;
  using R = RatFunc<Rat>;
  VarId x = VarId::b(1), y = VarId::b(2);
  PQ px = PQ::var(x, f), py = PQ::var(y, f);

  R phi(px * px * py + px, py + PQ::one(f));
  auto dl = degree_lc(phi, x);
  CHECK(dl.deg == 2);
  CHECK(dl.leading == R(py, py + PQ::one(f)));

  auto zero = degree_lc(R::Field{f}.zero(), x);
  CHECK(!zero.deg.has_value());
  CHECK(zero.leading.is_zero());

  Rng rng(17);
  for (int t = 0; t < 25; ++t) {
    PQ p = rand_poly(rng, 2, 3, f), q = rand_poly(rng, 2, 3, f);
    if (p.is_zero() || q.is_zero()) continue;
    R a(p), b(q);
    auto da = degree_lc(a, x), db = degree_lc(b, x), dab = degree_lc(a * b, x);
    CHECK(dab.deg == *da.deg + *db.deg);           // deg is additive
    CHECK(dab.leading == da.leading * db.leading); // L is multiplicative
    auto dsum = degree_lc(a + b, x);
    if (!dsum.deg.has_value()) continue;
    CHECK(*dsum.deg <= std::max(*da.deg, *db.deg));
  }
}

TEST_CASE("specialization is a ring homomorphism") {
  Rat::Field f;
  Fp::Field f101{101};
  Rng rng(18);
  for (int t = 0; t < 25; ++t) {
    PQ a = rand_poly(rng, 3, 4, f), b = rand_poly(rng, 3, 4, f);
    std::map<uint32_t, Fp> pt;
    for (int v = 1; v <= 3; ++v) pt[VarId::b(v).id] = f101.random(rng);
    Fp lhs = specialize(a * b + a, pt, f101);
    Fp rhs = specialize(a, pt, f101) * specialize(b, pt, f101) + specialize(a, pt, f101);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("text round-trip") {
  Fp::Field f{7};
  Rng rng(19);
  for (int t = 0; t < 25; ++t) {
    P2 p = rand_poly2(rng, 2, 4, f);
    P2 q = parse_poly<Fp>(p.str(), f);
    CHECK(p == q);
  }
  PQ r = parse_poly<Rat>("1/2 * b[1]^2 + -3 * b[2]", Rat::Field{});
  CHECK(r.total_degree() == 2);
  CHECK(parse_poly<Rat>(r.str(), Rat::Field{}) == r);
}
