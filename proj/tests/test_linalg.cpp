#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facering/linalg.hpp"

using namespace facering;

namespace {

using PQ = MultiPoly<Rat>;

Matrix<Fp> rand_matrix(Rng& rng, size_t r, size_t c, Fp::Field f) {
  Matrix<Fp> m(r, c, f);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j) m.at(i, j) = f.random(rng);
  return m;
}

}  // namespace

TEST_CASE("gauss rank and determinant basics") {
  Fp::Field f{101};
  auto id = Matrix<Fp>::identity(4, f);
  CHECK(gauss_rank(id) == 4);
  CHECK(gauss_det(id) == f.one());

  Matrix<Fp> m(3, 3, f);
  // two equal rows -> singular
  for (size_t j = 0; j < 3; ++j) {
    m.at(0, j) = f.from_int((long long)j + 1);
    m.at(1, j) = f.from_int((long long)j + 1);
    m.at(2, j) = f.from_int((long long)(j * j + 1));
  }
  CHECK(gauss_rank(m) == 2);
  CHECK(gauss_det(m).is_zero());
}

TEST_CASE("kernel vectors annihilate the matrix") {
  Fp::Field f{101};
  Rng rng(21);
  for (int t = 0; t < 30; ++t) {
    size_t r = 2 + rng.below(3), c = 2 + rng.below(4);
    Matrix<Fp> m = rand_matrix(rng, r, c, f);
    auto ker = gauss_kernel(m);
    CHECK(ker.size() == c - gauss_rank(m));  // rank-nullity
    for (const auto& v : ker) {
      bool nonzero = false;
      for (size_t i = 0; i < r; ++i) {
        Fp acc = f.zero();
        for (size_t j = 0; j < c; ++j) acc += m.at(i, j) * v[j];
        CHECK(acc.is_zero());
      }
      for (const auto& x : v) nonzero |= !x.is_zero();
      CHECK(nonzero);
    }
  }
}

TEST_CASE("bareiss determinant agrees with expansion and specialization") {
  Rat::Field f;
  Rng rng(22);
  for (int t = 0; t < 10; ++t) {
    size_t n = 2 + rng.below(3);
    Matrix<PQ> m(n, n, f);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        PQ e(f.from_int((long long)rng.range(-3, 3)));
        if (rng.below(2)) e += PQ::var(VarId::a((int)i + 1, (int)j + 1), f);
        m.at(i, j) = e;
      }
    PQ db = bareiss_det(m);
    PQ dl = laplace_det(m);
    CHECK(db == dl);

    Fp::Field f101{101};
    std::map<uint32_t, Fp> pt;
    for (size_t i = 1; i <= n; ++i)
      for (size_t j = 1; j <= n; ++j) pt[VarId::a((int)i, (int)j).id] = f101.random(rng);
    Matrix<Fp> ms(n, n, f101);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) ms.at(i, j) = specialize(m.at(i, j), pt, f101);
    CHECK(specialize(db, pt, f101) == gauss_det(ms));
  }
}

TEST_CASE("bareiss rank matches specialized gauss rank generically") {
  Rat::Field f;
  // build rank-deficient polynomial matrix: row3 = row1 + row2
  Matrix<PQ> m(3, 3, f);
  for (size_t j = 0; j < 3; ++j) {
    m.at(0, j) = PQ::var(VarId::a(1, (int)j + 1), f);
    m.at(1, j) = PQ::var(VarId::a(2, (int)j + 1), f);
    m.at(2, j) = m.at(0, j) + m.at(1, j);
  }
  CHECK(bareiss_rank(m) == 2);
}

TEST_CASE("rank of a rational-function matrix") {
  Rat::Field f;
  using R = RatFunc<Rat>;
  PQ x = PQ::var(VarId::b(1), f), y = PQ::var(VarId::b(2), f);
  Matrix<R> m(2, 2, R::Field{f});
  m.at(0, 0) = R(PQ::one(f), x);
  m.at(0, 1) = R(PQ::one(f), y);
  m.at(1, 0) = R(y, x * y);  // same function as 1/x
  m.at(1, 1) = R(x, x * y);  // same function as 1/y
  CHECK(exact_rank(m) == 1);
  m.at(1, 1) = R(x, y);
  CHECK(exact_rank(m) == 2);
}
