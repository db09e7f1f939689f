#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facering/lsop.hpp"

using namespace facering;

namespace {

using PQ = MultiPoly<Rat>;
using P2 = MultiPoly<Fp>;

// suspension of the tetrahedron boundary on {3,4,5,6}, apexes 1 and 2
SimplicialComplex suspended_tetra_boundary() {
  std::vector<Face> facets;
  for (int skip = 3; skip <= 6; ++skip) {
    Face f;
    for (int v = 3; v <= 6; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(face_union(f, {1}));
    facets.push_back(face_union(f, {2}));
  }
  return SimplicialComplex::build_from_facets(6, facets);
}

}  // namespace

TEST_CASE("generic lsop: fresh variables, always valid") {
  Rat::Field f;
  auto K = boundary_simplex(3);
  auto M = generic_lsop<Rat>(K, f);
  CHECK(M.d == 3);
  CHECK(M.m == 4);
  std::set<uint32_t> vars;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 4; ++j) {
      CHECK(M.entry(i, j).num_terms() == 1);
      vars.insert(M.entry(i, j).variables()[0].id);
    }
  CHECK(vars.size() == 12);
  CHECK(is_lsop(K, M));
}

TEST_CASE("normalized lsop pins an identity block") {
  Rat::Field f;
  auto K = boundary_simplex(3);
  auto M = normalized_lsop<Rat>(K, f);  // default pin {1,2,3}
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      CHECK(M.entry(i, j) == (i == j ? PQ::one(f) : PQ::zero(f)));
  CHECK(minor_det(M, {1, 2, 3}) == PQ::one(f));
  CHECK(is_lsop(K, M));

  auto oct = cross_polytope(3);
  auto N = normalized_lsop<Rat>(oct, f);
  size_t freevars = 0;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 6; ++j) freevars += N.entry(i, j).variables().size();
  CHECK(freevars == 9);  // d(m-d)
  CHECK(is_lsop(oct, N));

  CHECK_THROWS_AS(normalized_lsop<Rat>(K, f, Face{1, 2, 4, 3}), Error);
  auto P = normalized_lsop<Rat>(oct, f, Face{2, 4, 6});
  CHECK(P.entry(1, 2) == PQ::one(f));
  CHECK(P.entry(3, 6) == PQ::one(f));
  CHECK(is_lsop(oct, P));
}

TEST_CASE("structured move matrix (n=2, q=1)") {
  Fp::Field f2{2};
  auto D = suspended_tetra_boundary();
  auto M = theorem41_lsop<Fp>(D, 1, 2, f2);
  CHECK(M.d == 4);
  // lambda_1 = e_1 + b_3 e_3, lambda_5 = (b_1, b_2, 0, 0)^T
  CHECK(M.entry(1, 1) == P2::one(f2));
  CHECK(M.entry(3, 1) == P2::var(VarId::b(3), f2));
  CHECK(M.entry(2, 1).is_zero());
  CHECK(M.entry(1, 5) == P2::var(VarId::b(1), f2));
  CHECK(M.entry(2, 5) == P2::var(VarId::b(2), f2));
  CHECK(M.entry(3, 5).is_zero());
  CHECK(M.entry(4, 5).is_zero());
  CHECK(M.entry(1, 6) == P2::var(VarId::a(1, 6), f2));
  CHECK(minor_det(M, {1, 2, 3, 4}) == P2::one(f2));
  CHECK(is_lsop(D, M));

  CHECK_THROWS_AS(theorem41_lsop<Fp>(cross_polytope(2), 1, 2, f2), Error);
}

TEST_CASE("cone and suspension matrices") {
  Rat::Field f;
  auto K = cone(cross_polytope(3));  // apex 7
  auto M = cone_lsop<Rat>(K, ConeVariant::cone_apex, f);
  CHECK(M.d == 4);
  CHECK(M.m == 7);
  CHECK(M.entry(1, 7) == PQ::one(f));
  for (int i = 2; i <= 4; ++i) CHECK(M.entry(i, 7).is_zero());
  CHECK(is_lsop(K, M));

  auto S = suspension(boundary_simplex(2));  // apexes 4, 5
  auto N = cone_lsop<Rat>(S, ConeVariant::suspension_apexes, f);
  CHECK(N.entry(1, 4) == PQ::one(f));
  CHECK(N.entry(2, 5) == PQ::one(f));
  CHECK(N.entry(2, 4).is_zero());
  CHECK(is_lsop(S, N));

  CHECK_THROWS_AS(cone_lsop<Rat>(cross_polytope(3), ConeVariant::cone_apex, f),
                  Error);
}

TEST_CASE("validity detects degeneracies") {
  Rat::Field f;
  auto K = boundary_simplex(2);
  auto M = generic_lsop<Rat>(K, f);
  for (int i = 1; i <= 2; ++i) M.entry(i, 2) = PQ::zero(f);  // kill a vertex
  CHECK(!is_lsop(K, M));

  // 1-dimensional: S^0, 1x2 matrix valid iff both entries nonzero
  auto S0 = SimplicialComplex::build_from_facets(2, {{1}, {2}});
  auto N = generic_lsop<Rat>(S0, f);
  CHECK(is_lsop(S0, N));
  N.entry(1, 2) = PQ::zero(f);
  CHECK(!is_lsop(S0, N));

  CHECK_THROWS_AS(is_lsop(cross_polytope(3), generic_lsop<Rat>(K, f)), Error);
}

TEST_CASE("minors: alternation, replacement, memo-free correctness") {
  Rat::Field f;
  auto K = boundary_simplex(3);
  auto M = generic_lsop<Rat>(K, f);
  auto A = minor_det(M, {1, 2, 3});
  CHECK(minor_det(M, {2, 1, 3}) == -A);
  CHECK(minor_det(M, {3, 1, 2}) == A);

  // replacing a column by itself gives the plain minor
  std::vector<PQ> self = {M.entry(1, 2), M.entry(2, 2), M.entry(3, 2)};
  CHECK(minor_replaced(M, {1, 2, 3}, 2, self) == A);

  auto repl = fresh_replacement<Rat>(3, f);
  auto Ai = minor_replaced(M, {1, 2, 3}, 2, repl);
  CHECK(!Ai.is_zero());
  // multilinearity in the replaced column: a -> a + column restores linearity
  std::vector<PQ> sum;
  for (int i = 0; i < 3; ++i) sum.push_back(repl[(size_t)i] + M.entry(i + 1, 2));
  CHECK(minor_replaced(M, {1, 2, 3}, 2, sum) == Ai + A);

  CHECK_THROWS_AS(minor_det(M, {1, 2}), Error);
  CHECK_THROWS_AS(minor_replaced(M, {1, 2, 3}, 4, repl), Error);
}

TEST_CASE("specialization and random points") {
  Rng rng(31);
  Fp::Field f101{101};
  auto K = cross_polytope(3);
  auto M = normalized_lsop<Rat>(K, Rat::Field{});
  auto pt = random_point(M, {VarId::c(1)}, f101, rng);
  CHECK(pt.size() == 10);  // 9 matrix variables + 1 extra
  auto S = specialize_lsop(M, pt, f101);
  CHECK(S.entry(1, 1) == f101.one());
  for (const auto& fce : K.facets())
    CHECK(specialize(minor_det(M, fce), pt, f101) == minor_det(S, fce));
}

TEST_CASE("matrix json") {
  auto M = normalized_lsop<Rat>(boundary_simplex(2), Rat::Field{});
  auto s = lsop_to_json_text(M);
  CHECK(s.find("\"kind\":\"normalized\"") != std::string::npos);
  CHECK(s.find("a[1][3]") != std::string::npos);
}
