#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facering/complex.hpp"

using namespace facering;

TEST_CASE("construction keeps only maximal faces and validates vertices") {
  auto K = SimplicialComplex::build_from_facets(4, {{1, 2}, {2, 1}, {2}, {3, 4}});
  CHECK(K.facets() == std::vector<Face>{{1, 2}, {3, 4}});
  CHECK(K.dim() == 1);
  CHECK(K.pure());
  CHECK_THROWS_AS(SimplicialComplex::build_from_facets(2, {{1, 3}}), Error);
  CHECK_THROWS_AS(SimplicialComplex::build_from_facets(2, {}), Error);
}

TEST_CASE("face enumeration and counts") {
  auto K = boundary_simplex(2);  // triangle 1-2-3
  CHECK(K.faces_of_dim(-1) == std::vector<Face>{{}});
  CHECK(K.faces_of_dim(0).size() == 3);
  CHECK(K.faces_of_dim(1).size() == 3);
  CHECK(K.total_face_count() == 6);
  CHECK(K.contains({1, 3}));
  CHECK(!K.contains({1, 2, 3}));
  CHECK(K.all_faces().size() == 7);
}

TEST_CASE("f and h vectors of standard spheres") {
  auto s3 = boundary_simplex(3);  // boundary of tetrahedron: S^2
  auto fh = fh_vectors(s3);
  CHECK(fh.f == std::vector<long long>{4, 6, 4});
  CHECK(fh.h == std::vector<long long>{1, 1, 1, 1});
  CHECK(!fh.degenerate_cone);

  auto oct = cross_polytope(3);
  auto fho = fh_vectors(oct);
  CHECK(fho.f == std::vector<long long>{6, 12, 8});
  CHECK(fho.h == std::vector<long long>{1, 3, 3, 1});

  auto c48 = cyclic_polytope_boundary(4, 8);
  auto fhc = fh_vectors(c48);
  CHECK(fhc.f[0] == 8);
  CHECK(fhc.f[3] == 20);  // C(4,8) has m(m-3)/2 facets
  CHECK(fhc.h == std::vector<long long>{1, 4, 10, 4, 1});
  // Dehn-Sommerville symmetry across the corpus piece
  for (int m = 6; m <= 8; ++m) {
    auto h = fh_vectors(cyclic_polytope_boundary(4, m)).h;
    for (size_t i = 0; i < h.size(); ++i) CHECK(h[i] == h[h.size() - 1 - i]);
  }
}

TEST_CASE("links and stars") {
  auto oct = cross_polytope(3);
  auto lk = link(oct, {1});
  // vertex link in the octahedron is a 4-cycle
  CHECK(lk.complex.dim() == 1);
  CHECK(lk.complex.facets().size() == 4);
  CHECK(lk.to_parent == std::vector<int>{3, 4, 5, 6});
  auto st = star(oct, {1});
  CHECK(st.facets().size() == 4);
  CHECK(st.is_cone());

  auto raw = link_raw(oct, {1, 3});
  CHECK(raw.facets() == std::vector<Face>{{5}, {6}});
  CHECK_THROWS_AS(link_raw(oct, {1, 2}), Error);  // antipodal: not a face
}

TEST_CASE("joins, cones and suspensions") {
  auto edge = SimplicialComplex::build_from_facets(2, {{1}, {2}});  // S^0
  auto sq = join_shifted(edge, edge);  // S^0 * S^0 = 4-cycle
  CHECK(sq.dim() == 1);
  CHECK(sq.facets().size() == 4);
  CHECK_THROWS_AS(join(edge, edge), Error);  // same ids clash

  auto c = cone(boundary_simplex(2));
  CHECK(c.d() == 3);
  CHECK(c.is_cone());

  auto susp = suspension(boundary_simplex(2));
  CHECK(fh_vectors(susp).f == std::vector<long long>{5, 9, 6});
  CHECK(is_homology_sphere(susp, 2));
}

TEST_CASE("homology of spheres, balls, and the projective plane") {
  CHECK(homology_ranks(boundary_simplex(3), 0) == std::vector<int>{0, 0, 1});
  CHECK(homology_ranks(cross_polytope(4), 2) == std::vector<int>{0, 0, 0, 1});
  CHECK(homology_ranks(cone(cross_polytope(3)), 0) == std::vector<int>{0, 0, 0, 0});

  auto rp2 = rp2_six_vertices();
  CHECK(homology_ranks(rp2, 0) == std::vector<int>{0, 0, 0});
  CHECK(homology_ranks(rp2, 2) == std::vector<int>{0, 1, 1});
  CHECK(homology_ranks(rp2, 3) == std::vector<int>{0, 0, 0});
}

TEST_CASE("sphere and ball recognition") {
  CHECK(is_homology_sphere(boundary_simplex(4), 2));
  CHECK(is_homology_sphere(cross_polytope(3), 3));
  CHECK(is_homology_sphere(cyclic_polytope_boundary(4, 7), 2));
  CHECK(!is_homology_sphere(rp2_six_vertices(), 2));  // extra H_1
  CHECK(!is_homology_sphere(rp2_six_vertices(), 3));  // missing top class
  CHECK(!is_homology_sphere(cone(boundary_simplex(2)), 2));

  CHECK(is_homology_ball(cone(boundary_simplex(2)), 2));
  CHECK(is_homology_ball(cone(cross_polytope(3)), 2));
  CHECK(!is_homology_ball(cross_polytope(3), 2));
  // two triangles glued along an edge: a 2-ball
  auto two = SimplicialComplex::build_from_facets(4, {{1, 2, 3}, {2, 3, 4}});
  CHECK(is_homology_ball(two, 2));
}

TEST_CASE("boundary and interior") {
  auto ball = cone(boundary_simplex(2));  // solid triangle fan, apex 4
  auto bd = boundary_complex(ball);
  CHECK(bd.facets() == boundary_simplex(2).facets());
  auto in1 = interior_faces(ball, 1);
  CHECK(in1 == std::vector<Face>{{4}});
  CHECK(boundary_complex(cross_polytope(2)).facets() == std::vector<Face>{{}});
}

TEST_CASE("orientation") {
  for (auto K : {boundary_simplex(3), cross_polytope(3), cyclic_polytope_boundary(4, 7)}) {
    auto oc = orient(K);
    CHECK(orientation_coherent(oc));
    CHECK(oc.sign.at(oc.root) == 1);
  }
  // orientation with explicit root flips consistently
  auto K = cross_polytope(2);
  auto a = orient(K), b = orient(K, Face{2, 4});
  int flip = b.sign.at(a.root);
  for (const auto& f : K.facets()) CHECK(b.sign.at(f) == flip * a.sign.at(f));

  CHECK_THROWS_AS(orient(rp2_six_vertices()), Error);
  auto disjoint = SimplicialComplex::build_from_facets(4, {{1, 2}, {3, 4}});
  CHECK_THROWS_AS(orient(disjoint), Error);
}

TEST_CASE("generators") {
  CHECK(boundary_simplex(5).facets().size() == 6);  // d+1 facets, m = d+1
  CHECK(boundary_simplex(5).dim() == 4);
  CHECK(cross_polytope(4).facets().size() == 16);
  CHECK(cross_polytope(4).vertex_count() == 8);
  for (int m = 6; m <= 8; ++m) {
    auto K = cyclic_polytope_boundary(4, m);
    CHECK(K.facets().size() == (size_t)(m * (m - 3) / 2));
    CHECK(is_homology_sphere(K, 2));
  }
  auto st = stacked_sphere(3, 4, 99);
  CHECK(st.vertex_count() == 8);
  CHECK(fh_vectors(st).h == std::vector<long long>{1, 5, 5, 1});
  CHECK(is_homology_sphere(st, 2));
  CHECK(st == stacked_sphere(3, 4, 99));  // deterministic
}

TEST_CASE("json round-trip and stable hashing") {
  auto K = cross_polytope(3);
  auto K2 = complex_from_json_text(complex_to_json_text(K));
  CHECK(K == K2);
  CHECK(K.hash() == K2.hash());
  CHECK(K.hash().size() == 64);
  CHECK(K.hash() != boundary_simplex(3).hash());
  // canonical form is facet-order independent
  auto A = SimplicialComplex::build_from_facets(3, {{1, 2}, {2, 3}});
  auto B = SimplicialComplex::build_from_facets(3, {{3, 2}, {2, 1}});
  CHECK(A.hash() == B.hash());
}
