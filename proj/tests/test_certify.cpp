#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facering/certify.hpp"

using namespace facering;

TEST_CASE("characteristic-2 certificate: small spheres are anisotropic") {
  for (auto K : {boundary_simplex(2), cross_polytope(2), boundary_simplex(3),
                 cross_polytope(3)}) {
    auto cert = aniso_char2_certificate(K, 7);
    CHECK(cert.status == "ANISOTROPIC");
    CHECK(cert.error_bound_log2 == Certificate::kExactBound);
    auto h = fh_vectors(K).h;
    CHECK((int)cert.basis.size() == (int)h[(size_t)(K.d() / 2)]);
    CHECK(cert.witness_minor_bits != 0);
    CHECK(reverify_certificate(K, cert));
  }
}

TEST_CASE("characteristic-2 certificate: zero-sphere is trivially anisotropic") {
  auto K = boundary_simplex(1);
  auto cert = aniso_char2_certificate(K, 0);
  CHECK(cert.status == "ANISOTROPIC");
  CHECK(cert.degree == 0);
  CHECK(reverify_certificate(K, cert));
}

TEST_CASE("characteristic-2 certificate: deterministic under a fixed seed") {
  auto K = cross_polytope(2);
  auto c1 = aniso_char2_certificate(K, 42);
  auto c2 = aniso_char2_certificate(K, 42);
  CHECK(c1.to_json_text() == c2.to_json_text());
  auto c3 = aniso_char2_certificate(K, 43);
  CHECK(c3.status == "ANISOTROPIC");  // different witness, same verdict
}

TEST_CASE("characteristic-2 certificate: tampered witnesses are rejected") {
  auto K = cross_polytope(2);
  auto cert = aniso_char2_certificate(K, 5);
  REQUIRE(cert.status == "ANISOTROPIC");

  auto bad = cert;
  bad.witness_minor_bits ^= 1;
  CHECK_FALSE(reverify_certificate(K, bad));

  bad = cert;
  REQUIRE(!bad.point_ids.empty());
  bad.point_ids[0].second ^= 1;
  CHECK_FALSE(reverify_certificate(K, bad));

  bad = cert;
  bad.status = "INCONCLUSIVE";
  CHECK_FALSE(reverify_certificate(K, bad));

  // a certificate re-verifies only against the complex it was issued for
  CHECK_FALSE(reverify_certificate(cross_polytope(3), cert));
}

TEST_CASE("characteristic-2 certificate: rejects non-spheres") {
  CHECK_THROWS_WITH_AS(aniso_char2_certificate(rp2_six_vertices(), 0),
                       doctest::Contains("homology sphere"), Error);
  auto ball = cone(boundary_simplex(2));
  CHECK_THROWS_AS(aniso_char2_certificate(ball, 0), Error);
}

TEST_CASE("randomized probe finds no isotropic vectors on spheres") {
  auto rep = aniso_random_probe(cross_polytope(3), 3, 20, 11);
  CHECK(rep.counterexamples.empty());
  CHECK(rep.trials == 20);
  auto rep0 = aniso_random_probe(boundary_simplex(3), 0, 10, 11);
  CHECK(rep0.counterexamples.empty());
  CHECK(rep0.to_json_text().find("\"char\":0") != std::string::npos);
}

TEST_CASE("probe with a supplied matrix rejects non-l.s.o.p. input") {
  auto K = cross_polytope(2);
  Fp::Field f{101};
  LsopMatrix<Fp> M;
  M.d = 2;
  M.m = 4;
  M.col.assign(4, std::vector<Fp>(2, f.zero()));
  CHECK_THROWS_AS(aniso_random_probe(K, M, 5, 0), Error);
  // a valid specialization works
  M.entry(1, 1) = f.one();
  M.entry(2, 2) = f.one();
  M.entry(1, 3) = f.from_int(2);
  M.entry(2, 3) = f.from_int(3);
  M.entry(1, 4) = f.from_int(5);
  M.entry(2, 4) = f.from_int(7);
  auto rep = aniso_random_probe(K, M, 10, 0);
  CHECK(rep.characteristic == 101);
}

TEST_CASE("Lefschetz ranks match the h-vector on 2-spheres") {
  for (auto K : {boundary_simplex(3), cross_polytope(3)}) {
    auto rep = lefschetz_check(K, 1);
    CHECK(rep.holds);
    auto h = fh_vectors(K).h;
    REQUIRE(rep.ranks.size() == rep.expected.size());
    for (size_t i = 0; i < rep.ranks.size(); ++i) {
      CHECK(rep.ranks[i].second == rep.expected[i]);
      CHECK(rep.expected[i] == (int)h[i]);
    }
  }
}

TEST_CASE("certificate status is constant along bistellar walks") {
  auto rep = move_invariance_experiment(cross_polytope(2), 3, 1);
  CHECK(rep.constant);
  CHECK(rep.statuses.size() == 4);
  for (const auto& s : rep.statuses) CHECK(s == "ANISOTROPIC");
}

TEST_CASE("exact identity suite") {
  auto rep = identity_suite();
  CHECK(rep.facet_identity);
  CHECK(rep.zero_move_fraction);
  CHECK(rep.zero_move_sign != 0);
  CHECK(rep.zero_move_ring_identity);
  CHECK(rep.structured_det_one);
  CHECK(rep.structured_square_value);
  CHECK(rep.all_pass());
}

TEST_CASE("differential-operator experiment on the structured matrix") {
  auto rep = diffop_experiment();
  CHECK(rep.n == 2);
  CHECK(rep.q == 1);
  CHECK(rep.square_free_psi_is_one);
  CHECK(rep.fact_c_value);
  CHECK(rep.fact_c_ring_identity);
  CHECK(rep.p_nonzero_on_distinguished);
  CHECK(rep.p_kills_others);
  CHECK(rep.all_pass());
  CHECK(rep.to_json_text().find("\"all_pass\":true") != std::string::npos);
}

TEST_CASE("degree and leading-coefficient experiment on the cone") {
  auto rep = degree_argument_experiment(3);
  CHECK(rep.sigma_sigma_degree_one);
  CHECK(rep.sigma_sigma_leading);
  CHECK(rep.tau_tau_bounded);
  CHECK(rep.sigma_tau_bounded);
  CHECK(rep.suspension_proportional);
  CHECK(rep.suspension_substitution);
  CHECK(rep.all_pass());
}

TEST_CASE("certificate JSON carries the witness data") {
  auto K = cross_polytope(2);
  auto cert = aniso_char2_certificate(K, 9);
  auto text = cert.to_json_text();
  CHECK(text.find("\"status\":\"ANISOTROPIC\"") != std::string::npos);
  CHECK(text.find("\"witness\"") != std::string::npos);
  CHECK(text.find("\"point\"") != std::string::npos);
  CHECK(text.find("\"v\":1") != std::string::npos);
}
