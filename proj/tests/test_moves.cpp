#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "facering/moves.hpp"

using namespace facering;

namespace {

int count_index(const std::vector<BistellarMove>& mvs, int i) {
  return (int)std::count_if(mvs.begin(), mvs.end(),
                            [i](const BistellarMove& mv) { return mv.index() == i; });
}

}  // namespace

TEST_CASE("move census on small spheres") {
  auto mvs = valid_moves(boundary_simplex(3));
  CHECK(mvs.size() == 4);  // one 0-move per facet, nothing else
  CHECK(count_index(mvs, 0) == 4);
  for (const auto& mv : mvs) CHECK(mv.tau == Face{5});

  auto oct = cross_polytope(3);
  auto mo = valid_moves(oct);
  CHECK(count_index(mo, 0) == 8);
  CHECK(count_index(mo, 1) == 12);  // every edge flips to the crossing edge
  CHECK(count_index(mo, 2) == 0);   // no vertex has a boundary-simplex link here
  CHECK(mo.size() == 20);

  // stacked 5-vertex 2-sphere: the 2-move removing the last vertex is valid
  auto st = apply_move(boundary_simplex(3), {{1, 2, 3}, {5}});
  auto ms = valid_moves(st);
  CHECK(std::find(ms.begin(), ms.end(), BistellarMove{{5}, {1, 2, 3}}) != ms.end());

  CHECK_THROWS_AS(valid_moves(SimplicialComplex::build_from_facets(3, {{1, 2}, {3}})), Error);
}

TEST_CASE("applying a 0-move stellarly subdivides a facet") {
  auto K = apply_move(boundary_simplex(3), {{1, 2, 3}, {5}});
  auto fh = fh_vectors(K);
  CHECK(fh.f == std::vector<long long>{5, 9, 6});
  CHECK(is_homology_sphere(K, 2));
  CHECK_THROWS_AS(apply_move(K, BistellarMove{{1, 2, 3}, {6}}), Error);  // gone
}

TEST_CASE("edge flip on the octahedron") {
  auto oct = cross_polytope(3);
  BistellarMove flip{{1, 3}, {5, 6}};
  auto K = apply_move(oct, flip);
  CHECK(fh_vectors(K).f == fh_vectors(oct).f);
  CHECK(!K.contains({1, 3}));
  CHECK(K.contains({5, 6}));
  CHECK(is_homology_sphere(K, 2));
}

TEST_CASE("every move is invertible") {
  auto oct = cross_polytope(3);
  for (const auto& mv : valid_moves(oct)) {
    auto K = apply_move(oct, mv);
    auto inv = inverse_move(mv);
    CHECK(move_valid(K, inv));
    auto back = apply_move(K, inv);
    CHECK(back.facets() == oct.facets());
  }
}

TEST_CASE("h-vector changes by the standard unit amounts") {
  // under an i-move on a (d-1)-sphere, h_j gains 1 for i+1 <= j <= d-i-1
  for (auto K : {cross_polytope(3), cyclic_polytope_boundary(4, 7)}) {
    int d = K.d();
    auto h0 = fh_vectors(K).h;
    for (const auto& mv : valid_moves(K)) {
      auto h1 = fh_vectors(apply_move(K, mv)).h;
      int i = mv.index();
      for (int j = 0; j <= d; ++j) {
        long long want = h0[(size_t)j];
        if (i + 1 <= j && j <= d - i - 1) want += 1;
        if (d - i <= j && j <= i) want -= 1;  // reverse moves (i > d/2)
        CHECK(h1[(size_t)j] == want);
      }
    }
  }
}

TEST_CASE("moves preserve the sphere property across the corpus sample") {
  for (auto K : {boundary_simplex(4), cross_polytope(3), cyclic_polytope_boundary(4, 6),
                 stacked_sphere(3, 3, 5)}) {
    auto mvs = valid_moves(K);
    for (size_t t = 0; t < mvs.size(); t += 3)  // sample every third move
      CHECK(is_homology_sphere(apply_move(K, mvs[t]), 2));
  }
}

TEST_CASE("random walks are deterministic and replayable") {
  auto oct = cross_polytope(3);
  auto w1 = random_walk(oct, 10, 7);
  auto w2 = random_walk(oct, 10, 7);
  CHECK(w1.end == w2.end);
  CHECK(w1.log.end == w2.log.end);
  CHECK(w1.log.moves.size() == 10);
  CHECK(is_homology_sphere(w1.end, 2));

  auto zero = random_walk(oct, 0, 7);
  CHECK(zero.end == oct);
  CHECK(zero.log.moves.empty());
  CHECK(zero.log.start == zero.log.end);

  CHECK(replay(oct, w1.log) == w1.end);
  auto log2 = move_log_from_json_text(move_log_to_json_text(w1.log));
  CHECK(replay(oct, log2) == w1.end);
  MoveLog bad = w1.log;
  bad.end = std::string(64, '0');
  CHECK_THROWS_AS(replay(oct, bad), Error);

  // vertex cap suppresses 0-moves at the cap
  auto capped = random_walk(oct, 25, 3, 6);
  CHECK(capped.end.vertex_count() == 6);
}

TEST_CASE("reduction to the boundary simplex") {
  auto r0 = reduce_to_boundary_simplex(boundary_simplex(3), 100, 1);
  CHECK(r0.success);
  CHECK(r0.log.moves.empty());

  auto st = stacked_sphere(3, 4, 42);  // 8 vertices
  auto r1 = reduce_to_boundary_simplex(st, 10000, 1);
  CHECK(r1.success);
  CHECK(is_boundary_simplex_up_to_labels(r1.end));
  CHECK(replay(st, r1.log) == r1.end);

  auto r2 = reduce_to_boundary_simplex(cross_polytope(3), 10000, 2);
  CHECK(r2.success);

  auto hopeless = reduce_to_boundary_simplex(cross_polytope(3), 1, 2);
  CHECK(!hopeless.success);  // inconclusive, not a disproof
}

TEST_CASE("vertex compaction") {
  auto K = apply_move(boundary_simplex(3), {{1, 2, 3}, {5}});
  auto gone = apply_move(K, {{4}, {1, 2, 3}});  // removes vertex 4
  CHECK(gone.used_vertices() == std::vector<int>{1, 2, 3, 5});
  auto [compact, remap] = compact_vertices(gone);
  CHECK(compact.vertex_count() == 4);
  CHECK(compact.all_vertices_used());
  CHECK(remap.at(5) == 4);
  CHECK(is_boundary_simplex_up_to_labels(compact));
}
