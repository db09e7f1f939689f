#pragma once

// Bistellar (Pachner) moves: detection, application, logged random walks,
// and an annealing-based reduction toward the boundary simplex.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "facering/complex.hpp"

namespace facering {

// Swap the d-ball sigma * lk(sigma) = sigma * boundary(tau) for
// boundary(sigma) * tau.  With dim K = d-1, |sigma| + |tau| = d + 1 and the
// move index is i = |tau| - 1 (a 0-move stars a facet with a fresh vertex).
struct BistellarMove {
  Face sigma;
  Face tau;
  int index() const { return (int)tau.size() - 1; }
  bool operator==(const BistellarMove& o) const {
    return sigma == o.sigma && tau == o.tau;
  }
};

struct MoveLog {
  std::string start;  // hash of the starting complex
  std::vector<BistellarMove> moves;
  std::string end;    // hash of the final complex
};

// All moves valid on K.  0-moves are reported with the fresh vertex m+1.
std::vector<BistellarMove> valid_moves(const SimplicialComplex& K);

// Does mv satisfy lk_sigma K = boundary(tau), tau not in K, sizes matching?
bool move_valid(const SimplicialComplex& K, const BistellarMove& mv);

// Throws InvalidMove if mv is not valid on K.
SimplicialComplex apply_move(const SimplicialComplex& K, const BistellarMove& mv);

// The inverse move: applying it to apply_move(K, mv) restores K.
BistellarMove inverse_move(const BistellarMove& mv);

struct WalkResult {
  SimplicialComplex end;
  MoveLog log;
};

// `steps` uniform random valid moves.  vertex_cap > 0 excludes 0-moves once
// the complex has that many vertices.  Deterministic under a fixed seed.
WalkResult random_walk(const SimplicialComplex& K, int steps, uint64_t seed,
                       int vertex_cap = 0);

// Replay a log from K, checking the start and end hashes.
SimplicialComplex replay(const SimplicialComplex& K, const MoveLog& log);

struct ReduceResult {
  bool success = false;
  MoveLog log;             // meaningful only on success
  SimplicialComplex end;   // final complex either way
};

// Simulated annealing on total face count; success means the end complex is
// the boundary of a simplex (up to vertex labels).  Failure is inconclusive.
ReduceResult reduce_to_boundary_simplex(const SimplicialComplex& K, int budget,
                                        uint64_t seed);

bool is_boundary_simplex_up_to_labels(const SimplicialComplex& K);

// Relabel used vertices to 1..k preserving order; second item maps old->new.
std::pair<SimplicialComplex, std::map<int, int>> compact_vertices(
    const SimplicialComplex& K);

std::string move_log_to_json_text(const MoveLog& log);
MoveLog move_log_from_json_text(const std::string& text);

}  // namespace facering
