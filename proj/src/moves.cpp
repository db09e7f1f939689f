#include "facering/moves.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace facering {

using json = nlohmann::json;

namespace {

// If lk is the boundary of a simplex, return its vertex set.
std::optional<Face> boundary_simplex_vertices(const SimplicialComplex& lk) {
  const auto& fs = lk.facets();
  if (fs.size() == 1 && fs[0].empty()) return Face{};  // link of a facet
  std::set<int> verts;
  for (const auto& f : fs) verts.insert(f.begin(), f.end());
  size_t t = verts.size();
  if (fs.size() != t) return std::nullopt;
  for (const auto& f : fs)
    if (f.size() + 1 != t) return std::nullopt;
  // t distinct (t-1)-subsets of a t-set are all of them.
  return Face(verts.begin(), verts.end());
}

}  // namespace

bool move_valid(const SimplicialComplex& K, const BistellarMove& mv) {
  if (!K.pure()) return false;
  int d = K.d();
  if ((int)(mv.sigma.size() + mv.tau.size()) != d + 1) return false;
  if (mv.sigma.empty() || mv.tau.empty()) return false;
  if (!K.contains(mv.sigma)) return false;
  if (K.contains(mv.tau)) return false;
  auto verts = boundary_simplex_vertices(link_raw(K, mv.sigma));
  if (!verts) return false;
  if (mv.tau.size() == 1)  // 0-move: any fresh vertex works
    return verts->empty() && mv.tau[0] > 0 &&
           !face_subset(mv.tau, Face(K.used_vertices()));
  return *verts == mv.tau;
}

std::vector<BistellarMove> valid_moves(const SimplicialComplex& K) {
  if (!K.pure()) fail("NotPure", "valid_moves requires a pure complex");
  int d = K.d();
  std::vector<BistellarMove> out;
  for (int s = 1; s <= d; ++s) {
    for (const Face& sigma : K.faces_of_dim(s - 1)) {
      auto verts = boundary_simplex_vertices(link_raw(K, sigma));
      if (!verts) continue;
      if (s == d) {
        out.push_back({sigma, {K.vertex_count() + 1}});
        continue;
      }
      if ((int)verts->size() != d + 1 - s) continue;
      if (K.contains(*verts)) continue;
      out.push_back({sigma, *verts});
    }
  }
  return out;
}

SimplicialComplex apply_move(const SimplicialComplex& K, const BistellarMove& mv) {
  if (!move_valid(K, mv))
    fail("InvalidMove", "move (" + face_str(mv.sigma) + "," + face_str(mv.tau) +
                            ") is not valid here");
  std::vector<Face> facets;
  for (const auto& f : K.facets())
    if (!face_subset(mv.sigma, f)) facets.push_back(f);
  for (size_t v = 0; v < mv.sigma.size(); ++v) {
    Face g = mv.sigma;
    g.erase(g.begin() + (long)v);
    facets.push_back(face_union(g, mv.tau));
  }
  int m = std::max(K.vertex_count(), mv.tau.back());
  return raw_complex(m, std::move(facets));
}

BistellarMove inverse_move(const BistellarMove& mv) { return {mv.tau, mv.sigma}; }

WalkResult random_walk(const SimplicialComplex& K, int steps, uint64_t seed,
                       int vertex_cap) {
  if (steps < 0) fail("BadParams", "random_walk needs steps >= 0");
  Rng rng(seed);
  WalkResult res;
  res.log.start = K.hash();
  SimplicialComplex cur = K;
  for (int t = 0; t < steps; ++t) {
    auto moves = valid_moves(cur);
    if (vertex_cap > 0 && cur.vertex_count() >= vertex_cap) {
      std::erase_if(moves, [](const BistellarMove& mv) { return mv.index() == 0; });
    }
    if (moves.empty()) break;
    const BistellarMove& mv = moves[rng.below(moves.size())];
    res.log.moves.push_back(mv);
    cur = apply_move(cur, mv);
  }
  res.log.end = cur.hash();
  res.end = std::move(cur);
  return res;
}

SimplicialComplex replay(const SimplicialComplex& K, const MoveLog& log) {
  if (K.hash() != log.start) fail("HashMismatch", "replay start hash differs");
  SimplicialComplex cur = K;
  for (const auto& mv : log.moves) cur = apply_move(cur, mv);
  if (cur.hash() != log.end) fail("HashMismatch", "replay end hash differs");
  return cur;
}

bool is_boundary_simplex_up_to_labels(const SimplicialComplex& K) {
  if (!K.pure() || K.d() < 1) return false;
  // d+1 distinct facets of size d on exactly d+1 vertices are all of them.
  return K.used_vertices().size() == (size_t)K.d() + 1 &&
         K.facets().size() == (size_t)K.d() + 1;
}

ReduceResult reduce_to_boundary_simplex(const SimplicialComplex& K, int budget,
                                        uint64_t seed) {
  Rng rng(seed);
  ReduceResult res;
  res.log.start = K.hash();
  SimplicialComplex cur = K;
  double energy = (double)cur.total_face_count();
  const double t_hi = 2.0, t_lo = 0.01;
  for (int step = 0; step < budget; ++step) {
    if (is_boundary_simplex_up_to_labels(cur)) break;
    auto moves = valid_moves(cur);
    if (moves.empty()) break;
    const BistellarMove& mv = moves[rng.below(moves.size())];
    SimplicialComplex next = apply_move(cur, mv);
    double e2 = (double)next.total_face_count();
    double temp = t_hi * std::pow(t_lo / t_hi, (double)step / (double)budget);
    if (e2 <= energy || rng.unit() < std::exp((energy - e2) / temp)) {
      cur = std::move(next);
      energy = e2;
      res.log.moves.push_back(mv);
    }
  }
  res.success = is_boundary_simplex_up_to_labels(cur);
  res.log.end = cur.hash();
  res.end = std::move(cur);
  return res;
}

std::pair<SimplicialComplex, std::map<int, int>> compact_vertices(
    const SimplicialComplex& K) {
  std::map<int, int> remap;
  for (int v : K.used_vertices()) remap[v] = (int)remap.size() + 1;
  std::vector<Face> facets;
  for (const auto& f : K.facets()) {
    Face g;
    for (int v : f) g.push_back(remap[v]);
    facets.push_back(std::move(g));
  }
  return {raw_complex((int)remap.size(), std::move(facets)), remap};
}

std::string move_log_to_json_text(const MoveLog& log) {
  json j;
  j["start"] = log.start;
  json arr = json::array();
  for (const auto& mv : log.moves) arr.push_back({{"sigma", mv.sigma}, {"tau", mv.tau}});
  j["moves"] = std::move(arr);
  j["end"] = log.end;
  return j.dump();
}

MoveLog move_log_from_json_text(const std::string& text) {
  json j = json::parse(text);
  MoveLog log;
  log.start = j.at("start").get<std::string>();
  log.end = j.at("end").get<std::string>();
  for (const auto& e : j.at("moves")) {
    BistellarMove mv;
    mv.sigma = e.at("sigma").get<Face>();
    mv.tau = e.at("tau").get<Face>();
    std::sort(mv.sigma.begin(), mv.sigma.end());
    std::sort(mv.tau.begin(), mv.tau.end());
    log.moves.push_back(std::move(mv));
  }
  return log;
}

}  // namespace facering
