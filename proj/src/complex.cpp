#include "facering/complex.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "facering/fields.hpp"
#include "facering/linalg.hpp"

namespace facering {

using json = nlohmann::json;

Face face_union(const Face& a, const Face& b) {
  Face r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

Face face_minus(const Face& a, const Face& b) {
  Face r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

bool face_subset(const Face& a, const Face& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool faces_disjoint(const Face& a, const Face& b) {
  Face r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r.empty();
}

std::string face_str(const Face& f) {
  std::ostringstream os;
  os << "{";
  for (size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
  os << "}";
  return os.str();
}

SimplicialComplex SimplicialComplex::build_from_facets(int m, std::vector<Face> facets) {
  if (facets.empty()) fail("EmptyInput", "a complex needs at least one facet (possibly {})");
  for (auto& f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (int v : f)
      if (v < 1 || v > m) fail("VertexOutOfRange", "vertex " + std::to_string(v) + " outside [1," + std::to_string(m) + "]");
  }
  // Drop facets contained in another.
  std::vector<Face> maximal;
  for (size_t i = 0; i < facets.size(); ++i) {
    bool contained = false;
    for (size_t j = 0; j < facets.size() && !contained; ++j)
      if (i != j && face_subset(facets[i], facets[j]) &&
          (facets[i] != facets[j] || j < i))
        contained = true;
    if (!contained) maximal.push_back(facets[i]);
  }
  std::sort(maximal.begin(), maximal.end());
  maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
  return raw_complex(m, std::move(maximal));
}

SimplicialComplex raw_complex(int m, std::vector<Face> facets) {
  SimplicialComplex K;
  K.m_ = m;
  std::sort(facets.begin(), facets.end());
  K.facets_ = std::move(facets);
  size_t mn = SIZE_MAX, mx = 0;
  for (const auto& f : K.facets_) {
    mn = std::min(mn, f.size());
    mx = std::max(mx, f.size());
  }
  K.dim_ = (int)mx - 1;
  K.pure_ = (mn == mx);
  return K;
}

bool SimplicialComplex::is_cone() const {
  if (facets_.empty() || facets_[0].empty()) return false;
  Face common = facets_[0];
  for (const auto& f : facets_) {
    Face r;
    std::set_intersection(common.begin(), common.end(), f.begin(), f.end(),
                          std::back_inserter(r));
    common = std::move(r);
    if (common.empty()) return false;
  }
  return true;
}

std::vector<int> SimplicialComplex::used_vertices() const {
  std::set<int> s;
  for (const auto& f : facets_) s.insert(f.begin(), f.end());
  return std::vector<int>(s.begin(), s.end());
}

bool SimplicialComplex::all_vertices_used() const {
  return (int)used_vertices().size() == m_;
}

bool SimplicialComplex::contains(const Face& f) const {
  for (const auto& g : facets_)
    if (face_subset(f, g)) return true;
  return false;
}

std::vector<Face> SimplicialComplex::faces_of_dim(int i) const {
  if (i < -1 || i > dim_) fail("DimensionOutOfRange", "faces_of_dim(" + std::to_string(i) + ")");
  if (i == -1) return {Face{}};
  std::set<Face> out;
  size_t k = (size_t)i + 1;
  for (const auto& f : facets_) {
    if (f.size() < k) continue;
    // enumerate k-subsets of f
    std::vector<size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Face sub(k);
      for (size_t t = 0; t < k; ++t) sub[t] = f[idx[t]];
      out.insert(std::move(sub));
      size_t t = k;
      while (t > 0 && idx[t - 1] == f.size() - (k - t) - 1) --t;
      if (t == 0) break;
      ++idx[t - 1];
      for (size_t s = t; s < k; ++s) idx[s] = idx[s - 1] + 1;
    }
  }
  return std::vector<Face>(out.begin(), out.end());
}

std::vector<Face> SimplicialComplex::all_faces() const {
  std::vector<Face> out;
  for (int i = -1; i <= dim_; ++i) {
    auto fi = faces_of_dim(i);
    out.insert(out.end(), fi.begin(), fi.end());
  }
  return out;
}

size_t SimplicialComplex::total_face_count() const {
  size_t n = 0;
  for (int i = 0; i <= dim_; ++i) n += faces_of_dim(i).size();
  return n;
}

std::string SimplicialComplex::canonical_json() const {
  json j;
  j["m"] = m_;
  j["facets"] = facets_;
  return j.dump();
}

std::string SimplicialComplex::hash() const { return sha256_hex(canonical_json()); }

FHVectors fh_vectors(const SimplicialComplex& K) {
  if (!K.pure()) fail("NotPure", "fh_vectors requires a pure complex");
  int d = K.d();
  FHVectors out;
  out.f.resize((size_t)std::max(d, 0), 0);
  for (int i = 0; i < d; ++i) out.f[(size_t)i] = (long long)K.faces_of_dim(i).size();
  // h_0 t^d + ... + h_d = sum_i f_{i-1} (t-1)^{d-i}; expand exactly.
  out.h.assign((size_t)d + 1, 0);
  for (int i = 0; i <= d; ++i) {
    long long fi = (i == 0) ? 1 : out.f[(size_t)i - 1];
    // (t-1)^(d-i) contributes to coefficient of t^(d-k) for k >= i.
    long long binom = 1;
    for (int k = i; k <= d; ++k) {
      long long sign = ((k - i) % 2 == 0) ? 1 : -1;
      out.h[(size_t)k] += fi * sign * binom;
      binom = binom * (d - i - (k - i)) / (k - i + 1);
    }
  }
  out.degenerate_cone = K.is_cone();
  return out;
}

SimplicialComplex link_raw(const SimplicialComplex& K, const Face& sigma) {
  if (!K.contains(sigma)) fail("FaceNotInComplex", "link of " + face_str(sigma));
  std::vector<Face> facets;
  for (const auto& f : K.facets())
    if (face_subset(sigma, f)) facets.push_back(face_minus(f, sigma));
  return raw_complex(K.vertex_count(), std::move(facets));
}

SubcomplexWithMap link(const SimplicialComplex& K, const Face& sigma) {
  SimplicialComplex raw = link_raw(K, sigma);
  std::vector<int> used = raw.used_vertices();
  std::map<int, int> reindex;
  for (size_t i = 0; i < used.size(); ++i) reindex[used[i]] = (int)i + 1;
  std::vector<Face> facets;
  for (const auto& f : raw.facets()) {
    Face g;
    for (int v : f) g.push_back(reindex[v]);
    facets.push_back(std::move(g));
  }
  return {raw_complex((int)used.size(), std::move(facets)), used};
}

SimplicialComplex star(const SimplicialComplex& K, const Face& sigma) {
  if (!K.contains(sigma)) fail("FaceNotInComplex", "star of " + face_str(sigma));
  std::vector<Face> facets;
  for (const auto& f : K.facets())
    if (face_subset(sigma, f)) facets.push_back(f);
  if (facets.empty()) facets.push_back(sigma);
  return raw_complex(K.vertex_count(), std::move(facets));
}

SimplicialComplex join(const SimplicialComplex& K, const SimplicialComplex& K2) {
  auto u1 = K.used_vertices(), u2 = K2.used_vertices();
  Face inter;
  std::set_intersection(u1.begin(), u1.end(), u2.begin(), u2.end(),
                        std::back_inserter(inter));
  if (!inter.empty()) fail("VertexClash", "join requires disjoint vertex sets");
  std::vector<Face> facets;
  for (const auto& f : K.facets())
    for (const auto& g : K2.facets()) facets.push_back(face_union(f, g));
  return raw_complex(std::max(K.vertex_count(), K2.vertex_count()), std::move(facets));
}

SimplicialComplex join_shifted(const SimplicialComplex& K, const SimplicialComplex& K2) {
  int off = K.vertex_count();
  std::vector<Face> shifted;
  for (const auto& f : K2.facets()) {
    Face g;
    for (int v : f) g.push_back(v + off);
    shifted.push_back(std::move(g));
  }
  SimplicialComplex K2s = raw_complex(off + K2.vertex_count(), std::move(shifted));
  return join(K, K2s);
}

SimplicialComplex cone(const SimplicialComplex& K) {
  int apex = K.vertex_count() + 1;
  std::vector<Face> facets;
  for (const auto& f : K.facets()) facets.push_back(face_union(f, {apex}));
  return raw_complex(apex, std::move(facets));
}

SimplicialComplex suspension(const SimplicialComplex& K) {
  int v1 = K.vertex_count() + 1, v2 = v1 + 1;
  std::vector<Face> facets;
  for (const auto& f : K.facets()) {
    facets.push_back(face_union(f, {v1}));
    facets.push_back(face_union(f, {v2}));
  }
  return raw_complex(v2, std::move(facets));
}

// ---------------------------------------------------------------------------
// Homology: reduced boundary-matrix ranks, dense, over F_p or Q.
// ---------------------------------------------------------------------------
namespace {

template <class F>
std::vector<int> homology_impl(const SimplicialComplex& K, typename F::Field fld) {
  int dim = K.dim();
  std::vector<std::vector<Face>> faces((size_t)dim + 2);
  std::vector<std::map<Face, size_t>> index((size_t)dim + 2);
  for (int i = -1; i <= dim; ++i) {
    faces[(size_t)(i + 1)] = K.faces_of_dim(i);
    for (size_t t = 0; t < faces[(size_t)(i + 1)].size(); ++t)
      index[(size_t)(i + 1)][faces[(size_t)(i + 1)][t]] = t;
  }
  // boundary_i : C_i -> C_{i-1}, including the augmentation C_0 -> C_{-1}.
  std::vector<size_t> ranks((size_t)dim + 2, 0);
  for (int i = 0; i <= dim; ++i) {
    const auto& rows = faces[(size_t)i];        // (i-1)-faces
    const auto& cols = faces[(size_t)(i + 1)];  // i-faces
    Matrix<F> b(rows.size(), cols.size(), fld);
    for (size_t c = 0; c < cols.size(); ++c) {
      const Face& f = cols[c];
      for (size_t v = 0; v < f.size(); ++v) {
        Face sub = f;
        sub.erase(sub.begin() + (long)v);
        F coeff = (v % 2 == 0) ? fld.one() : -fld.one();
        b.at(index[(size_t)i].at(sub), c) = coeff;
      }
    }
    ranks[(size_t)(i + 1)] = gauss_rank(std::move(b));
  }
  std::vector<int> betti((size_t)dim + 1, 0);
  for (int i = 0; i <= dim; ++i) {
    size_t dim_ci = faces[(size_t)(i + 1)].size();
    size_t rank_di = ranks[(size_t)(i + 1)];
    size_t rank_dnext = (i + 1 <= dim) ? ranks[(size_t)(i + 2)] : 0;
    betti[(size_t)i] = (int)(dim_ci - rank_di - rank_dnext);
  }
  return betti;
}

bool is_prime_u64(uint64_t p) {
  if (p < 2) return false;
  for (uint64_t q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

std::vector<int> homology_ranks(const SimplicialComplex& K, uint64_t p) {
  if (K.facets().empty()) fail("EmptyInput", "homology of empty complex");
  if (K.dim() < 0) return {};
  if (p == 0) return homology_impl<Rat>(K, Rat::Field{});
  if (!is_prime_u64(p)) fail("BadParams", "homology coefficient modulus must be prime or 0");
  return homology_impl<Fp>(K, Fp::Field{p});
}

bool is_homology_sphere(const SimplicialComplex& K, uint64_t p) {
  if (!K.pure()) fail("NotPure", "is_homology_sphere requires a pure complex");
  int dim = K.dim();
  if (dim < 0) return false;
  for (const Face& sigma : K.all_faces()) {
    SimplicialComplex lk = link_raw(K, sigma);
    int ld = dim - (int)sigma.size();
    if (lk.dim() != ld) return false;
    if (ld < 0) continue;  // link of a facet is {}
    auto betti = homology_ranks(lk, p);
    for (int i = 0; i <= ld; ++i) {
      int expect = (i == ld) ? 1 : 0;
      if (betti[(size_t)i] != expect) return false;
    }
  }
  return true;
}

SimplicialComplex boundary_complex(const SimplicialComplex& K) {
  if (!K.pure()) fail("NotPure", "boundary_complex requires a pure complex");
  std::vector<Face> ridges;
  for (const Face& r : K.faces_of_dim(K.dim() - 1)) {
    int cnt = 0;
    for (const auto& f : K.facets())
      if (face_subset(r, f)) ++cnt;
    if (cnt == 1) ridges.push_back(r);
  }
  if (ridges.empty()) ridges.push_back(Face{});
  return raw_complex(K.vertex_count(), std::move(ridges));
}

std::vector<Face> interior_faces(const SimplicialComplex& K, int card) {
  SimplicialComplex bd = boundary_complex(K);
  std::vector<Face> out;
  for (const Face& f : K.faces_of_dim(card - 1))
    if (!bd.contains(f)) out.push_back(f);
  return out;
}

bool is_homology_ball(const SimplicialComplex& K, uint64_t p) {
  if (!K.pure()) fail("NotPure", "is_homology_ball requires a pure complex");
  int dim = K.dim();
  if (dim < 0) return false;
  // Contractible + Cohen-Macaulay + boundary a homology sphere + interior
  // faces have sphere links of the right dimension.
  auto betti = homology_ranks(K, p);
  for (int v : betti)
    if (v != 0) return false;
  SimplicialComplex bd = boundary_complex(K);
  if (bd.facets().size() == 1 && bd.facets()[0].empty()) return false;
  if (!is_homology_sphere(bd, p)) return false;
  for (const Face& sigma : K.all_faces()) {
    SimplicialComplex lk = link_raw(K, sigma);
    int ld = dim - (int)sigma.size();
    if (lk.dim() != ld) return false;
    if (ld < 0) continue;
    auto lb = homology_ranks(lk, p);
    bool interior = !sigma.empty() && !bd.contains(sigma);
    for (int i = 0; i <= ld; ++i) {
      int expect = (interior && i == ld) ? 1 : 0;
      if (lb[(size_t)i] != expect) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Orientation
// ---------------------------------------------------------------------------
namespace {

// Sign of the orientation induced on ridge r by facet f (sorted orders):
// (-1)^(position of the vertex of f missing from r).
int induced_sign(const Face& f, const Face& r) {
  for (size_t i = 0; i < f.size(); ++i)
    if (i >= r.size() || f[i] != r[i]) return (i % 2 == 0) ? 1 : -1;
  fail("Internal", "ridge not contained in facet");
}

}  // namespace

OrientedComplex orient(const SimplicialComplex& K, const std::optional<Face>& root) {
  if (!K.pure()) fail("NotPure", "orient requires a pure complex");
  const auto& facets = K.facets();
  // ridge -> facets containing it
  std::map<Face, std::vector<size_t>> ridge_map;
  for (size_t i = 0; i < facets.size(); ++i) {
    const Face& f = facets[i];
    for (size_t v = 0; v < f.size(); ++v) {
      Face r = f;
      r.erase(r.begin() + (long)v);
      ridge_map[r].push_back(i);
    }
  }
  for (const auto& [r, fs] : ridge_map)
    if (fs.size() > 2) fail("NotPseudomanifold", "ridge " + face_str(r) + " in more than two facets");

  size_t root_idx = 0;
  if (root) {
    auto it = std::find(facets.begin(), facets.end(), *root);
    if (it == facets.end()) fail("FaceNotInComplex", "orientation root facet not found");
    root_idx = (size_t)(it - facets.begin());
  }

  std::vector<int> sign(facets.size(), 0);
  sign[root_idx] = 1;
  std::queue<size_t> q;
  q.push(root_idx);
  size_t visited = 1;
  while (!q.empty()) {
    size_t i = q.front();
    q.pop();
    const Face& f = facets[i];
    for (size_t v = 0; v < f.size(); ++v) {
      Face r = f;
      r.erase(r.begin() + (long)v);
      for (size_t j : ridge_map[r]) {
        if (j == i) continue;
        int want = -sign[i] * induced_sign(f, r) * induced_sign(facets[j], r);
        if (sign[j] == 0) {
          sign[j] = want;
          ++visited;
          q.push(j);
        } else if (sign[j] != want) {
          fail("NonOrientable", "orientation propagation conflict at ridge " + face_str(r));
        }
      }
    }
  }
  if (visited != facets.size())
    fail("DisconnectedDualGraph", "dual graph of facets is not connected");
  OrientedComplex oc;
  oc.complex = K;
  oc.root = facets[root_idx];
  for (size_t i = 0; i < facets.size(); ++i) oc.sign[facets[i]] = sign[i];
  return oc;
}

bool orientation_coherent(const OrientedComplex& oc) {
  const auto& facets = oc.complex.facets();
  std::map<Face, std::vector<size_t>> ridge_map;
  for (size_t i = 0; i < facets.size(); ++i) {
    const Face& f = facets[i];
    for (size_t v = 0; v < f.size(); ++v) {
      Face r = f;
      r.erase(r.begin() + (long)v);
      ridge_map[r].push_back(i);
    }
  }
  for (const auto& [r, fs] : ridge_map) {
    if (fs.size() != 2) continue;
    const Face& f1 = facets[fs[0]];
    const Face& f2 = facets[fs[1]];
    int s1 = oc.sign.at(f1) * induced_sign(f1, r);
    int s2 = oc.sign.at(f2) * induced_sign(f2, r);
    if (s1 + s2 != 0) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------
SimplicialComplex boundary_simplex(int d) {
  if (d < 1) fail("BadParams", "boundary_simplex needs d >= 1");
  int m = d + 1;
  std::vector<Face> facets;
  for (int skip = 1; skip <= m; ++skip) {
    Face f;
    for (int v = 1; v <= m; ++v)
      if (v != skip) f.push_back(v);
    facets.push_back(std::move(f));
  }
  return raw_complex(m, std::move(facets));
}

SimplicialComplex cross_polytope(int n) {
  if (n < 1) fail("BadParams", "cross_polytope needs n >= 1");
  std::vector<Face> facets;
  for (int mask = 0; mask < (1 << n); ++mask) {
    Face f;
    for (int i = 0; i < n; ++i) f.push_back(2 * i + 1 + ((mask >> i) & 1));
    facets.push_back(std::move(f));
  }
  return raw_complex(2 * n, std::move(facets));
}

SimplicialComplex cyclic_polytope_boundary(int d, int m) {
  if (d < 2 || m < d + 2) fail("BadParams", "cyclic polytope needs m >= d+2, d >= 2");
  // Gale's evenness condition on d-subsets of [m].
  std::vector<Face> facets;
  std::vector<int> idx(d);
  std::iota(idx.begin(), idx.end(), 1);
  while (true) {
    std::vector<bool> in((size_t)m + 1, false);
    for (int v : idx) in[(size_t)v] = true;
    bool ok = true;
    for (int i = 1; i <= m && ok; ++i) {
      if (in[(size_t)i]) continue;
      for (int j = i + 1; j <= m && ok; ++j) {
        if (in[(size_t)j]) continue;
        int cnt = 0;
        for (int k = i + 1; k < j; ++k)
          if (in[(size_t)k]) ++cnt;
        if (cnt % 2 != 0) ok = false;
      }
    }
    if (ok) facets.push_back(Face(idx.begin(), idx.end()));
    int t = d;
    while (t > 0 && idx[(size_t)t - 1] == m - (d - t)) --t;
    if (t == 0) break;
    ++idx[(size_t)t - 1];
    for (int s = t; s < d; ++s) idx[(size_t)s] = idx[(size_t)s - 1] + 1;
  }
  return raw_complex(m, std::move(facets));
}

SimplicialComplex stacked_sphere(int d, int k, uint64_t seed) {
  if (d < 1 || k < 0) fail("BadParams", "stacked_sphere needs d >= 1, k >= 0");
  SimplicialComplex K = boundary_simplex(d);
  Rng rng(seed);
  for (int step = 0; step < k; ++step) {
    const auto& facets = K.facets();
    const Face f = facets[rng.below(facets.size())];
    int nv = K.vertex_count() + 1;
    std::vector<Face> out;
    for (const auto& g : facets)
      if (g != f) out.push_back(g);
    for (size_t v = 0; v < f.size(); ++v) {
      Face g = f;
      g.erase(g.begin() + (long)v);
      out.push_back(face_union(g, {nv}));
    }
    K = raw_complex(nv, std::move(out));
  }
  return K;
}

SimplicialComplex rp2_six_vertices() {
  return raw_complex(6, {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 6}, {1, 4, 5},
                         {2, 3, 4}, {2, 3, 5}, {2, 4, 6}, {3, 5, 6}, {4, 5, 6}});
}

SimplicialComplex complex_from_json_text(const std::string& text) {
  json j = json::parse(text);
  int m = j.at("m").get<int>();
  std::vector<Face> facets = j.at("facets").get<std::vector<Face>>();
  return SimplicialComplex::build_from_facets(m, std::move(facets));
}

std::string complex_to_json_text(const SimplicialComplex& K) {
  json j;
  j["v"] = 1;
  j["m"] = K.vertex_count();
  j["facets"] = K.facets();
  return j.dump();
}

}  // namespace facering
