#pragma once

// Simplicial-complex combinatorics: faces, f/h-vectors, links, stars, joins,
// suspension, orientation, homology over prime fields (and Q), sphere/ball
// recognition, and the generator corpus used throughout the experiments.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "facering/util.hpp"

namespace facering {

// A face: strictly increasing vertex ids >= 1. {} is the empty face.
using Face = std::vector<int>;

Face face_union(const Face& a, const Face& b);
Face face_minus(const Face& a, const Face& b);
bool face_subset(const Face& a, const Face& b);
bool faces_disjoint(const Face& a, const Face& b);
std::string face_str(const Face& f);

class SimplicialComplex {
public:
  SimplicialComplex() = default;

  // Inclusion-maximal facets retained. Throws EmptyInput / VertexOutOfRange.
  static SimplicialComplex build_from_facets(int m, std::vector<Face> facets);

  int vertex_count() const { return m_; }       // ids live in [1, m]
  int dim() const { return dim_; }              // -1 for {emptyset}
  int d() const { return dim_ + 1; }            // algebraic dimension parameter
  bool pure() const { return pure_; }
  bool is_cone() const;                         // some vertex in every facet
  const std::vector<Face>& facets() const { return facets_; }
  std::vector<int> used_vertices() const;
  bool all_vertices_used() const;

  bool contains(const Face& f) const;

  // All i-faces, -1 <= i <= dim. Lexicographic order.
  std::vector<Face> faces_of_dim(int i) const;
  // All faces of all dimensions including {}.
  std::vector<Face> all_faces() const;
  size_t total_face_count() const;

  // Canonical JSON {"m":..,"facets":[[..],..]} and its SHA-256.
  std::string canonical_json() const;
  std::string hash() const;

  bool operator==(const SimplicialComplex& o) const {
    return m_ == o.m_ && facets_ == o.facets_;
  }

private:
  int m_ = 0;
  int dim_ = -2;
  bool pure_ = true;
  std::vector<Face> facets_;  // sorted lexicographically, each sorted
  friend SimplicialComplex raw_complex(int m, std::vector<Face> facets);
};

// Construction bypassing maximality filtering (facet list already maximal).
SimplicialComplex raw_complex(int m, std::vector<Face> facets);

struct FHVectors {
  std::vector<long long> f;  // f_0..f_{d-1}
  std::vector<long long> h;  // h_0..h_d
  bool degenerate_cone = false;
};

FHVectors fh_vectors(const SimplicialComplex& K);

// Link/star with the link's explicit vertex injection back into the parent.
struct SubcomplexWithMap {
  SimplicialComplex complex;
  std::vector<int> to_parent;  // to_parent[i-1] = parent id of vertex i
};

SubcomplexWithMap link(const SimplicialComplex& K, const Face& sigma);
SimplicialComplex star(const SimplicialComplex& K, const Face& sigma);
// Link without re-indexing: vertex ids stay those of K.
SimplicialComplex link_raw(const SimplicialComplex& K, const Face& sigma);

// Join on the same id universe; vertex sets must be disjoint (VertexClash).
SimplicialComplex join(const SimplicialComplex& K, const SimplicialComplex& K2);
// Join after shifting K2's ids above K's.
SimplicialComplex join_shifted(const SimplicialComplex& K, const SimplicialComplex& K2);
// Cone {m+1} * K and suspension with apexes m+1, m+2.
SimplicialComplex cone(const SimplicialComplex& K);
SimplicialComplex suspension(const SimplicialComplex& K);

// Reduced Betti numbers over F_p (p prime) or Q (p = 0), indices 0..dim.
std::vector<int> homology_ranks(const SimplicialComplex& K, uint64_t p);

bool is_homology_sphere(const SimplicialComplex& K, uint64_t p);
bool is_homology_ball(const SimplicialComplex& K, uint64_t p);

// Closure of the ridges lying in exactly one facet.
SimplicialComplex boundary_complex(const SimplicialComplex& K);
// Faces of K not in boundary_complex(K).
std::vector<Face> interior_faces(const SimplicialComplex& K, int card);

struct OrientedComplex {
  SimplicialComplex complex;
  std::map<Face, int> sign;  // facet -> +-1 relative to sorted vertex order
  Face root;                 // facet fixed to +1
};

// Coherent orientation by propagation across ridges. Throws NonOrientable /
// DisconnectedDualGraph. Optional root facet selects the +1 representative.
OrientedComplex orient(const SimplicialComplex& K,
                       const std::optional<Face>& root = std::nullopt);
bool orientation_coherent(const OrientedComplex& oc);

// Generators.
SimplicialComplex boundary_simplex(int d);          // boundary of d-simplex, m = d+1
SimplicialComplex cross_polytope(int n);            // m = 2n, antipodal pairs (2i-1, 2i)
SimplicialComplex cyclic_polytope_boundary(int d, int m);  // Gale evenness
SimplicialComplex stacked_sphere(int d, int k, uint64_t seed);
SimplicialComplex rp2_six_vertices();               // minimal RP^2, test fixture

// JSON round-trip ({"v":1,"m":..,"facets":..}).
SimplicialComplex complex_from_json_text(const std::string& text);
std::string complex_to_json_text(const SimplicialComplex& K);

}  // namespace facering
