#pragma once

// Executable certificates and experiments on Artinian reductions of homology
// spheres: exact characteristic-2 generic-anisotropy certification (one-sided
// specialization witnesses, exact kernel fallback), randomized anisotropy
// probes in other characteristics, hard-Lefschetz rank checks, bistellar-move
// invariance runs, the differential-operator computation on the structured
// b-variable l.s.o.p., and the degree/leading-coefficient computation on
// cones over even-dimensional spheres.

#include <string>
#include <utility>
#include <vector>

#include "facering/complex.hpp"
#include "facering/moves.hpp"
#include "facering/reduction.hpp"

namespace facering {

// ---------------------------------------------------------------------------
// Characteristic-2 generic-anisotropy certificate.
//
// Strategy: anisotropy of the middle degree n = floor(d/2) over the generic
// field k = F_2(matrix entries) is equivalent to linear independence, over
// the subfield of squares k^2, of the values Psi(x_tau * mu_i^2) (tau ranges
// over the complementary squarefree degree; empty for even d). After scaling
// row i by the square of its common denominator, every entry becomes the
// polynomial N*D, whose parity (Frobenius) decomposition N*D = sum_e q_e^2 e
// has an iff rank criterion: independence over k^2 <=> the matrix [q_{i,e}]
// has full row rank over k. A specialization point where the evaluated rank
// is full certifies full symbolic rank exactly (one-sided). Evaluation is
// done in the quotient ring F_{2^k}[x_v]/(x_v^2 - p_v^2), where polynomial
// squares collapse to the scalars q_e(p)^2, without expanding N*D.
// ---------------------------------------------------------------------------
struct Certificate {
  static constexpr int kExactBound = -1000000;  // stands in for -infinity

  std::string complex_hash;
  uint64_t characteristic = 2;
  int degree = 0;  // n = floor(d/2), the certified degree
  std::string status;  // ANISOTROPIC | NOT_ANISOTROPIC | INCONCLUSIVE
  std::vector<Face> basis;
  int field_bits = 20;
  uint64_t seed = 0;
  // log2 of the failure probability of the verdict; kExactBound when the
  // verdict carries an exact witness.
  int error_bound_log2 = 0;

  // ANISOTROPIC witness: the specialization point, the generator variables of
  // the parity decomposition, the column keys (complementary-face index,
  // squarefree generator mask) of a nonsingular s x s minor, and its
  // determinant (bit pattern in F_{2^k}).
  std::vector<std::pair<std::string, uint64_t>> point;  // display names
  std::vector<std::pair<uint32_t, uint64_t>> point_ids;
  std::vector<std::string> generators;  // display names
  std::vector<uint32_t> generator_ids;
  std::vector<std::pair<int, uint64_t>> witness_cols;
  uint64_t witness_minor_bits = 0;

  // NOT_ANISOTROPIC witness: an exact isotropic coefficient vector, verified
  // by symbolic substitution before the certificate is emitted.
  std::vector<std::string> kernel;

  std::string to_json_text() const;
};

Certificate aniso_char2_certificate(const SimplicialComplex& K, uint64_t seed,
                                    int field_bits = 20, int trials = 100);

// Recomputes the parity rows at the stored point and checks the stored minor
// is reproduced and nonzero. Exact; returns false on any mismatch.
bool reverify_certificate(const SimplicialComplex& K, const Certificate& cert);

// ---------------------------------------------------------------------------
// Randomized anisotropy probe in characteristic p (p = 0 means the rationals).
// ---------------------------------------------------------------------------
struct ProbeReport {
  uint64_t characteristic = 0;
  int trials = 0;
  uint64_t seed = 0;
  std::vector<std::string> counterexamples;  // symbolically confirmed only
  std::string message;
  std::string to_json_text() const;
};

ProbeReport aniso_random_probe(const SimplicialComplex& K, uint64_t characteristic,
                               int trials, uint64_t seed);
// Probe with a caller-supplied specialized matrix; rejects non-l.s.o.p. input.
ProbeReport aniso_random_probe(const SimplicialComplex& K, const LsopMatrix<Fp>& M,
                               int trials, uint64_t seed);

// ---------------------------------------------------------------------------
// Hard-Lefschetz rank check at a random specialization.
// ---------------------------------------------------------------------------
struct LefschetzReport {
  std::string complex_hash;
  uint64_t characteristic = 0;
  uint64_t seed = 0;
  std::vector<uint64_t> omega;               // coefficients of the linear form
  std::vector<std::pair<int, int>> ranks;    // (degree i, rank of the map)
  std::vector<int> expected;                 // h_i for i <= d/2
  bool holds = false;
  std::string to_json_text() const;
};

LefschetzReport lefschetz_check(const SimplicialComplex& K, uint64_t seed,
                                uint64_t characteristic = 1000003);

// ---------------------------------------------------------------------------
// Certificate status along a random bistellar walk.
// ---------------------------------------------------------------------------
struct MoveInvarianceReport {
  std::vector<std::string> statuses;  // start + one per move
  bool constant = false;
  MoveLog log;
  std::string to_json_text() const;
};

MoveInvarianceReport move_invariance_experiment(const SimplicialComplex& K,
                                                int num_moves, uint64_t seed,
                                                int field_bits = 20);

// ---------------------------------------------------------------------------
// Differential-operator experiment on the structured b-variable l.s.o.p.
// P = d^{q+1} / (db_{2n-q} ... db_{2n}) applied to the symbolic values
// Psi(x_{sigma_i}^2) over F_2: nonzero exactly on the distinguished monomial
// x_1...x_n.
// ---------------------------------------------------------------------------
struct DiffOpReport {
  int n = 0, q = 0;
  std::vector<Face> basis;            // distinguished monomial first
  bool square_free_psi_is_one = false;   // Psi(x_1...x_{2n}) = 1
  bool fact_c_value = false;             // Psi(x_{sigma_1}^2) = prod b / prod b
  bool fact_c_ring_identity = false;     // x_{sigma_1}^2 = (...) x_1...x_{2n}
  bool p_nonzero_on_distinguished = false;
  bool p_kills_others = false;
  bool all_pass() const {
    return square_free_psi_is_one && fact_c_value && fact_c_ring_identity &&
           p_nonzero_on_distinguished && p_kills_others;
  }
  std::string to_json_text() const;
};

// `delta` must contain sigma = [2n+1] \ [q+1] with link equal to the boundary
// of tau = [q+1] (the move is applied internally); see theorem41_lsop.
DiffOpReport diffop_experiment(const SimplicialComplex& delta, int q, int n);
// The n = 2, q = 1 fixture: a suspended tetrahedron boundary.
DiffOpReport diffop_experiment();

// ---------------------------------------------------------------------------
// Degree / leading-coefficient experiment on the cone over the octahedron,
// with a single symbolic entry a[1][1]; plus the suspension-isomorphism
// pairing checks.
// ---------------------------------------------------------------------------
struct DegreeArgumentReport {
  bool sigma_sigma_degree_one = false;   // deg_{a11} Psi(x_sigma_i x_sigma_j) = 1
  bool sigma_sigma_leading = false;      // leading coeff = +- Psi_link value
  bool tau_tau_bounded = false;          // deg <= 0
  bool sigma_tau_bounded = false;        // deg <= 0
  bool suspension_proportional = false;  // Psi_cone(x_v x_F) = c * Psi_base(x_F)
  bool suspension_substitution = false;  // x_v^2 = x_v * (-sum a_1j x_j)
  std::vector<int> recorded_signs;       // the +- observed per sigma-sigma pair
  bool all_pass() const {
    return sigma_sigma_degree_one && sigma_sigma_leading && tau_tau_bounded &&
           sigma_tau_bounded && suspension_proportional && suspension_substitution;
  }
  std::string to_json_text() const;
};

DegreeArgumentReport degree_argument_experiment(uint64_t seed);

// ---------------------------------------------------------------------------
// Exact symbolic identity suite on fixed fixtures.
// ---------------------------------------------------------------------------
struct IdentityReport {
  bool facet_identity = false;        // Psi(x_sigma) = +-1/det M(sigma), corpus facets
  bool zero_move_fraction = false;    // pentagon fixture fraction identity
  bool zero_move_ring_identity = false;
  bool structured_det_one = false;    // det M([2n]) = 1 and Psi(x_1..x_{2n}) = 1
  bool structured_square_value = false;
  std::vector<int> facet_signs;       // orientation signs observed
  int zero_move_sign = 0;
  bool all_pass() const {
    return facet_identity && zero_move_fraction && zero_move_ring_identity &&
           structured_det_one && structured_square_value;
  }
  std::string to_json_text() const;
};

IdentityReport identity_suite();

// Fixture builders shared with tests and the CLI.
SimplicialComplex suspended_tetrahedron_boundary();  // move faces at [5]\[2], [2]
SimplicialComplex four_cycle_with_facet_12();        // cycle 1-2-3-4

}  // namespace facering
