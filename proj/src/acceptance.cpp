#include "facering/acceptance.hpp"

#include <chrono>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "facering/certify.hpp"
#include "facering/complex.hpp"
#include "facering/fields.hpp"
#include "facering/lsop.hpp"
#include "facering/multipoly.hpp"
#include "facering/ratfunc.hpp"
#include "facering/reduction.hpp"

namespace facering {
namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void reject(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) reject(msg);
}

std::string label_of(const SimplicialComplex& K) {
  return "m=" + std::to_string(K.vertex_count()) + ",d=" + std::to_string(K.d()) +
         ",hash=" + K.hash().substr(0, 8);
}

// ---------------------------------------------------------------------------
// 1. Quotient dimensions: |select_basis(i)| = h_i for every corpus sphere.
// ---------------------------------------------------------------------------
std::string check_quotient_dimensions() {
  Fp::Field big{1000003};
  int complexes = 0, bases = 0;
  for (const auto& K : acceptance_corpus()) {
    auto M = generic_lsop<Fp>(K, big);
    auto h = fh_vectors(K).h;
    Rng rng(501 + (uint64_t)complexes);
    for (int attempt = 0;; ++attempt) {
      try {
        auto sc = specialize_context(K, M, big, rng);
        for (int i = 0; i <= K.d(); ++i) {
          auto basis = select_basis(sc.ctx, i);
          require((int)basis.faces.size() == h[(size_t)i],
                  "dimension mismatch at degree " + std::to_string(i) + " on " +
                      label_of(K));
          ++bases;
        }
        break;
      } catch (const Error&) {
        if (attempt >= 7) throw;
      }
    }
    ++complexes;
  }
  return std::to_string(complexes) + " spheres, " + std::to_string(bases) +
         " graded pieces, all dimensions equal h_i";
}

// ---------------------------------------------------------------------------
// 2. Well-definedness: sign(sigma) * det(M(sigma)) * Psi(x_sigma) agrees
//    across every facet pair, and the pair differences vanish in the quotient,
//    both as exact rational-function identities with fully generic entries.
// ---------------------------------------------------------------------------
std::string check_well_definedness() {
  using P = MultiPoly<Rat>;
  Rat::Field q;
  int pairs = 0;
  std::vector<SimplicialComplex> fixtures = {boundary_simplex(3), boundary_simplex(4),
                                             cross_polytope(3)};
  for (const auto& K : fixtures) {
    auto M = generic_lsop<Rat>(K, q);
    PsiContext<P> ctx(K, M, fresh_replacement<Rat>(K.d(), q), PsiMode::sphere, false);
    auto oc = orient(K);
    const auto& facets = K.facets();
    std::vector<RatFunc<Rat>> vals;
    for (const auto& f : facets) {
      auto v = RatFunc<Rat>(minor_det(M, f)) *
               ctx.psi_monomial(face_exponents(f, K.vertex_count()));
      if (oc.sign.at(f) < 0) v = -v;
      vals.push_back(v);
    }
    for (size_t i = 0; i < facets.size(); ++i)
      for (size_t j = i + 1; j < facets.size(); ++j) {
        require(vals[i] == vals[j], "facet values disagree on " + label_of(K));
        RingElement<RatFunc<Rat>> diff(K.d());
        int si = oc.sign.at(facets[i]), sj = oc.sign.at(facets[j]);
        diff.add(K, face_exponents(facets[i], K.vertex_count()),
                 RatFunc<Rat>(minor_det(M, facets[i])) *
                     RatFunc<Rat>(P(q.from_int(si))));
        diff.add(K, face_exponents(facets[j], K.vertex_count()),
                 -RatFunc<Rat>(minor_det(M, facets[j])) *
                     RatFunc<Rat>(P(q.from_int(sj))));
        require(is_zero(ctx, diff),
                "oriented facet difference is nonzero in the quotient on " + label_of(K));
        ++pairs;
      }
  }
  return std::to_string(pairs) + " facet pairs agree symbolically";
}

// ---------------------------------------------------------------------------
// 3. Oracle equivalence: the facet-star formula matches the elimination
//    oracle on every top-degree monomial, at random specializations over
//    F_{2^20} and F_101.
// ---------------------------------------------------------------------------
template <class BaseK, class Fld>
int oracle_compare(const SimplicialComplex& K, const typename BaseK::Field& base,
                   const Fld& fld, Rng& rng, int specializations) {
  auto M = generic_lsop<BaseK>(K, base);
  int checked = 0;
  for (int s = 0; s < specializations; ++s) {
    std::map<ExpVec, decltype(fld.zero())> table;
    LsopMatrix<decltype(fld.zero())> S = detail::blank_lsop(K.d(), K.vertex_count(), fld.zero());
    for (int attempt = 0;; ++attempt) {
      require(attempt < 64, "no usable specialization found");
      try {
        auto pt = random_point(M, {}, fld, rng);
        S = specialize_lsop(M, pt, fld);
        table = oracle_psi_table(K, S);
        break;
      } catch (const Error&) {
      }
    }
    for (int attempt = 0;; ++attempt) {
      require(attempt < 64, "no usable replacement vector found");
      try {
        std::vector<decltype(fld.zero())> repl;
        for (int i = 0; i < K.d(); ++i) repl.push_back(fld.random(rng));
        PsiContext<decltype(fld.zero())> ctx(K, S, std::move(repl), PsiMode::sphere,
                                             false);
        int local = 0;
        for (const auto& [e, want] : table) {
          require(ctx.psi_monomial(e) == want, "oracle mismatch on " + label_of(K));
          ++local;
        }
        checked += local;
        break;
      } catch (const Error&) {
      }
    }
  }
  return checked;
}

std::string check_oracle_equivalence() {
  GF2k::Field f2k(20);
  Fp::Field f2{2}, f101{101};
  Rat::Field q;
  int complexes = 0;
  long long checked = 0;
  for (const auto& K : acceptance_corpus()) {
    if (K.vertex_count() > 8) continue;
    Rng rng(1700 + (uint64_t)complexes);
    checked += oracle_compare<Fp>(K, f2, f2k, rng, 20);
    checked += oracle_compare<Rat>(K, q, f101, rng, 20);
    ++complexes;
  }
  return std::to_string(complexes) + " complexes, " + std::to_string(checked) +
         " monomial values, zero mismatches";
}

// ---------------------------------------------------------------------------
// 4. Characteristic-2 certification across the corpus, with re-verification
//    and the recorded failure bound at most 2^-40.
// ---------------------------------------------------------------------------
std::string check_char2_certification() {
  int count = 0;
  for (const auto& K : acceptance_corpus()) {
    if (K.vertex_count() > 10 || K.d() > 5) continue;
    auto cert = aniso_char2_certificate(K, 0);
    require(cert.status == "ANISOTROPIC", "status " + cert.status + " on " + label_of(K));
    require(cert.error_bound_log2 <= -40,
            "failure bound above 2^-40 on " + label_of(K));
    require(reverify_certificate(K, cert), "witness failed re-verification on " +
                                               label_of(K));
    ++count;
  }
  return std::to_string(count) + " certificates, all ANISOTROPIC and re-verified";
}

// ---------------------------------------------------------------------------
// 5. Certificate status is constant along random bistellar walks.
// ---------------------------------------------------------------------------
std::string check_move_invariance() {
  std::vector<SimplicialComplex> starts = {cross_polytope(3),
                                           cyclic_polytope_boundary(4, 7)};
  int walks = 0;
  for (const auto& K : starts)
    for (uint64_t seed = 0; seed < 5; ++seed) {
      auto rep = move_invariance_experiment(K, 5, seed);
      require(rep.constant, "status changed along the walk from " + label_of(K) +
                                " at seed " + std::to_string(seed));
      require(!rep.statuses.empty() && rep.statuses.front() == "ANISOTROPIC",
              "unexpected initial status on " + label_of(K));
      ++walks;
    }
  return std::to_string(walks) + " walks of 5 moves, status constant on each";
}

// ---------------------------------------------------------------------------
// 9. Lefschetz ranks on every 2-sphere of the corpus.
// ---------------------------------------------------------------------------
std::string check_lefschetz_two_spheres() {
  int checks = 0, spheres = 0;
  for (const auto& K : acceptance_corpus()) {
    if (K.d() != 3) continue;
    for (uint64_t seed = 0; seed < 5; ++seed) {
      auto rep = lefschetz_check(K, seed);
      require(rep.holds, "rank deficiency on " + label_of(K) + " at seed " +
                             std::to_string(seed));
      ++checks;
    }
    ++spheres;
  }
  return std::to_string(spheres) + " 2-spheres x 5 specializations, full ranks";
}

// ---------------------------------------------------------------------------
// 10. Algebra layer: parity-decomposition roundtrip, derivative of squares in
//     characteristic 2, and the degree / leading-coefficient law for sums of
//     rational functions.
// ---------------------------------------------------------------------------
MultiPoly<Fp> random_poly(const Fp::Field& fld, Rng& rng, int num_vars, int max_terms,
                          uint32_t max_exp) {
  auto f = MultiPoly<Fp>::zero(fld);
  int terms = 1 + (int)rng.below((uint64_t)max_terms);
  for (int t = 0; t < terms; ++t) {
    auto mono = MultiPoly<Fp>::one(fld);
    for (int v = 1; v <= num_vars; ++v) {
      uint32_t e = (uint32_t)rng.below(max_exp + 1);
      if (e == 0) continue;
      auto x = MultiPoly<Fp>::var(VarId::b(v), fld);
      for (uint32_t k = 0; k < e; ++k) mono = mono * x;
    }
    f += mono * MultiPoly<Fp>(fld.random(rng));
  }
  return f;
}

MultiPoly<Fp> random_univariate(const Fp::Field& fld, Rng& rng, VarId v,
                                uint32_t max_deg) {
  while (true) {
    auto f = MultiPoly<Fp>::zero(fld);
    uint32_t deg = (uint32_t)rng.below(max_deg + 1);
    auto x = MultiPoly<Fp>::var(v, fld);
    auto pow = MultiPoly<Fp>::one(fld);
    for (uint32_t k = 0; k <= deg; ++k) {
      f += pow * MultiPoly<Fp>(fld.random(rng));
      pow = pow * x;
    }
    if (!f.is_zero()) return f;
  }
}

std::string check_algebra_layer() {
  Fp::Field f2{2};
  Rng rng(42);

  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(f2, rng, 5, 6, 4);
    require(frobenius_decompose(f).reassemble() == f,
            "parity roundtrip failed at trial " + std::to_string(trial));
  }

  for (int trial = 0; trial < 1000; ++trial) {
    auto f = random_poly(f2, rng, 5, 6, 4);
    auto sq = f * f;
    for (VarId v : sq.variables())
      require(sq.derivative(v).is_zero(),
              "derivative of a square is nonzero at trial " + std::to_string(trial));
  }

  VarId v = VarId::b(1);
  for (int trial = 0; trial < 1000; ++trial) {
    int count = 2 + (int)rng.below(3);
    RatFunc<Fp> alpha(MultiPoly<Fp>::zero(f2), MultiPoly<Fp>::one(f2));
    std::optional<int> max_deg;
    RatFunc<Fp> lead_sum(MultiPoly<Fp>::zero(f2), MultiPoly<Fp>::one(f2));
    std::vector<RatFunc<Fp>> parts;
    for (int i = 0; i < count; ++i) {
      RatFunc<Fp> phi(random_univariate(f2, rng, v, 4), random_univariate(f2, rng, v, 3));
      parts.push_back(phi);
      alpha += phi;
      auto dl = degree_lc(phi, v);
      if (!max_deg || *dl.deg > *max_deg) max_deg = dl.deg;
    }
    for (const auto& phi : parts) {
      auto dl = degree_lc(phi, v);
      if (dl.deg == max_deg) lead_sum += dl.leading;
    }
    auto da = degree_lc(alpha, v);
    if (alpha.is_zero()) {
      require(lead_sum.is_zero(), "zero sum with nonzero top-degree leading sum");
    } else {
      require(da.deg && *da.deg <= *max_deg,
              "degree of the sum exceeds the maximum at trial " + std::to_string(trial));
      require((*da.deg == *max_deg) == !lead_sum.is_zero(),
              "degree law equality condition failed at trial " + std::to_string(trial));
      if (*da.deg == *max_deg)
        require(da.leading == lead_sum,
                "leading coefficient of the sum is not the top-degree sum");
    }
  }

  return "3000 randomized algebra checks, zero failures";
}

CriterionResult timed(int id, const std::string& name,
                      const std::function<std::string()>& body) {
  CriterionResult r;
  r.id = id;
  r.name = name;
  auto t0 = Clock::now();
  try {
    r.detail = body();
    r.pass = true;
  } catch (const std::exception& ex) {
    r.pass = false;
    r.detail = ex.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

}  // namespace

std::vector<SimplicialComplex> acceptance_corpus() {
  std::vector<SimplicialComplex> out;
  for (int k = 2; k <= 6; ++k) out.push_back(boundary_simplex(k));
  for (int n = 1; n <= 4; ++n) out.push_back(cross_polytope(n));
  for (int m = 6; m <= 8; ++m) out.push_back(cyclic_polytope_boundary(4, m));
  for (int s = 0; s < 10; ++s)
    out.push_back(stacked_sphere(3 + s % 3, 2 + s % 4, 9100 + (uint64_t)s));
  return out;
}

std::vector<CriterionResult> run_acceptance_suite() {
  std::vector<CriterionResult> out;
  out.push_back(timed(1, "quotient dimensions equal the h-vector",
                      check_quotient_dimensions));
  out.push_back(timed(2, "canonical function is facet-independent",
                      check_well_definedness));
  out.push_back(timed(3, "facet-star formula matches the elimination oracle",
                      check_oracle_equivalence));
  out.push_back(timed(4, "characteristic-2 certificates across the corpus",
                      check_char2_certification));
  out.push_back(timed(5, "certificate status invariant under bistellar moves",
                      check_move_invariance));
  out.push_back(timed(6, "exact identity suite",
                      [] { return identity_suite().all_pass()
                               ? std::string("all identities hold exactly")
                               : (reject("an identity failed"), std::string()); }));
  out.push_back(timed(7, "differential operator separates basis squares", [] {
    return diffop_experiment().all_pass()
               ? std::string("operator nonzero on the distinguished square only")
               : (reject("differential-operator check failed"), std::string());
  }));
  out.push_back(timed(8, "degree and leading-coefficient argument", [] {
    return degree_argument_experiment(0).all_pass()
               ? std::string("all degree bounds and leading values match")
               : (reject("degree-argument check failed"), std::string());
  }));
  out.push_back(timed(9, "Lefschetz ranks on corpus 2-spheres",
                      check_lefschetz_two_spheres));
  out.push_back(timed(10, "algebra layer randomized laws", check_algebra_layer));
  return out;
}

std::string acceptance_to_json_text(const std::vector<CriterionResult>& results) {
  nlohmann::ordered_json j;
  j["v"] = 1;
  bool all = true;
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["seconds"] = r.seconds;
    c["detail"] = r.detail;
    j["criteria"].push_back(c);
    all = all && r.pass;
  }
  j["all_pass"] = all;
  return j.dump(2);
}

}  // namespace facering
