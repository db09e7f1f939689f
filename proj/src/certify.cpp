#include "facering/certify.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace facering {

using json = nlohmann::ordered_json;

namespace {

using P2 = MultiPoly<Fp>;   // polynomials over F_2 (or another prime field)
using R2 = RatFunc<Fp>;

Fp::Field f2_field() { return Fp::Field{2}; }

std::string var_name(uint32_t id) { return VarId{id}.str(); }

// -----------------------------------------------------------------------
// Quotient ring F_{2^k}[x_g : g in gens] / (x_g^2 - p_g^2); elements are
// multilinear, stored as sorted mask -> coefficient. Squares of arbitrary
// ring elements collapse to scalars, which is what makes the parity-class
// coefficients of a polynomial recoverable by plain evaluation.
// -----------------------------------------------------------------------
struct ParityRing {
  GF2k::Field fld;
  std::vector<uint32_t> gens;            // sorted variable ids
  std::map<uint32_t, int> gen_index;
  std::map<uint32_t, GF2k> point;        // every variable, including gens
  std::vector<GF2k> gen_sq;              // p_g^2 per generator

  using Elem = std::map<uint64_t, GF2k>;  // squarefree mask -> coefficient

  ParityRing(GF2k::Field f, std::vector<uint32_t> g, std::map<uint32_t, GF2k> pt)
      : fld(f), gens(std::move(g)), point(std::move(pt)) {
    std::sort(gens.begin(), gens.end());
    if (gens.size() > 62) fail("CostGuard", "too many parity generators");
    for (size_t i = 0; i < gens.size(); ++i) {
      gen_index[gens[i]] = (int)i;
      GF2k p = point.at(gens[i]);
      gen_sq.push_back(p * p);
    }
  }

  static void add_term(Elem& e, uint64_t mask, const GF2k& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = e.emplace(mask, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) e.erase(it);
    }
  }

  Elem eval(const P2& f) const {
    Elem r;
    for (const auto& [mono, coeff] : f.terms()) {
      GF2k c = fld.from_int((long long)coeff.value());
      uint64_t mask = 0;
      for (const auto& [v, k] : mono.e) {
        auto g = gen_index.find(v);
        if (g != gen_index.end()) {
          if (k & 1) mask |= (uint64_t(1) << g->second);
          for (uint32_t i = 0; i < k / 2; ++i) c = c * gen_sq[(size_t)g->second];
        } else {
          GF2k p = point.at(v);
          for (uint32_t i = 0; i < k; ++i) c = c * p;
        }
      }
      add_term(r, mask, c);
    }
    return r;
  }

  GF2k eval_scalar(const P2& f) const { return specialize(f, point, fld); }

  Elem one() const { return Elem{{0, fld.one()}}; }

  Elem mul(const Elem& a, const Elem& b) const {
    if (a.size() > b.size()) return mul(b, a);
    Elem r;
    for (const auto& [m1, c1] : a)
      for (const auto& [m2, c2] : b) {
        GF2k c = c1 * c2;
        uint64_t overlap = m1 & m2;
        while (overlap) {
          int bit = std::countr_zero(overlap);
          overlap &= overlap - 1;
          c = c * gen_sq[(size_t)bit];
        }
        add_term(r, m1 ^ m2, c);
      }
    return r;
  }

  void scale(Elem& a, const GF2k& c) const {
    if (c.is_zero()) {
      a.clear();
      return;
    }
    for (auto& [m, v] : a) v = v * c;
  }
};

// -----------------------------------------------------------------------
// Shared symbolic setup for the certificate: normalized l.s.o.p. over F_2,
// the minors feeding the star formula, and per-(basis row, complementary
// face) factor lists of Psi(x_tau * mu_i^2) written as N / D.
// -----------------------------------------------------------------------
struct CertEngine {
  SimplicialComplex K;
  int d, m, n;
  LsopMatrix<P2> M;
  std::vector<P2> repl;
  std::vector<Face> basis;
  std::vector<Face> taus;

  std::map<Face, P2> minor_cache;
  std::map<std::pair<Face, int>, P2> rminor_cache;

  struct Cell {
    bool alive = false;
    // parallel per-facet factor lists; factors are pointers into the caches
    std::vector<std::vector<const P2*>> num_factors;
    std::vector<std::vector<const P2*>> den_factors;
    long deg_den = 0;  // degree bound of D = prod den
    long deg_num = 0;  // degree bound of N
  };
  std::vector<std::vector<Cell>> cells;  // [row i][tau t]
  long det_degree_bound = 0;

  const P2& minor_of(const Face& F) {
    auto it = minor_cache.find(F);
    if (it != minor_cache.end()) return it->second;
    return minor_cache.emplace(F, minor_det(M, F)).first->second;
  }
  const P2& rminor_of(const Face& F, int v) {
    auto key = std::make_pair(F, v);
    auto it = rminor_cache.find(key);
    if (it != rminor_cache.end()) return it->second;
    return rminor_cache.emplace(key, minor_replaced(M, F, v, repl)).first->second;
  }

  CertEngine(const SimplicialComplex& Kx, std::vector<Face> basis_faces)
      : K(Kx), d(Kx.d()), m(Kx.vertex_count()), n(Kx.d() / 2),
        M(normalized_lsop<Fp>(Kx, f2_field())),
        repl(fresh_replacement<Fp>(Kx.d(), f2_field())), basis(std::move(basis_faces)) {
    if (d % 2 == 0)
      taus = {Face{}};
    else
      taus = face_monomial_span(K, d - 2 * n);

    size_t s = basis.size();
    cells.assign(s, std::vector<Cell>(taus.size()));
    long max_row_bound = 0;
    for (size_t i = 0; i < s; ++i) {
      std::vector<long> cell_den(taus.size(), 0);
      std::vector<long> cell_num(taus.size(), 0);
      for (size_t t = 0; t < taus.size(); ++t) {
        ExpVec e((size_t)m, 0);
        for (int v : basis[i]) e[(size_t)v - 1] += 2;
        for (int v : taus[t]) e[(size_t)v - 1] += 1;
        Face supp = support_of(e);
        if (!K.contains(supp)) continue;
        Cell& c = cells[i][t];
        c.alive = true;
        for (const auto& F : K.facets()) {
          if (!face_subset(supp, F)) continue;
          std::vector<const P2*> nf, df;
          for (int v : supp)
            for (int k = 1; k < e[(size_t)v - 1]; ++k) nf.push_back(&rminor_of(F, v));
          df.push_back(&minor_of(F));
          for (int v : face_minus(F, supp)) df.push_back(&rminor_of(F, v));
          c.num_factors.push_back(std::move(nf));
          c.den_factors.push_back(std::move(df));
        }
        long den_bound = 0, num_max = 0;
        for (size_t f = 0; f < c.den_factors.size(); ++f) {
          den_bound += (long)d * (long)c.den_factors[f].size();
          num_max = std::max(num_max, (long)d * (long)c.num_factors[f].size());
        }
        c.deg_den = den_bound;
        c.deg_num = num_max + den_bound;  // each summand of N carries D/den_F
        cell_den[t] = c.deg_den;
        cell_num[t] = c.deg_num;
      }
      long total_den = 0;
      for (long b : cell_den) total_den += b;
      long row_bound = 0;
      for (size_t t = 0; t < taus.size(); ++t)
        if (cells[i][t].alive)
          row_bound = std::max(row_bound,
                               cell_num[t] + cell_den[t] + 2 * (total_den - cell_den[t]));
      max_row_bound = std::max(max_row_bound, row_bound);
    }
    det_degree_bound = std::max<long>(1, (long)basis.size() * ((max_row_bound + 1) / 2));
  }

  std::vector<uint32_t> all_vars() const {
    std::set<uint32_t> vs;
    for (const auto& [f, p] : minor_cache)
      for (VarId v : p.variables()) vs.insert(v.id);
    for (const auto& [k, p] : rminor_cache)
      for (VarId v : p.variables()) vs.insert(v.id);
    for (const auto& r : repl)
      for (VarId v : r.variables()) vs.insert(v.id);
    return {vs.begin(), vs.end()};
  }

  // Row i over columns (tau index, mask): the parity-ring image of
  // N_{i,t} * D_{i,t} * (prod_{t' != t} D_{i,t'}(p))^2.
  std::map<std::pair<int, uint64_t>, GF2k> row_at(const ParityRing& ring, size_t i) const {
    std::map<std::pair<int, uint64_t>, GF2k> out;
    // scalar denominator values per tau for the cross-column square factors
    std::vector<GF2k> dval(taus.size(), ring.fld.one());
    for (size_t t = 0; t < taus.size(); ++t) {
      if (!cells[i][t].alive) continue;
      GF2k v = ring.fld.one();
      for (const auto& df : cells[i][t].den_factors)
        for (const P2* f : df) v = v * ring.eval_scalar(*f);
      dval[t] = v;
    }
    for (size_t t = 0; t < taus.size(); ++t) {
      const Cell& c = cells[i][t];
      if (!c.alive) continue;
      size_t nf = c.den_factors.size();
      std::vector<ParityRing::Elem> dens(nf);
      for (size_t f = 0; f < nf; ++f) {
        ParityRing::Elem acc = ring.one();
        for (const P2* p : c.den_factors[f]) acc = ring.mul(acc, ring.eval(*p));
        dens[f] = std::move(acc);
      }
      // prefix/suffix products of the per-facet denominators
      std::vector<ParityRing::Elem> pre(nf + 1), suf(nf + 1);
      pre[0] = ring.one();
      suf[nf] = ring.one();
      for (size_t f = 0; f < nf; ++f) pre[f + 1] = ring.mul(pre[f], dens[f]);
      for (size_t f = nf; f > 0; --f) suf[f - 1] = ring.mul(suf[f], dens[f - 1]);
      ParityRing::Elem N;
      for (size_t f = 0; f < nf; ++f) {
        ParityRing::Elem term = ring.mul(pre[f], suf[f + 1]);
        for (const P2* p : c.num_factors[f]) term = ring.mul(term, ring.eval(*p));
        for (const auto& [mask, coeff] : term) ParityRing::add_term(N, mask, coeff);
      }
      ParityRing::Elem entry = ring.mul(N, pre[nf]);  // pre[nf] = D_{i,t}
      GF2k sq = ring.fld.one();
      for (size_t t2 = 0; t2 < taus.size(); ++t2)
        if (t2 != t) sq = sq * dval[t2];
      ring.scale(entry, sq * sq);
      for (const auto& [mask, coeff] : entry) {
        if (coeff.is_zero()) continue;
        auto [it, fresh] = out.emplace(std::make_pair((int)t, mask), coeff);
        if (!fresh) it->second += coeff;
      }
    }
    for (auto it = out.begin(); it != out.end();)
      it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }
};

// Dense Gaussian elimination over F_{2^k} with pivot-column bookkeeping.
size_t gf2k_rank(std::vector<std::vector<GF2k>> A, std::vector<size_t>* pivots) {
  if (pivots) pivots->clear();
  if (A.empty()) return 0;
  size_t rows = A.size(), cols = A[0].size(), rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t piv = rank;
    while (piv < rows && A[piv][col].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(A[rank], A[piv]);
    GF2k inv = A[rank][col].inv();
    for (size_t c = col; c < cols; ++c) A[rank][c] = A[rank][c] * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][col].is_zero()) continue;
      GF2k f = A[r][col];
      for (size_t c = col; c < cols; ++c) A[r][c] = A[r][c] - f * A[rank][c];
    }
    if (pivots) pivots->push_back(col);
    ++rank;
  }
  return rank;
}

GF2k gf2k_det(std::vector<std::vector<GF2k>> A, const GF2k::Field& fld) {
  size_t nr = A.size();
  GF2k det = fld.one();
  for (size_t col = 0; col < nr; ++col) {
    size_t piv = col;
    while (piv < nr && A[piv][col].is_zero()) ++piv;
    if (piv == nr) return fld.zero();
    std::swap(A[col], A[piv]);  // char 2: swaps do not change the sign
    det = det * A[col][col];
    GF2k inv = A[col][col].inv();
    for (size_t r = col + 1; r < nr; ++r) {
      if (A[r][col].is_zero()) continue;
      GF2k f = A[r][col] * inv;
      for (size_t c = col; c < nr; ++c) A[r][c] = A[r][c] - f * A[col][c];
    }
  }
  return det;
}

// Assemble the s x (live columns) matrix from sparse rows.
struct AssembledMatrix {
  std::vector<std::pair<int, uint64_t>> col_keys;
  std::vector<std::vector<GF2k>> rows;
};

AssembledMatrix assemble(const CertEngine& eng, const ParityRing& ring) {
  AssembledMatrix out;
  std::vector<std::map<std::pair<int, uint64_t>, GF2k>> sparse;
  std::set<std::pair<int, uint64_t>> keys;
  for (size_t i = 0; i < eng.basis.size(); ++i) {
    sparse.push_back(eng.row_at(ring, i));
    for (const auto& [k, v] : sparse.back()) keys.insert(k);
  }
  out.col_keys.assign(keys.begin(), keys.end());
  std::map<std::pair<int, uint64_t>, size_t> idx;
  for (size_t c = 0; c < out.col_keys.size(); ++c) idx[out.col_keys[c]] = c;
  for (auto& row : sparse) {
    std::vector<GF2k> dense(out.col_keys.size(), ring.fld.zero());
    for (const auto& [k, v] : row) dense[idx.at(k)] = v;
    out.rows.push_back(std::move(dense));
  }
  return out;
}

std::map<uint32_t, GF2k> random_gf2k_point(const std::vector<uint32_t>& vars,
                                           const GF2k::Field& fld, Rng& rng) {
  std::map<uint32_t, GF2k> pt;
  for (uint32_t v : vars) pt[v] = fld.random(rng);
  return pt;
}

// Certified basis of degree-n monomials at a characteristic-2 specialization.
std::vector<Face> certified_basis(const SimplicialComplex& K, int n, int field_bits,
                                  Rng& rng, bool validate_sphere) {
  auto M = normalized_lsop<Fp>(K, f2_field());
  GF2k::Field gf{field_bits};
  std::string last = "WitnessSearchFailed";
  for (int attempt = 0; attempt < 8; ++attempt) {
    try {
      auto sc = specialize_context(K, M, gf, rng, PsiMode::sphere,
                                   validate_sphere && attempt == 0);
      return select_basis(sc.ctx, n).faces;
    } catch (const Error& e) {
      if (e.code() == "NotHomologySphere") throw;
      last = e.code();
    }
  }
  fail(last, "no certified degree basis found at a characteristic-2 specialization");
}

// Exact symbolic fallback: the full parity-class matrix over F_2(entries),
// with an exact kernel when the rank is deficient. Only viable for small
// inputs; callers guard on the variable count.
struct SymbolicOutcome {
  bool full_rank = false;
  std::vector<R2> kernel;  // coefficients l_i when rank deficient
  bool kernel_verified = false;
};

SymbolicOutcome symbolic_parity_rank(const CertEngine& eng) {
  SymbolicOutcome out;
  auto fld = f2_field();
  SimplicialComplex K = eng.K;
  PsiContext<P2> ctx(K, eng.M, eng.repl, PsiMode::sphere, false);
  size_t s = eng.basis.size();
  struct ColLess {
    GrlexGreater g;
    bool operator()(const std::pair<int, Mono>& a, const std::pair<int, Mono>& b) const {
      if (a.first != b.first) return a.first < b.first;
      return g(a.second, b.second);
    }
  };
  // values c_{i,t} and their parity rows
  std::vector<std::vector<R2>> cvals(s);
  std::map<std::pair<int, Mono>, size_t, ColLess> col_idx;
  std::vector<std::vector<std::pair<size_t, R2>>> sparse_rows(s);
  auto col_of = [&](int t, const Mono& mono) {
    auto key = std::make_pair(t, mono);
    auto it = col_idx.find(key);
    if (it != col_idx.end()) return it->second;
    size_t id = col_idx.size();
    col_idx.emplace(key, id);
    return id;
  };
  for (size_t i = 0; i < s; ++i) {
    for (size_t t = 0; t < eng.taus.size(); ++t) {
      ExpVec e((size_t)eng.m, 0);
      for (int v : eng.basis[i]) e[(size_t)v - 1] += 2;
      for (int v : eng.taus[t]) e[(size_t)v - 1] += 1;
      if (!K.contains(support_of(e))) {
        cvals[i].push_back(ctx.value_field().zero());
        continue;
      }
      R2 c = ctx.psi_monomial(e);
      cvals[i].push_back(c);
      if (c.is_zero()) continue;
      P2 w = c.num() * c.den();
      auto dec = frobenius_decompose(w);
      for (const auto& [mono, q] : dec.classes) {
        if (q.is_zero()) continue;
        sparse_rows[i].push_back({col_of((int)t, mono), R2(q, c.den(), false)});
      }
    }
  }
  size_t cols = col_idx.size();
  Matrix<R2> T(cols, s, ctx.value_field());  // transpose: kernel = row combos
  for (size_t i = 0; i < s; ++i)
    for (const auto& [c, v] : sparse_rows[i]) T.at(c, i) = v;
  auto null_basis = gauss_kernel(T);
  if (null_basis.empty()) {
    out.full_rank = true;
    return out;
  }
  out.kernel = null_basis.front();
  // verify: sum_i l_i^2 c_{i,t} = 0 for every complementary face, exactly
  out.kernel_verified = true;
  for (size_t t = 0; t < eng.taus.size(); ++t) {
    R2 acc = ctx.value_field().zero();
    for (size_t i = 0; i < s; ++i) acc += out.kernel[i] * out.kernel[i] * cvals[i][t];
    if (!acc.is_zero()) out.kernel_verified = false;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Certificate
// ---------------------------------------------------------------------------
Certificate aniso_char2_certificate(const SimplicialComplex& K, uint64_t seed,
                                    int field_bits, int trials) {
  if (!is_homology_sphere(K, 2))
    fail("NotHomologySphere", "characteristic-2 certification needs a homology sphere");
  Certificate cert;
  cert.complex_hash = K.hash();
  cert.characteristic = 2;
  cert.degree = K.d() / 2;
  cert.field_bits = field_bits;
  cert.seed = seed;
  Rng rng(seed);

  if (cert.degree == 0) {  // only scalars in degree 0; trivially anisotropic
    cert.status = "ANISOTROPIC";
    cert.basis = {Face{}};
    cert.error_bound_log2 = Certificate::kExactBound;
    return cert;
  }

  cert.basis = certified_basis(K, cert.degree, field_bits, rng, true);
  CertEngine eng(K, cert.basis);
  GF2k::Field gf{field_bits};
  auto vars = eng.all_vars();
  std::vector<uint32_t> a_vars;
  for (uint32_t v : vars)
    if (var_name(v)[0] != 'c') a_vars.push_back(v);

  size_t s = cert.basis.size();
  double log2_per_trial =
      std::log2((double)eng.det_degree_bound) - (double)field_bits;
  double log2_fail = 0;
  int full_trials = 0;

  for (int t = 0; t < trials; ++t) {
    auto pt = random_gf2k_point(vars, gf, rng);
    bool done = false;
    for (const auto& gens : {a_vars, vars}) {
      ParityRing ring(gf, gens, pt);
      auto mat = assemble(eng, ring);
      std::vector<size_t> pivots;
      if (gf2k_rank(mat.rows, &pivots) == s) {
        std::vector<std::vector<GF2k>> minor(s, std::vector<GF2k>(s, gf.zero()));
        for (size_t r = 0; r < s; ++r)
          for (size_t c = 0; c < s; ++c) minor[r][c] = mat.rows[r][pivots[c]];
        cert.status = "ANISOTROPIC";
        cert.error_bound_log2 = Certificate::kExactBound;
        for (const auto& [v, val] : pt) {
          cert.point.push_back({var_name(v), val.bits()});
          cert.point_ids.push_back({v, val.bits()});
        }
        for (uint32_t g : gens) {
          cert.generators.push_back(var_name(g));
          cert.generator_ids.push_back(g);
        }
        for (size_t c = 0; c < s; ++c)
          cert.witness_cols.push_back(mat.col_keys[pivots[c]]);
        cert.witness_minor_bits = gf2k_det(minor, gf).bits();
        done = true;
        break;
      }
      if (gens.size() == vars.size()) {
        ++full_trials;
        log2_fail += log2_per_trial;
      }
    }
    if (done) return cert;
    if (full_trials >= 10 && log2_fail <= -80) break;
  }

  // Exact fallback before claiming anything negative.
  if (vars.size() <= 9 && K.vertex_count() <= 8) {
    auto sym = symbolic_parity_rank(eng);
    if (sym.full_rank) {
      // Symbolically full rank yet no witness found: keep searching a bit.
      for (int t = 0; t < 32; ++t) {
        auto pt = random_gf2k_point(vars, gf, rng);
        ParityRing ring(gf, vars, pt);
        auto mat = assemble(eng, ring);
        std::vector<size_t> pivots;
        if (gf2k_rank(mat.rows, &pivots) == s) {
          cert.status = "ANISOTROPIC";
          cert.error_bound_log2 = Certificate::kExactBound;
          for (const auto& [v, val] : pt) {
            cert.point.push_back({var_name(v), val.bits()});
            cert.point_ids.push_back({v, val.bits()});
          }
          for (uint32_t g : vars) {
            cert.generators.push_back(var_name(g));
            cert.generator_ids.push_back(g);
          }
          std::vector<std::vector<GF2k>> minor(s, std::vector<GF2k>(s, gf.zero()));
          for (size_t r = 0; r < s; ++r)
            for (size_t c = 0; c < s; ++c) minor[r][c] = mat.rows[r][pivots[c]];
          for (size_t c = 0; c < s; ++c)
            cert.witness_cols.push_back(mat.col_keys[pivots[c]]);
          cert.witness_minor_bits = gf2k_det(minor, gf).bits();
          return cert;
        }
      }
    } else if (sym.kernel_verified) {
      cert.status = "NOT_ANISOTROPIC";
      cert.error_bound_log2 = Certificate::kExactBound;
      for (const auto& l : sym.kernel)
        cert.kernel.push_back(l.num().str() + " / " + l.den().str());
      return cert;
    }
  }

  cert.status = "INCONCLUSIVE";
  cert.error_bound_log2 =
      full_trials == 0 ? 0 : (int)std::min(0.0, std::ceil(log2_fail));
  return cert;
}

bool reverify_certificate(const SimplicialComplex& K, const Certificate& cert) {
  if (cert.status != "ANISOTROPIC") return false;
  if (cert.degree == 0) return K.d() / 2 == 0;
  try {
    CertEngine eng(K, cert.basis);
    GF2k::Field gf{cert.field_bits};
    std::map<uint32_t, GF2k> pt;
    for (const auto& [id, bits] : cert.point_ids) pt[id] = GF2k(bits, cert.field_bits);
    ParityRing ring(gf, cert.generator_ids, pt);
    size_t s = cert.basis.size();
    if (cert.witness_cols.size() != s) return false;
    std::vector<std::vector<GF2k>> minor(s, std::vector<GF2k>(s, gf.zero()));
    for (size_t i = 0; i < s; ++i) {
      auto row = eng.row_at(ring, i);
      for (size_t c = 0; c < s; ++c) {
        auto it = row.find({cert.witness_cols[c].first, cert.witness_cols[c].second});
        if (it != row.end()) minor[i][c] = it->second;
      }
    }
    GF2k det = gf2k_det(minor, gf);
    return !det.is_zero() && det.bits() == cert.witness_minor_bits;
  } catch (const Error&) {
    return false;
  }
}

std::string Certificate::to_json_text() const {
  json j;
  j["v"] = 1;
  j["complex"] = complex_hash;
  j["char"] = characteristic;
  j["degree"] = degree;
  j["status"] = status;
  j["basis"] = basis;
  j["field_bits"] = field_bits;
  j["seed"] = seed;
  j["error_bound_log2"] = error_bound_log2;
  json w;
  w["point"] = json::object();
  for (const auto& [name, bits] : point) w["point"][name] = bits;
  w["generators"] = generators;
  json wc = json::array();
  for (const auto& [t, mask] : witness_cols) wc.push_back({t, mask});
  w["columns"] = wc;
  w["minor"] = witness_minor_bits;
  w["kernel"] = kernel;
  j["witness"] = w;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Randomized probe
// ---------------------------------------------------------------------------
namespace {

// Normal forms in a single graded piece of the Artinian quotient: RREF of the
// relation rows theta_t * mu over the face-supported monomials of the degree.
// Works over any exact field, including tiny ones.
template <class F>
struct GradedNormalForm {
  std::vector<ExpVec> mons;
  std::map<ExpVec, size_t> index;
  std::vector<std::vector<F>> rref;
  std::vector<size_t> pivot_cols;

  GradedNormalForm(const SimplicialComplex& K, const LsopMatrix<F>& M, int deg) {
    int m = M.m;
    auto fld = field_of(M);
    auto monoms = [&](int d) {
      std::vector<ExpVec> out;
      ExpVec cur((size_t)m, 0);
      auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == m) {
          if (left == 0 && K.contains(support_of(cur))) out.push_back(cur);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          cur[(size_t)pos] = k;
          self(self, pos + 1, left - k);
        }
        cur[(size_t)pos] = 0;
      };
      rec(rec, 0, d);
      return out;
    };
    mons = monoms(deg);
    for (size_t t = 0; t < mons.size(); ++t) index[mons[t]] = t;
    std::vector<std::vector<F>> rows;
    if (deg > 0)
      for (const ExpVec& mu : monoms(deg - 1))
        for (int t = 1; t <= M.d; ++t) {
          std::vector<F> row(mons.size(), fld.zero());
          bool nonzero = false;
          for (int j = 1; j <= m; ++j) {
            const F& a = M.entry(t, j);
            if (a.is_zero()) continue;
            ExpVec v = mu;
            v[(size_t)j - 1] += 1;
            auto it = index.find(v);
            if (it == index.end()) continue;
            row[it->second] += a;
            nonzero = true;
          }
          if (nonzero) rows.push_back(std::move(row));
        }
    size_t cols = mons.size(), rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
      size_t piv = rank;
      while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
      if (piv == rows.size()) continue;
      std::swap(rows[rank], rows[piv]);
      F inv = rows[rank][col].inv();
      for (size_t c = col; c < cols; ++c) rows[rank][c] = rows[rank][c] * inv;
      for (size_t r = 0; r < rows.size(); ++r) {
        if (r == rank || rows[r][col].is_zero()) continue;
        F f = rows[r][col];
        for (size_t c = col; c < cols; ++c) rows[r][c] = rows[r][c] - f * rows[rank][c];
      }
      pivot_cols.push_back(col);
      ++rank;
    }
    rows.resize(rank);
    rref = std::move(rows);
  }

  size_t quotient_dim() const { return mons.size() - rref.size(); }

  std::vector<F> reduce(std::vector<F> v) const {
    for (size_t r = 0; r < rref.size(); ++r) {
      size_t col = pivot_cols[r];
      if (v[col].is_zero()) continue;
      F f = v[col];
      for (size_t c = 0; c < v.size(); ++c) v[c] = v[c] - f * rref[r][c];
    }
    return v;
  }
};

template <class Fld>
ProbeReport probe_impl(const SimplicialComplex& K, const Fld& fld, uint64_t chr,
                       int trials, uint64_t seed) {
  ProbeReport rep;
  rep.characteristic = chr;
  rep.trials = trials;
  rep.seed = seed;
  if (trials == 0) {
    rep.message = "empty report";
    return rep;
  }
  if (!is_homology_sphere(K, chr))
    fail("NotHomologySphere", "probe needs a homology sphere over the probe field");
  Rng rng(seed);
  using F = decltype(fld.zero());
  auto Mx = generic_lsop<Rat>(K, Rat::Field{});
  int n = K.d() / 2, m = K.vertex_count();
  auto h = fh_vectors(K).h;

  // a specialization where the matrix is an l.s.o.p. and a certified
  // squarefree degree-n basis of the quotient
  std::optional<LsopMatrix<F>> S;
  std::optional<GradedNormalForm<F>> nf_n, nf_2n;
  std::vector<Face> basis;
  for (int attempt = 0; attempt < 64 && basis.empty(); ++attempt) {
    auto pt = random_point(Mx, {}, fld, rng);
    auto cand = specialize_lsop(Mx, pt, fld);
    if (!is_lsop(K, cand)) continue;
    GradedNormalForm<F> nf(K, cand, n);
    if ((int)nf.quotient_dim() != (int)h[(size_t)n]) continue;
    // greedy independent squarefree monomials modulo the relation space
    std::vector<std::vector<F>> indep;
    std::vector<size_t> piv;
    std::vector<Face> chosen;
    for (const Face& f : face_monomial_span(K, n)) {
      if (chosen.size() == (size_t)h[(size_t)n]) break;
      std::vector<F> v(nf.mons.size(), fld.zero());
      v[nf.index.at(face_exponents(f, m))] = fld.one();
      v = nf.reduce(v);
      for (size_t r = 0; r < indep.size(); ++r) {
        if (v[piv[r]].is_zero()) continue;
        F c = v[piv[r]];
        for (size_t x = 0; x < v.size(); ++x) v[x] = v[x] - c * indep[r][x];
      }
      size_t p = v.size();
      for (size_t x = 0; x < v.size(); ++x)
        if (!v[x].is_zero()) {
          p = x;
          break;
        }
      if (p == v.size()) continue;
      F inv = v[p].inv();
      for (size_t x = 0; x < v.size(); ++x) v[x] = v[x] * inv;
      indep.push_back(std::move(v));
      piv.push_back(p);
      chosen.push_back(f);
    }
    if (chosen.size() != (size_t)h[(size_t)n]) continue;
    S = std::move(cand);
    nf_n.emplace(std::move(nf));
    basis = std::move(chosen);
  }
  if (basis.empty()) fail("WitnessSearchFailed", "no valid specialization for the probe");
  nf_2n.emplace(K, *S, 2 * n);

  int misses = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<long long> l(basis.size(), 0);
    bool nonzero = false;
    for (auto& c : l) {
      c = rng.range(-3, 3);
      nonzero |= !fld.from_int(c).is_zero();
    }
    if (!nonzero) l[0] = 1;
    // coefficient vector of (sum_i l_i mu_i)^2 in the degree-2n piece
    std::vector<F> vec(nf_2n->mons.size(), fld.zero());
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        if (l[i] == 0 || l[j] == 0) continue;
        ExpVec e((size_t)m, 0);
        for (int v : basis[i]) e[(size_t)v - 1] += 1;
        for (int v : basis[j]) e[(size_t)v - 1] += 1;
        auto it = nf_2n->index.find(e);
        if (it == nf_2n->index.end()) continue;  // non-face: zero in the ring
        vec[it->second] += fld.from_int(l[i] * l[j]);
      }
    vec = nf_2n->reduce(std::move(vec));
    bool zero = std::all_of(vec.begin(), vec.end(),
                            [](const F& c) { return c.is_zero(); });
    if (!zero) continue;
    ++misses;
    // Over tiny fields many vectors are isotropic at a single specialization;
    // screen at independent points of the same characteristic before paying
    // for the exact symbolic check.
    bool survives = true;
    for (int s2 = 0; s2 < 8 && survives; ++s2) {
      std::optional<GradedNormalForm<F>> nf2;
      for (int attempt = 0; attempt < 64 && !nf2; ++attempt) {
        auto pt = random_point(Mx, {}, fld, rng);
        auto cand = specialize_lsop(Mx, pt, fld);
        if (!is_lsop(K, cand)) continue;
        nf2.emplace(K, cand, 2 * n);
      }
      if (!nf2) break;
      std::vector<F> v2(nf2->mons.size(), fld.zero());
      for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
          if (l[i] == 0 || l[j] == 0) continue;
          ExpVec e((size_t)m, 0);
          for (int v : basis[i]) e[(size_t)v - 1] += 1;
          for (int v : basis[j]) e[(size_t)v - 1] += 1;
          auto it = nf2->index.find(e);
          if (it == nf2->index.end()) continue;
          v2[it->second] += fld.from_int(l[i] * l[j]);
        }
      v2 = nf2->reduce(std::move(v2));
      survives = std::all_of(v2.begin(), v2.end(),
                             [](const F& c) { return c.is_zero(); });
    }
    if (!survives) continue;
    // exact symbolic confirmation over the generic field of characteristic chr
    if (K.vertex_count() <= 8) {
      auto Mn = normalized_lsop<F>(K, fld);
      PsiContext<MultiPoly<F>> sym(K, Mn, fresh_replacement<F>(K.d(), fld),
                                   PsiMode::sphere, false);
      RingElement<RatFunc<F>> ssq;
      ssq.degree = 2 * n;
      for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
          if (l[i] == 0 || l[j] == 0) continue;
          ExpVec e((size_t)m, 0);
          for (int v : basis[i]) e[(size_t)v - 1] += 1;
          for (int v : basis[j]) e[(size_t)v - 1] += 1;
          ssq.add(K, e, sym.value_field().from_int(l[i] * l[j]));
        }
      if (is_zero(sym, ssq)) {
        std::ostringstream os;
        for (size_t i = 0; i < l.size(); ++i)
          os << (i ? "," : "") << l[i] << "*" << face_str(basis[i]);
        rep.counterexamples.push_back(os.str());
      }
    }
  }
  rep.message = rep.counterexamples.empty()
                    ? "no counterexample in " + std::to_string(trials) + " trials"
                    : "isotropic vector found";
  (void)misses;
  return rep;
}

}  // namespace

ProbeReport aniso_random_probe(const SimplicialComplex& K, uint64_t characteristic,
                               int trials, uint64_t seed) {
  if (characteristic == 0) return probe_impl(K, Rat::Field{}, 0, trials, seed);
  return probe_impl(K, Fp::Field{characteristic}, characteristic, trials, seed);
}

ProbeReport aniso_random_probe(const SimplicialComplex& K, const LsopMatrix<Fp>& M,
                               int trials, uint64_t seed) {
  if (!is_lsop(K, M))
    fail("BadParams", "supplied matrix is not an l.s.o.p. for the complex");
  ProbeReport rep;
  rep.characteristic = field_of(M).p;
  rep.trials = trials;
  rep.seed = seed;
  Rng rng(seed);
  auto fld = field_of(M);
  int n = K.d() / 2, m = K.vertex_count();
  auto h = fh_vectors(K).h;
  GradedNormalForm<Fp> nf_n(K, M, n), nf_2n(K, M, 2 * n);
  if ((int)nf_n.quotient_dim() != (int)h[(size_t)n])
    fail("WitnessSearchFailed", "degenerate quotient at the supplied matrix");
  // greedy squarefree basis modulo the relation space
  std::vector<std::vector<Fp>> indep;
  std::vector<size_t> piv;
  std::vector<Face> basis;
  for (const Face& f : face_monomial_span(K, n)) {
    if (basis.size() == (size_t)h[(size_t)n]) break;
    std::vector<Fp> v(nf_n.mons.size(), fld.zero());
    v[nf_n.index.at(face_exponents(f, m))] = fld.one();
    v = nf_n.reduce(std::move(v));
    for (size_t r = 0; r < indep.size(); ++r) {
      if (v[piv[r]].is_zero()) continue;
      Fp c = v[piv[r]];
      for (size_t x = 0; x < v.size(); ++x) v[x] = v[x] - c * indep[r][x];
    }
    size_t p = v.size();
    for (size_t x = 0; x < v.size(); ++x)
      if (!v[x].is_zero()) {
        p = x;
        break;
      }
    if (p == v.size()) continue;
    Fp inv = v[p].inv();
    for (size_t x = 0; x < v.size(); ++x) v[x] = v[x] * inv;
    indep.push_back(std::move(v));
    piv.push_back(p);
    basis.push_back(f);
  }
  if (basis.size() != (size_t)h[(size_t)n])
    fail("WitnessSearchFailed", "no squarefree degree basis at the supplied matrix");
  for (int t = 0; t < trials; ++t) {
    std::vector<long long> l(basis.size(), 0);
    bool nonzero = false;
    for (auto& c : l) {
      c = rng.range(-3, 3);
      nonzero |= !fld.from_int(c).is_zero();
    }
    if (!nonzero) l[0] = 1;
    std::vector<Fp> vec(nf_2n.mons.size(), fld.zero());
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = 0; j < basis.size(); ++j) {
        if (l[i] == 0 || l[j] == 0) continue;
        ExpVec e((size_t)m, 0);
        for (int v : basis[i]) e[(size_t)v - 1] += 1;
        for (int v : basis[j]) e[(size_t)v - 1] += 1;
        auto it = nf_2n.index.find(e);
        if (it == nf_2n.index.end()) continue;
        vec[it->second] += fld.from_int(l[i] * l[j]);
      }
    vec = nf_2n.reduce(std::move(vec));
    if (std::all_of(vec.begin(), vec.end(), [](const Fp& c) { return c.is_zero(); })) {
      std::ostringstream os;
      for (size_t i = 0; i < l.size(); ++i)
        os << (i ? "," : "") << l[i] << "*" << face_str(basis[i]);
      rep.counterexamples.push_back(os.str() + " (at this specialization)");
    }
  }
  rep.message = rep.counterexamples.empty()
                    ? "no counterexample in " + std::to_string(trials) + " trials"
                    : "isotropic vector at the supplied specialization";
  return rep;
}

std::string ProbeReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["char"] = characteristic;
  j["trials"] = trials;
  j["seed"] = seed;
  j["counterexamples"] = counterexamples;
  j["message"] = message;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Lefschetz
// ---------------------------------------------------------------------------
LefschetzReport lefschetz_check(const SimplicialComplex& K, uint64_t seed,
                                uint64_t characteristic) {
  LefschetzReport rep;
  rep.complex_hash = K.hash();
  rep.characteristic = characteristic;
  rep.seed = seed;
  Fp::Field fld{characteristic};
  Rng rng(seed);
  auto Mx = generic_lsop<Rat>(K, Rat::Field{});
  auto sc = specialize_context(K, Mx, fld, rng, PsiMode::sphere, true);
  int d = K.d(), m = K.vertex_count();
  std::vector<Fp> w;
  for (int u = 0; u < m; ++u) {
    Fp c = fld.random(rng);
    w.push_back(c);
    rep.omega.push_back(c.value());
  }
  auto h = fh_vectors(K).h;
  rep.holds = true;
  for (int i = 0; 2 * i <= d; ++i) {
    auto bi = select_basis(sc.ctx, i).faces;
    int pow = d - 2 * i;
    // omega^pow as a ring element, multinomial expansion over face supports
    RingElement<Fp> wp;
    wp.degree = pow;
    {
      ExpVec cur((size_t)m, 0);
      auto rec = [&](auto&& self, int pos, int left, long long multi, Fp coeff) -> void {
        if (pos == m) {
          if (left == 0) wp.add(K, cur, coeff * fld.from_int(multi));
          return;
        }
        long long binom = 1;
        Fp p = fld.one();
        for (int k = 0; k <= left; ++k) {
          if (k > 0) {
            binom = binom * (left - k + 1) / k;
            p = p * w[(size_t)pos];
          }
          cur[(size_t)pos] = k;
          self(self, pos + 1, left - k, multi * binom, coeff * p);
        }
        cur[(size_t)pos] = 0;
      };
      rec(rec, 0, pow, 1, fld.one());
    }
    Matrix<Fp> P(bi.size(), bi.size(), fld);
    for (size_t a = 0; a < bi.size(); ++a)
      for (size_t b = 0; b < bi.size(); ++b) {
        RingElement<Fp> prod;
        prod.degree = d;
        for (const auto& [e, c] : wp.terms) {
          ExpVec sum = e;
          for (int v : bi[a]) sum[(size_t)v - 1] += 1;
          for (int v : bi[b]) sum[(size_t)v - 1] += 1;
          prod.add(K, sum, c);
        }
        if (!prod.is_zero()) P.at(a, b) = sc.ctx.psi_element(prod);
      }
    int rank = (int)gauss_rank(P);
    rep.ranks.push_back({i, rank});
    rep.expected.push_back(h[(size_t)i]);
    if (rank != h[(size_t)i]) rep.holds = false;
  }
  return rep;
}

std::string LefschetzReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["complex"] = complex_hash;
  j["char"] = characteristic;
  j["seed"] = seed;
  j["omega"] = omega;
  json r = json::array();
  for (auto& [i, rk] : ranks) r.push_back({i, rk});
  j["ranks"] = r;
  j["expected"] = expected;
  j["holds"] = holds;
  return j.dump();
}

// ---------------------------------------------------------------------------
// Move invariance
// ---------------------------------------------------------------------------
MoveInvarianceReport move_invariance_experiment(const SimplicialComplex& K,
                                                int num_moves, uint64_t seed,
                                                int field_bits) {
  MoveInvarianceReport rep;
  auto walk = random_walk(K, num_moves, seed);
  rep.log = walk.log;
  SimplicialComplex cur = K;
  rep.statuses.push_back(aniso_char2_certificate(cur, seed, field_bits).status);
  for (const auto& mv : walk.log.moves) {
    cur = apply_move(cur, mv);
    rep.statuses.push_back(aniso_char2_certificate(cur, seed, field_bits).status);
  }
  rep.constant = std::all_of(rep.statuses.begin(), rep.statuses.end(),
                             [&](const std::string& s) { return s == rep.statuses[0]; });
  return rep;
}

std::string MoveInvarianceReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["statuses"] = statuses;
  j["constant"] = constant;
  j["log"] = json::parse(move_log_to_json_text(log));
  return j.dump();
}

// ---------------------------------------------------------------------------
// Differential operator experiment
// ---------------------------------------------------------------------------
namespace {

R2 ratfunc_derivative(const R2& f, VarId v) {
  return R2(f.num().derivative(v) * f.den() - f.num() * f.den().derivative(v),
            f.den() * f.den(), false);
}

}  // namespace

DiffOpReport diffop_experiment(const SimplicialComplex& delta, int q, int n) {
  DiffOpReport rep;
  rep.n = n;
  rep.q = q;
  if (n < 2 || q < 1 || q >= n) fail("BadParameters", "need 0 < q < n, n >= 2");
  Face tau, sigma;
  for (int v = 1; v <= q + 1; ++v) tau.push_back(v);
  for (int v = q + 2; v <= 2 * n + 1; ++v) sigma.push_back(v);
  SimplicialComplex dp = delta.contains(tau) ? delta : apply_move(delta, {sigma, tau});
  auto fld = f2_field();
  auto M = theorem41_lsop<Fp>(dp, q, n, fld);

  // certified basis with the distinguished monomial first and the others
  // outside the star of tau
  Face sigma1;
  for (int v = 1; v <= n; ++v) sigma1.push_back(v);
  std::vector<Face> candidates = {sigma1};
  for (const Face& g : face_monomial_span(dp, n))
    if (!dp.contains(face_union(g, tau))) candidates.push_back(g);
  GF2k::Field gf{20};
  Rng rng(2026);
  std::vector<Face> basis;
  for (int attempt = 0; attempt < 8 && basis.empty(); ++attempt) {
    try {
      auto sc = specialize_context(dp, M, gf, rng);
      basis = select_basis(sc.ctx, n, {sigma1}, candidates).faces;
    } catch (const Error& e) {
      if (e.code() == "NotHomologySphere") throw;
    }
  }
  if (basis.empty()) fail("WitnessSearchFailed", "no certified basis on the fixture");
  rep.basis = basis;

  PsiContext<P2> ctx(dp, M, fresh_replacement<Fp>(2 * n, fld), PsiMode::sphere, false);
  int m = dp.vertex_count();

  // Psi(x_1 ... x_{2n}) = 1
  ExpVec sf((size_t)m, 0);
  for (int v = 1; v <= 2 * n; ++v) sf[(size_t)v - 1] = 1;
  rep.square_free_psi_is_one = ctx.psi_monomial(sf) == ctx.value_field().one();

  // the stated value of Psi(x_{sigma_1}^2)
  P2 num = P2::one(fld), den = P2::one(fld);
  for (int i = q + 2; i <= n; ++i) num = num * P2::var(VarId::b(i), fld);
  for (int i = n + 1; i <= 2 * n; ++i) den = den * P2::var(VarId::b(i), fld);
  R2 stated(num, den);
  ExpVec e1((size_t)m, 0);
  for (int v : sigma1) e1[(size_t)v - 1] = 2;
  R2 c1 = ctx.psi_monomial(e1);
  rep.fact_c_value = c1 == stated;

  // the ring identity x_{sigma_1}^2 = stated * x_1...x_{2n} (characteristic 2)
  RingElement<R2> diff;
  diff.degree = 2 * n;
  diff.add(dp, e1, ctx.value_field().one());
  diff.add(dp, sf, stated);
  rep.fact_c_ring_identity = is_zero(ctx, diff);

  // P = d^{q+1} / (db_{2n-q} ... db_{2n})
  auto apply_P = [&](R2 v) {
    for (int i = 2 * n - q; i <= 2 * n; ++i) v = ratfunc_derivative(v, VarId::b(i));
    return v;
  };
  rep.p_nonzero_on_distinguished = !apply_P(c1).is_zero();
  rep.p_kills_others = true;
  for (size_t i = 1; i < basis.size(); ++i) {
    ExpVec e((size_t)m, 0);
    for (int v : basis[i]) e[(size_t)v - 1] = 2;
    if (!apply_P(ctx.psi_monomial(e)).is_zero()) rep.p_kills_others = false;
  }
  return rep;
}

SimplicialComplex suspended_tetrahedron_boundary() {
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

SimplicialComplex four_cycle_with_facet_12() {
  return SimplicialComplex::build_from_facets(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
}

DiffOpReport diffop_experiment() {
  return diffop_experiment(suspended_tetrahedron_boundary(), 1, 2);
}

std::string DiffOpReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["n"] = n;
  j["q"] = q;
  j["basis"] = basis;
  j["square_free_psi_is_one"] = square_free_psi_is_one;
  j["fact_c_value"] = fact_c_value;
  j["fact_c_ring_identity"] = fact_c_ring_identity;
  j["p_nonzero_on_distinguished"] = p_nonzero_on_distinguished;
  j["p_kills_others"] = p_kills_others;
  j["all_pass"] = all_pass();
  return j.dump();
}

// ---------------------------------------------------------------------------
// Degree argument on the cone over the octahedron
// ---------------------------------------------------------------------------
DegreeArgumentReport degree_argument_experiment(uint64_t seed) {
  DegreeArgumentReport rep;
  Fp::Field fld{1000003};
  Rng rng(seed);
  auto oct = cross_polytope(3);
  auto K = cone(oct);  // apex 7, a 3-ball
  int d = 4, m = 7;

  // matrix: columns 2..6 random scalars, column 7 = e_1,
  // column 1 = (a_{1,1}, 1, 0, 0)^T with a_{1,1} the only variable
  VarId a11 = VarId::a(1, 1);
  LsopMatrix<MultiPoly<Fp>> M;
  PsiContext<MultiPoly<Fp>>* ctx = nullptr;
  std::optional<PsiContext<MultiPoly<Fp>>> ctx_store;
  for (int attempt = 0; attempt < 32 && !ctx; ++attempt) {
    LsopMatrix<MultiPoly<Fp>> C;
    C.d = d;
    C.m = m;
    C.col.assign((size_t)m, std::vector<MultiPoly<Fp>>((size_t)d, MultiPoly<Fp>::zero(fld)));
    for (int j = 2; j <= 6; ++j)
      for (int i = 1; i <= d; ++i) C.entry(i, j) = MultiPoly<Fp>(fld.random(rng));
    C.entry(1, 7) = MultiPoly<Fp>::one(fld);
    C.entry(1, 1) = MultiPoly<Fp>::var(a11, fld);
    C.entry(2, 1) = MultiPoly<Fp>::one(fld);
    if (!is_lsop(K, C)) continue;
    std::vector<MultiPoly<Fp>> repl;
    for (int i = 0; i < d; ++i) repl.push_back(MultiPoly<Fp>(fld.random(rng)));
    try {
      ctx_store.emplace(K, C, repl, PsiMode::ball_relative, true);
      // touch every pairing we need so replacement degeneracies surface now
      M = C;
      ctx = &*ctx_store;
    } catch (const Error&) {
      ctx_store.reset();
    }
  }
  if (!ctx) fail("WitnessSearchFailed", "no valid specialization for the cone matrix");

  // link of vertex 1 in the octahedron: the 4-cycle L1, l.s.o.p. = rows 3,4
  auto L1 = link(oct, {1});
  LsopMatrix<Fp> ML1;
  ML1.d = 2;
  ML1.m = (int)L1.to_parent.size();
  ML1.col.assign((size_t)ML1.m, std::vector<Fp>(2, fld.zero()));
  std::map<uint32_t, Fp> zero_pt{{a11.id, fld.zero()}};
  for (int j = 1; j <= ML1.m; ++j)
    for (int i = 1; i <= 2; ++i)
      ML1.entry(i, j) = specialize(M.entry(i + 2, L1.to_parent[(size_t)j - 1]), zero_pt, fld);
  if (!is_lsop(L1.complex, ML1))
    fail("WitnessSearchFailed", "restricted rows are not an l.s.o.p. for the link");
  std::vector<Fp> repl1 = {fld.random(rng), fld.random(rng)};
  PsiContext<Fp> ctxL(L1.complex, ML1, repl1);

  // bases: rho = two link vertices; sigma_i = {rho_i, apex}; tau = {2, apex}
  // (vertex 2 is the antipode of 1, the only vertex outside st_1)
  std::vector<int> rho_parent = {3, 4};
  auto link_label = [&](int parent) {
    for (size_t t = 0; t < L1.to_parent.size(); ++t)
      if (L1.to_parent[t] == parent) return (int)t + 1;
    fail("Internal", "vertex not in the link");
  };
  auto psiK = [&](const Face& f, const Face& g) {
    ExpVec e((size_t)m, 0);
    for (int v : f) e[(size_t)v - 1] += 1;
    for (int v : g) e[(size_t)v - 1] += 1;
    if (!K.contains(support_of(e))) return ctx->value_field().zero();
    return ctx->psi_monomial(e);
  };
  auto psiL = [&](int pi, int pj) {
    ExpVec e((size_t)ML1.m, 0);
    e[(size_t)link_label(pi) - 1] += 1;
    e[(size_t)link_label(pj) - 1] += 1;
    if (!L1.complex.contains(support_of(e))) return ctxL.value_field().zero();
    return ctxL.psi_monomial(e);
  };

  rep.sigma_sigma_degree_one = true;
  rep.sigma_sigma_leading = true;
  for (int i : {0, 1})
    for (int j : {0, 1}) {
      Face si = {rho_parent[(size_t)i], 7}, sj = {rho_parent[(size_t)j], 7};
      std::sort(si.begin(), si.end());
      std::sort(sj.begin(), sj.end());
      auto v = psiK(si, sj);
      auto dl = degree_lc(v, a11);
      Fp lval = psiL(rho_parent[(size_t)i], rho_parent[(size_t)j]);
      if (lval.is_zero()) {
        // degree-1 coefficient vanishes with the link value
        if (dl.deg && *dl.deg >= 1) rep.sigma_sigma_degree_one = false;
        rep.recorded_signs.push_back(0);
        continue;
      }
      if (!dl.deg || *dl.deg != 1) rep.sigma_sigma_degree_one = false;
      // leading coefficient of a univariate rational function is a scalar
      auto lead = dl.leading;
      bool plus = lead == RatFunc<Fp>(MultiPoly<Fp>(lval));
      bool minus = lead == RatFunc<Fp>(MultiPoly<Fp>(-lval));
      if (!plus && !minus) rep.sigma_sigma_leading = false;
      rep.recorded_signs.push_back(plus ? 1 : (minus ? -1 : 0));
    }

  Face tau1 = {2, 7};
  auto bounded = [&](const RatFunc<Fp>& v) {
    auto dl = degree_lc(v, a11);
    return !dl.deg || *dl.deg <= 0;
  };
  rep.tau_tau_bounded = bounded(psiK(tau1, tau1));
  rep.sigma_tau_bounded = true;
  for (int i : {0, 1}) {
    Face si = {rho_parent[(size_t)i], 7};
    std::sort(si.begin(), si.end());
    if (!bounded(psiK(si, tau1))) rep.sigma_tau_bounded = false;
  }

  // Suspension isomorphism checks over a plain specialization: SΔ with
  // apex columns e_1, e_2; the cone part K7 = {7} * Δ; the base Δ with the
  // lower rows.
  {
    auto S = suspension(oct);  // apexes 7, 8
    auto MS = cone_lsop<Rat>(S, ConeVariant::suspension_apexes, Rat::Field{});
    for (int attempt = 0; attempt < 32; ++attempt) {
      auto pt = random_point(MS, {}, fld, rng);
      auto MSf = specialize_lsop(MS, pt, fld);
      std::vector<Face> cone_facets;
      for (const auto& f : oct.facets()) cone_facets.push_back(face_union(f, {7}));
      auto K7 = SimplicialComplex::build_from_facets(7, cone_facets);
      LsopMatrix<Fp> MK;
      MK.d = 4;
      MK.m = 7;
      MK.col.assign(7, std::vector<Fp>(4, fld.zero()));
      for (int j = 1; j <= 7; ++j)
        for (int i = 1; i <= 4; ++i) MK.entry(i, j) = MSf.entry(i, j);
      LsopMatrix<Fp> MD;
      MD.d = 3;
      MD.m = 6;
      MD.col.assign(6, std::vector<Fp>(3, fld.zero()));
      for (int j = 1; j <= 6; ++j)
        for (int i = 1; i <= 3; ++i) MD.entry(i, j) = MSf.entry(i + 1, j);
      if (!is_lsop(K7, MK) || !is_lsop(oct, MD)) continue;
      try {
        std::vector<Fp> rK, rD;
        for (int i = 0; i < 4; ++i) rK.push_back(fld.random(rng));
        for (int i = 0; i < 3; ++i) rD.push_back(fld.random(rng));
        PsiContext<Fp> cK(K7, MK, rK, PsiMode::ball_relative, false);
        PsiContext<Fp> cD(oct, MD, rD, PsiMode::sphere, false);
        // proportionality: Psi_K(x_7 x_F) = c * Psi_D(x_F) for every facet F
        std::optional<Fp> cst;
        bool prop = true;
        for (const auto& F : oct.facets()) {
          ExpVec eK(7, 0), eD(6, 0);
          eK[6] = 1;
          for (int v : F) eK[(size_t)v - 1] = 1, eD[(size_t)v - 1] = 1;
          Fp lhs = cK.psi_monomial(eK), rhs = cD.psi_monomial(eD);
          if (rhs.is_zero()) {
            prop = false;
            break;
          }
          Fp ratio = lhs / rhs;
          if (!cst)
            cst = ratio;
          else if (!(*cst == ratio))
            prop = false;
        }
        rep.suspension_proportional = prop && cst && !cst->is_zero();
        // substitution x_7^2 = x_7 * (-sum_j a_{1j} x_j) on degree-2 faces
        bool subst = true;
        for (const Face& rho : face_monomial_span(oct, 2)) {
          ExpVec lhs_e(7, 0);
          lhs_e[6] = 2;
          for (int v : rho) lhs_e[(size_t)v - 1] += 1;
          Fp lhs = cK.psi_monomial(lhs_e);
          RingElement<Fp> rhs;
          rhs.degree = 4;
          for (int jx = 1; jx <= 6; ++jx) {
            ExpVec e(7, 0);
            e[6] = 1;
            e[(size_t)jx - 1] += 1;
            for (int v : rho) e[(size_t)v - 1] += 1;
            rhs.add(K7, e, -MK.entry(1, jx));
          }
          Fp rv = rhs.is_zero() ? fld.zero() : cK.psi_element(rhs);
          if (!(lhs == rv)) subst = false;
        }
        rep.suspension_substitution = subst;
        break;
      } catch (const Error&) {
        continue;
      }
    }
  }
  return rep;
}

std::string DegreeArgumentReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["sigma_sigma_degree_one"] = sigma_sigma_degree_one;
  j["sigma_sigma_leading"] = sigma_sigma_leading;
  j["tau_tau_bounded"] = tau_tau_bounded;
  j["sigma_tau_bounded"] = sigma_tau_bounded;
  j["suspension_proportional"] = suspension_proportional;
  j["suspension_substitution"] = suspension_substitution;
  j["recorded_signs"] = recorded_signs;
  j["all_pass"] = all_pass();
  return j.dump();
}

// ---------------------------------------------------------------------------
// Identity suite
// ---------------------------------------------------------------------------
IdentityReport identity_suite() {
  IdentityReport rep;
  Rat::Field q;

  // Psi(x_sigma) = +-1 / det M(sigma) on generic symbolic matrices
  rep.facet_identity = true;
  for (auto K : {boundary_simplex(3), cross_polytope(2), cross_polytope(3)}) {
    auto M = generic_lsop<Rat>(K, q);
    PsiContext<MultiPoly<Rat>> ctx(K, M, fresh_replacement<Rat>(K.d(), q),
                                   PsiMode::sphere, false);
    auto oc = ctx.oriented();
    for (const auto& f : K.facets()) {
      ExpVec e((size_t)K.vertex_count(), 0);
      for (int v : f) e[(size_t)v - 1] = 1;
      auto v = ctx.psi_monomial(e);
      RatFunc<Rat> inv_det(MultiPoly<Rat>::one(q), minor_det(M, f));
      int sign = 0;
      if (v == inv_det) sign = 1;
      if (v == -inv_det) sign = -1;
      if (sign == 0) rep.facet_identity = false;
      if (sign != oc.sign.at(f)) rep.facet_identity = false;
      rep.facet_signs.push_back(sign);
    }
  }

  // pentagon-from-square 0-move fixture: Psi_{Delta'}(x_5^2) = +-1/(a51 a52)
  // and the ring identity x_5^2 = -(1/a51) x_1 x_5
  {
    auto sq4 = four_cycle_with_facet_12();
    auto pent = apply_move(sq4, {{1, 2}, {5}});
    LsopMatrix<MultiPoly<Rat>> M;
    M.d = 2;
    M.m = 5;
    M.col.assign(5, std::vector<MultiPoly<Rat>>(2, MultiPoly<Rat>::zero(q)));
    M.entry(1, 1) = MultiPoly<Rat>::one(q);
    M.entry(2, 2) = MultiPoly<Rat>::one(q);
    for (int j = 3; j <= 5; ++j)
      for (int i = 1; i <= 2; ++i) M.entry(i, j) = MultiPoly<Rat>::var(VarId::a(i, j), q);
    PsiContext<MultiPoly<Rat>> ctx(pent, M, fresh_replacement<Rat>(2, q),
                                   PsiMode::sphere, false);
    auto a51 = MultiPoly<Rat>::var(VarId::a(1, 5), q);
    auto a52 = MultiPoly<Rat>::var(VarId::a(2, 5), q);
    RatFunc<Rat> stated(MultiPoly<Rat>::one(q), a51 * a52);
    auto v = ctx.psi_monomial({0, 0, 0, 0, 2});
    if (v == stated) rep.zero_move_sign = 1;
    if (v == -stated) rep.zero_move_sign = -1;
    rep.zero_move_fraction = rep.zero_move_sign != 0;

    RingElement<RatFunc<Rat>> diff;
    diff.degree = 2;
    diff.add(pent, {0, 0, 0, 0, 2}, ctx.value_field().one());
    diff.add(pent, {1, 0, 0, 0, 1}, RatFunc<Rat>(MultiPoly<Rat>::one(q), a51));
    rep.zero_move_ring_identity = is_zero(ctx, diff);
  }

  // structured-matrix fixture: det M([2n]) = 1, Psi(x_1..x_{2n}) = 1 and the
  // fact-(c) value
  {
    auto dr = diffop_experiment();
    auto dp = apply_move(suspended_tetrahedron_boundary(), {{3, 4, 5}, {1, 2}});
    auto M = theorem41_lsop<Fp>(dp, 1, 2, f2_field());
    rep.structured_det_one =
        minor_det(M, {1, 2, 3, 4}) == P2::one(f2_field()) && dr.square_free_psi_is_one;
    rep.structured_square_value = dr.fact_c_value;
  }
  return rep;
}

std::string IdentityReport::to_json_text() const {
  json j;
  j["v"] = 1;
  j["facet_identity"] = facet_identity;
  j["facet_signs"] = facet_signs;
  j["zero_move_fraction"] = zero_move_fraction;
  j["zero_move_sign"] = zero_move_sign;
  j["zero_move_ring_identity"] = zero_move_ring_identity;
  j["structured_det_one"] = structured_det_one;
  j["structured_square_value"] = structured_square_value;
  j["all_pass"] = all_pass();
  return j.dump();
}

}  // namespace facering
