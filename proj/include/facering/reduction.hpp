#pragma once

// Artinian reduction toolkit built on the canonical function Psi of a
// homology sphere (or ball, relatively): monomial spanning sets, certified
// degree bases, Psi by the facet-star determinant formula, Poincare pairing
// matrices, duality-based zero testing, and an independent Macaulay-style
// brute-force oracle.
//
// Psi(x^e) with support sigma sums over the facets F of st_sigma:
//     sign(F) * prod_{i in sigma} A_F(i)^{e_i - 1}
//     / ( A_F * prod_{i in F \ sigma} A_F(i) )
// where A_I = det M(I) on sorted columns, A_I(i) replaces the column of i by
// the replacement vector, and sign(F) is the coherent orientation sign of
// the sorted facet. For facet monomials this reduces to sign/det M(sigma).

#include <bit>
#include <map>
#include <optional>
#include <vector>

#include "facering/complex.hpp"
#include "facering/lsop.hpp"

namespace facering {

// Exponent vectors are length-m (entry t = exponent of vertex t+1).
using ExpVec = std::vector<int>;

inline Face support_of(const ExpVec& e) {
  Face s;
  for (size_t t = 0; t < e.size(); ++t) {
    if (e[t] < 0) fail("BadParams", "negative exponent");
    if (e[t] > 0) s.push_back((int)t + 1);
  }
  return s;
}

inline int degree_of(const ExpVec& e) {
  int d = 0;
  for (int v : e) d += v;
  return d;
}

inline ExpVec face_exponents(const Face& f, int m) {
  ExpVec e((size_t)m, 0);
  for (int v : f) e[(size_t)v - 1] = 1;
  return e;
}

// Homogeneous element of the face ring; terms with non-face support are
// dropped at insertion (they are zero in the Stanley-Reisner quotient).
template <class V>
struct RingElement {
  int degree = 0;
  std::map<ExpVec, V> terms;

  void add(const SimplicialComplex& K, const ExpVec& e, const V& c) {
    if (c.is_zero()) return;
    if (degree_of(e) != degree) fail("WrongDegree", "inhomogeneous term");
    if (!K.contains(support_of(e))) return;
    auto [it, fresh] = terms.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
};

// Value type of Psi: rational functions over symbolic entries, the field
// itself over specialized entries.
template <class E>
struct PsiValue {
  using type = E;
};
template <class K>
struct PsiValue<MultiPoly<K>> {
  using type = RatFunc<K>;
};
template <class E>
using psi_value_t = typename PsiValue<E>::type;

enum class PsiMode { sphere, ball_relative };

template <class E>
class PsiContext {
public:
  using Val = psi_value_t<E>;

  PsiContext(const SimplicialComplex& K, LsopMatrix<E> M, std::vector<E> replacement,
             PsiMode mode = PsiMode::sphere, bool validate = true)
      : M_(std::move(M)), repl_(std::move(replacement)), mode_(mode) {
    if (M_.d != K.d() || M_.m != K.vertex_count())
      fail("DimensionMismatch", "l.s.o.p. matrix does not match the complex");
    if ((int)repl_.size() != M_.d)
      fail("BadParams", "replacement vector length != d");
    if (validate) {
      uint64_t p = field_of(M_).characteristic();
      if (mode_ == PsiMode::sphere && !is_homology_sphere(K, p))
        fail("NotHomologySphere", "sphere-mode context requires a homology sphere");
      if (mode_ == PsiMode::ball_relative && !is_homology_ball(K, p))
        fail("NotHomologyBall", "ball-mode context requires a homology ball");
    }
    oc_ = orient(K);
    if (mode_ == PsiMode::ball_relative) boundary_ = boundary_complex(K);
  }

  const SimplicialComplex& complex() const { return oc_.complex; }
  const OrientedComplex& oriented() const { return oc_; }
  const LsopMatrix<E>& matrix() const { return M_; }
  const SimplicialComplex& boundary() const { return boundary_; }
  PsiMode mode() const { return mode_; }
  int d() const { return M_.d; }
  auto base_field() const { return field_of(M_); }

  // A_I for sorted I; memoized.
  const E& minor(const Face& I) {
    auto it = minors_.find(I);
    if (it != minors_.end()) return it->second;
    return minors_.emplace(I, minor_det(M_, I)).first->second;
  }
  // A_I(i) with the replacement vector; memoized.
  const E& minor_repl(const Face& I, int i) {
    auto key = std::make_pair(I, i);
    auto it = rminors_.find(key);
    if (it != rminors_.end()) return it->second;
    return rminors_.emplace(key, minor_replaced(M_, I, i, repl_)).first->second;
  }

  Val psi_monomial(const ExpVec& e) {
    auto it = psi_memo_.find(e);
    if (it != psi_memo_.end()) return it->second;
    Val v = psi_uncached(e);
    psi_memo_.emplace(e, v);
    return v;
  }

  Val psi_element(const RingElement<Val>& alpha) {
    if (alpha.degree != d()) fail("WrongDegree", "Psi needs a degree-d element");
    Val acc = value_field().zero();
    for (const auto& [e, c] : alpha.terms) acc += c * psi_monomial(e);
    return acc;
  }

  typename Val::Field value_field() const {
    if constexpr (std::is_same_v<Val, E>) return field_of(M_);
    else return typename Val::Field{field_of(M_)};
  }

private:
  Val psi_uncached(const ExpVec& e) {
    const auto& K = oc_.complex;
    if ((int)e.size() != M_.m) fail("BadParams", "exponent vector length != m");
    if (degree_of(e) != M_.d) fail("WrongDegree", "Psi needs total degree d");
    Face sigma = support_of(e);
    if (!K.contains(sigma)) fail("SupportNotAFace", "support " + face_str(sigma));

    std::vector<Face> star;
    for (const auto& f : K.facets())
      if (face_subset(sigma, f)) star.push_back(f);

    if constexpr (std::is_same_v<Val, E>)
      return psi_field(e, sigma, star);
    else
      return psi_symbolic(e, sigma, star);
  }

  // Specialized entries: direct summation in the field.
  Val psi_field(const ExpVec& e, const Face& sigma, const std::vector<Face>& star) {
    auto fld = field_of(M_);
    E acc = fld.zero();
    for (const Face& F : star) {
      E num = fld.from_int(oc_.sign.at(F));
      for (int i : sigma)
        for (int k = 1; k < e[(size_t)i - 1]; ++k) num = num * need_repl(F, i);
      E den = need_minor(F);
      for (int i : face_minus(F, sigma)) den = den * need_repl(F, i);
      acc = acc + num / den;
    }
    return acc;
  }

  // Symbolic entries: accumulate over the factored common denominator, then
  // cancel factors from the numerator by exact trial division. Avoids ever
  // expanding the full product denominator.
  Val psi_symbolic(const ExpVec& e, const Face& sigma, const std::vector<Face>& star) {
    using Key = std::pair<Face, int>;  // (sorted facet, vertex) ; vertex 0 = A_F
    auto fld = field_of(M_);
    std::vector<std::map<Key, int>> dens;
    std::vector<E> nums;
    for (const Face& F : star) {
      E num = E::one(fld) * fld.from_int(oc_.sign.at(F));
      for (int i : sigma)
        for (int k = 1; k < e[(size_t)i - 1]; ++k) num = num * need_repl(F, i);
      std::map<Key, int> den;
      need_minor(F);
      den[{F, 0}] += 1;
      for (int i : face_minus(F, sigma)) {
        need_repl(F, i);
        den[{F, i}] += 1;
      }
      nums.push_back(std::move(num));
      dens.push_back(std::move(den));
    }
    std::map<Key, int> common;
    for (const auto& den : dens)
      for (const auto& [k, c] : den) common[k] = std::max(common[k], c);

    auto factor_of = [&](const Key& k) -> const E& {
      return k.second == 0 ? minors_.at(k.first) : rminors_.at(k);
    };

    E N = E::zero(fld);
    for (size_t t = 0; t < nums.size(); ++t) {
      E term = nums[t];
      for (const auto& [k, c] : common) {
        int extra = c - (dens[t].count(k) ? dens[t].at(k) : 0);
        for (int r = 0; r < extra; ++r) term = term * factor_of(k);
      }
      N += term;
    }
    if (N.is_zero()) return value_field().zero();
    // cancel
    for (auto& [k, c] : common) {
      const E& f = factor_of(k);
      E q(fld);
      while (c > 0 && try_divide_exact(N, f, &q)) {
        N = q;
        --c;
      }
    }
    E D = E::one(fld);
    for (const auto& [k, c] : common)
      for (int r = 0; r < c; ++r) D = D * factor_of(k);
    bool small = N.num_terms() <= 2000 && D.num_terms() <= 2000;
    return Val(std::move(N), std::move(D), small);
  }

  const E& need_minor(const Face& F) {
    const E& v = minor(F);
    if (v.is_zero()) fail("MinorVanishes", "det M(" + face_str(F) + ") is identically zero");
    return v;
  }
  const E& need_repl(const Face& F, int i) {
    const E& v = minor_repl(F, i);
    if (v.is_zero())
      fail("MinorVanishes", "replaced minor at " + face_str(F) + ", vertex " + std::to_string(i));
    return v;
  }

  OrientedComplex oc_;
  LsopMatrix<E> M_;
  std::vector<E> repl_;
  PsiMode mode_;
  SimplicialComplex boundary_;
  std::map<Face, E> minors_;
  std::map<std::pair<Face, int>, E> rminors_;
  std::map<ExpVec, Val> psi_memo_;
};

// ---------------------------------------------------------------------------
// Spanning sets, products, pairing, zero test
// ---------------------------------------------------------------------------
inline std::vector<Face> face_monomial_span(const SimplicialComplex& K, int i) {
  if (i < 0 || i > K.d()) fail("DegreeOutOfRange", "degree " + std::to_string(i));
  return K.faces_of_dim(i - 1);
}

// x^e1 * x^e2 as a ring element (zero when the union support is a non-face).
template <class V>
RingElement<V> monomial_product(const SimplicialComplex& K, const ExpVec& e1,
                                const ExpVec& e2, const V& one) {
  RingElement<V> r;
  r.degree = degree_of(e1) + degree_of(e2);
  ExpVec e = e1;
  for (size_t t = 0; t < e.size(); ++t) e[t] += e2[t];
  r.add(K, e, one);
  return r;
}

template <class E>
Matrix<psi_value_t<E>> pairing_matrix(PsiContext<E>& ctx, const std::vector<Face>& rows,
                                      const std::vector<Face>& cols) {
  using Val = psi_value_t<E>;
  const auto& K = ctx.complex();
  Matrix<Val> P(rows.size(), cols.size(), ctx.value_field());
  for (size_t r = 0; r < rows.size(); ++r)
    for (size_t c = 0; c < cols.size(); ++c) {
      auto prod = monomial_product(K, face_exponents(rows[r], ctx.matrix().m),
                                   face_exponents(cols[c], ctx.matrix().m),
                                   ctx.value_field().one());
      if (!prod.is_zero()) P.at(r, c) = ctx.psi_element(prod);
    }
  return P;
}

// Duality zero test: alpha = 0 in the reduction iff Psi(alpha * x_tau) = 0
// for every complementary face monomial. In ball mode tau ranges over
// interior faces (the relative pairing).
template <class E>
bool is_zero(PsiContext<E>& ctx, const RingElement<psi_value_t<E>>& alpha) {
  using Val = psi_value_t<E>;
  const auto& K = ctx.complex();
  if (alpha.degree < 0 || alpha.degree > ctx.d())
    fail("DegreeOutOfRange", "degree outside [0, d]");
  if (alpha.is_zero()) return true;
  int comp = ctx.d() - alpha.degree;
  std::vector<Face> taus = ctx.mode() == PsiMode::ball_relative
                               ? interior_faces(K, comp)
                               : face_monomial_span(K, comp);
  for (const Face& tau : taus) {
    ExpVec te = face_exponents(tau, ctx.matrix().m);
    RingElement<Val> prod;
    prod.degree = ctx.d();
    for (const auto& [e, c] : alpha.terms) {
      ExpVec sum = e;
      for (size_t t = 0; t < sum.size(); ++t) sum[t] += te[t];
      prod.add(K, sum, c);
    }
    if (!prod.is_zero() && !ctx.psi_element(prod).is_zero()) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Certified degree bases (field-specialized contexts)
// ---------------------------------------------------------------------------
struct DegreeBasis {
  int degree = 0;
  std::vector<Face> faces;
  std::vector<Face> witness_cols;  // complementary faces of the certifying minor
};

// Greedy lexicographic selection of h_i face monomials whose pairing rows
// against the complementary monomials are linearly independent. A nonzero
// minor at the (already specialized) context certifies generic independence.
// `must_include` faces are tried first; `candidates` restricts the pool.
template <class E>
DegreeBasis select_basis(PsiContext<E>& ctx, int i,
                         const std::vector<Face>& must_include = {},
                         const std::vector<Face>& candidates = {}) {
  using F = psi_value_t<E>;
  const auto& K = ctx.complex();
  auto fld = ctx.value_field();
  auto h = fh_vectors(K).h;
  if (i < 0 || i > ctx.d()) fail("DegreeOutOfRange", "degree " + std::to_string(i));
  size_t target = (size_t)h[(size_t)i];
  std::vector<Face> pool = candidates.empty() ? face_monomial_span(K, i) : candidates;
  std::vector<Face> ordered = must_include;
  for (const Face& f : pool)
    if (std::find(ordered.begin(), ordered.end(), f) == ordered.end()) ordered.push_back(f);
  std::vector<Face> cols = face_monomial_span(K, ctx.d() - i);

  DegreeBasis out;
  out.degree = i;
  if (target == 0) return out;
  // reduced independent rows + pivot bookkeeping
  std::vector<std::vector<F>> rows;
  std::vector<size_t> pivots;
  for (const Face& cand : ordered) {
    bool mandatory = std::find(must_include.begin(), must_include.end(), cand) !=
                     must_include.end();
    if (out.faces.size() == target) {
      if (mandatory)
        fail("WitnessSearchFailed", "more must-include faces than the basis size");
      break;
    }
    std::vector<F> row(cols.size(), fld.zero());
    for (size_t c = 0; c < cols.size(); ++c) {
      auto prod = monomial_product(K, face_exponents(cand, ctx.matrix().m),
                                   face_exponents(cols[c], ctx.matrix().m), fld.one());
      if (!prod.is_zero()) row[c] = ctx.psi_element(prod);
    }
    // stored rows are mutually reduced (1 at own pivot, 0 at the others), so
    // one elimination pass suffices
    for (size_t r = 0; r < rows.size(); ++r) {
      if (row[pivots[r]].is_zero()) continue;
      F f = row[pivots[r]];
      for (size_t c = 0; c < cols.size(); ++c) row[c] = row[c] - f * rows[r][c];
    }
    size_t piv = cols.size();
    for (size_t c = 0; c < cols.size(); ++c)
      if (!row[c].is_zero()) {
        piv = c;
        break;
      }
    if (piv == cols.size()) {
      if (mandatory)
        fail("WitnessSearchFailed", "must-include face dependent at this specialization");
      continue;
    }
    F inv = row[piv].inv();
    for (size_t c = 0; c < cols.size(); ++c) row[c] = row[c] * inv;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (rows[r][piv].is_zero()) continue;
      F f = rows[r][piv];
      for (size_t c = 0; c < cols.size(); ++c) rows[r][c] = rows[r][c] - f * row[c];
    }
    rows.push_back(std::move(row));
    pivots.push_back(piv);
    out.faces.push_back(cand);
  }
  if (out.faces.size() != target)
    fail("WitnessSearchFailed", "could not certify a basis of size " +
                                    std::to_string(target));
  for (size_t p : pivots) out.witness_cols.push_back(cols[p]);
  return out;
}

// A specialized context together with the point that produced it (the point
// is the independence/rank witness for anything certified on this context).
template <class F>
struct SpecializedContext {
  PsiContext<F> ctx;
  std::map<uint32_t, F> point;
};

// Specialize a symbolic l.s.o.p. at random points until every facet minor is
// nonzero, then wrap it in a context with a random replacement vector.
template <class K, class Fld>
auto specialize_context(const SimplicialComplex& Kx, const LsopMatrix<MultiPoly<K>>& M,
                        const Fld& fld, Rng& rng, PsiMode mode = PsiMode::sphere,
                        bool validate = false, int tries = 32)
    -> SpecializedContext<decltype(fld.zero())> {
  using F = decltype(fld.zero());
  for (int t = 0; t < tries; ++t) {
    auto pt = random_point(M, {}, fld, rng);
    LsopMatrix<F> S = specialize_lsop(M, pt, fld);
    bool ok = true;
    for (const auto& f : Kx.facets())
      if (minor_det(S, f).is_zero()) {
        ok = false;
        break;
      }
    if (!ok) continue;
    std::vector<F> repl;
    for (int i = 0; i < S.d; ++i) repl.push_back(fld.random(rng));
    return {PsiContext<F>(Kx, std::move(S), std::move(repl), mode, validate),
            std::move(pt)};
  }
  fail("WitnessSearchFailed", "no valid specialization found");
}

// ---------------------------------------------------------------------------
// Macaulay-style oracle: the graded quotient by the face ideal plus the
// l.s.o.p., built from explicit relation rows; no facet-star formula.
// ---------------------------------------------------------------------------
template <class F>
F oracle_psi(const SimplicialComplex& K, const LsopMatrix<F>& M, const ExpVec& e) {
  if (K.vertex_count() > 10) fail("CostGuard", "oracle limited to m <= 10");
  if (M.d != K.d() || M.m != K.vertex_count())
    fail("DimensionMismatch", "matrix does not match the complex");
  if (!is_lsop(K, M)) fail("BadParams", "specialized matrix is not an l.s.o.p.");
  int d = M.d, m = M.m;
  if (degree_of(e) != d) fail("WrongDegree", "oracle needs total degree d");
  auto fld = field_of(M);

  // all face-supported exponent vectors of a given degree
  auto monoms = [&](int deg) {
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
    rec(rec, 0, deg);
    return out;
  };

  std::vector<ExpVec> Sd = monoms(d), Sprev = monoms(d - 1);
  std::map<ExpVec, size_t> index;
  for (size_t t = 0; t < Sd.size(); ++t) index[Sd[t]] = t;

  // relations theta_t * mu for all degree-(d-1) monomials mu
  std::vector<std::vector<F>> rows;
  for (const ExpVec& mu : Sprev)
    for (int t = 1; t <= d; ++t) {
      std::vector<F> row(Sd.size(), fld.zero());
      bool nonzero = false;
      for (int j = 1; j <= m; ++j) {
        const F& a = M.entry(t, j);
        if (a.is_zero()) continue;
        ExpVec v = mu;
        v[(size_t)j - 1] += 1;
        auto it = index.find(v);
        if (it == index.end()) continue;  // non-face: zero in the face ring
        row[it->second] += a;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }

  // RREF of the relation space
  size_t cols = Sd.size(), rank = 0;
  std::vector<size_t> pivot_cols;
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
  auto reduce = [&](std::vector<F> v) {
    for (size_t r = 0; r < rank; ++r) {
      size_t col = pivot_cols[r];
      if (v[col].is_zero()) continue;
      F f = v[col];
      for (size_t c = 0; c < cols; ++c) v[c] = v[c] - f * rows[r][c];
    }
    return v;
  };
  if (cols - rank != 1)
    fail("Internal", "top-degree quotient is not one-dimensional");

  auto oc = orient(K);
  const Face& ref = oc.root;
  std::vector<F> vref(cols, fld.zero());
  vref[index.at(face_exponents(ref, m))] = fld.one();
  vref = reduce(std::move(vref));

  std::vector<F> ve(cols, fld.zero());
  auto ite = index.find(e);
  if (ite == index.end()) return fld.zero();  // non-face support
  ve[ite->second] = fld.one();
  ve = reduce(std::move(ve));

  // both residues live in the 1-dim quotient; gamma = ve / vref there
  size_t free_col = cols;
  for (size_t c = 0; c < cols; ++c)
    if (!vref[c].is_zero()) {
      free_col = c;
      break;
    }
  if (free_col == cols) fail("Internal", "reference facet monomial vanishes in the quotient");
  F gamma = ve[free_col] / vref[free_col];
  // normalization Psi(x_ref) = 1 / det M(ref) with the root's +1 orientation
  return gamma / minor_det(M, ref);
}

// ---------------------------------------------------------------------------
// Batch oracle: Psi of every face-supported degree-d monomial at a
// specialization, from a single elimination. Independent of the facet-star
// formula: the l.s.o.p. is solved for the vertices of the reference facet,
// the remaining variables present the quotient, and one RREF of the
// substituted minimal-non-face relations pins the one-dimensional top piece.
// Agrees with oracle_psi entry by entry.
// ---------------------------------------------------------------------------
template <class F>
std::map<ExpVec, F> oracle_psi_table(const SimplicialComplex& K,
                                     const LsopMatrix<F>& M) {
  if (K.vertex_count() > 10) fail("CostGuard", "oracle limited to m <= 10");
  if (M.d != K.d() || M.m != K.vertex_count())
    fail("DimensionMismatch", "matrix does not match the complex");
  if (!is_lsop(K, M)) fail("BadParams", "specialized matrix is not an l.s.o.p.");
  int d = M.d, m = M.m;
  auto fld = field_of(M);
  auto oc = orient(K);
  const Face& ref = oc.root;

  std::vector<int> freev;
  for (int j = 1; j <= m; ++j)
    if (!face_subset({j}, ref)) freev.push_back(j);
  int nf = (int)freev.size();

  // solve M(ref) x_ref = -(free columns) y: x_{ref[i]} = sum_j S[i][j] y_j
  std::vector<std::vector<F>> aug((size_t)d, std::vector<F>((size_t)(d + nf), fld.zero()));
  for (int i = 0; i < d; ++i) {
    for (int t = 0; t < d; ++t) aug[(size_t)i][(size_t)t] = M.entry(i + 1, ref[(size_t)t]);
    for (int j = 0; j < nf; ++j)
      aug[(size_t)i][(size_t)(d + j)] = -M.entry(i + 1, freev[(size_t)j]);
  }
  for (int col = 0; col < d; ++col) {
    int piv = col;
    while (piv < d && aug[(size_t)piv][(size_t)col].is_zero()) ++piv;
    if (piv == d) fail("Internal", "reference facet minor is singular");
    std::swap(aug[(size_t)col], aug[(size_t)piv]);
    F inv = aug[(size_t)col][(size_t)col].inv();
    for (int c = col; c < d + nf; ++c)
      aug[(size_t)col][(size_t)c] = aug[(size_t)col][(size_t)c] * inv;
    for (int r = 0; r < d; ++r) {
      if (r == col || aug[(size_t)r][(size_t)col].is_zero()) continue;
      F f = aug[(size_t)r][(size_t)col];
      for (int c = col; c < d + nf; ++c)
        aug[(size_t)r][(size_t)c] = aug[(size_t)r][(size_t)c] - f * aug[(size_t)col][(size_t)c];
    }
  }
  // linear form (in the free variables) substituted for each vertex
  std::vector<std::vector<F>> lin((size_t)m + 1, std::vector<F>((size_t)nf, fld.zero()));
  for (int j = 0; j < nf; ++j) lin[(size_t)freev[(size_t)j]][(size_t)j] = fld.one();
  for (int t = 0; t < d; ++t)
    for (int j = 0; j < nf; ++j)
      lin[(size_t)ref[(size_t)t]][(size_t)j] = aug[(size_t)t][(size_t)(d + j)];

  // sparse polynomials over the free variables
  using Poly = std::map<ExpVec, F>;
  auto mul_linear = [&](const Poly& p, const std::vector<F>& l) {
    Poly r;
    for (const auto& [e, c] : p)
      for (int j = 0; j < nf; ++j) {
        if (l[(size_t)j].is_zero()) continue;
        ExpVec e2 = e;
        e2[(size_t)j] += 1;
        auto [it, fresh] = r.emplace(std::move(e2), c * l[(size_t)j]);
        if (!fresh) it->second += c * l[(size_t)j];
      }
    for (auto it = r.begin(); it != r.end();)
      it = it->second.is_zero() ? r.erase(it) : std::next(it);
    return r;
  };
  auto image_of = [&](const ExpVec& e) {
    Poly p{{ExpVec((size_t)nf, 0), fld.one()}};
    for (int v = 1; v <= m; ++v)
      for (int k = 0; k < e[(size_t)v - 1]; ++k) p = mul_linear(p, lin[(size_t)v]);
    return p;
  };

  // monomials of a given degree in the free variables
  auto ymonoms = [&](int deg) {
    std::vector<ExpVec> out;
    ExpVec cur((size_t)nf, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == nf) {
        if (left == 0) out.push_back(cur);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[(size_t)pos] = k;
        self(self, pos + 1, left - k);
      }
      cur[(size_t)pos] = 0;
    };
    rec(rec, 0, deg);
    return out;
  };
  std::vector<ExpVec> Yd = ymonoms(d);
  std::map<ExpVec, size_t> yindex;
  for (size_t t = 0; t < Yd.size(); ++t) yindex[Yd[t]] = t;
  size_t cols = Yd.size();

  // minimal non-faces of cardinality <= d (larger ones give no degree-d rows)
  std::vector<Face> min_nonfaces;
  for (uint32_t mask = 1; mask < (1u << m); ++mask) {
    if ((int)std::popcount(mask) > d) continue;
    Face N;
    for (int v = 1; v <= m; ++v)
      if (mask & (1u << (v - 1))) N.push_back(v);
    if (K.contains(N)) continue;
    bool minimal = true;
    for (int v : N)
      if (!K.contains(face_minus(N, {v}))) minimal = false;
    if (minimal) min_nonfaces.push_back(N);
  }

  std::vector<std::vector<F>> rows;
  for (const Face& N : min_nonfaces) {
    ExpVec eN((size_t)m, 0);
    for (int v : N) eN[(size_t)v - 1] = 1;
    Poly PN = image_of(eN);
    for (const ExpVec& mu : ymonoms(d - (int)N.size())) {
      std::vector<F> row(cols, fld.zero());
      bool nonzero = false;
      for (const auto& [e, c] : PN) {
        ExpVec sum = e;
        for (size_t j = 0; j < (size_t)nf; ++j) sum[j] += mu[j];
        row[yindex.at(sum)] += c;
        nonzero = true;
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  size_t rank = 0;
  std::vector<size_t> pivot_cols;
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
  if (cols - rank != 1) fail("Internal", "top-degree quotient is not one-dimensional");
  auto reduce = [&](std::vector<F> v) {
    for (size_t r = 0; r < rank; ++r) {
      size_t col = pivot_cols[r];
      if (v[col].is_zero()) continue;
      F f = v[col];
      for (size_t c = 0; c < cols; ++c) v[c] = v[c] - f * rows[r][c];
    }
    return v;
  };
  auto residue = [&](const ExpVec& e) {
    std::vector<F> v(cols, fld.zero());
    for (const auto& [ye, c] : image_of(e)) v[yindex.at(ye)] += c;
    return reduce(std::move(v));
  };

  std::vector<F> vref = residue(face_exponents(ref, m));
  size_t free_col = cols;
  for (size_t c = 0; c < cols; ++c)
    if (!vref[c].is_zero()) {
      free_col = c;
      break;
    }
  if (free_col == cols)
    fail("Internal", "reference facet monomial vanishes in the quotient");
  F scale = (fld.one() / vref[free_col]) / minor_det(M, ref);

  // all face-supported degree-d exponent vectors
  std::map<ExpVec, F> table;
  {
    ExpVec cur((size_t)m, 0);
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == m) {
        if (left == 0 && K.contains(support_of(cur)))
          table[cur] = residue(cur)[free_col] * scale;
        return;
      }
      for (int k = 0; k <= left; ++k) {
        cur[(size_t)pos] = k;
        self(self, pos + 1, left - k);
      }
      cur[(size_t)pos] = 0;
    };
    rec(rec, 0, d);
  }
  return table;
}

}  // namespace facering
