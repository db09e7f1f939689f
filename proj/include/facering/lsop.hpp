#pragma once

// Linear systems of parameters theta_t = sum_j M[t][j] x_j as d x m matrices:
// fully generic, normalized (I_d | A), the structured b-variable matrix used
// by the bistellar-move argument, cone/suspension matrices with pinned apex
// columns, validity checking, and the minors A_I / A_I(i) feeding the
// evaluation of the canonical function.

#include <optional>
#include <string>
#include <vector>

#include "facering/complex.hpp"
#include "facering/linalg.hpp"
#include "facering/multipoly.hpp"

namespace facering {

template <class E>
struct LsopMatrix {
  int d = 0;                        // rows
  int m = 0;                        // columns = vertices
  std::vector<std::vector<E>> col;  // col[j-1] = column of vertex j, length d
  std::string kind = "custom";

  const std::vector<E>& column(int j) const {
    if (j < 1 || j > m) fail("BadIndex", "lsop column " + std::to_string(j));
    return col[(size_t)j - 1];
  }
  E& entry(int i, int j) {
    if (i < 1 || i > d || j < 1 || j > m) fail("BadIndex", "lsop entry");
    return col[(size_t)j - 1][(size_t)i - 1];
  }
  const E& entry(int i, int j) const {
    if (i < 1 || i > d || j < 1 || j > m) fail("BadIndex", "lsop entry");
    return col[(size_t)j - 1][(size_t)i - 1];
  }
};

// Field descriptor of the entry type (works for MultiPoly and plain fields).
template <class E>
auto field_of(const LsopMatrix<E>& M) {
  return M.col.at(0).at(0).field();
}

namespace detail {

template <class E>
LsopMatrix<E> blank_lsop(int d, int m, const E& zero) {
  LsopMatrix<E> M;
  M.d = d;
  M.m = m;
  M.col.assign((size_t)m, std::vector<E>((size_t)d, zero));
  return M;
}

}  // namespace detail

// Every entry a fresh variable a[i][j].
template <class K>
LsopMatrix<MultiPoly<K>> generic_lsop(const SimplicialComplex& Kx,
                                      typename K::Field fld) {
  using P = MultiPoly<K>;
  if (!Kx.pure()) fail("NotPure", "l.s.o.p. construction needs a pure complex");
  auto M = detail::blank_lsop(Kx.d(), Kx.vertex_count(), P::zero(fld));
  for (int i = 1; i <= M.d; ++i)
    for (int j = 1; j <= M.m; ++j) M.entry(i, j) = P::var(VarId::a(i, j), fld);
  M.kind = "generic";
  return M;
}

// (I_d | A) up to column placement: the pinned facet's columns are the
// standard basis vectors (vertices keep their labels; no reordering), all
// other entries fresh variables. Default pin: lexicographically least facet.
template <class K>
LsopMatrix<MultiPoly<K>> normalized_lsop(const SimplicialComplex& Kx,
                                         typename K::Field fld,
                                         const std::optional<Face>& pin = std::nullopt) {
  using P = MultiPoly<K>;
  if (!Kx.pure()) fail("NotPure", "l.s.o.p. construction needs a pure complex");
  Face facet;
  if (pin) {
    auto& fs = Kx.facets();
    if (std::find(fs.begin(), fs.end(), *pin) == fs.end())
      fail("NoPinningFacet", "pin " + face_str(*pin) + " is not a facet");
    facet = *pin;
  } else {
    if (Kx.facets().empty() || (int)Kx.facets()[0].size() != Kx.d())
      fail("NoPinningFacet", "no full-dimensional facet to pin");
    facet = Kx.facets()[0];
  }
  auto M = detail::blank_lsop(Kx.d(), Kx.vertex_count(), P::zero(fld));
  for (int i = 1; i <= M.d; ++i)
    for (int j = 1; j <= M.m; ++j) M.entry(i, j) = P::var(VarId::a(i, j), fld);
  for (size_t t = 0; t < facet.size(); ++t) {
    int j = facet[t];
    for (int i = 1; i <= M.d; ++i)
      M.entry(i, j) = (i == (int)t + 1) ? P::one(fld) : P::zero(fld);
  }
  M.kind = "normalized";
  return M;
}

// The structured matrix of the bistellar-move argument for a (2n-1)-sphere
// labeled so the move faces are tau = [q+1] and sigma = [2n+1] \ [q+1]:
// for j <= 2n the column is e_j plus b_i in row i = j + 2n-q-1 (when that row
// exists); column 2n+1 is (b_1,...,b_{2n-q-1},0,...,0)^T; later columns are
// fresh generic variables.
template <class K>
LsopMatrix<MultiPoly<K>> theorem41_lsop(const SimplicialComplex& Kx, int q, int n,
                                        typename K::Field fld) {
  using P = MultiPoly<K>;
  if (n < 2 || q < 1 || q >= n) fail("BadParams", "need 0 < q < n, n >= 2");
  int d = 2 * n;
  if (Kx.d() != d) fail("BadLabeling", "complex dimension must be 2n-1");
  if (Kx.vertex_count() < 2 * n + 1) fail("BadLabeling", "need at least 2n+1 vertices");
  Face tau, sigma;
  for (int v = 1; v <= q + 1; ++v) tau.push_back(v);
  for (int v = q + 2; v <= 2 * n + 1; ++v) sigma.push_back(v);
  // One of the two move faces must be present with the other as its link
  // boundary (the matrix serves the complexes on both sides of the move).
  auto link_is_boundary_of = [&](const Face& a, const Face& b) {
    if (!Kx.contains(a) || Kx.contains(b)) return false;
    auto lk = link_raw(Kx, a);
    std::vector<Face> want;
    for (size_t v = 0; v < b.size(); ++v) {
      Face g = b;
      g.erase(g.begin() + (long)v);
      want.push_back(g);
    }
    std::sort(want.begin(), want.end());
    return lk.facets() == want;
  };
  if (!link_is_boundary_of(sigma, tau) && !link_is_boundary_of(tau, sigma))
    fail("BadLabeling", "move faces are not at tau=[q+1], sigma=[2n+1]\\[q+1]");

  auto M = detail::blank_lsop(d, Kx.vertex_count(), P::zero(fld));
  int off = 2 * n - q - 1;
  for (int j = 1; j <= 2 * n; ++j) {
    M.entry(j, j) = P::one(fld);
    if (j + off <= d) M.entry(j + off, j) = P::var(VarId::b(j + off), fld);
  }
  for (int i = 1; i <= off; ++i) M.entry(i, 2 * n + 1) = P::var(VarId::b(i), fld);
  for (int j = 2 * n + 2; j <= M.m; ++j)
    for (int i = 1; i <= d; ++i) M.entry(i, j) = P::var(VarId::a(i, j), fld);
  M.kind = "theorem41";
  return M;
}

enum class ConeVariant { cone_apex, suspension_apexes };

// Cone/suspension matrices: the apex column is e_1 (for a suspension the two
// apex columns are e_1, e_2); all other entries fresh generic variables.
// Apexes are the last vertex ids, as produced by cone()/suspension().
template <class K>
LsopMatrix<MultiPoly<K>> cone_lsop(const SimplicialComplex& Kx, ConeVariant variant,
                                   typename K::Field fld) {
  using P = MultiPoly<K>;
  if (!Kx.pure()) fail("NotPure", "l.s.o.p. construction needs a pure complex");
  int m = Kx.vertex_count(), d = Kx.d();
  int napex = variant == ConeVariant::cone_apex ? 1 : 2;
  // every facet must contain an apex (for a cone, the apex itself).
  for (const auto& f : Kx.facets()) {
    bool ok = false;
    for (int t = 0; t < napex; ++t) ok |= face_subset({m - t}, f);
    if (!ok) fail("NotACone", "facet " + face_str(f) + " misses the apex");
  }
  auto M = detail::blank_lsop(d, m, P::zero(fld));
  for (int i = 1; i <= d; ++i)
    for (int j = 1; j <= m - napex; ++j) M.entry(i, j) = P::var(VarId::a(i, j), fld);
  for (int t = 0; t < napex; ++t) M.entry(napex - t, m - t) = P::one(fld);
  M.kind = variant == ConeVariant::cone_apex ? "cone" : "suspension";
  return M;
}

// ---------------------------------------------------------------------------
// Minors
// ---------------------------------------------------------------------------

// det of the d x d submatrix on the ordered vertex list I.
template <class E>
E minor_det(const LsopMatrix<E>& M, const std::vector<int>& I) {
  if ((int)I.size() != M.d) fail("BadIndex", "minor needs exactly d columns");
  Matrix<E> sq((size_t)M.d, (size_t)M.d, field_of(M));
  for (size_t t = 0; t < I.size(); ++t) {
    const auto& c = M.column(I[t]);
    for (int i = 0; i < M.d; ++i) sq.at((size_t)i, t) = c[(size_t)i];
  }
  return laplace_det(sq);
}

// det with the column of vertex i replaced by the vector a.
template <class E>
E minor_replaced(const LsopMatrix<E>& M, const std::vector<int>& I, int i,
                 const std::vector<E>& a) {
  if ((int)I.size() != M.d) fail("BadIndex", "minor needs exactly d columns");
  if ((int)a.size() != M.d) fail("BadIndex", "replacement vector length != d");
  bool found = false;
  Matrix<E> sq((size_t)M.d, (size_t)M.d, field_of(M));
  for (size_t t = 0; t < I.size(); ++t) {
    const std::vector<E>* c = &M.column(I[t]);
    if (I[t] == i) {
      c = &a;
      found = true;
    }
    for (int r = 0; r < M.d; ++r) sq.at((size_t)r, t) = (*c)[(size_t)r];
  }
  if (!found) fail("BadIndex", "replaced vertex not in the column list");
  return laplace_det(sq);
}

// Fresh replacement vector (c_1,...,c_d)^T.
template <class K>
std::vector<MultiPoly<K>> fresh_replacement(int d, typename K::Field fld) {
  std::vector<MultiPoly<K>> a;
  for (int i = 1; i <= d; ++i) a.push_back(MultiPoly<K>::var(VarId::c(i), fld));
  return a;
}

// ---------------------------------------------------------------------------
// Validity: det M(sigma) != 0 for every facet sigma (exact).
// ---------------------------------------------------------------------------
template <class E>
bool is_lsop(const SimplicialComplex& Kx, const LsopMatrix<E>& M) {
  if (M.d != Kx.d() || M.m != Kx.vertex_count())
    fail("DimensionMismatch", "l.s.o.p. matrix does not match the complex");
  for (const auto& f : Kx.facets())
    if (minor_det(M, f).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Specialization and JSON
// ---------------------------------------------------------------------------
template <class K, class F>
LsopMatrix<F> specialize_lsop(const LsopMatrix<MultiPoly<K>>& M,
                              const std::map<uint32_t, F>& point,
                              const typename F::Field& fld) {
  auto S = detail::blank_lsop(M.d, M.m, fld.zero());
  for (int i = 1; i <= M.d; ++i)
    for (int j = 1; j <= M.m; ++j) S.entry(i, j) = specialize(M.entry(i, j), point, fld);
  S.kind = M.kind;
  return S;
}

// Random specialization point covering all matrix variables plus any extras.
template <class K, class Fld>
auto random_point(const LsopMatrix<MultiPoly<K>>& M, const std::vector<VarId>& extra,
                  const Fld& fld, Rng& rng) {
  using F = decltype(fld.zero());
  std::map<uint32_t, F> pt;
  for (int i = 1; i <= M.d; ++i)
    for (int j = 1; j <= M.m; ++j)
      for (VarId v : M.entry(i, j).variables()) pt[v.id] = fld.random(rng);
  for (VarId v : extra) pt[v.id] = fld.random(rng);
  return pt;
}

template <class K>
std::string lsop_to_json_text(const LsopMatrix<MultiPoly<K>>& M) {
  std::ostringstream os;
  os << "{\"v\":1,\"kind\":\"" << M.kind << "\",\"d\":" << M.d << ",\"m\":" << M.m
     << ",\"entries\":[";
  for (int i = 1; i <= M.d; ++i) {
    os << (i > 1 ? ",[" : "[");
    for (int j = 1; j <= M.m; ++j)
      os << (j > 1 ? "," : "") << "\"" << M.entry(i, j).str() << "\"";
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace facering
