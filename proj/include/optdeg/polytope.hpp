#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "optdeg/degrees.hpp"

namespace optdeg {

using LatticePoint = std::vector<long long>;

/// Convex hull of finitely many lattice points, kept as its extreme points (sorted).
class LatticePolytope {
 public:
  LatticePolytope(std::size_t ambient, std::vector<LatticePoint> points);

  std::size_t ambient_dimension() const noexcept { return m_; }
  const std::vector<LatticePoint>& vertices() const noexcept { return vertices_; }
  int dimension() const;
  /// Euclidean volume in the ambient space (zero unless full-dimensional).
  Rational volume() const;
  /// m! * volume, an integer.
  BigInt normalized_volume() const;

  LatticePolytope dilate(long long c) const;
  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.m_ == b.m_ && a.vertices_ == b.vertices_;
  }

 private:
  std::size_t m_;
  std::vector<LatticePoint> vertices_;
};

namespace detail {

// Rank of integer vectors via fraction-free elimination.
inline int rank_of(std::vector<std::vector<BigInt>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      BigInt a = rows[rank][c], b = rows[r][c];
      BigInt g = 0;
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = rows[r][k] * a - rows[rank][k] * b;
        g = gcd(g, rows[r][k]);
      }
      if (g > 1)
        for (std::size_t k = c; k < cols; ++k) rows[r][k] /= g;
    }
    ++rank;
  }
  return rank;
}

// Bareiss determinant.
inline BigInt determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

/// Hull of points in R^k (full-dimensional) by beneath-beyond placement. Every inserted
/// point cones off the facets it strictly sees, which yields a placing triangulation.
class PlacingHull {
 public:
  struct Facet {
    std::vector<std::size_t> verts;  // k point indices
    std::vector<BigInt> normal;      // outward: normal . (x - verts[0]) > 0 outside
  };

  PlacingHull(const std::vector<std::vector<BigInt>>& pts, std::size_t k) : pts_(pts), k_(k) {
    std::vector<std::size_t> simplex = initial_simplex();
    for (std::size_t skip = 0; skip <= k_; ++skip) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j <= k_; ++j)
        if (j != skip) f.push_back(simplex[j]);
      facets_.push_back(oriented(f, simplex[skip]));
    }
    {
      std::vector<std::vector<BigInt>> rows;
      for (std::size_t j = 1; j <= k_; ++j) rows.push_back(diff(simplex[j], simplex[0]));
      volume_ = abs(determinant(rows));
    }
    std::set<std::size_t> used(simplex.begin(), simplex.end());
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (!used.count(i)) insert(i);
  }

  const std::vector<Facet>& facets() const noexcept { return facets_; }
  const BigInt& normalized_volume() const noexcept { return volume_; }

  BigInt side(const Facet& f, const std::vector<BigInt>& x) const {
    BigInt s = 0;
    const auto& v0 = pts_[f.verts[0]];
    for (std::size_t j = 0; j < k_; ++j) s += f.normal[j] * (x[j] - v0[j]);
    return s;
  }

 private:
  std::vector<BigInt> diff(std::size_t a, std::size_t b) const {
    std::vector<BigInt> d(k_);
    for (std::size_t j = 0; j < k_; ++j) d[j] = pts_[a][j] - pts_[b][j];
    return d;
  }

  std::vector<std::size_t> initial_simplex() const {
    std::vector<std::size_t> chosen{0};
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = 1; i < pts_.size() && chosen.size() <= k_; ++i) {
      rows.push_back(diff(i, 0));
      if (rank_of(rows) == static_cast<int>(rows.size())) {
        chosen.push_back(i);
      } else {
        rows.pop_back();
      }
    }
    if (chosen.size() != k_ + 1) throw std::logic_error("PlacingHull: points are not full-dimensional");
    return chosen;
  }

  // normal_j = det(v1 - v0, ..., v_{k-1} - v0, e_j), flipped so `inside` is on the negative side
  Facet oriented(std::vector<std::size_t> verts, std::size_t inside) const {
    std::vector<std::vector<BigInt>> rows;
    for (std::size_t j = 1; j < verts.size(); ++j) rows.push_back(diff(verts[j], verts[0]));
    std::vector<BigInt> normal(k_);
    for (std::size_t j = 0; j < k_; ++j) {
      auto m = rows;
      std::vector<BigInt> e(k_, BigInt(0));
      e[j] = 1;
      m.push_back(e);
      normal[j] = determinant(m);
    }
    Facet f{std::move(verts), std::move(normal)};
    BigInt s = side(f, pts_[inside]);
    if (s == 0) throw std::logic_error("PlacingHull: degenerate facet");
    if (s > 0)
      for (auto& x : f.normal) x = -x;
    return f;
  }

  void insert(std::size_t p) {
    std::vector<Facet> keep;
    std::map<std::vector<std::size_t>, std::pair<int, std::size_t>> ridges;  // ridge -> (count, opposite vertex)
    for (auto& f : facets_) {
      BigInt s = side(f, pts_[p]);
      if (s <= 0) {
        keep.push_back(std::move(f));
        continue;
      }
      volume_ += s;
      for (std::size_t drop = 0; drop < f.verts.size(); ++drop) {
        std::vector<std::size_t> r;
        for (std::size_t j = 0; j < f.verts.size(); ++j)
          if (j != drop) r.push_back(f.verts[j]);
        std::sort(r.begin(), r.end());
        auto& slot = ridges[r];
        ++slot.first;
        slot.second = f.verts[drop];
      }
    }
    facets_ = std::move(keep);
    for (auto& [r, info] : ridges) {
      if (info.first != 1) continue;  // shared by two visible facets: interior now
      std::vector<std::size_t> verts = r;
      verts.push_back(p);
      facets_.push_back(oriented(std::move(verts), info.second));
    }
  }

  const std::vector<std::vector<BigInt>>& pts_;
  std::size_t k_;
  std::vector<Facet> facets_;
  BigInt volume_ = 0;
};

struct AffineFrame {
  int dim = 0;
  std::vector<std::size_t> coords;  // coordinates on which projection is injective on the affine hull
};

inline AffineFrame affine_frame(const std::vector<LatticePoint>& pts) {
  AffineFrame fr;
  if (pts.empty()) return fr;
  const std::size_t m = pts.front().size();
  std::vector<std::vector<BigInt>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<BigInt> r(m);
    for (std::size_t j = 0; j < m; ++j) r[j] = BigInt(static_cast<long>(pts[i][j] - pts[0][j]));
    rows.push_back(std::move(r));
  }
  fr.dim = rank_of(rows);
  // greedily pick columns keeping the column rank growing
  std::vector<std::vector<BigInt>> cols;
  for (std::size_t j = 0; j < m && static_cast<int>(fr.coords.size()) < fr.dim; ++j) {
    std::vector<BigInt> c;
    for (const auto& r : rows) c.push_back(r[j]);
    cols.push_back(c);
    if (rank_of(cols) == static_cast<int>(cols.size())) {
      fr.coords.push_back(j);
    } else {
      cols.pop_back();
    }
  }
  return fr;
}

inline std::vector<std::vector<BigInt>> project(const std::vector<LatticePoint>& pts, const AffineFrame& fr) {
  std::vector<std::vector<BigInt>> out;
  for (const auto& p : pts) {
    std::vector<BigInt> q;
    for (std::size_t j : fr.coords) q.emplace_back(static_cast<long>(p[j]));
    out.push_back(std::move(q));
  }
  return out;
}

inline std::vector<LatticePoint> extreme_points(std::vector<LatticePoint> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 1) return pts;
  const AffineFrame fr = affine_frame(pts);
  if (fr.dim == 0) return {pts.front()};
  auto proj = project(pts, fr);
  if (fr.dim == 1) {
    auto [lo, hi] = std::minmax_element(proj.begin(), proj.end(),
                                        [](const auto& a, const auto& b) { return a[0] < b[0]; });
    std::vector<LatticePoint> out{pts[lo - proj.begin()], pts[hi - proj.begin()]};
    std::sort(out.begin(), out.end());
    return out;
  }
  PlacingHull hull(proj, static_cast<std::size_t>(fr.dim));
  // a boundary point is a vertex iff the facet hyperplanes through it have full-rank normals
  std::vector<LatticePoint> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<std::vector<BigInt>> normals;
    for (const auto& f : hull.facets())
      if (hull.side(f, proj[i]) == 0) normals.push_back(f.normal);
    if (rank_of(normals) == fr.dim) out.push_back(pts[i]);
  }
  return out;
}

inline BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace detail

inline LatticePolytope::LatticePolytope(std::size_t ambient, std::vector<LatticePoint> points) : m_(ambient) {
  if (points.empty()) throw DomainError("LatticePolytope", "empty point set");
  for (const auto& p : points)
    if (p.size() != ambient) throw DomainError("LatticePolytope", "point of wrong dimension");
  vertices_ = detail::extreme_points(std::move(points));
}

inline int LatticePolytope::dimension() const { return detail::affine_frame(vertices_).dim; }

inline BigInt LatticePolytope::normalized_volume() const {
  if (m_ == 0) return 1;
  if (dimension() < static_cast<int>(m_)) return 0;
  std::vector<std::vector<BigInt>> pts;
  for (const auto& v : vertices_) {
    std::vector<BigInt> q;
    for (long long x : v) q.emplace_back(static_cast<long>(x));
    pts.push_back(std::move(q));
  }
  return detail::PlacingHull(pts, m_).normalized_volume();
}

inline Rational LatticePolytope::volume() const {
  Rational v(normalized_volume(), detail::factorial(m_));
  v.canonicalize();
  return v;
}

inline LatticePolytope LatticePolytope::dilate(long long c) const {
  if (c < 0) throw DomainError("dilate", "factor must be nonnegative");
  std::vector<LatticePoint> pts = vertices_;
  for (auto& p : pts)
    for (auto& x : p) x *= c;
  return LatticePolytope(m_, std::move(pts));
}

/// Convex hull of the exponent vectors.
template <class Field>
LatticePolytope newton_polytope(const Polynomial<Field>& f) {
  if (f.is_zero()) throw DomainError("newton_polytope", "zero polynomial");
  const std::size_t n = f.ring()->size();
  std::vector<LatticePoint> pts;
  for (const auto& t : f.terms()) {
    LatticePoint p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = t.monomial.exp[i];
    pts.push_back(std::move(p));
  }
  return LatticePolytope(n, std::move(pts));
}

inline LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
  if (a.ambient_dimension() != b.ambient_dimension()) throw DomainError("minkowski_sum", "dimension mismatch");
  std::vector<LatticePoint> pts;
  for (const auto& u : a.vertices())
    for (const auto& v : b.vertices()) {
      LatticePoint w(u.size());
      for (std::size_t j = 0; j < u.size(); ++j) w[j] = u[j] + v[j];
      pts.push_back(std::move(w));
    }
  return LatticePolytope(a.ambient_dimension(), std::move(pts));
}

/// Mixed volume in the BKK normalization (MV(Δ,...,Δ) = 1 for the unit simplex), by
/// inclusion-exclusion over the 2^m - 1 partial Minkowski sums.
inline BigInt mixed_volume(const std::vector<LatticePolytope>& K) {
  const std::size_t m = K.size();
  if (m == 0) throw DomainError("mixed_volume", "no polytopes");
  if (m > 20) throw ResourceLimitError("mixed_volume", "too many polytopes for inclusion-exclusion");
  for (const auto& k : K)
    if (k.ambient_dimension() != m) throw DomainError("mixed_volume", "need m polytopes in dimension m");
  // partial sums built incrementally along the subset lattice (lowest set bit peeled off)
  std::vector<std::optional<LatticePolytope>> sums(std::size_t{1} << m);
  BigInt total = 0;
  for (std::size_t S = 1; S < sums.size(); ++S) {
    const std::size_t low = S & (~S + 1);
    const std::size_t rest = S ^ low;
    const std::size_t i = static_cast<std::size_t>(__builtin_ctzll(low));
    sums[S] = rest == 0 ? K[i] : minkowski_sum(*sums[rest], K[i]);
    const int size = __builtin_popcountll(S);
    BigInt nv = sums[S]->normalized_volume();
    if ((m - size) % 2 == 0) {
      total += nv;
    } else {
      total -= nv;
    }
  }
  const BigInt f = detail::factorial(m);
  if (total % f != 0) throw std::logic_error("mixed_volume: non-integral result");
  return total / f;
}

/// Supports A_1..A_k of the constraints f_j = sum_{a in A_j} c_{j,a} p^a, with generic
/// (seeded) or explicit coefficients.
struct SparseSupport {
  std::vector<std::vector<LatticePoint>> supports;
  std::optional<std::vector<Polynomial<RationalField>>> explicit_polys;
  std::uint64_t seed = 1;

  static SparseSupport generic(std::vector<std::vector<LatticePoint>> A, std::uint64_t seed = 1) {
    for (const auto& a : A)
      if (a.empty()) throw DomainError("SparseSupport", "empty support");
    return {std::move(A), std::nullopt, seed};
  }
  static SparseSupport from_polynomials(std::vector<Polynomial<RationalField>> polys) {
    SparseSupport s;
    for (const auto& f : polys) {
      if (f.is_zero()) throw DomainError("SparseSupport", "zero polynomial");
      std::vector<LatticePoint> all;
      for (const auto& t : f.terms()) {
        LatticePoint p(f.ring()->size());
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = t.monomial.exp[i];
        all.push_back(std::move(p));
      }
      s.supports.push_back(std::move(all));
    }
    s.explicit_polys = std::move(polys);
    return s;
  }

  /// Polynomials with these supports; seeded nonzero integer coefficients in generic mode.
  std::vector<Polynomial<RationalField>> instantiate(const RingPtr<RationalField>& ring) const {
    if (explicit_polys) return *explicit_polys;
    SplitMix64 rng(seed);
    std::vector<Polynomial<RationalField>> out;
    for (const auto& A : supports) {
      std::vector<Term<RationalField>> terms;
      for (const auto& a : A) {
        if (a.size() != ring->size()) throw DomainError("SparseSupport", "exponent vector of wrong length");
        Monomial mono;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] < 0 || a[i] > 255) throw DomainError("SparseSupport", "exponent out of range");
          mono.exp[i] = static_cast<std::uint8_t>(a[i]);
        }
        mono.refresh();
        terms.push_back({mono, Rational(static_cast<long>(rng.nonzero(kDefaultSampleBound)))});
      }
      out.push_back(Polynomial<RationalField>::from_terms(ring, std::move(terms)));
    }
    return out;
  }
};

/// Newton polytopes (in the n + k variables p, nu) of the cleared likelihood equations
/// u_i - p_i sum_j nu_j df_j/dp_i  and  f_j.
inline std::vector<LatticePolytope> likelihood_polytopes(const SparseSupport& S, std::size_t n) {
  const std::size_t k = S.supports.size();
  const std::size_t m = n + k;
  std::vector<LatticePolytope> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<LatticePoint> pts{LatticePoint(m, 0)};
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& a : S.supports[j]) {
        if (a[i] == 0) continue;  // p_i d/dp_i kills monomials free of p_i
        LatticePoint q(m, 0);
        std::copy(a.begin(), a.end(), q.begin());
        q[n + j] = 1;
        pts.push_back(std::move(q));
      }
    out.emplace_back(m, std::move(pts));
  }
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<LatticePoint> pts;
    for (const auto& a : S.supports[j]) {
      LatticePoint q(m, 0);
      std::copy(a.begin(), a.end(), q.begin());
      pts.push_back(std::move(q));
    }
    out.emplace_back(m, std::move(pts));
  }
  return out;
}

/// ML degree of the very affine V(f_1..f_k) in (C^*)^n as the mixed volume of the likelihood
/// polytopes. With explicit coefficients the Gröbner ML degree is reported alongside.
inline DegreeReport sparse_ml_degree(const SparseSupport& S, std::size_t n, const DegreeOptions& opts = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (S.supports.empty() || S.supports.size() > n)
    throw DomainError("sparse_ml_degree", "need 1 <= k <= n supports");
  for (const auto& A : S.supports) {
    if (A.empty()) throw DomainError("sparse_ml_degree", "empty support");
    for (const auto& a : A)
      if (a.size() != n) throw DomainError("sparse_ml_degree", "exponent vector of wrong length");
  }
  DegreeReport rep;
  rep.kind = "sparse-ml";
  const BigInt mv = mixed_volume(likelihood_polytopes(S, n));
  if (!mv.fits_slong_p()) throw ResourceLimitError("sparse_ml_degree", "mixed volume out of range");
  rep.value = mv.get_si();
  rep.parts.emplace_back("mixed_volume", rep.value);
  if (S.explicit_polys) {
    const auto& polys = *S.explicit_polys;
    if (polys.front().ring()->size() != n) throw DomainError("sparse_ml_degree", "ring size differs from n");
    auto g = ml_degree(Variety(polys.front().ring(), polys), MlFlavor::VeryAffine, opts);
    rep.parts.emplace_back("groebner", g.value);
    rep.provenance = g.provenance;
  }
  rep.provenance.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace optdeg
