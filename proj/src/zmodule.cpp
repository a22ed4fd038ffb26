#include "lagtor/zmodule.hpp"

#include <algorithm>
#include <numeric>

namespace lagtor {

// ---------------------------------------------------------------- intmat

long long checked_mul(long long a, long long b) {
  __int128 v = __int128(a) * b;
  if (v > INT64_MAX || v < INT64_MIN) throw InternalError("integer overflow");
  return (long long)v;
}

long long checked_add(long long a, long long b) {
  __int128 v = __int128(a) + b;
  if (v > INT64_MAX || v < INT64_MIN) throw InternalError("integer overflow");
  return (long long)v;
}

IMat identity_matrix(size_t n) {
  IMat m(n, IVec(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IMat mat_mul(const IMat& a, const IMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  IMat c(n, IVec(p, 0));
  for (size_t i = 0; i < n; ++i) {
    internal_check(a[i].size() == k, "matrix shape mismatch");
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < p; ++j)
        c[i][j] = checked_add(c[i][j], checked_mul(a[i][t], b[t][j]));
    }
  }
  return c;
}

IVec mat_apply(const IMat& a, const IVec& v) {
  IVec r(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    internal_check(a[i].size() == v.size(), "matrix/vector shape mismatch");
    for (size_t j = 0; j < v.size(); ++j)
      r[i] = checked_add(r[i], checked_mul(a[i][j], v[j]));
  }
  return r;
}

bool mat_eq(const IMat& a, const IMat& b) { return a == b; }

long long mat_det(IMat m) {
  size_t n = m.size();
  if (n == 0) return 1;
  for (auto& r : m) internal_check(r.size() == n, "det of non-square matrix");
  long long sign = 1, prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        long long t = checked_mul(m[i][j], m[k][k]) -
                      checked_mul(m[i][k], m[k][j]);
        internal_check(t % prev == 0, "Bareiss exact division failed");
        m[i][j] = t / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

namespace {

long long floor_div(long long a, long long b) {
  // b > 0
  long long q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

void row_sub(IMat& m, size_t dst, size_t src, long long f) {
  if (f == 0) return;
  for (size_t j = 0; j < m[dst].size(); ++j)
    m[dst][j] = checked_add(m[dst][j], -checked_mul(f, m[src][j]));
}

void row_neg(IMat& m, size_t r) {
  for (auto& x : m[r]) x = -x;
}

}  // namespace

HnfWithTransform hnf_with_transform(IMat m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (auto& r : m) internal_check(r.size() == cols, "ragged matrix");
  IMat t = identity_matrix(rows);
  size_t r = 0;
  for (size_t col = 0; col < cols && r < rows; ++col) {
    // Euclid on the entries of this column at rows >= r.
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (m[i][col] != 0 &&
            (best == rows ||
             std::llabs(m[i][col]) < std::llabs(m[best][col])))
          best = i;
      if (best == rows) break;  // no pivot in this column
      if (best != r) {
        std::swap(m[best], m[r]);
        std::swap(t[best], t[r]);
      }
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (m[i][col] == 0) continue;
        long long f = m[i][col] / m[r][col];
        row_sub(m, i, r, f);
        row_sub(t, i, r, f);
        if (m[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[r][col] == 0) continue;
    if (m[r][col] < 0) {
      row_neg(m, r);
      row_neg(t, r);
    }
    for (size_t i = 0; i < r; ++i) {
      long long f = floor_div(m[i][col], m[r][col]);
      row_sub(m, i, r, f);
      row_sub(t, i, r, f);
    }
    ++r;
  }
  return {std::move(m), std::move(t), r};
}

IMat hnf(IMat m) {
  HnfWithTransform h = hnf_with_transform(std::move(m));
  h.h.resize(h.rank);
  return h.h;
}

IMat inverse_unimodular(const IMat& m) {
  size_t n = m.size();
  HnfWithTransform h = hnf_with_transform(m);
  internal_check(h.rank == n && mat_eq(h.h, identity_matrix(n)),
                 "matrix is not unimodular");
  return h.t;
}

SmithResult smith(IMat m) {
  size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  IMat u = identity_matrix(rows), v = identity_matrix(cols);
  auto col_sub = [&](IMat& a, size_t dst, size_t src, long long f) {
    if (f == 0) return;
    for (size_t i = 0; i < a.size(); ++i)
      a[i][dst] = checked_add(a[i][dst], -checked_mul(f, a[i][src]));
  };
  auto col_swap = [&](IMat& a, size_t x, size_t y) {
    for (size_t i = 0; i < a.size(); ++i) std::swap(a[i][x], a[i][y]);
  };
  size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero entry of the trailing block to (t, t)
    size_t bi = rows, bj = cols;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (bi == rows || std::llabs(m[i][j]) <
                                               std::llabs(m[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi == rows) break;  // trailing block is zero
    if (bi != t) {
      std::swap(m[bi], m[t]);
      std::swap(u[bi], u[t]);
    }
    if (bj != t) {
      col_swap(m, bj, t);
      col_swap(v, bj, t);
    }
    bool again = false;
    for (size_t i = t + 1; i < rows; ++i) {
      if (m[i][t] == 0) continue;
      long long f = m[i][t] / m[t][t];
      row_sub(m, i, t, f);
      row_sub(u, i, t, f);
      if (m[i][t] != 0) again = true;
    }
    for (size_t j = t + 1; j < cols; ++j) {
      if (m[t][j] == 0) continue;
      long long f = m[t][j] / m[t][t];
      col_sub(m, j, t, f);
      col_sub(v, j, t, f);
      if (m[t][j] != 0) again = true;
    }
    if (again) continue;
    // enforce the divisibility chain
    bool fixed = true;
    for (size_t i = t + 1; i < rows && fixed; ++i)
      for (size_t j = t + 1; j < cols && fixed; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (size_t jj = 0; jj < cols; ++jj)
            m[t][jj] = checked_add(m[t][jj], m[i][jj]);
          for (size_t jj = 0; jj < rows; ++jj)
            u[t][jj] = checked_add(u[t][jj], u[i][jj]);
          fixed = false;
        }
    if (!fixed) continue;
    if (m[t][t] < 0) {
      row_neg(m, t);
      row_neg(u, t);
    }
    ++t;
  }
  return {std::move(u), std::move(m), std::move(v), t};
}

// --------------------------------------------------------------- ZModule

namespace {

// Scale rational rows to integers by the lcm of denominators.
long long common_denominator(const std::vector<std::vector<Rational>>& rows) {
  long long d = 1;
  for (const auto& r : rows)
    for (const Rational& q : r)
      d = checked_mul(d / std::gcd(d, q.den()), q.den());
  return d;
}

IMat scale_to_integers(const std::vector<std::vector<Rational>>& rows,
                       long long d) {
  IMat m(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    m[i].resize(rows[i].size());
    for (size_t j = 0; j < rows[i].size(); ++j) {
      Rational s = rows[i][j] * Rational(d);
      internal_check(s.is_integer(), "denominator scaling failed");
      m[i][j] = s.num();
    }
  }
  return m;
}

std::vector<std::vector<Rational>> unscale(const IMat& m, long long d) {
  std::vector<std::vector<Rational>> rows(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    rows[i].resize(m[i].size());
    for (size_t j = 0; j < m[i].size(); ++j)
      rows[i][j] = Rational(m[i][j], d);
  }
  return rows;
}

}  // namespace

SymReal ZModule::basis_element(size_t i) const {
  internal_check(i < rows_.size(), "basis element index out of range");
  return SymReal(basis_, rows_[i]);
}

SymReal ZModule::element_from_coords(const IVec& coords) const {
  internal_check(coords.size() == rows_.size(), "coordinate length mismatch");
  SymReal acc = SymReal::zero(basis_);
  for (size_t i = 0; i < coords.size(); ++i)
    acc += basis_element(i).scaled(Rational(coords[i]));
  return acc;
}

ZModule zmod_from_generators(const SymBasisPtr& basis,
                             std::span<const SymReal> gens) {
  ZModule z;
  z.basis_ = basis;
  std::vector<std::vector<Rational>> rows;
  for (const SymReal& g : gens) {
    require_same_basis(g.basis(), basis);
    if (!g.is_zero()) rows.push_back(g.coeffs());
  }
  if (rows.empty()) return z;
  long long d = common_denominator(rows);
  IMat h = hnf(scale_to_integers(rows, d));
  z.rows_ = unscale(h, d);
  return z;
}

ZModule zmod_from_generators(const std::vector<SymReal>& gens) {
  if (gens.empty())
    throw InputError("cannot infer the basis from an empty generator list");
  return zmod_from_generators(gens[0].basis(), std::span(gens));
}

bool zmod_equal(const ZModule& a, const ZModule& b) {
  if (a.basis() && b.basis()) require_same_basis(a.basis(), b.basis());
  return a.hnf_rows() == b.hnf_rows();
}

std::optional<IVec> zmod_coords(const SymReal& x, const ZModule& a) {
  require_same_basis(x.basis(), a.basis());
  // Back-substitution along the echelon rows.
  std::vector<Rational> rem = x.coeffs();
  IVec coords(a.rank(), 0);
  for (size_t i = 0; i < a.rank(); ++i) {
    const auto& row = a.hnf_rows()[i];
    size_t p = 0;
    while (p < row.size() && row[p].is_zero()) ++p;
    internal_check(p < row.size(), "zero row in canonical form");
    Rational q = rem[p] / row[p];
    if (!q.is_integer()) return std::nullopt;
    coords[i] = q.num();
    for (size_t j = 0; j < row.size(); ++j) rem[j] -= row[j] * q;
  }
  for (const Rational& q : rem)
    if (!q.is_zero()) return std::nullopt;
  return coords;
}

bool zmod_member(const SymReal& x, const ZModule& a) {
  if (x.is_zero()) return true;
  return zmod_coords(x, a).has_value();
}

size_t zmod_rank(const ZModule& a) { return a.rank(); }

long long zmod_content(const SymReal& x, const ZModule& a) {
  if (x.is_zero()) throw InputError("content of the zero element");
  auto coords = zmod_coords(x, a);
  if (!coords) throw NotAMember("element is not in the module");
  long long g = 0;
  for (long long c : *coords) g = std::gcd(g, c < 0 ? -c : c);
  internal_check(g != 0, "nonzero element with zero coordinates");
  return g;
}

bool is_primitive(const SymReal& x, const ZModule& a) {
  return zmod_content(x, a) == 1;
}

namespace {

// Integer coordinate matrix of the rows of s in the canonical basis of a.
IMat coords_matrix(const ZModule& s, const ZModule& a) {
  IMat c(s.rank());
  for (size_t i = 0; i < s.rank(); ++i) {
    auto coords = zmod_coords(s.basis_element(i), a);
    if (!coords) throw NotSubmodule("module is not contained in the ambient");
    c[i] = *coords;
  }
  return c;
}

ZModule from_coord_rows(const IMat& rows, const ZModule& a) {
  std::vector<SymReal> gens;
  gens.reserve(rows.size());
  for (const IVec& r : rows) gens.push_back(a.element_from_coords(r));
  return zmod_from_generators(a.basis(), gens);
}

}  // namespace

ZModule saturate(const ZModule& s, const ZModule& ambient) {
  if (s.rank() == 0) return s;
  IMat c = coords_matrix(s, ambient);
  SmithResult sm = smith(c);
  internal_check(sm.rank == s.rank(), "saturation changed the rank");
  // Rows of V^{-1} indexed 0..rank-1 span the saturation.
  IMat vinv = inverse_unimodular(sm.v);
  IMat keep(vinv.begin(), vinv.begin() + sm.rank);
  return from_coord_rows(keep, ambient);
}

ZModule complement_split(const SymReal& x, const ZModule& a) {
  if (x.is_zero()) throw InputError("cannot split off the zero element");
  auto coords = zmod_coords(x, a);
  if (!coords) throw NotAMember("element is not in the module");
  long long g = 0;
  for (long long v : *coords) g = std::gcd(g, v < 0 ? -v : v);
  if (g != 1) throw NotPrimitive("element is not primitive in the module");
  SmithResult sm = smith(IMat{*coords});
  internal_check(sm.rank == 1, "primitive vector with rank != 1");
  IMat vinv = inverse_unimodular(sm.v);
  IMat keep;
  for (size_t i = 1; i < vinv.size(); ++i) keep.push_back(vinv[i]);
  ZModule lambda = from_coord_rows(keep, a);
  // <x> (+) lambda must reproduce a
  std::vector<SymReal> gens;
  gens.push_back(x);
  for (size_t i = 0; i < lambda.rank(); ++i)
    gens.push_back(lambda.basis_element(i));
  internal_check(lambda.rank() + 1 == a.rank() &&
                     zmod_equal(zmod_from_generators(a.basis(), gens), a),
                 "complement split failed to reproduce the module");
  return lambda;
}

ZModule complement_of_saturated(const ZModule& s, const ZModule& a) {
  if (s.rank() == 0) return a;
  IMat c = coords_matrix(s, a);
  SmithResult sm = smith(c);
  internal_check(sm.rank == s.rank(), "degenerate coordinate matrix");
  for (size_t i = 0; i < sm.rank; ++i)
    if (std::llabs(sm.d[i][i]) != 1)
      throw NotSubmodule("submodule is not saturated in the ambient");
  IMat vinv = inverse_unimodular(sm.v);
  IMat keep;
  for (size_t i = sm.rank; i < vinv.size(); ++i) keep.push_back(vinv[i]);
  ZModule lambda = from_coord_rows(keep, a);
  std::vector<SymReal> gens;
  for (size_t i = 0; i < s.rank(); ++i) gens.push_back(s.basis_element(i));
  for (size_t i = 0; i < lambda.rank(); ++i)
    gens.push_back(lambda.basis_element(i));
  internal_check(s.rank() + lambda.rank() == a.rank() &&
                     zmod_equal(zmod_from_generators(a.basis(), gens), a),
                 "saturated complement failed to reproduce the module");
  return lambda;
}

SymReal small_primitive_element(const ZModule& l, const ZModule& g,
                                const SymReal& bound,
                                long long iteration_cap) {
  size_t m = l.rank();
  internal_check(m >= 2 && m == g.rank(),
                 "small primitive element needs equal ranks >= 2");
  IMat c = coords_matrix(l, g);
  SmithResult sm = smith(c);
  internal_check(sm.rank == m, "finite index coordinate matrix is singular");
  for (size_t i = 0; i + 1 < m; ++i)
    internal_check(std::llabs(sm.d[i][i]) == 1,
                   "quotient is not cyclic; invariant factors > 1 early");
  long long index = std::llabs(sm.d[m - 1][m - 1]);

  // Basis of l adapted to g: u_rows = U * C are coordinates (in g) of a
  // basis of l whose first m-1 members are primitive in g.
  IMat adapted = mat_mul(sm.u, c);
  auto value = [&](const IVec& coords_in_g) {
    SymReal acc = SymReal::zero(g.basis());
    for (size_t j = 0; j < coords_in_g.size(); ++j)
      acc += g.basis_element(j).scaled(Rational(coords_in_g[j]));
    return acc;
  };
  auto negate = [](IVec v) {
    for (auto& x : v) x = -x;
    return v;
  };
  auto content_of = [](const IVec& v) {
    long long r = 0;
    for (long long x : v) r = std::gcd(r, x < 0 ? -x : x);
    return r;
  };

  // Subtractive reduction on the first two adapted basis members. With
  // m >= 3 both are primitive in g and stay primitive; with m == 2 the
  // second may carry the index, handled by the shift scan below.
  IVec p = adapted[0], q = adapted[1];
  SymReal pv = value(p), qv = value(q);
  if (sym_sign(pv) < 0) { p = negate(p); pv = -pv; }
  if (sym_sign(qv) < 0) { q = negate(q); qv = -qv; }

  SymReal threshold = bound.scaled(Rational(1, index + 1));
  for (long long iter = 0;; ++iter) {
    if (iter > iteration_cap)
      throw IterationLimit("subtractive search for a small primitive element");
    // Early exit on any primitive member already under the bound.
    if (content_of(p) == 1 && sym_less(pv, bound)) return value(p);
    if (content_of(q) == 1 && sym_less(qv, bound)) return value(q);
    bool p_small = sym_less(pv, threshold);
    bool q_small = sym_less(qv, threshold);
    if (p_small && q_small) break;
    if (sym_less(pv, qv)) {
      qv = qv - pv;
      for (size_t j = 0; j < q.size(); ++j)
        q[j] = checked_add(q[j], -p[j]);
    } else {
      pv = pv - qv;
      for (size_t j = 0; j < p.size(); ++j)
        p[j] = checked_add(p[j], -q[j]);
    }
  }
  // Both members are below bound/(index+1). Some alpha*p + q with
  // 0 <= alpha <= index has coprime coordinates (the quotient is cyclic),
  // and its value stays below the bound.
  IVec x = q;
  for (long long alpha = 0; alpha <= index; ++alpha) {
    if (content_of(x) == 1) {
      SymReal xv = value(x);
      internal_check(sym_sign(xv) > 0 && sym_less(xv, bound),
                     "shift scan left the requested window");
      return xv;
    }
    for (size_t j = 0; j < x.size(); ++j) x[j] = checked_add(x[j], p[j]);
  }
  throw InternalError("no primitive shift found; quotient not cyclic?");
}

}  // namespace lagtor
