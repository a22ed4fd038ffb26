#include "lagtor/glzwords.hpp"

#include <algorithm>

namespace lagtor {

UnimodularMatrix UnimodularMatrix::from(IMat m) {
  long long d = mat_det(m);
  if (d != 1 && d != -1)
    throw InputError("matrix is not unimodular (det = " + std::to_string(d) +
                     ")");
  return {std::move(m), d};
}

UnimodularMatrix glz_solve(const std::vector<SymReal>& u,
                           const std::vector<SymReal>& v) {
  if (u.size() != v.size())
    throw DimensionMismatch("glz_solve needs vectors of equal length");
  size_t l = u.size();
  SymBasisPtr basis = l ? u[0].basis() : nullptr;
  ZModule hu = zmod_from_generators(basis, std::span(u));
  ZModule hv = zmod_from_generators(basis, std::span(v));
  if (!zmod_equal(hu, hv))
    throw GroupMismatch("vectors generate different subgroups");
  size_t r = hu.rank();

  // Coordinates of the components in the common canonical basis; both
  // coordinate matrices have full row span Z^r, so their recorded HNF
  // reductions end at [I_r; 0].
  auto coord_rows = [&](const std::vector<SymReal>& w) {
    IMat c(l, IVec(r, 0));
    for (size_t i = 0; i < l; ++i) {
      auto coords = zmod_coords(w[i], hu);
      internal_check(coords.has_value(), "generator outside its own span");
      c[i] = *coords;
    }
    return c;
  };
  HnfWithTransform tu = hnf_with_transform(coord_rows(u));
  HnfWithTransform tv = hnf_with_transform(coord_rows(v));
  internal_check(tu.rank == r && tv.rank == r,
                 "generator coordinates do not span the lattice");
  IMat a = mat_mul(inverse_unimodular(tv.t), tu.t);

  UnimodularMatrix result = UnimodularMatrix::from(std::move(a));
  // A*u = v must hold exactly.
  for (size_t i = 0; i < l; ++i) {
    SymReal acc = SymReal::zero(basis);
    for (size_t j = 0; j < l; ++j)
      acc += u[j].scaled(Rational(result.entries[i][j]));
    internal_check(acc.exact_eq(v[i]), "glz_solve verification failed");
  }
  return result;
}

IMat gl2_letter_matrix(Gl2Letter l) {
  switch (l) {
    case Gl2Letter::P: return {{1, 1}, {0, 1}};
    case Gl2Letter::Pinv: return {{1, -1}, {0, 1}};
    case Gl2Letter::I: return {{0, 1}, {1, 0}};
    case Gl2Letter::Q1: return {{-1, 0}, {0, 1}};
  }
  throw InternalError("unknown GL(2,Z) letter");
}

IMat gl2_word_product(const std::vector<Gl2Letter>& w) {
  IMat acc = identity_matrix(2);
  for (Gl2Letter l : w) acc = mat_mul(gl2_letter_matrix(l), acc);
  return acc;
}

std::vector<Gl2Letter> gl2z_word(const UnimodularMatrix& a) {
  if (a.dim() != 2) throw DimensionMismatch("gl2z_word needs a 2x2 matrix");
  IMat m = a.entries;
  // Reduce m to the identity by left multiplications; the word is the
  // reversed sequence of inverses.
  std::vector<Gl2Letter> ops;
  auto apply = [&](Gl2Letter l) {
    m = mat_mul(gl2_letter_matrix(l), m);
    ops.push_back(l);
  };
  long long guard = 0;
  while (m[1][0] != 0) {
    if (++guard > 4096) throw IterationLimit("gl2z_word reduction stalled");
    if (std::llabs(m[0][0]) < std::llabs(m[1][0])) {
      apply(Gl2Letter::I);
      continue;
    }
    long long q = m[0][0] / m[1][0];  // |q| >= 1 here
    for (long long s = 0; s < std::llabs(q); ++s)
      apply(q > 0 ? Gl2Letter::Pinv : Gl2Letter::P);
  }
  internal_check(std::llabs(m[0][0]) == 1 && std::llabs(m[1][1]) == 1,
                 "unimodular reduction lost the determinant");
  if (m[0][0] < 0) apply(Gl2Letter::Q1);
  if (m[1][1] < 0) {  // Q2 = I Q1 I
    apply(Gl2Letter::I);
    apply(Gl2Letter::Q1);
    apply(Gl2Letter::I);
  }
  while (m[0][1] != 0) {
    if (++guard > 4096) throw IterationLimit("gl2z_word reduction stalled");
    apply(m[0][1] > 0 ? Gl2Letter::Pinv : Gl2Letter::P);
  }
  internal_check(mat_eq(m, identity_matrix(2)), "gl2z_word did not reach id");

  std::vector<Gl2Letter> word;
  word.reserve(ops.size());
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    switch (*it) {
      case Gl2Letter::P: word.push_back(Gl2Letter::Pinv); break;
      case Gl2Letter::Pinv: word.push_back(Gl2Letter::P); break;
      default: word.push_back(*it); break;
    }
  }
  internal_check(mat_eq(gl2_word_product(word), a.entries),
                 "gl2z_word round trip failed");
  return word;
}

IMat elem_letter_matrix(const ElemLetter& l, size_t k) {
  IMat m = identity_matrix(k);
  size_t i = size_t(l.i) - 1, j = size_t(l.j) - 1;
  switch (l.kind) {
    case ElemLetter::Q:
      internal_check(i < k, "Q letter index out of range");
      m[i][i] = -1;
      break;
    case ElemLetter::I:
      internal_check(i < k && j < k && i != j, "I letter indices invalid");
      m[i][i] = m[j][j] = 0;
      m[i][j] = m[j][i] = 1;
      break;
    case ElemLetter::P:
      internal_check(i < k && j < k && i != j, "P letter indices invalid");
      m[i][j] = 1;
      break;
  }
  return m;
}

IMat elem_word_product(const std::vector<ElemLetter>& w, size_t k) {
  IMat acc = identity_matrix(k);
  for (const ElemLetter& l : w) acc = mat_mul(elem_letter_matrix(l, k), acc);
  return acc;
}

std::vector<ElemLetter> glz_elementary_word(const UnimodularMatrix& a) {
  size_t k = a.dim();
  if (k == 0) return {};
  IMat m = a.entries;
  std::vector<ElemLetter> ops;  // left multiplications, in time order
  auto swap_rows = [&](size_t x, size_t y) {
    if (x == y) return;
    std::swap(m[x], m[y]);
    ops.push_back({ElemLetter::I, int(x) + 1, int(y) + 1});
  };
  auto negate_row = [&](size_t x) {
    for (auto& v : m[x]) v = -v;
    ops.push_back({ElemLetter::Q, int(x) + 1, 0});
  };
  auto row_add = [&](size_t dst, size_t src) {  // row_dst += row_src
    for (size_t j = 0; j < k; ++j)
      m[dst][j] = checked_add(m[dst][j], m[src][j]);
    ops.push_back({ElemLetter::P, int(dst) + 1, int(src) + 1});
  };
  auto row_sub_once = [&](size_t dst, size_t src) {  // via Q P Q
    negate_row(dst);
    row_add(dst, src);
    negate_row(dst);
  };
  auto row_combine = [&](size_t dst, size_t src, long long f) {
    // row_dst -= f * row_src, one move at a time
    internal_check(std::llabs(f) <= 1 << 20, "elementary word too long");
    for (long long s = 0; s < std::llabs(f); ++s)
      f > 0 ? row_sub_once(dst, src) : row_add(dst, src);
  };

  for (size_t col = 0; col < k; ++col) {
    while (true) {
      size_t best = k;
      for (size_t i = col; i < k; ++i)
        if (m[i][col] != 0 &&
            (best == k || std::llabs(m[i][col]) < std::llabs(m[best][col])))
          best = i;
      internal_check(best < k, "unimodular matrix with a zero column");
      swap_rows(col, best);
      bool clean = true;
      for (size_t i = col + 1; i < k; ++i) {
        if (m[i][col] == 0) continue;
        row_combine(i, col, m[i][col] / m[col][col]);
        if (m[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[col][col] < 0) negate_row(col);
    internal_check(m[col][col] == 1, "pivot of a unimodular matrix is not 1");
    for (size_t i = 0; i < col; ++i) row_combine(i, col, m[i][col]);
  }
  internal_check(mat_eq(m, identity_matrix(k)),
                 "elementary reduction did not reach the identity");

  // m = ops_t ... ops_1 * a = I, so a = inv(ops_1) ... inv(ops_t);
  // in application order the word is inv(ops_t), ..., inv(ops_1).
  std::vector<ElemLetter> word;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (it->kind == ElemLetter::P) {  // P^{-1} = Q_i P Q_i
      word.push_back({ElemLetter::Q, it->i, 0});
      word.push_back({ElemLetter::P, it->i, it->j});
      word.push_back({ElemLetter::Q, it->i, 0});
    } else {
      word.push_back(*it);  // Q and I are involutions
    }
  }
  internal_check(mat_eq(elem_word_product(word, k), a.entries),
                 "glz_elementary_word round trip failed");
  return word;
}

}  // namespace lagtor
