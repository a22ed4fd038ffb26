#pragma once

#include <vector>

#include "lagtor/intmat.hpp"
#include "lagtor/symreal.hpp"
#include "lagtor/zmodule.hpp"

namespace lagtor {

struct UnimodularMatrix {
  IMat entries;
  long long determinant = 1;

  static UnimodularMatrix from(IMat m);
  size_t dim() const { return entries.size(); }
};

// A with |det A| = 1 and A*u = v exactly, for vectors generating the same
// subgroup. Throws GroupMismatch otherwise.
UnimodularMatrix glz_solve(const std::vector<SymReal>& u,
                           const std::vector<SymReal>& v);

// Letters for GL(2,Z) words over P = [[1,1],[0,1]], I = [[0,1],[1,0]],
// Q1 = [[-1,0],[0,1]]; the inverse of P is a first-class letter.
enum class Gl2Letter { P, Pinv, I, Q1 };

IMat gl2_letter_matrix(Gl2Letter l);

// Word in application order: the product letter_n * ... * letter_1 equals
// the input matrix. Deterministic Euclidean reduction of the first column.
std::vector<Gl2Letter> gl2z_word(const UnimodularMatrix& a);

IMat gl2_word_product(const std::vector<Gl2Letter>& w);

// Elementary letters for GL(k,Z): Q_j negates component j, I_ij swaps
// components i and j, P_ij adds component j to component i. 1-based.
struct ElemLetter {
  enum Kind { Q, I, P } kind;
  int i = 0;
  int j = 0;
};

IMat elem_letter_matrix(const ElemLetter& l, size_t k);

// Word in application order over {Q_j, I_ij, P_ij} whose product equals the
// input matrix, produced by recorded integer row reduction to the identity.
std::vector<ElemLetter> glz_elementary_word(const UnimodularMatrix& a);

IMat elem_word_product(const std::vector<ElemLetter>& w, size_t k);

}  // namespace lagtor
