#pragma once

#include <optional>
#include <vector>

#include "hecke/rational.hpp"

namespace hecke {

// Dense exact-rational matrices, just enough for the ranks, kernels and
// small solves the algebra layer needs.
struct QMatrix {
  int rows = 0, cols = 0;
  std::vector<Rational> a;  // row major

  QMatrix() = default;
  QMatrix(int r, int c) : rows(r), cols(c), a((std::size_t)r * c) {}
  Rational& at(int r, int c) { return a[(std::size_t)r * cols + c]; }
  const Rational& at(int r, int c) const { return a[(std::size_t)r * cols + c]; }
};

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(QMatrix& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (!m.at(i, c).is_zero()) { pr = i; break; }
    if (pr < 0) continue;
    for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    Rational inv = Rational(1) / m.at(r, c);
    for (int j = 0; j < m.cols; ++j) m.at(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Rational f = m.at(i, c);
      for (int j = 0; j < m.cols; ++j) m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline int rank(QMatrix m) { return (int)rref(m).size(); }

// Solve A x = b exactly; empty optional when inconsistent. Free variables are
// set to zero, so the returned solution is deterministic.
inline std::optional<std::vector<Rational>> solve(const QMatrix& A,
                                                  const std::vector<Rational>& b) {
  QMatrix m(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = b[(std::size_t)i];
  }
  std::vector<int> piv = rref(m);
  for (std::size_t k = 0; k < piv.size(); ++k)
    if (piv[k] == A.cols) return std::nullopt;  // pivot in the augmented column
  std::vector<Rational> x((std::size_t)A.cols, Rational(0));
  for (std::size_t k = 0; k < piv.size(); ++k) x[(std::size_t)piv[k]] = m.at((int)k, A.cols);
  return x;
}

// Basis of the right null space of A.
inline std::vector<std::vector<Rational>> nullspace(QMatrix m) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv((std::size_t)m.cols, false);
  for (int c : piv) is_piv[(std::size_t)c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[(std::size_t)c]) continue;
    std::vector<Rational> v((std::size_t)m.cols, Rational(0));
    v[(std::size_t)c] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[(std::size_t)piv[k]] = -m.at((int)k, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hecke
