#ifndef POLARIS_POLYMAT_HPP
#define POLARIS_POLYMAT_HPP

#include <vector>

#include "polaris/error.hpp"
#include "polaris/mpoly.hpp"

namespace polaris {

// Exact polynomial division (quotient must exist); leading-term reduction
// under grevlex. Structural error when the division is not exact.
template <class F>
MPoly<F> exact_div(const MPoly<F>& a, const MPoly<F>& b) {
  a.check_compatible(b);
  if (b.is_zero()) fail(ErrorKind::Structural, "exact_div by zero");
  const F& k = a.field();
  int nv = a.n_vars();
  MPoly<F> q(k, nv);
  MPoly<F> r = a;
  const auto& bl = b.leading_term();
  while (!r.is_zero()) {
    const auto& rl = r.leading_term();
    ExpVec e(nv);
    for (int i = 0; i < nv; ++i) {
      if (rl.e[i] < bl.e[i]) fail(ErrorKind::Structural, "exact_div: division not exact");
      e[i] = rl.e[i] - bl.e[i];
    }
    MPoly<F> qt = MPoly<F>::monomial(k, nv, e, k.div(rl.c, bl.c));
    q = q + qt;
    r = r - qt * b;
  }
  return q;
}

template <class F>
class PolyMatrix {
public:
  using Poly = MPoly<F>;

  PolyMatrix(const F& field, int nv, int rows, int cols)
      : rows_(rows), cols_(cols), a_(rows, std::vector<Poly>(cols, Poly(field, nv))) {
    if (rows < 1 || cols < 1) fail(ErrorKind::Structural, "matrix dimensions must be positive");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Poly& at(int i, int j) { return a_[i][j]; }
  const Poly& at(int i, int j) const { return a_[i][j]; }

  PolyMatrix without_row(int r) const {
    if (rows_ < 2) fail(ErrorKind::Structural, "cannot delete the only row");
    PolyMatrix m(a_[0][0].field(), a_[0][0].n_vars(), rows_ - 1, cols_);
    for (int i = 0, ii = 0; i < rows_; ++i) {
      if (i == r) continue;
      m.a_[ii++] = a_[i];
    }
    return m;
  }

  PolyMatrix without_col(int c) const {
    if (cols_ < 2) fail(ErrorKind::Structural, "cannot delete the only column");
    PolyMatrix m(a_[0][0].field(), a_[0][0].n_vars(), rows_, cols_ - 1);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0, jj = 0; j < cols_; ++j) {
        if (j == c) continue;
        m.a_[i][jj++] = a_[i][j];
      }
    return m;
  }

  PolyMatrix transposed() const {
    PolyMatrix m(a_[0][0].field(), a_[0][0].n_vars(), cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m.a_[j][i] = a_[i][j];
    return m;
  }

  // Cofactor expansion for small sizes, fraction-free elimination beyond:
  // cofactor growth is factorial but beats Bareiss's intermediate swell on
  // tiny matrices, and the crossover sits at 5.
  Poly det() const {
    if (rows_ != cols_) fail(ErrorKind::Structural, "determinant of non-square matrix");
    if (rows_ <= 4) return det_cofactor();
    return det_bareiss();
  }

  // Rank over the fraction field, via fraction-free elimination with full
  // pivoting (any nonzero entry of the remaining block may pivot).
  int rank() const {
    const F& k = a_[0][0].field();
    int nv = a_[0][0].n_vars();
    std::vector<std::vector<Poly>> m = a_;
    Poly prev = Poly::constant(k, nv, k.one());
    int r = 0;
    int steps = std::min(rows_, cols_);
    for (int s = 0; s < steps; ++s) {
      int pi = -1, pj = -1;
      for (int i = s; i < rows_ && pi < 0; ++i)
        for (int j = s; j < cols_; ++j)
          if (!m[i][j].is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) return r;
      std::swap(m[s], m[pi]);
      if (pj != s)
        for (int i = 0; i < rows_; ++i) std::swap(m[i][s], m[i][pj]);
      for (int i = s + 1; i < rows_; ++i) {
        for (int j = s + 1; j < cols_; ++j)
          m[i][j] = exact_div(m[s][s] * m[i][j] - m[i][s] * m[s][j], prev);
        m[i][s] = Poly(k, nv);
      }
      prev = m[s][s];
      ++r;
    }
    return r;
  }

private:
  Poly det_cofactor() const {
    const F& k = a_[0][0].field();
    int nv = a_[0][0].n_vars();
    if (rows_ == 1) return a_[0][0];
    Poly acc(k, nv);
    for (int j = 0; j < cols_; ++j) {
      if (a_[0][j].is_zero()) continue;
      Poly minor = without_row(0).without_col(j).det_cofactor_dispatch();
      Poly contrib = a_[0][j] * minor;
      acc = (j % 2 == 0) ? acc + contrib : acc - contrib;
    }
    return acc;
  }

  Poly det_cofactor_dispatch() const { return det_cofactor(); }

  Poly det_bareiss() const {
    const F& k = a_[0][0].field();
    int nv = a_[0][0].n_vars();
    int n = rows_;
    std::vector<std::vector<Poly>> m = a_;
    Poly prev = Poly::constant(k, nv, k.one());
    bool flip = false;
    for (int s = 0; s < n - 1; ++s) {
      int pi = -1;
      for (int i = s; i < n; ++i)
        if (!m[i][s].is_zero()) {
          pi = i;
          break;
        }
      if (pi < 0) return Poly(k, nv);
      if (pi != s) {
        std::swap(m[s], m[pi]);
        flip = !flip;
      }
      for (int i = s + 1; i < n; ++i) {
        for (int j = s + 1; j < n; ++j)
          m[i][j] = exact_div(m[s][s] * m[i][j] - m[i][s] * m[s][j], prev);
        m[i][s] = Poly(k, nv);
      }
      prev = m[s][s];
    }
    return flip ? -m[n - 1][n - 1] : m[n - 1][n - 1];
  }

  int rows_, cols_;
  std::vector<std::vector<Poly>> a_;
};

}  // namespace polaris

#endif
