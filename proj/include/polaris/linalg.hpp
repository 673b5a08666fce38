#ifndef POLARIS_LINALG_HPP
#define POLARIS_LINALG_HPP

#include <gmpxx.h>

#include <vector>

#include "polaris/error.hpp"
#include "polaris/fields.hpp"

namespace polaris {

// Dense constant-entry matrix over an exact field, with reduced row echelon
// form as the single workhorse.
template <class F>
struct DenseMat {
  using Elem = typename F::Elem;

  F k;
  int rows, cols;
  std::vector<std::vector<Elem>> a;

  DenseMat(const F& field, int r, int c)
      : k(field), rows(r), cols(c), a(r, std::vector<Elem>(c, field.zero())) {
    if (r < 1 || c < 1) fail(ErrorKind::Structural, "matrix dimensions must be positive");
  }

  static DenseMat identity(const F& field, int n) {
    DenseMat m(field, n, n);
    for (int i = 0; i < n; ++i) m.a[i][i] = field.one();
    return m;
  }

  DenseMat transposed() const {
    DenseMat m(k, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) m.a[j][i] = a[i][j];
    return m;
  }

  // In-place reduced row echelon form; returns the pivot columns.
  std::vector<int> rref() {
    std::vector<int> pivots;
    int pr = 0;
    for (int c = 0; c < cols && pr < rows; ++c) {
      int pivot = -1;
      for (int r = pr; r < rows; ++r)
        if (!F::is_zero(a[r][c])) {
          pivot = r;
          break;
        }
      if (pivot < 0) continue;
      std::swap(a[pr], a[pivot]);
      Elem inv = k.div(k.one(), a[pr][c]);
      for (int j = c; j < cols; ++j) a[pr][j] = k.mul(a[pr][j], inv);
      for (int r = 0; r < rows; ++r) {
        if (r == pr || F::is_zero(a[r][c])) continue;
        Elem f = a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] = k.sub(a[r][j], k.mul(f, a[pr][j]));
      }
      pivots.push_back(c);
      ++pr;
    }
    return pivots;
  }

  int rank() const {
    DenseMat m = *this;
    return static_cast<int>(m.rref().size());
  }

  // Basis of the right kernel {v : A v = 0}, one vector per free column.
  std::vector<std::vector<Elem>> nullspace() const {
    DenseMat m = *this;
    std::vector<int> piv = m.rref();
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (int c = 0; c < cols; ++c) {
      if (is_piv[c]) continue;
      std::vector<Elem> v(cols, k.zero());
      v[c] = k.one();
      for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = k.neg(m.a[i][c]);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  DenseMat inverse() const {
    if (rows != cols) fail(ErrorKind::Structural, "inverse of non-square matrix");
    DenseMat aug(k, rows, 2 * cols);
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) aug.a[i][j] = a[i][j];
      aug.a[i][cols + i] = k.one();
    }
    std::vector<int> piv = aug.rref();
    // Invertible exactly when the pivots sit in the original block's columns.
    for (int idx = 0; idx < rows; ++idx)
      if (idx >= static_cast<int>(piv.size()) || piv[idx] != idx)
        fail(ErrorKind::Structural, "inverse of singular matrix");
    DenseMat inv(k, rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) inv.a[i][j] = aug.a[i][cols + j];
    return inv;
  }

  DenseMat operator*(const DenseMat& o) const {
    if (cols != o.rows) fail(ErrorKind::Structural, "matrix product shape mismatch");
    DenseMat m(k, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int l = 0; l < cols; ++l) {
        if (F::is_zero(a[i][l])) continue;
        for (int j = 0; j < o.cols; ++j)
          m.a[i][j] = k.add(m.a[i][j], k.mul(a[i][l], o.a[l][j]));
      }
    return m;
  }

  std::vector<Elem> apply(const std::vector<Elem>& v) const {
    if (static_cast<int>(v.size()) != cols) fail(ErrorKind::Structural, "matrix-vector shape mismatch");
    std::vector<Elem> out(rows, k.zero());
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) out[i] = k.add(out[i], k.mul(a[i][j], v[j]));
    return out;
  }
};

using FpMat = DenseMat<FpField>;
using RatMat = DenseMat<RatField>;

// Clear denominators and strip the numerator gcd: the unique (up to sign)
// primitive integer vector on the same line.
inline std::vector<mpz_class> integer_scaled(const std::vector<mpq_class>& v) {
  mpz_class lcm = 1;
  for (const mpq_class& q : v) {
    mpz_class den = q.get_den();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> out;
  out.reserve(v.size());
  mpz_class g = 0;
  for (const mpq_class& q : v) {
    mpq_class scaled = q * mpq_class(lcm);
    out.push_back(scaled.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g != 0)
    for (mpz_class& z : out) z /= g;
  return out;
}

}  // namespace polaris

#endif
