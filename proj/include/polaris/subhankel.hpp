#ifndef POLARIS_SUBHANKEL_HPP
#define POLARIS_SUBHANKEL_HPP

#include <string>
#include <utility>
#include <vector>

#include "polaris/mpoly.hpp"
#include "polaris/polymat.hpp"

namespace polaris {

// Sign character on residues mod 4: +1 for 1,2 and -1 for 0,3.
inline int xi_sign(int j) {
  int m = ((j % 4) + 4) % 4;
  return (m == 1 || m == 2) ? 1 : -1;
}

// Everything derived from the order-r sub-Hankel matrix in one bundle.
// M is r x r with M[i][j] = x_{i+j} when i+j <= r, else 0; f = det M lives
// in x0..xr. phi[j] is the order-j determinant re-rooted at the top
// variables x_{r-j}..x_r (phi[0] = 1). Phi[i-1] is the (i+1) x i relation
// matrix for the first i+1 partials, i = 1..r-1.
struct SubHankelBundle {
  int r;
  PolyMatrix<RatField> M;
  RatPoly f;
  std::vector<RatPoly> phi;
  std::vector<PolyMatrix<RatField>> Phi;
  std::vector<RatPoly> partials;  // partials[i] = df/dx_i
};

SubHankelBundle build(int r);

struct LemmaReport {
  int r = 0;
  bool part_i_ok = false;
  bool part_ii_gcd_ok = false;
  bool part_ii_cofactor_free_ok = false;
  bool part_iii_a_ok = false;
  bool part_iii_b_ok = false;
  std::vector<std::pair<std::string, RatPoly>> failures;  // (identity id, witness)

  bool all_ok() const {
    return part_i_ok && part_ii_gcd_ok && part_ii_cofactor_free_ok && part_iii_a_ok &&
           part_iii_b_ok;
  }
};

// Exact verification of the five partial-derivative identities:
//  (i)    df/dx_i = (-1)^r x_r dphi^(r-1)/dx_{i+1},  0 <= i <= r-2
//  (ii)   monomial content of (f_0..f_i) is x_r^{r-i-1}; the f_0..f_i lie in
//         k[x_{r-i}..x_r]; after dividing out the content no common factor
//         remains (probabilistic)
//  (iii-a) x_r f_i = -sum_{k<i} ((2i-k)/i) x_{r-i+k} f_k,  1 <= i <= r-1
//  (iii-b) x_r f_r = sum_{k<=r-2} (r-1-k) x_k f_k
LemmaReport verify_lemma(const SubHankelBundle& b, uint64_t seed = 12001);

struct MinorReport {
  int i = 0;
  bool delta1_is_xr_power = false;   // delta_1 = +/- x_r^i
  bool delta2_not_divisible = false; // x_r does not divide delta_2
  bool delta2_top_coeff_ok = false;  // coeff of x_{r-1}^i in delta_2 is +/-(i+1)
  RatPoly delta1, delta2;
  mpq_class delta2_top_coeff = 0;

  MinorReport(const RatField& k, int nv) : delta1(k, nv), delta2(k, nv) {}
  bool all_ok() const { return delta1_is_xr_power && delta2_not_divisible && delta2_top_coeff_ok; }
};

MinorReport minor_checks(const SubHankelBundle& b, int i);

struct HilbertBurchReport {
  int i = 0;
  bool ok = false;          // one scalar matches all i+1 signed minors
  mpq_class lambda = 0;     // minor_j = lambda * g_j for every j
  std::string convention;   // documented sign/order convention
  std::vector<RatPoly> minors;
  std::vector<RatPoly> generators;
};

// Signed maximal minors of Phi^[i] against the content-stripped partials
// g_j = f_j / x_r^{r-i-1}; the match must use a single scalar.
HilbertBurchReport hilbert_burch_check(const SubHankelBundle& b, int i);

struct HessianClosedFormReport {
  int r = 0;
  bool anti_triangular_ok = false;  // d2f/dx_i dx_j = 0 whenever i+j <= r-1
  bool monomial_ok = false;         // det H = c * x_r^{(r+1)(r-2)}
  mpq_class c = 0;
  long exponent = 0;
  RatPoly h;

  HessianClosedFormReport(const RatField& k, int nv) : h(k, nv) {}
  bool all_ok() const { return anti_triangular_ok && monomial_ok; }
};

// The Hessian matrix is anti-lower-triangular, so its determinant is the
// signed product of the anti-diagonal entries — exact at any order, no
// symbolic elimination involved.
HessianClosedFormReport hessian_closed_form(const SubHankelBundle& b);

// Structural irreducibility evidence: f has x0-degree exactly 1 and the
// x0-coefficient is the monomial +/- x_r^{r-1}.
bool irreducibility_structure(const SubHankelBundle& b);

}  // namespace polaris

#endif
