#ifndef POLARIS_CONSTRUCTIONS_HPP
#define POLARIS_CONSTRUCTIONS_HPP

#include <utility>
#include <vector>

#include "polaris/polarity.hpp"

namespace polaris {

// Type parameters for the bordered-determinant construction. Variables split
// as x_0..x_t (head) and x_{t+1}..x_r (tail); h lives in y_0..y_m. The degree
// of the determinant forms is n = 1 + (m+1)(deg h - 1) * deg psi with psi
// linear by default, so (m+1) must divide n-1.
struct GNSpec {
  int r, t, m, n, d;
  uint64_t seed;
};

struct GNBuild {
  GNSpec spec;
  Hypersurface f;
  std::vector<RatPoly> Q;                    // t-m determinant forms, degree n
  std::vector<std::vector<RatPoly>> M;       // M[l][i]: first-row Laplace coefficients of Q_l
  std::vector<std::pair<ExpVec, RatPoly>> P; // z-monomial (length t-m) -> tail coefficient form
  std::vector<std::vector<RatPoly>> dh_rows; // dh_rows[j][i] = (d h_i / d y_j) evaluated at psi
  int mu;
};

GNBuild gn_build(const GNSpec& spec);

struct PermuttiSpec {
  int r, t, n, d;
  uint64_t seed;
};

struct PermuttiBuild {
  PermuttiSpec spec;
  Hypersurface f;
  RatPoly Q;                 // sum_i M_i x_i, degree n
  std::vector<RatPoly> M;    // t+1 forms of degree n-1 in the tail variables
  std::vector<RatPoly> P;    // P[k] of degree d - k n, k = 0..mu
  int mu;
  bool bottleneck;           // tail forms routed through t intermediate linear forms
};

PermuttiBuild permutti_build(const PermuttiSpec& spec);

// Assemble from explicit data (used to compare a GN build with m = t-1
// against the equivalent direct construction).
PermuttiBuild permutti_assemble(const PermuttiSpec& spec, std::vector<RatPoly> M,
                                std::vector<RatPoly> P, bool bottleneck);

// Multiplicity of V(f) at a general point of the coordinate core
// x_{t+1} = ... = x_r = 0: minimum tail-degree over the monomials of f.
int core_multiplicity(const Hypersurface& h, int t);

struct ZVReport {
  int z_expected = 0, v_expected = 0;
  int z_observed = -1, v_observed = -1;
  bool z_ok = false, v_ok = false;
  uint32_t p_rank = 0, p_gauss = 0;
  uint64_t seed = 0;
};

// Probabilistic check of the polar-image dimension z = min{r-1, 2(r-t)-1}
// and the dual dimension v = min{r-2, 2(r-t-1)} on a built hypersurface.
ZVReport z_and_v_check(const Hypersurface& h, int r, int t, uint32_t p_rank, uint32_t p_gauss,
                       uint64_t seed);

}  // namespace polaris

#endif
