#ifndef POLARIS_POLARITY_HPP
#define POLARIS_POLARITY_HPP

#include <optional>
#include <vector>

#include "polaris/linalg.hpp"
#include "polaris/mpoly.hpp"
#include "polaris/polymat.hpp"

namespace polaris {

// A projective hypersurface V(f) in P^r, f exact, homogeneous, nonzero.
struct Hypersurface {
  RatPoly f;
  int r;  // ambient projective dimension (n_vars - 1)
  int d;  // degree of f

  explicit Hypersurface(RatPoly poly);
};

// Tuple of equal-degree forms defining a rational map P^r -> P^r.
struct PolarMap {
  std::vector<RatPoly> forms;
  int r;
};

// First polars: forms[i] = df/dx_i. Requires d >= 2.
PolarMap gradient(const Hypersurface& h);

struct PolarResult {
  RatPoly poly;                 // the s-th polar of f at p, degree d-s
  bool vanishes_identically;    // explicit zero with flag, not "undefined"
};

// s-fold application of the directional operator sum_i p_i d/dx_i.
PolarResult polar_operator(const Hypersurface& h, const std::vector<mpq_class>& p, int s);

struct HessianMode {
  bool symbolic = true;
  uint32_t p = 0;
  int trials = 0;
  uint64_t seed = 0;

  static HessianMode Symbolic() { return {}; }
  static HessianMode Probabilistic(uint32_t p, int trials, uint64_t seed) {
    HessianMode m;
    m.symbolic = false;
    m.p = p;
    m.trials = trials;
    m.seed = seed;
    return m;
  }
};

struct HessianReport {
  bool det_is_zero = false;              // symbolically zero / zero at every sample
  std::optional<RatPoly> hessian_det;    // present in symbolic mode when nonzero
  int rho = 0;                           // generic rank of the Hessian matrix
  int z = -1;                            // rho - 1
  int v = -1;                            // Gauss-image dimension when attached (-1 = not computed)
  bool rho_certified = false;            // exact, or max rank attained at >= 2 sample points
  bool probabilistic = false;
  uint32_t p = 0;
  int trials = 0;
  uint64_t seed = 0;
};

PolyMatrix<RatField> hessian_matrix(const Hypersurface& h);
HessianReport hessian(const Hypersurface& h, const HessianMode& mode);

struct ConeReport {
  bool cone = false;
  std::vector<mpz_class> witness;  // primitive dependence vector among the partials when cone
};

// V(f) is a cone iff f_0..f_r are linearly dependent; decided by an exact
// rational nullspace of the coefficient matrix.
ConeReport is_cone(const Hypersurface& h);

enum class TotallyHessianOutcome { yes, no, vanishing_hessian };

struct TotallyHessianReport {
  TotallyHessianOutcome outcome = TotallyHessianOutcome::no;
  long e = 0;           // the forced exponent (d-2)(r+1)/d when integral
  mpq_class c = 0;      // symbolic-mode scalar with det H = c * f^e
  uint32_t c_mod = 0;   // probabilistic-mode scalar
  bool probabilistic = false;
  uint32_t p = 0;
};

// Does det H(f) equal c * f^((d-2)(r+1)/d)?  Immediately "no" when the
// exponent is not an integer; a vanishing Hessian is its own outcome.
TotallyHessianReport totally_hessian_test(const Hypersurface& h, const HessianMode& mode);

struct GaussImageReport {
  int v = -1;                  // max observed rank - 1 (probabilistic lower bound)
  int smooth_points_used = 0;
  uint32_t p = 0;
  uint64_t seed = 0;
};

// Dimension of the Gauss image: at smooth F_p-points of V(f), rank of the
// Hessian applied to the tangent hyperplane, maximized over >= 20 points.
GaussImageReport gauss_image_dim(const Hypersurface& h, uint32_t p, uint64_t seed);

}  // namespace polaris

#endif
