#ifndef POLARIS_SCROLLDUAL_HPP
#define POLARIS_SCROLLDUAL_HPP

#include <vector>

#include "polaris/fflab.hpp"
#include "polaris/linalg.hpp"
#include "polaris/polarity.hpp"

namespace polaris {

// Parameterization of the rational normal scroll S(a,b) in P^{a+b+1}.
// Parameter variables are ordered (s, t, u, v); coordinate i <= a carries
// u s^{a-i} t^i, coordinate a+1+j carries v s^{b-j} t^j.
struct ScrollParam {
  int a, b;
  std::vector<RatPoly> forms;
};

ScrollParam scroll_param(int a, int b);

// All 2-minors of the 2 x (a+b) catalecticant matrix
//   [x0 .. x_{a-1} | x_{a+1} .. x_{a+b}  ]
//   [x1 .. x_a     | x_{a+2} .. x_{a+b+1}]
// vanish identically after substituting the parameterization.
bool catalecticant_minors_vanish(const ScrollParam& S);

// Two-stage linear projection P^{a+b+1} -> P^{b+2} -> P^{a+2}: first from a
// general (a-2)-plane inside the span of the degree-a directrix, then from a
// general (b-a-1)-plane Psi inside Phi = <Lambda, b-a ruling points>. All
// matrices and tracked points are kept with primitive integer entries.
struct ProjectionChain {
  int a, b;
  uint64_t seed;
  RatMat stage1;  // (b+3) x (a+b+2); identity when a = 1
  RatMat stage2;  // (a+3) x (b+3)
  RatMat full;    // stage2 * stage1, full row rank
  std::vector<std::vector<mpq_class>> center1;     // a-1 points spanning the first center
  std::vector<mpq_class> ruling_params;            // b-a base parameters s_i (t = 1)
  std::vector<std::vector<mpq_class>> psi;         // b-a points spanning Psi
  std::vector<std::vector<mpq_class>> lambda_pts;  // 2 points spanning Lambda = stage1(<E>)
  std::vector<std::vector<mpq_class>> L_pts;       // 2 points spanning L = stage2(Lambda)
  int e_directrix;  // multiplicity of the directrix line on the final image: b
  int mu;           // fiber-degree invariant of the final image: a
  int reseeds;      // degenerate draws discarded before success
};

ProjectionChain build_Y(int a, int b, uint64_t seed);

struct DualSampleReport {
  std::vector<std::vector<uint32_t>> points;  // dual points, one per accepted parameter
  uint64_t resamples = 0;                     // parameters rejected for tangent-rank drop
  uint64_t attempts = 0;
  bool high_resample_warning = false;  // resample rate above 20%
  uint32_t p = 0;
  uint64_t seed = 0;
};

// Tangent hyperplanes of the image of S(a,b) under the linear map C: at a
// random chart parameter (s, 1, u, 1), the rows {C p, C dp/ds, C dp/du}
// span the tangent cone; each sample is a random kernel vector.
DualSampleReport dual_sample(const ScrollParam& S, const RatMat& C, int n, uint32_t p,
                             uint64_t seed);
DualSampleReport dual_sample(const ProjectionChain& chain, int n, uint32_t p, uint64_t seed);

struct InterpolatedForm {
  int d;
  FpPoly form;          // the unique degree-d form through the samples, leading coeff 1
  int kernel_dim_d;     // 1 for a valid interpolation
  int kernel_dim_dm1;   // 0 when the degree is exactly d
  uint32_t p;
  int n_samples;
};

// Exact nullspace over F_p of the sample-evaluation matrix in the degree-d
// monomial basis; requires n_samples >= 1.2 * C(d + r, r).
InterpolatedForm dual_interpolate(const std::vector<std::vector<uint32_t>>& samples, int d,
                                  uint32_t p);

// Multiplicity of V(form) at a general point of the codimension-2 subspace
// V(l1, l2): minimum degree in the last two coordinates after a linear change
// sending l1, l2 to them.
template <class F>
int multiplicity_along(const MPoly<F>& form, const MPoly<F>& l1, const MPoly<F>& l2) {
  form.check_compatible(l1);
  form.check_compatible(l2);
  const F& k = form.field();
  const int nv = form.n_vars();
  if (l1.is_zero() || l1.degree() != 1 || l2.is_zero() || l2.degree() != 1)
    fail(ErrorKind::Structural, "multiplicity_along: need two nonzero linear forms");
  auto coeff_row = [&](const MPoly<F>& l) {
    std::vector<typename F::Elem> row(nv, k.zero());
    for (const auto& t : l.terms())
      for (int v = 0; v < nv; ++v)
        if (t.e[v] == 1) row[v] = t.c;
    return row;
  };
  std::vector<std::vector<typename F::Elem>> rows = {coeff_row(l1), coeff_row(l2)};
  {
    DenseMat<F> two(k, 2, nv);
    two.a[0] = rows[0];
    two.a[1] = rows[1];
    if (two.rank() != 2) fail(ErrorKind::Structural, "multiplicity_along: dependent linear forms");
  }
  // Greedily extend {l1, l2} by unit vectors to a full coordinate system.
  for (int v = 0; v < nv && static_cast<int>(rows.size()) < nv; ++v) {
    DenseMat<F> m(k, static_cast<int>(rows.size()) + 1, nv);
    for (size_t i = 0; i < rows.size(); ++i) m.a[i] = rows[i];
    m.a[rows.size()][v] = k.one();
    if (m.rank() == static_cast<int>(rows.size()) + 1) {
      std::vector<typename F::Elem> e(nv, k.zero());
      e[v] = k.one();
      rows.push_back(std::move(e));
    }
  }
  DenseMat<F> S(k, nv, nv);
  for (int i = 0; i + 2 < nv; ++i) S.a[i] = rows[2 + i];
  S.a[nv - 2] = rows[0];
  S.a[nv - 1] = rows[1];
  MPoly<F> g = linear_change(form, S.inverse().a);
  return g.min_degree_in_block({nv - 2, nv - 1});
}

// Coefficient-matrix kernel test for a linear change of variables removing a
// variable from f (F_p analogue of the rational cone test).
bool fp_is_cone(const FpPoly& f);

struct InverseDegreeReport {
  int e = -1;  // least degree whose solved inverse reproduces held-out pairs
  bool found = false;
  int e_max = 0;
  uint32_t p = 0;
  uint64_t seed = 0;
};

// Least e such that degree-e forms G with G(map(x)) ~ x exist: solved as an
// exact F_p nullspace over >= 1.2 * (r+1) * C(e+r, r) sample pairs and
// validated projectively on 20 held-out pairs.
InverseDegreeReport inverse_degree_fp(const std::vector<FpPoly>& forms, int e_max, uint64_t seed);
InverseDegreeReport inverse_degree(const PolarMap& map, uint32_t p, uint64_t seed);

struct SerieReport {
  int r = 0, d = 0, a = 0, b = 0;
  uint32_t p_structure = 0, p_degree = 0;
  int kernel_dim_d = -1, kernel_dim_dm1 = -1;
  bool interp_ok = false;
  bool generalization_ok = false;  // 50 fresh dual points satisfy the form
  int mult_along = -1, mult_expected = -1;
  bool mult_ok = false;
  DegreeEstimate degree;
  bool homaloidal_ok = false;
  bool ok = false;
  uint64_t seed = 0;
};

// End-to-end pipeline: build_Y(r-2, d-r+2), interpolate the dual at a large
// prime, check the directrix multiplicity d-(r-2), then re-interpolate at
// p_degree and run the exhaustive fiber estimator on the polar map.
SerieReport serie_verify(int r, int d, uint32_t p_degree, uint64_t seed);

}  // namespace polaris

#endif
