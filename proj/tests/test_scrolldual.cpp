#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polaris/scrolldual.hpp"
#include "polaris/subhankel.hpp"

using namespace polaris;

TEST_CASE("scroll parameterization and vanishing catalecticant minors") {
  ScrollParam s12 = scroll_param(1, 2);
  REQUIRE(s12.forms.size() == 5);
  CHECK(to_text(s12.forms[0]) == "x0*x2");
  CHECK(to_text(s12.forms[1]) == "x1*x2");
  CHECK(to_text(s12.forms[2]) == "x0^2*x3");
  CHECK(to_text(s12.forms[3]) == "x0*x1*x3");
  CHECK(to_text(s12.forms[4]) == "x1^2*x3");
  CHECK(catalecticant_minors_vanish(s12));
  CHECK(catalecticant_minors_vanish(scroll_param(2, 2)));
  CHECK(catalecticant_minors_vanish(scroll_param(2, 3)));
  CHECK(catalecticant_minors_vanish(scroll_param(1, 4)));
}

TEST_CASE("multiplicity along a codimension-2 subspace") {
  RatField Q;
  SubHankelBundle b3 = build(3);
  RatPoly l1 = RatPoly::variable(Q, 4, 2), l2 = RatPoly::variable(Q, 4, 3);
  CHECK(multiplicity_along(b3.f, l1, l2) == 2);
  // a generic pair of forms meets the surface transversally: multiplicity 0
  RatPoly m1 = parse_poly(Q, "x0 + 2*x2 - x3");
  RatPoly m2 = parse_poly(Q, "x1 - x3");
  CHECK(multiplicity_along(b3.f, m1, m2) == 0);
  // dependent forms are rejected
  bool threw = false;
  try {
    multiplicity_along(b3.f, l1, l1 + l1);
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::Structural);
  }
  CHECK(threw);
}

TEST_CASE("dual of the unprojected surface interpolates as a cubic") {
  RatField Q;
  ScrollParam S = scroll_param(1, 2);
  RatMat id5 = RatMat::identity(Q, 5);
  DualSampleReport ds = dual_sample(S, id5, 45, 32003, 5);
  CHECK(ds.points.size() == 45);
  InterpolatedForm itp = dual_interpolate(ds.points, 3, 32003);
  CHECK(itp.kernel_dim_d == 1);
  CHECK(itp.kernel_dim_dm1 == 0);
}

TEST_CASE("projected cubic surface: double line, degree, inverse") {
  ProjectionChain ch = build_Y(1, 2, 7);
  CHECK(ch.stage1.rows == 5);
  CHECK(ch.full.rows == 4);
  CHECK(ch.e_directrix == 2);
  CHECK(ch.mu == 1);

  DualSampleReport ds = dual_sample(ch, 30, 32003, 11);
  InterpolatedForm itp = dual_interpolate(ds.points, 3, 32003);
  REQUIRE(itp.kernel_dim_d == 1);
  REQUIRE(itp.kernel_dim_dm1 == 0);

  // fresh duals satisfy the interpolated form; the form is not a cone
  DualSampleReport fresh = dual_sample(ch, 50, 32003, 13);
  for (const auto& pt : fresh.points) CHECK(itp.form.eval(pt) == 0);
  CHECK(!fp_is_cone(itp.form));

  // multiplicity 2 along the distinguished codim-2 space — and only there
  const FpField& fp = itp.form.field();
  FpPoly lP(fp, 4), lQ(fp, 4);
  for (int i = 0; i < 4; ++i) {
    ExpVec e(4, 0);
    e[i] = 1;
    lP = lP + FpPoly::monomial(fp, 4, e, fp.from_rat(ch.L_pts[0][i]));
    lQ = lQ + FpPoly::monomial(fp, 4, e, fp.from_rat(ch.L_pts[1][i]));
  }
  CHECK(multiplicity_along(itp.form, lP, lQ) == 2);
  int coord_hits = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      FpPoly xi = FpPoly::variable(fp, 4, i), xj = FpPoly::variable(fp, 4, j);
      if (multiplicity_along(itp.form, xi, xj) >= 2) ++coord_hits;
    }
  CHECK(coord_hits == 0);

  // polar map of the re-interpolated form at a small prime is birational
  DualSampleReport ds41 = dual_sample(ch, 32, 41, 17);
  InterpolatedForm itp41 = dual_interpolate(ds41.points, 3, 41);
  std::vector<FpPoly> grad;
  for (int v = 0; v < 4; ++v) grad.push_back(itp41.form.diff(v));
  DegreeOptions opt;
  opt.samples = 200;
  opt.seed = 19;
  opt.eps = mpq_class(3, 10);
  DegreeEstimate est = polar_degree_fp(grad, opt);
  CHECK(est.verdict == DegreeVerdict::DeltaEq);
  CHECK(est.k == 1);

  // inverse of the polar map needs degree 2d-3 = 3
  InverseDegreeReport inv = inverse_degree_fp(grad, 6, 23);
  CHECK(inv.found);
  CHECK(inv.e == 3);
}

TEST_CASE("linear polar maps invert in degree 1") {
  RatField Q;
  RatPoly q = parse_poly(Q, "x0*x3 - x1*x2");
  InverseDegreeReport inv = inverse_degree(gradient(Hypersurface(q)), 32003, 29);
  CHECK(inv.found);
  CHECK(inv.e == 1);
}

TEST_CASE("projected quintic threefold: directrix multiplicity three") {
  ProjectionChain ch = build_Y(2, 3, 31);
  DualSampleReport ds = dual_sample(ch, 170, 32003, 37);
  CHECK(!ds.high_resample_warning);
  CHECK(5 * ds.resamples < ds.attempts);  // resample rate well under control
  InterpolatedForm itp = dual_interpolate(ds.points, 5, 32003);
  REQUIRE(itp.kernel_dim_d == 1);
  REQUIRE(itp.kernel_dim_dm1 == 0);
  const FpField& fp = itp.form.field();
  FpPoly lP(fp, 5), lQ(fp, 5);
  for (int i = 0; i < 5; ++i) {
    ExpVec e(5, 0);
    e[i] = 1;
    lP = lP + FpPoly::monomial(fp, 5, e, fp.from_rat(ch.L_pts[0][i]));
    lQ = lQ + FpPoly::monomial(fp, 5, e, fp.from_rat(ch.L_pts[1][i]));
  }
  CHECK(multiplicity_along(itp.form, lP, lQ) == 3);
}

TEST_CASE("same seed rebuilds the same projection; interpolation needs enough samples") {
  ProjectionChain a = build_Y(1, 2, 7), b = build_Y(1, 2, 7);
  CHECK(a.full.a == b.full.a);
  CHECK(a.L_pts == b.L_pts);

  // too few samples for the monomial space is rejected up front
  DualSampleReport ds = dual_sample(a, 10, 32003, 11);
  bool threw = false;
  try {
    dual_interpolate(ds.points, 3, 32003);
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::Structural);
  }
  CHECK(threw);
}

TEST_CASE("full verification pipeline on the smallest and largest grid cells") {
  SerieReport s33 = serie_verify(3, 3, 41, 43);
  CHECK(s33.ok);
  CHECK(s33.a == 1);
  CHECK(s33.b == 2);
  CHECK(s33.mult_along == 2);
  CHECK(s33.kernel_dim_d == 1);
  CHECK(s33.kernel_dim_dm1 == 0);

  SerieReport s45 = serie_verify(4, 5, 23, 47);
  CHECK(s45.ok);
  CHECK(s45.a == 2);
  CHECK(s45.b == 3);
  CHECK(s45.mult_along == 3);
  CHECK(s45.degree.verdict == DegreeVerdict::DeltaEq);
  CHECK(s45.degree.k == 1);
}
