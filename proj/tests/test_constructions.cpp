#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polaris/constructions.hpp"

using namespace polaris;

TEST_CASE("bordered-determinant build: shape, support, key identity") {
  GNBuild gn = gn_build({4, 2, 1, 3, 3, 42});
  CHECK(gn.f.d == 3);
  CHECK(gn.f.r == 4);
  CHECK(gn.mu == 1);
  REQUIRE(gn.Q.size() == 1);
  REQUIRE(gn.M.size() == 1);
  REQUIRE(gn.M[0].size() == 3);
  CHECK(gn.Q[0].degree() == 3);

  // the Laplace coefficients live in the tail variables only
  std::vector<bool> tail_only(5, false);
  tail_only[3] = tail_only[4] = true;
  for (const RatPoly& mi : gn.M[0]) CHECK(mi.supported_on(tail_only));

  // sum_i M[l][i] * dh_rows[j][i] == 0: the relation that kills the Hessian
  for (size_t l = 0; l < gn.M.size(); ++l)
    for (size_t j = 0; j < gn.dh_rows.size(); ++j) {
      RatPoly s(gn.f.f.field(), gn.f.f.n_vars());
      for (size_t i = 0; i < gn.M[l].size(); ++i) s = s + gn.M[l][i] * gn.dh_rows[j][i];
      CHECK(s.is_zero());
    }

  // Q_l = sum_i x_i M_{l,i}
  {
    const RatField& Q = gn.f.f.field();
    RatPoly s(Q, 5);
    for (int i = 0; i <= 2; ++i) s = s + RatPoly::variable(Q, 5, i) * gn.M[0][i];
    CHECK(s == gn.Q[0]);
  }
}

TEST_CASE("built hypersurfaces have zero hessian determinant but are not cones") {
  GNBuild gn = gn_build({4, 2, 1, 3, 3, 42});
  HessianReport hr = hessian(gn.f, HessianMode::Probabilistic(32003, 16, 7));
  CHECK(hr.det_is_zero);
  CHECK(!is_cone(gn.f).cone);

  // With t+1 head variables but only r-t tail variables, linear tail
  // coefficients (n = 2) are forced to be dependent, so that build is a cone;
  // quadratic coefficients (n = 3) leave the partials independent.
  PermuttiBuild cone = permutti_build({4, 2, 2, 4, 5});
  CHECK(is_cone(cone.f).cone);

  PermuttiBuild pm = permutti_build({4, 2, 3, 6, 5});
  HessianReport hp = hessian(pm.f, HessianMode::Probabilistic(32003, 16, 7));
  CHECK(hp.det_is_zero);
  CHECK(!is_cone(pm.f).cone);
}

TEST_CASE("core multiplicity: equality for the single-Q form, lower bound otherwise") {
  GNBuild gn = gn_build({4, 2, 1, 3, 3, 42});
  CHECK(core_multiplicity(gn.f, 2) >= gn.f.d - gn.mu);

  struct Row { int r, t, n, d; };
  for (const Row& w : {Row{4, 2, 2, 4}, Row{4, 2, 2, 5}, Row{5, 3, 2, 4}, Row{5, 3, 2, 5}}) {
    PermuttiBuild pm = permutti_build({w.r, w.t, w.n, w.d, 5});
    CHECK_MESSAGE(core_multiplicity(pm.f, w.t) == w.d - pm.mu, "r=", w.r, " t=", w.t,
                  " d=", w.d);
  }
}

TEST_CASE("polar image and dual dimensions match the closed formulas") {
  struct Row { int r, t, n, d; };
  for (const Row& w : {Row{4, 2, 2, 4}, Row{5, 2, 2, 4}, Row{5, 3, 2, 4}}) {
    PermuttiBuild pm = permutti_build({w.r, w.t, w.n, w.d, 5});
    ZVReport zv = z_and_v_check(pm.f, w.r, w.t, 32003, 101, 17);
    CHECK_MESSAGE(zv.z_ok, "z: r=", w.r, " t=", w.t, " got ", zv.z_observed, " want ",
                  zv.z_expected);
    CHECK_MESSAGE(zv.v_ok, "v: r=", w.r, " t=", w.t, " got ", zv.v_observed, " want ",
                  zv.v_expected);
    CHECK(zv.z_expected == std::min(w.r - 1, 2 * (w.r - w.t) - 1));
    CHECK(zv.v_expected == std::min(w.r - 2, 2 * (w.r - w.t - 1)));
  }
}

TEST_CASE("tail routing switches on when the head is too wide") {
  PermuttiBuild wide = permutti_build({5, 2, 2, 4, 5});
  CHECK(wide.bottleneck);
  PermuttiBuild dense = permutti_build({4, 2, 2, 4, 5});
  CHECK(!dense.bottleneck);
  HessianReport hw = hessian(wide.f, HessianMode::Probabilistic(32003, 16, 7));
  CHECK(hw.det_is_zero);
}

TEST_CASE("the two constructions agree on shared data when m = t-1") {
  GNBuild g = gn_build({5, 3, 2, 4, 8, 99});
  REQUIRE(g.Q.size() == 1);
  std::vector<RatPoly> P;
  for (int k = 0; k <= g.mu; ++k) {
    REQUIRE(g.P[k].first[0] == static_cast<uint32_t>(k));
    P.push_back(g.P[k].second);
  }
  PermuttiBuild eq = permutti_assemble({5, 3, 4, 8, 99}, g.M[0], P, false);
  CHECK(eq.f.f == g.f.f);
}

TEST_CASE("same seed reproduces the same polynomial, different seeds differ") {
  PermuttiBuild a = permutti_build({4, 2, 2, 4, 5});
  PermuttiBuild b = permutti_build({4, 2, 2, 4, 5});
  CHECK(a.f.f == b.f.f);
  PermuttiBuild c = permutti_build({4, 2, 2, 4, 6});
  CHECK(!(a.f.f == c.f.f));

  GNBuild ga = gn_build({4, 2, 1, 3, 3, 42});
  GNBuild gb = gn_build({4, 2, 1, 3, 3, 42});
  CHECK(ga.f.f == gb.f.f);
}

TEST_CASE("inconsistent type data is rejected structurally") {
  // (m+1) must divide n-1
  CHECK_THROWS_AS(gn_build({4, 2, 1, 4, 4, 1}), Error);
  bool threw = false;
  try {
    gn_build({4, 2, 1, 4, 4, 1});
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::Structural);
  }
  CHECK(threw);

  // d < n leaves no room for P_1
  threw = false;
  try {
    permutti_build({4, 2, 2, 1, 1});
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::Structural);
  }
  CHECK(threw);

  // t out of range
  threw = false;
  try {
    permutti_build({4, 3, 2, 4, 1});
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::Structural);
  }
  CHECK(threw);
}
