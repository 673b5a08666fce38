#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polaris/linalg.hpp"
#include "polaris/mpoly.hpp"
#include "polaris/polymat.hpp"
#include "polaris/randforms.hpp"

using namespace polaris;

static RatPoly xv(const RatField& Q, int nv, int i) { return RatPoly::variable(Q, nv, i); }

TEST_CASE("parse / print round trip and canonical term order") {
  RatField Q;
  RatPoly f = parse_poly(Q, "2*x1*x2*x3 - x0*x3^2 - x2^3");
  CHECK(f.n_vars() == 4);
  CHECK(to_text(f) == "-x2^3 + 2*x1*x2*x3 - x0*x3^2");
  CHECK(f.degree() == 3);
  CHECK(f.is_homogeneous());
  CHECK(parse_poly(Q, to_text(f)) == f);

  // same polynomial under permuted input and redundant signs
  CHECK(parse_poly(Q, "-x2^3 - x0*x3^2 + 2*x1*x2*x3") == f);

  RatPoly fr = parse_poly(Q, "3/2*x0^2 - 1/2*x1^2", 3);
  CHECK(to_text(fr) == "3/2*x0^2 - 1/2*x1^2");
  CHECK(fr.n_vars() == 3);

  CHECK(to_text(RatPoly(Q, 3)) == "0");
  CHECK(to_text(parse_poly(Q, "x0 + x1").pow(2)) == "x0^2 + 2*x0*x1 + x1^2");
}

TEST_CASE("parse failures carry the parse error kind") {
  RatField Q;
  for (const char* bad : {"x0 +", "3*", "x^2", "x0**2", "2/0*x1", "()", "bad~~file"}) {
    bool threw = false;
    try {
      parse_poly(Q, bad);
    } catch (const Error& e) {
      threw = (e.kind() == ErrorKind::Parse);
    }
    CHECK_MESSAGE(threw, bad);
  }
}

TEST_CASE("grevlex comparisons") {
  // equal degree: the one with the smaller trailing exponent wins
  ExpVec a = {0, 1, 1, 1};  // x1*x2*x3
  ExpVec b = {1, 0, 0, 2};  // x0*x3^2
  ExpVec c = {0, 0, 3, 0};  // x2^3
  CHECK(grevlex_less(b, a));
  CHECK(grevlex_less(a, c));
  CHECK(grevlex_less(b, c));
  CHECK(!grevlex_less(a, a));
  // lower total degree is smaller
  CHECK(grevlex_less(ExpVec{1, 0, 0, 0}, ExpVec{2, 0, 0, 0}));
}

TEST_CASE("arithmetic: Euler identity, scaling, substitution") {
  RatField Q;
  RatPoly f = parse_poly(Q, "2*x1*x2*x3 - x0*x3^2 - x2^3");
  RatPoly e(Q, 4);
  for (int i = 0; i < 4; ++i) e = e + xv(Q, 4, i) * f.diff(i);
  CHECK(e == f.scaled(RatField::from_int(3)));

  // d/dx of a constant and of an absent variable
  CHECK(RatPoly::constant(Q, 4, RatField::from_int(5)).diff(2).is_zero());
  CHECK(parse_poly(Q, "x0^2", 4).diff(3).is_zero());

  // linear_change is covariant: g(x) = f(Ax)
  std::vector<std::vector<mpq_class>> A(4, std::vector<mpq_class>(4, mpq_class(0)));
  A[0][0] = 2;
  A[1][1] = 1;
  A[2][2] = 1;
  A[3][3] = 1;
  CHECK(to_text(linear_change(f, A)) == "-x2^3 + 2*x1*x2*x3 - 2*x0*x3^2");
}

TEST_CASE("monomial content, exact division, coprimality") {
  RatField Q;
  RatPoly f = parse_poly(Q, "2*x1*x2*x3 - x0*x3^2 - x2^3");
  RatPoly h = parse_poly(Q, "x0^2*x1*x3 + 2*x0*x1^2*x3^2");
  ExpVec mc = h.monomial_content_single();
  CHECK(mc == ExpVec{1, 1, 0, 1});
  CHECK(to_text(h.divide_by_monomial(mc)) == "2*x1*x3 + x0");
  CHECK(exact_div(f * h, h) == f);

  std::vector<RatPoly> cop = {parse_poly(Q, "x0^2 + x1^2", 3), parse_poly(Q, "x1*x2", 3),
                              parse_poly(Q, "x0*x2 - x1^2", 3)};
  CHECK(no_common_factor_probabilistic(cop, 12, 7));
  RatPoly common = parse_poly(Q, "x0 + x1 + x2", 3);
  std::vector<RatPoly> notcop = {common * parse_poly(Q, "x0", 3),
                                 common * parse_poly(Q, "x1^2", 3)};
  CHECK(!no_common_factor_probabilistic(notcop, 12, 7));
}

TEST_CASE("polynomial matrices: determinants and rank") {
  RatField Q;
  RatPoly f = parse_poly(Q, "2*x1*x2*x3 - x0*x3^2 - x2^3");
  PolyMatrix<RatField> M(Q, 4, 3, 3);
  M.at(0, 0) = xv(Q, 4, 0);
  M.at(0, 1) = xv(Q, 4, 1);
  M.at(0, 2) = xv(Q, 4, 2);
  M.at(1, 0) = xv(Q, 4, 1);
  M.at(1, 1) = xv(Q, 4, 2);
  M.at(1, 2) = xv(Q, 4, 3);
  M.at(2, 0) = xv(Q, 4, 2);
  M.at(2, 1) = xv(Q, 4, 3);
  CHECK(M.det() == f);

  // integer Vandermonde on 1..5 has determinant 288
  PolyMatrix<RatField> V(Q, 1, 5, 5);
  for (int i = 0; i < 5; ++i) {
    long p = 1;
    for (int j = 0; j < 5; ++j) {
      V.at(i, j) = RatPoly::constant(Q, 1, RatField::from_int(p));
      p *= i + 1;
    }
  }
  RatPoly dv = V.det();
  REQUIRE(dv.n_terms() == 1);
  CHECK(RatField::str(dv.terms()[0].c) == "288");

  PolyMatrix<RatField> R(Q, 4, 3, 3);
  R.at(0, 0) = xv(Q, 4, 0);
  R.at(0, 1) = xv(Q, 4, 1);
  R.at(0, 2) = xv(Q, 4, 2);
  R.at(1, 0) = xv(Q, 4, 1);
  R.at(1, 1) = xv(Q, 4, 2);
  R.at(1, 2) = xv(Q, 4, 3);
  R.at(2, 0) = xv(Q, 4, 0) + xv(Q, 4, 1);
  R.at(2, 1) = xv(Q, 4, 1) + xv(Q, 4, 2);
  R.at(2, 2) = xv(Q, 4, 2) + xv(Q, 4, 3);
  CHECK(R.rank() == 2);
}

TEST_CASE("prime field: conversion, evaluation, inverses") {
  RatField Q;
  FpField F41(41);
  RatPoly f = parse_poly(Q, "2*x1*x2*x3 - x0*x3^2 - x2^3");
  FpPoly g = to_fp(f, F41);
  CHECK(to_text(g) == "40*x2^3 + 2*x1*x2*x3 + 40*x0*x3^2");
  std::vector<uint32_t> pt = {3, 5, 7, 11};
  CHECK(g.eval(pt) == 23u);  // 770 - 363 - 343 = 64 = 23 mod 41

  // reduction fails exactly when p divides a denominator
  RatPoly bad = parse_poly(Q, "1/41*x0", 2);
  bool threw = false;
  try {
    to_fp(bad, F41);
  } catch (const Error& e) {
    threw = (e.kind() == ErrorKind::BadPrime);
  }
  CHECK(threw);
  CHECK(to_text(to_fp(bad, FpField(43))) == "21*x0");

  for (uint32_t a = 1; a < 41; ++a) CHECK(F41.mul(a, F41.inv(a)) == 1u);
}

TEST_CASE("dense linear algebra over Q and F_p") {
  RatField Q;
  RatMat K(Q, 2, 3);
  K.a[0] = {mpq_class(1), mpq_class(2), mpq_class(3)};
  K.a[1] = {mpq_class(2), mpq_class(4), mpq_class(6)};
  CHECK(K.rank() == 1);
  CHECK(K.nullspace().size() == 2);

  FpField F41(41);
  FpMat Mf(F41, 3, 3);
  Rng rng(2024, 1);
  for (;;) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) Mf.a[i][j] = static_cast<uint32_t>(rng.below(41));
    if (Mf.rank() == 3) break;
  }
  FpMat I3 = Mf * Mf.inverse();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(I3.a[i][j] == (i == j ? 1u : 0u));

  std::vector<mpq_class> vq = {mpq_class(1, 2), mpq_class(-3, 4), mpq_class(0)};
  auto vi = integer_scaled(vq);
  CHECK(vi[0] == 2);
  CHECK(vi[1] == -3);
  CHECK(vi[2] == 0);
}

TEST_CASE("deterministic rng: reproducible, fork-independent") {
  Rng a(99, 5), b(99, 5);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  Rng c(99, 6);
  CHECK(Rng(99, 5).next() != c.next());
  Rng f1 = Rng(99, 5).fork(1), f2 = Rng(99, 5).fork(2);
  CHECK(f1.next() != f2.next());
  Rng g(7);
  for (int i = 0; i < 200; ++i) {
    int64_t v = g.small_nonzero(5);
    CHECK(v != 0);
    CHECK(std::abs(v) <= 5);
  }
}

TEST_CASE("dense random forms cover every monomial of the degree") {
  RatField Q;
  Rng rng(31);
  RatPoly f = dense_random_form(Q, 5, var_range(3, 4), 3, rng);
  CHECK(f.degree() == 3);
  CHECK(f.n_terms() == 4);  // x3^3, x3^2 x4, x3 x4^2, x4^3
  std::vector<bool> tail_only(5, false);
  tail_only[3] = tail_only[4] = true;
  CHECK(f.supported_on(tail_only));
  CHECK(f.is_homogeneous());
}
