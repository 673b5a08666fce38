#include "polaris/subhankel.hpp"

namespace polaris {

namespace {

// Order-k sub-Hankel determinant in its own ring k[x0..xk].
RatPoly subhankel_det(const RatField& Q, int k) {
  if (k == 0) return RatPoly::constant(Q, 1, Q.one());
  if (k == 1) return RatPoly::variable(Q, 2, 0);
  PolyMatrix<RatField> M(Q, k + 1, k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      if (i + j <= k) M.at(i, j) = RatPoly::variable(Q, k + 1, i + j);
  return M.det();
}

}  // namespace

SubHankelBundle build(int r) {
  if (r < 2 || r > 10) fail(ErrorKind::Structural, "sub-Hankel order r must be in 2..10");
  RatField Q;
  int n = r + 1;
  PolyMatrix<RatField> M(Q, n, r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i + j <= r) M.at(i, j) = RatPoly::variable(Q, n, i + j);

  SubHankelBundle b{r, M, RatPoly(Q, n), {}, {}, {}};
  b.f = M.det();

  b.phi.reserve(r);
  for (int j = 0; j < r; ++j) {
    RatPoly fj = subhankel_det(Q, j);
    b.phi.push_back(fj.embed(n, r - j));
  }

  // Phi^[1] = (2 x_{r-1}, x_r)^T; Phi^[i] prepends its first column and
  // carries Phi^[i-1] in the upper-right block over a zero bottom row.
  b.Phi.reserve(r - 1);
  for (int i = 1; i <= r - 1; ++i) {
    PolyMatrix<RatField> P(Q, n, i + 1, i);
    P.at(0, 0) = RatPoly::variable(Q, n, r - i).scaled(RatField::from_int(2));
    for (int k = 1; k <= i - 1; ++k)
      P.at(k, 0) = RatPoly::variable(Q, n, r - i + k).scaled(RatField::from_frac(2 * i - k, i));
    P.at(i, 0) = RatPoly::variable(Q, n, r);
    if (i >= 2) {
      const PolyMatrix<RatField>& prev = b.Phi[i - 2];
      for (int row = 0; row < i; ++row)
        for (int col = 0; col < i - 1; ++col) P.at(row, col + 1) = prev.at(row, col);
    }
    b.Phi.push_back(P);
  }

  b.partials.reserve(n);
  for (int i = 0; i < n; ++i) b.partials.push_back(b.f.diff(i));
  return b;
}

LemmaReport verify_lemma(const SubHankelBundle& b, uint64_t seed) {
  const RatField& Q = b.f.field();
  int r = b.r, n = r + 1;
  LemmaReport rep;
  rep.r = r;

  // (i) df/dx_i = (-1)^r x_r dphi^(r-1)/dx_{i+1} for 0 <= i <= r-2
  rep.part_i_ok = true;
  {
    const RatPoly& phi_top = b.phi[r - 1];
    RatPoly xr = RatPoly::variable(Q, n, r);
    for (int i = 0; i <= r - 2; ++i) {
      RatPoly rhs = xr * phi_top.diff(i + 1);
      if (r % 2 != 0) rhs = -rhs;
      RatPoly wit = b.partials[i] - rhs;
      if (!wit.is_zero()) {
        rep.part_i_ok = false;
        rep.failures.push_back({"part_i_x" + std::to_string(i), wit});
      }
    }
  }

  // (ii) content / support / coprimality of the first i+1 partials
  rep.part_ii_gcd_ok = true;
  rep.part_ii_cofactor_free_ok = true;
  for (int i = 0; i <= r - 1; ++i) {
    std::vector<RatPoly> head(b.partials.begin(), b.partials.begin() + i + 1);
    ExpVec content = monomial_content(head);
    ExpVec want(n, 0);
    want[r] = static_cast<uint32_t>(r - i - 1);
    if (content != want) {
      rep.part_ii_gcd_ok = false;
      rep.failures.push_back({"part_ii_content_i" + std::to_string(i), head.front()});
    }
    std::vector<bool> allowed(n, false);
    for (int v = r - i; v <= r; ++v) allowed[v] = true;
    for (int j = 0; j <= i; ++j)
      if (!head[j].supported_on(allowed)) {
        rep.part_ii_gcd_ok = false;
        rep.failures.push_back({"part_ii_support_i" + std::to_string(i) + "_f" + std::to_string(j),
                                head[j]});
      }
    std::vector<RatPoly> stripped;
    stripped.reserve(head.size());
    for (const RatPoly& g : head) stripped.push_back(g.divide_by_monomial(content));
    if (!no_common_factor_probabilistic(stripped, 4 * n, seed + static_cast<uint64_t>(i))) {
      rep.part_ii_cofactor_free_ok = false;
      rep.failures.push_back({"part_ii_cofactor_i" + std::to_string(i), stripped.front()});
    }
  }

  // (iii-a) x_r f_i = -sum_{k=0}^{i-1} ((2i-k)/i) x_{r-i+k} f_k
  rep.part_iii_a_ok = true;
  {
    RatPoly xr = RatPoly::variable(Q, n, r);
    for (int i = 1; i <= r - 1; ++i) {
      RatPoly rhs(Q, n);
      for (int k = 0; k <= i - 1; ++k) {
        RatPoly term = RatPoly::variable(Q, n, r - i + k) * b.partials[k];
        rhs = rhs - term.scaled(RatField::from_frac(2 * i - k, i));
      }
      RatPoly wit = xr * b.partials[i] - rhs;
      if (!wit.is_zero()) {
        rep.part_iii_a_ok = false;
        rep.failures.push_back({"part_iii_a_i" + std::to_string(i), wit});
      }
    }
  }

  // (iii-b) x_r f_r = sum_{k=0}^{r-2} (r-1-k) x_k f_k
  {
    RatPoly xr = RatPoly::variable(Q, n, r);
    RatPoly rhs(Q, n);
    for (int k = 0; k <= r - 2; ++k)
      rhs = rhs + (RatPoly::variable(Q, n, k) * b.partials[k]).scaled(RatField::from_int(r - 1 - k));
    RatPoly wit = xr * b.partials[r] - rhs;
    rep.part_iii_b_ok = wit.is_zero();
    if (!rep.part_iii_b_ok) rep.failures.push_back({"part_iii_b", wit});
  }

  return rep;
}

MinorReport minor_checks(const SubHankelBundle& b, int i) {
  if (i < 1 || i > b.r - 1) fail(ErrorKind::Structural, "minor_checks needs 1 <= i <= r-1");
  const RatField& Q = b.f.field();
  int r = b.r, n = r + 1;
  const PolyMatrix<RatField>& P = b.Phi[i - 1];
  MinorReport rep(Q, n);
  rep.i = i;
  rep.delta1 = P.without_row(0).det();
  rep.delta2 = P.without_row(i).det();

  ExpVec xri(n, 0);
  xri[r] = static_cast<uint32_t>(i);
  rep.delta1_is_xr_power =
      rep.delta1.n_terms() == 1 && rep.delta1.terms()[0].e == xri &&
      abs(rep.delta1.terms()[0].c) == 1;

  // x_r divides delta_2 iff every term carries x_r; check the exponent floor.
  rep.delta2_not_divisible = !rep.delta2.is_zero() &&
                             rep.delta2.monomial_content_single()[r] == 0;

  ExpVec top(n, 0);
  top[r - 1] = static_cast<uint32_t>(i);
  for (const auto& t : rep.delta2.terms())
    if (t.e == top) rep.delta2_top_coeff = t.c;
  rep.delta2_top_coeff_ok = abs(rep.delta2_top_coeff) == i + 1;
  return rep;
}

HilbertBurchReport hilbert_burch_check(const SubHankelBundle& b, int i) {
  if (i < 1 || i > b.r - 1) fail(ErrorKind::Structural, "hilbert_burch_check needs 1 <= i <= r-1");
  int r = b.r, n = r + 1;
  const PolyMatrix<RatField>& P = b.Phi[i - 1];
  HilbertBurchReport rep;
  rep.i = i;
  rep.convention = "minor_j = (-1)^j * det(Phi^[i] minus row j), j = 0..i; generators in partial order";

  ExpVec content(n, 0);
  content[r] = static_cast<uint32_t>(r - i - 1);
  for (int j = 0; j <= i; ++j) {
    RatPoly m = P.without_row(j).det();
    if (j % 2 != 0) m = -m;
    rep.minors.push_back(m);
    rep.generators.push_back(b.partials[j].divide_by_monomial(content));
  }

  // lambda from the first nonzero pair, then uniform verification.
  rep.ok = true;
  for (int j = 0; j <= i && rep.ok; ++j) {
    const RatPoly& m = rep.minors[j];
    const RatPoly& g = rep.generators[j];
    if (g.is_zero() || m.is_zero()) {
      rep.ok = false;
      break;
    }
    if (rep.lambda == 0) rep.lambda = m.leading_term().c / g.leading_term().c;
    if (m != g.scaled(rep.lambda)) rep.ok = false;
  }
  if (!rep.ok) rep.lambda = 0;
  return rep;
}

HessianClosedFormReport hessian_closed_form(const SubHankelBundle& b) {
  const RatField& Q = b.f.field();
  int r = b.r, n = r + 1;
  HessianClosedFormReport rep(Q, n);
  rep.r = r;
  rep.exponent = static_cast<long>(r + 1) * (r - 2);

  std::vector<std::vector<RatPoly>> H(n, std::vector<RatPoly>(n, RatPoly(Q, n)));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      H[i][j] = b.partials[i].diff(j);
      if (j != i) H[j][i] = H[i][j];
    }

  rep.anti_triangular_ok = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j <= r - 1 && !H[i][j].is_zero()) rep.anti_triangular_ok = false;

  // With zeros strictly above the anti-diagonal the reversal permutation is
  // the only survivor in the determinant expansion.
  RatPoly prod = RatPoly::constant(Q, n, Q.one());
  for (int i = 0; i < n; ++i) prod = prod * H[i][r - i];
  long swaps = static_cast<long>(r) * (r + 1) / 2;
  if (swaps % 2 != 0) prod = -prod;
  rep.h = prod;

  ExpVec want(n, 0);
  want[r] = static_cast<uint32_t>(rep.exponent);
  rep.monomial_ok = prod.n_terms() == 1 && prod.terms()[0].e == want;
  if (rep.monomial_ok) rep.c = prod.terms()[0].c;
  return rep;
}

bool irreducibility_structure(const SubHankelBundle& b) {
  int r = b.r, n = r + 1;
  if (b.f.degree_in(0) != 1) return false;
  RatPoly c1 = b.f.coeff_of(0, 1);
  ExpVec want(n, 0);
  want[r] = static_cast<uint32_t>(r - 1);
  return c1.n_terms() == 1 && c1.terms()[0].e == want && abs(c1.terms()[0].c) == 1;
}

}  // namespace polaris
