#include "polaris/constructions.hpp"

#include "polaris/polymat.hpp"
#include "polaris/randforms.hpp"

namespace polaris {

namespace {

// f = sum over P-entries of coeff * prod_l Q_l^{e_l}.
RatPoly combine(const std::vector<RatPoly>& Q, const std::vector<std::pair<ExpVec, RatPoly>>& P) {
  RatPoly f(Q.front().field(), Q.front().n_vars());
  for (const auto& [ze, coeff] : P) {
    RatPoly term = coeff;
    for (size_t l = 0; l < Q.size(); ++l)
      if (ze[l] > 0) term = term * Q[l].pow(static_cast<int>(ze[l]));
    f = f + term;
  }
  return f;
}

}  // namespace

GNBuild gn_build(const GNSpec& spec) {
  const int r = spec.r, t = spec.t, m = spec.m, n = spec.n, d = spec.d;
  if (r < 3 || t < 1 || t > r - 2) fail(ErrorKind::Structural, "gn_build: need 1 <= t <= r-2");
  if (m < 1 || m > t - 1) fail(ErrorKind::Structural, "gn_build: need 1 <= m <= t-1");
  if (n < 2) fail(ErrorKind::Structural, "gn_build: need n >= 2");
  if ((n - 1) % (m + 1) != 0)
    fail(ErrorKind::Structural, "gn_build: with linear psi, m+1 must divide n-1");
  if (d < n) fail(ErrorKind::Structural, "gn_build: need d >= n");
  const int mu = d / n;
  if (d - mu == 0) fail(ErrorKind::DegenerateSpec, "gn_build: d - mu = 0 gives an empty core");

  const RatField Q_field;
  const int nv = r + 1;
  const int dh = (n - 1) / (m + 1) + 1;  // degree of the h_i
  Rng rng(spec.seed, 0x676e);            // stream tag "gn"

  // h_0..h_t: dense forms of degree dh in y_0..y_m.
  std::vector<RatPoly> h;
  for (int i = 0; i <= t; ++i)
    h.push_back(dense_random_form(Q_field, m + 1, var_range(0, m), dh, rng));

  // psi_0..psi_m: linear forms in the tail variables x_{t+1}..x_r.
  std::vector<RatPoly> psi;
  for (int j = 0; j <= m; ++j)
    psi.push_back(dense_random_form(Q_field, nv, var_range(t + 1, r), 1, rng));

  // dh_rows[j][i] = (d h_i / d y_j)(psi): differentiate first, then substitute.
  std::vector<std::vector<RatPoly>> dh_rows(m + 1);
  for (int j = 0; j <= m; ++j)
    for (int i = 0; i <= t; ++i) dh_rows[j].push_back(h[i].diff(j).subst(psi));

  // Bordered determinants: row 0 holds x_0..x_t, rows 1..m+1 the derivative
  // rows, and the remaining t-m-1 rows are generic constants (fresh per l).
  std::vector<RatPoly> Qforms;
  std::vector<std::vector<RatPoly>> M;
  for (int l = 0; l < t - m; ++l) {
    PolyMatrix<RatField> B(Q_field, nv, t + 1, t + 1);
    for (int i = 0; i <= t; ++i) B.at(0, i) = RatPoly::variable(Q_field, nv, i);
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i <= t; ++i) B.at(1 + j, i) = dh_rows[j][i];
    for (int u = 0; u < t - m - 1; ++u)
      for (int i = 0; i <= t; ++i)
        B.at(m + 2 + u, i) = RatPoly::constant(Q_field, nv, Q_field.from_int(rng.small_nonzero(5)));

    std::vector<RatPoly> Ml;
    RatPoly Ql(Q_field, nv);
    for (int i = 0; i <= t; ++i) {
      RatPoly c = B.without_row(0).without_col(i).det();
      if (i % 2 == 1) c = -c;
      Ql = Ql + RatPoly::variable(Q_field, nv, i) * c;
      Ml.push_back(std::move(c));
    }
    if (Ql.is_zero() || Ql.degree() != n)
      fail(ErrorKind::DegenerateSpec, "gn_build: determinant form degenerate; re-seed");
    Qforms.push_back(std::move(Ql));
    M.push_back(std::move(Ml));
  }

  // P: for each monomial z^e of degree k <= mu in the t-m determinant slots,
  // a dense tail form of degree d - k n.
  std::vector<std::pair<ExpVec, RatPoly>> P;
  for (int k = 0; k <= mu; ++k)
    for (const ExpVec& ze : monomials_of_degree(t - m, k))
      P.emplace_back(ze, dense_random_form(Q_field, nv, var_range(t + 1, r), d - k * n, rng));

  RatPoly f = combine(Qforms, P);
  if (f.is_zero() || f.degree() != d)
    fail(ErrorKind::DegenerateSpec, "gn_build: assembled polynomial degenerate; re-seed");
  return GNBuild{spec, Hypersurface(f), std::move(Qforms), std::move(M), std::move(P),
                 std::move(dh_rows), mu};
}

PermuttiBuild permutti_assemble(const PermuttiSpec& spec, std::vector<RatPoly> M,
                                std::vector<RatPoly> P, bool bottleneck) {
  const int r = spec.r, t = spec.t, n = spec.n, d = spec.d;
  if (r < 3 || t < 1 || t > r - 2)
    fail(ErrorKind::Structural, "permutti_assemble: need 1 <= t <= r-2");
  if (n < 2) fail(ErrorKind::Structural, "permutti_assemble: need n >= 2");
  if (d < n) fail(ErrorKind::Structural, "permutti_assemble: need d >= n");
  const int mu = d / n;
  if (d - mu == 0)
    fail(ErrorKind::DegenerateSpec, "permutti_assemble: d - mu = 0 gives an empty core");
  if (static_cast<int>(M.size()) != t + 1)
    fail(ErrorKind::Structural, "permutti_assemble: need t+1 tail forms");
  if (static_cast<int>(P.size()) != mu + 1)
    fail(ErrorKind::Structural, "permutti_assemble: need mu+1 coefficient forms");

  const RatField Q_field;
  const int nv = r + 1;
  RatPoly Q(Q_field, nv);
  for (int i = 0; i <= t; ++i) Q = Q + RatPoly::variable(Q_field, nv, i) * M[i];
  if (Q.is_zero() || Q.degree() != n)
    fail(ErrorKind::DegenerateSpec, "permutti_assemble: pivot form degenerate; re-seed");

  RatPoly f(Q_field, nv);
  for (int k = 0; k <= mu; ++k) {
    RatPoly term = P[k];
    if (k > 0) term = term * Q.pow(k);
    f = f + term;
  }
  if (f.is_zero() || f.degree() != d)
    fail(ErrorKind::DegenerateSpec, "permutti_assemble: assembled polynomial degenerate; re-seed");
  return PermuttiBuild{spec,         Hypersurface(f), std::move(Q), std::move(M),
                       std::move(P), mu,              bottleneck};
}

PermuttiBuild permutti_build(const PermuttiSpec& spec) {
  const int r = spec.r, t = spec.t, n = spec.n, d = spec.d;
  if (r < 3 || t < 1 || t > r - 2) fail(ErrorKind::Structural, "permutti_build: need 1 <= t <= r-2");
  if (n < 2) fail(ErrorKind::Structural, "permutti_build: need n >= 2");
  if (d < n) fail(ErrorKind::Structural, "permutti_build: need d >= n");

  const RatField Q_field;
  const int nv = r + 1;
  Rng rng(spec.seed, 0x706d);  // stream tag "pm"
  const bool bottleneck = r > 2 * t;

  std::vector<RatPoly> M;
  if (!bottleneck) {
    for (int i = 0; i <= t; ++i)
      M.push_back(dense_random_form(Q_field, nv, var_range(t + 1, r), n - 1, rng));
  } else {
    // Tail forms factored through t intermediate linear forms, so that the
    // polar image stays small when the tail block is wide.
    std::vector<RatPoly> u;
    for (int k = 0; k < t; ++k)
      u.push_back(dense_random_form(Q_field, nv, var_range(t + 1, r), 1, rng));
    for (int i = 0; i <= t; ++i) {
      RatPoly g = dense_random_form(Q_field, t, var_range(0, t - 1), n - 1, rng);
      M.push_back(g.subst(u));
    }
  }

  const int mu = d / n;
  std::vector<RatPoly> P;
  for (int k = 0; k <= mu; ++k)
    P.push_back(dense_random_form(Q_field, nv, var_range(t + 1, r), d - k * n, rng));
  return permutti_assemble(spec, std::move(M), std::move(P), bottleneck);
}

int core_multiplicity(const Hypersurface& h, int t) {
  if (t < 0 || t >= h.r) fail(ErrorKind::Structural, "core_multiplicity: bad head size");
  return h.f.min_degree_in_block(var_range(t + 1, h.r));
}

ZVReport z_and_v_check(const Hypersurface& h, int r, int t, uint32_t p_rank, uint32_t p_gauss,
                       uint64_t seed) {
  ZVReport rep;
  rep.z_expected = std::min(r - 1, 2 * (r - t) - 1);
  rep.v_expected = std::min(r - 2, 2 * (r - t - 1));
  rep.p_rank = p_rank;
  rep.p_gauss = p_gauss;
  rep.seed = seed;

  HessianReport hr = hessian(h, HessianMode::Probabilistic(p_rank, 24, seed));
  rep.z_observed = hr.z;
  rep.z_ok = (rep.z_observed == rep.z_expected);

  try {
    GaussImageReport gr = gauss_image_dim(h, p_gauss, seed + 1);
    rep.v_observed = gr.v;
    rep.v_ok = (rep.v_observed == rep.v_expected);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inconclusive) throw;
    rep.v_observed = -1;
    rep.v_ok = false;
  }
  return rep;
}

}  // namespace polaris
