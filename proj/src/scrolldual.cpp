#include "polaris/scrolldual.hpp"

#include <algorithm>

#include "polaris/rng.hpp"

namespace polaris {

namespace {

uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<uint64_t>(n - k + i) / i;
  return r;
}

// Scale each row to the primitive integer vector on the same line, so that
// later reductions mod p never meet a denominator.
void make_rows_primitive(RatMat& m) {
  for (auto& row : m.a) {
    std::vector<mpz_class> z = integer_scaled(row);
    for (size_t j = 0; j < row.size(); ++j) row[j] = mpq_class(z[j]);
  }
}

std::vector<mpq_class> primitive_vec(const std::vector<mpq_class>& v) {
  std::vector<mpz_class> z = integer_scaled(v);
  std::vector<mpq_class> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = mpq_class(z[i]);
  return out;
}

int rank_of_rows(const RatField& Q, const std::vector<std::vector<mpq_class>>& rows, int cols) {
  RatMat m(Q, static_cast<int>(rows.size()), cols);
  for (size_t i = 0; i < rows.size(); ++i) m.a[i] = rows[i];
  return m.rank();
}

// One seeded projection attempt; DegenerateSpec on any rank failure.
ProjectionChain try_build_Y(int a, int b, uint64_t seed, Rng& rng, int attempt) {
  const RatField Q;
  const int n0 = a + b + 2;

  ProjectionChain ch{a,
                     b,
                     seed,
                     RatMat::identity(Q, n0),
                     RatMat::identity(Q, 1),
                     RatMat::identity(Q, 1),
                     {},
                     {},
                     {},
                     {},
                     {},
                     b,
                     a,
                     attempt};

  if (a >= 2) {
    // a-1 random points inside <E> = {x_{a+1} = ... = x_{a+b+1} = 0}.
    for (int i = 0; i < a - 1; ++i) {
      std::vector<mpq_class> pt(n0, 0);
      for (int j = 0; j <= a; ++j) pt[j] = mpq_class(rng.small_nonzero(9));
      ch.center1.push_back(std::move(pt));
    }
    if (rank_of_rows(Q, ch.center1, n0) != a - 1)
      fail(ErrorKind::DegenerateSpec, "build_Y: dependent first-stage center points");
    RatMat c1(Q, a - 1, n0);
    for (int i = 0; i < a - 1; ++i) c1.a[i] = ch.center1[i];
    std::vector<std::vector<mpq_class>> ann = c1.nullspace();
    RatMat A(Q, b + 3, n0);
    if (static_cast<int>(ann.size()) != b + 3)
      fail(ErrorKind::DegenerateSpec, "build_Y: unexpected first-stage annihilator dimension");
    for (int i = 0; i < b + 3; ++i) A.a[i] = ann[i];
    make_rows_primitive(A);
    ch.stage1 = std::move(A);
  }

  // Lambda = image of <E>, tracked by the images of e_0 and e_a.
  for (int col : {0, a}) {
    std::vector<mpq_class> e(n0, 0);
    e[col] = 1;
    ch.lambda_pts.push_back(primitive_vec(ch.stage1.apply(e)));
  }
  if (rank_of_rows(Q, ch.lambda_pts, b + 3) != 2)
    fail(ErrorKind::DegenerateSpec, "build_Y: Lambda collapsed under the first stage");

  // Phi = <Lambda, b-a ruling points on the degree-b directrix curve>.
  std::vector<std::vector<mpq_class>> phi = ch.lambda_pts;
  std::vector<mpq_class> used;
  for (int i = 0; i < b - a; ++i) {
    mpq_class si;
    do {
      si = mpq_class(rng.small_nonzero(20));
    } while (std::find(used.begin(), used.end(), si) != used.end());
    used.push_back(si);
    ch.ruling_params.push_back(si);
    std::vector<mpq_class> pt(n0, 0);
    for (int j = 0; j <= b; ++j) {
      mpq_class v = 1;
      for (int k = 0; k < b - j; ++k) v *= si;
      pt[a + 1 + j] = v;  // v s^{b-j} t^j at (s,t,u,v) = (si,1,0,1)
    }
    phi.push_back(primitive_vec(ch.stage1.apply(pt)));
  }
  if (rank_of_rows(Q, phi, b + 3) != b - a + 2)
    fail(ErrorKind::DegenerateSpec, "build_Y: Phi has deficient rank");

  // Psi = b-a random combinations of the Phi spanning set.
  for (int i = 0; i < b - a; ++i) {
    std::vector<mpq_class> v(b + 3, 0);
    for (const auto& basis : phi) {
      mpq_class c(rng.small_nonzero(9));
      for (int j = 0; j < b + 3; ++j) v[j] += c * basis[j];
    }
    ch.psi.push_back(primitive_vec(v));
  }
  if (rank_of_rows(Q, ch.psi, b + 3) != b - a)
    fail(ErrorKind::DegenerateSpec, "build_Y: Psi has deficient rank");
  {
    std::vector<std::vector<mpq_class>> together = ch.psi;
    together.insert(together.end(), ch.lambda_pts.begin(), ch.lambda_pts.end());
    if (rank_of_rows(Q, together, b + 3) != b - a + 2)
      fail(ErrorKind::DegenerateSpec, "build_Y: Psi meets Lambda");
  }

  RatMat psi_m(Q, b - a, b + 3);
  for (int i = 0; i < b - a; ++i) psi_m.a[i] = ch.psi[i];
  std::vector<std::vector<mpq_class>> ann2 = psi_m.nullspace();
  if (static_cast<int>(ann2.size()) != a + 3)
    fail(ErrorKind::DegenerateSpec, "build_Y: unexpected second-stage annihilator dimension");
  RatMat B(Q, a + 3, b + 3);
  for (int i = 0; i < a + 3; ++i) B.a[i] = ann2[i];
  make_rows_primitive(B);
  ch.stage2 = std::move(B);

  ch.full = ch.stage2 * ch.stage1;
  if (ch.full.rank() != a + 3)
    fail(ErrorKind::DegenerateSpec, "build_Y: composed projection drops rank");

  for (const auto& lp : ch.lambda_pts) ch.L_pts.push_back(primitive_vec(ch.stage2.apply(lp)));
  if (rank_of_rows(Q, ch.L_pts, a + 3) != 2)
    fail(ErrorKind::DegenerateSpec, "build_Y: L collapsed under the second stage");

  return ch;
}

}  // namespace

ScrollParam scroll_param(int a, int b) {
  if (a < 1 || a > b || a + b < 3) fail(ErrorKind::Structural, "scroll_param: need 1 <= a <= b, a+b >= 3");
  const RatField Q;
  ScrollParam S{a, b, {}};
  for (int i = 0; i <= a; ++i) {
    ExpVec e(4, 0);
    e[0] = static_cast<uint32_t>(a - i);
    e[1] = static_cast<uint32_t>(i);
    e[2] = 1;
    S.forms.push_back(RatPoly::monomial(Q, 4, e, RatField::from_int(1)));
  }
  for (int j = 0; j <= b; ++j) {
    ExpVec e(4, 0);
    e[0] = static_cast<uint32_t>(b - j);
    e[1] = static_cast<uint32_t>(j);
    e[3] = 1;
    S.forms.push_back(RatPoly::monomial(Q, 4, e, RatField::from_int(1)));
  }
  return S;
}

bool catalecticant_minors_vanish(const ScrollParam& S) {
  const int a = S.a, b = S.b;
  std::vector<const RatPoly*> top, bot;
  for (int k = 0; k < a; ++k) {
    top.push_back(&S.forms[k]);
    bot.push_back(&S.forms[k + 1]);
  }
  for (int j = 0; j < b; ++j) {
    top.push_back(&S.forms[a + 1 + j]);
    bot.push_back(&S.forms[a + 2 + j]);
  }
  for (size_t c1 = 0; c1 < top.size(); ++c1)
    for (size_t c2 = c1 + 1; c2 < top.size(); ++c2)
      if (!((*top[c1]) * (*bot[c2]) - (*top[c2]) * (*bot[c1])).is_zero()) return false;
  return true;
}

ProjectionChain build_Y(int a, int b, uint64_t seed) {
  if (!(1 <= a && a < b)) fail(ErrorKind::Structural, "build_Y: need 1 <= a < b");
  const int kMaxReseeds = 5;
  for (int attempt = 0;; ++attempt) {
    Rng rng = Rng(seed, 0x7363).fork(static_cast<uint64_t>(attempt));
    try {
      return try_build_Y(a, b, seed, rng, attempt);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateSpec || attempt >= kMaxReseeds)
        fail(ErrorKind::DegenerateSpec,
             std::string("build_Y: degenerate choices persisted after re-seeding (") + e.what() +
                 ")");
    }
  }
}

DualSampleReport dual_sample(const ScrollParam& S, const RatMat& C, int n, uint32_t p,
                             uint64_t seed) {
  if (p < 23) fail(ErrorKind::Structural, "dual_sample: need p >= 23");
  const int n0 = S.a + S.b + 2;
  if (C.cols != n0) fail(ErrorKind::Structural, "dual_sample: map columns must match P^{a+b+1}");
  const int m = C.rows;
  if (m < 4) fail(ErrorKind::Structural, "dual_sample: image space too small for a surface dual");

  FpField fp(p);
  FpMat Cp(fp, m, C.cols);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < C.cols; ++j) Cp.a[i][j] = fp.from_rat(C.a[i][j]);

  std::vector<FpPoly> forms, ds, du;
  for (const RatPoly& g : S.forms) {
    FpPoly gp = to_fp(g, fp);
    forms.push_back(gp);
    ds.push_back(gp.diff(0));
    du.push_back(gp.diff(2));
  }

  DualSampleReport rep;
  rep.p = p;
  rep.seed = seed;
  Rng rng(seed, 0x6473);
  const uint64_t cap = 40ull * static_cast<uint64_t>(n) + 200;
  std::vector<FpField::Elem> pt4(4);
  while (static_cast<int>(rep.points.size()) < n) {
    if (++rep.attempts > cap)
      fail(ErrorKind::Inconclusive, "dual_sample: persistent tangent-rank drop at sampled parameters");
    pt4[0] = static_cast<FpField::Elem>(1 + rng.below(p - 1));  // s != 0
    pt4[1] = 1;                                                  // t = 1
    pt4[2] = static_cast<FpField::Elem>(1 + rng.below(p - 1));  // u != 0
    pt4[3] = 1;                                                  // v = 1
    std::vector<FpField::Elem> x(n0), xs(n0), xu(n0);
    for (int i = 0; i < n0; ++i) {
      x[i] = forms[i].eval(pt4);
      xs[i] = ds[i].eval(pt4);
      xu[i] = du[i].eval(pt4);
    }
    FpMat tangent(fp, 3, m);
    tangent.a[0] = Cp.apply(x);
    tangent.a[1] = Cp.apply(xs);
    tangent.a[2] = Cp.apply(xu);
    std::vector<std::vector<FpField::Elem>> ker = tangent.nullspace();
    if (static_cast<int>(ker.size()) != m - 3) {
      ++rep.resamples;
      continue;
    }
    std::vector<uint32_t> xi(m, 0);
    bool nonzero = false;
    while (!nonzero) {
      std::fill(xi.begin(), xi.end(), 0);
      for (const auto& kv : ker) {
        FpField::Elem c = static_cast<FpField::Elem>(rng.below(p));
        for (int j = 0; j < m; ++j) xi[j] = fp.add(xi[j], fp.mul(c, kv[j]));
      }
      for (uint32_t v : xi) nonzero = nonzero || v != 0;
    }
    rep.points.push_back(std::move(xi));
  }
  rep.high_resample_warning = 5 * rep.resamples > rep.attempts;
  return rep;
}

DualSampleReport dual_sample(const ProjectionChain& chain, int n, uint32_t p, uint64_t seed) {
  return dual_sample(scroll_param(chain.a, chain.b), chain.full, n, p, seed);
}

InterpolatedForm dual_interpolate(const std::vector<std::vector<uint32_t>>& samples, int d,
                                  uint32_t p) {
  if (samples.empty()) fail(ErrorKind::Structural, "dual_interpolate: no samples");
  if (d < 2) fail(ErrorKind::Structural, "dual_interpolate: need d >= 2");
  const int nv = static_cast<int>(samples.front().size());
  const int r = nv - 1;
  const uint64_t need =
      (12 * binom(d + r, r) + 9) / 10;  // ceil(1.2 * monomial count)
  if (samples.size() < need)
    fail(ErrorKind::Structural, "dual_interpolate: need at least 1.2x as many samples as monomials");

  FpField fp(p);
  auto kernel_at = [&](int deg) {
    std::vector<ExpVec> mons = monomials_of_degree(nv, deg);
    FpMat M(fp, static_cast<int>(samples.size()), static_cast<int>(mons.size()));
    for (size_t i = 0; i < samples.size(); ++i) {
      // power table for this sample
      std::vector<std::vector<uint64_t>> pw(nv, std::vector<uint64_t>(deg + 1, 1));
      for (int v = 0; v < nv; ++v)
        for (int e = 1; e <= deg; ++e) pw[v][e] = pw[v][e - 1] * samples[i][v] % p;
      for (size_t j = 0; j < mons.size(); ++j) {
        uint64_t val = 1;
        for (int v = 0; v < nv; ++v)
          if (mons[j][v]) val = val * pw[v][mons[j][v]] % p;
        M.a[i][j] = static_cast<FpField::Elem>(val);
      }
    }
    return std::pair<std::vector<std::vector<FpField::Elem>>, std::vector<ExpVec>>(M.nullspace(),
                                                                                   std::move(mons));
  };

  auto [ker_d, mons_d] = kernel_at(d);
  auto [ker_dm1, mons_dm1] = kernel_at(d - 1);
  (void)mons_dm1;

  InterpolatedForm out{d, FpPoly(fp, nv), static_cast<int>(ker_d.size()),
                       static_cast<int>(ker_dm1.size()), p, static_cast<int>(samples.size())};
  if (out.kernel_dim_d == 0)
    fail(ErrorKind::DegenerateSpec, "dual_interpolate: no degree-d form vanishes on the samples");
  if (out.kernel_dim_d > 1)
    fail(ErrorKind::DegenerateSpec, "dual_interpolate: samples degenerate (kernel dimension >= 2)");

  // normalize so the first (grevlex-leading) nonzero coefficient is 1
  const std::vector<FpField::Elem>& v = ker_d.front();
  FpField::Elem lead = 0;
  for (FpField::Elem c : v)
    if (c != 0) {
      lead = c;
      break;
    }
  FpField::Elem inv = fp.inv(lead);
  FpPoly f(fp, nv);
  for (size_t j = 0; j < mons_d.size(); ++j)
    if (v[j] != 0) f = f + FpPoly::monomial(fp, nv, mons_d[j], fp.mul(v[j], inv));
  out.form = std::move(f);
  return out;
}

bool fp_is_cone(const FpPoly& f) {
  if (f.is_zero()) fail(ErrorKind::Structural, "fp_is_cone: zero polynomial");
  const FpField& fp = f.field();
  const int nv = f.n_vars();
  std::vector<FpPoly> partials;
  for (int v = 0; v < nv; ++v) partials.push_back(f.diff(v));
  // union support
  std::map<ExpVec, int, GrevlexGreater> col;
  for (const FpPoly& g : partials)
    for (const auto& t : g.terms())
      col.emplace(t.e, 0);
  int idx = 0;
  for (auto& kv : col) kv.second = idx++;
  if (idx == 0) return true;  // all partials vanish: every variable removable
  FpMat M(fp, idx, nv);
  for (int v = 0; v < nv; ++v)
    for (const auto& t : partials[v].terms()) M.a[col[t.e]][v] = t.c;
  return !M.nullspace().empty();
}

InverseDegreeReport inverse_degree_fp(const std::vector<FpPoly>& forms, int e_max,
                                      uint64_t seed) {
  if (forms.empty()) fail(ErrorKind::Structural, "inverse_degree: empty form list");
  const FpField& fp = forms.front().field();
  const int nv = forms.front().n_vars();
  if (static_cast<int>(forms.size()) != nv)
    fail(ErrorKind::Structural, "inverse_degree: need r+1 forms");
  for (const FpPoly& g : forms) forms.front().check_compatible(g);

  Rng rng(seed, 0x6964);
  const uint64_t p = fp.p;

  auto draw_pair = [&](std::vector<uint32_t>& x, std::vector<uint32_t>& q) {
    for (int tries = 0; tries < 1000; ++tries) {
      bool xz = true;
      x.assign(nv, 0);
      for (int i = 0; i < nv; ++i) {
        x[i] = static_cast<uint32_t>(rng.below(p));
        if (x[i]) xz = false;
      }
      if (xz) continue;
      q.assign(nv, 0);
      bool qz = true;
      for (int i = 0; i < nv; ++i) {
        q[i] = forms[i].eval(x);
        if (q[i]) qz = false;
      }
      if (!qz) return;
    }
    fail(ErrorKind::Inconclusive, "inverse_degree: could not sample non-base points");
  };

  // held-out validation pairs
  std::vector<std::vector<uint32_t>> vx(20), vq(20);
  for (int i = 0; i < 20; ++i) draw_pair(vx[i], vq[i]);

  InverseDegreeReport rep;
  rep.e_max = e_max;
  rep.p = fp.p;
  rep.seed = seed;

  for (int e = 1; e <= e_max; ++e) {
    std::vector<ExpVec> mons = monomials_of_degree(nv, e);
    const int me = static_cast<int>(mons.size());
    const int unknowns = nv * me;
    const int n_pairs = static_cast<int>((12ull * nv * me + 9) / 10);

    std::vector<std::vector<uint32_t>> px(n_pairs), pq(n_pairs);
    for (int i = 0; i < n_pairs; ++i) draw_pair(px[i], pq[i]);

    auto mon_values = [&](const std::vector<uint32_t>& q) {
      std::vector<std::vector<uint64_t>> pw(nv, std::vector<uint64_t>(e + 1, 1));
      for (int v = 0; v < nv; ++v)
        for (int k = 1; k <= e; ++k) pw[v][k] = pw[v][k - 1] * q[v] % p;
      std::vector<uint64_t> vals(me);
      for (int j = 0; j < me; ++j) {
        uint64_t val = 1;
        for (int v = 0; v < nv; ++v)
          if (mons[j][v]) val = val * pw[v][mons[j][v]] % p;
        vals[j] = val;
      }
      return vals;
    };

    FpMat M(fp, n_pairs * (nv * (nv - 1) / 2), unknowns);
    int row = 0;
    for (int i = 0; i < n_pairs; ++i) {
      std::vector<uint64_t> mv = mon_values(pq[i]);
      for (int a = 0; a < nv; ++a)
        for (int b = a + 1; b < nv; ++b) {
          for (int j = 0; j < me; ++j) {
            M.a[row][a * me + j] = static_cast<FpField::Elem>(mv[j] * px[i][b] % p);
            M.a[row][b * me + j] =
                fp.neg(static_cast<FpField::Elem>(mv[j] * px[i][a] % p));
          }
          ++row;
        }
    }
    std::vector<std::vector<FpField::Elem>> ker = M.nullspace();
    if (ker.empty()) continue;

    auto validates = [&](const std::vector<FpField::Elem>& G) {
      for (int i = 0; i < 20; ++i) {
        std::vector<uint64_t> mv = mon_values(vq[i]);
        std::vector<uint64_t> g(nv, 0);
        bool gz = true;
        for (int a = 0; a < nv; ++a) {
          uint64_t acc = 0;
          for (int j = 0; j < me; ++j) acc = (acc + static_cast<uint64_t>(G[a * me + j]) * mv[j]) % p;
          g[a] = acc;
          if (acc) gz = false;
        }
        if (gz) return false;
        for (int a = 0; a < nv; ++a)
          for (int b = a + 1; b < nv; ++b)
            if (g[a] * vx[i][b] % p != g[b] * vx[i][a] % p) return false;
      }
      return true;
    };

    bool done = false;
    for (const auto& kv : ker)
      if (validates(kv)) {
        done = true;
        break;
      }
    for (int t = 0; t < 3 && !done; ++t) {
      std::vector<FpField::Elem> G(unknowns, 0);
      for (const auto& kv : ker) {
        FpField::Elem c = static_cast<FpField::Elem>(rng.below(p));
        for (int j = 0; j < unknowns; ++j) G[j] = fp.add(G[j], fp.mul(c, kv[j]));
      }
      done = validates(G);
    }
    if (done) {
      rep.e = e;
      rep.found = true;
      return rep;
    }
  }
  return rep;
}

InverseDegreeReport inverse_degree(const PolarMap& map, uint32_t p, uint64_t seed) {
  FpField fp(p);
  std::vector<FpPoly> forms;
  for (const RatPoly& g : map.forms) forms.push_back(to_fp(g, fp));
  int deg = 0;
  for (const FpPoly& g : forms)
    if (!g.is_zero()) deg = g.degree();
  return inverse_degree_fp(forms, 2 * (deg + 1), seed);
}

SerieReport serie_verify(int r, int d, uint32_t p_degree, uint64_t seed) {
  if (r != 3 && r != 4) fail(ErrorKind::Structural, "serie_verify: r must be 3 or 4");
  if (d < 2 * r - 3) fail(ErrorKind::Structural, "serie_verify: need d >= 2r-3");

  SerieReport rep;
  rep.r = r;
  rep.d = d;
  rep.a = r - 2;
  rep.b = d - r + 2;
  rep.p_structure = 32003;
  rep.p_degree = p_degree;
  rep.seed = seed;
  rep.mult_expected = d - rep.a;

  ProjectionChain chain = build_Y(rep.a, rep.b, seed);

  // Structure pass at a large prime: interpolate and check the directrix.
  const int n1 = static_cast<int>((13 * binom(d + r, r) + 9) / 10);
  DualSampleReport ds1 = dual_sample(chain, n1, rep.p_structure, seed + 101);
  InterpolatedForm itp = dual_interpolate(ds1.points, d, rep.p_structure);
  rep.kernel_dim_d = itp.kernel_dim_d;
  rep.kernel_dim_dm1 = itp.kernel_dim_dm1;
  rep.interp_ok = itp.kernel_dim_d == 1 && itp.kernel_dim_dm1 == 0;

  DualSampleReport fresh = dual_sample(chain, 50, rep.p_structure, seed + 202);
  rep.generalization_ok = true;
  for (const auto& pt : fresh.points)
    rep.generalization_ok = rep.generalization_ok && itp.form.eval(pt) == 0;

  {
    const FpField& fp = itp.form.field();
    const int nv = rep.a + 3;
    FpPoly lP(fp, nv), lQ(fp, nv);
    for (int i = 0; i < nv; ++i) {
      ExpVec e(nv, 0);
      e[i] = 1;
      lP = lP + FpPoly::monomial(fp, nv, e, fp.from_rat(chain.L_pts[0][i]));
      lQ = lQ + FpPoly::monomial(fp, nv, e, fp.from_rat(chain.L_pts[1][i]));
    }
    rep.mult_along = multiplicity_along(itp.form, lP, lQ);
    rep.mult_ok = rep.mult_along == rep.mult_expected;
  }

  // Degree pass: fresh interpolation over the enumeration prime, then the
  // exhaustive fiber estimator on the polar map of the interpolated form.
  const int n2 = static_cast<int>((16 * binom(d + r, r) + 9) / 10);
  DualSampleReport ds2 = dual_sample(chain, n2, p_degree, seed + 303);
  InterpolatedForm itp2 = dual_interpolate(ds2.points, d, p_degree);
  std::vector<FpPoly> grad;
  for (int v = 0; v < r + 1; ++v) grad.push_back(itp2.form.diff(v));
  DegreeOptions opt;
  opt.samples = 200;
  opt.seed = seed + 404;
  opt.eps = mpq_class(3, 10);
  rep.degree = polar_degree_fp(grad, opt);
  rep.homaloidal_ok = rep.degree.verdict == DegreeVerdict::DeltaEq && rep.degree.k == 1;

  rep.ok = rep.interp_ok && rep.generalization_ok && rep.mult_ok && rep.homaloidal_ok;
  return rep;
}

}  // namespace polaris
