// Acceptance gate: one line per criterion, nonzero exit if any fails.
// Every seed, prime, tolerance, and time budget is pinned here.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "polaris/constructions.hpp"
#include "polaris/fflab.hpp"
#include "polaris/polarity.hpp"
#include "polaris/randforms.hpp"
#include "polaris/report.hpp"
#include "polaris/scrolldual.hpp"
#include "polaris/subhankel.hpp"

using namespace polaris;

namespace {

bool all_pass(const Report& rep, std::string& note, bool allow_heuristic = false) {
  for (const auto& c : rep.checks) {
    if (c.status == "pass") continue;
    if (allow_heuristic && c.status == "heuristic-pass") continue;
    note = c.name + " is " + c.status;
    return false;
  }
  return true;
}

uint64_t hist_at(const DegreeEstimate& est, uint64_t size) {
  auto it = est.fiber_histogram.find(size);
  return it == est.fiber_histogram.end() ? 0 : it->second;
}

// --- 1: the five partial-derivative identities, exact over Q, orders 2..8 ---
bool crit1(std::string& note) {
  for (int r = 2; r <= 8; ++r) {
    SubHankelBundle b = build(r);
    LemmaReport lr = verify_lemma(b);
    if (!lr.all_ok()) {
      note = "identity failure at order " + std::to_string(r);
      return false;
    }
    if (!irreducibility_structure(b)) {
      note = "x0-structure failure at order " + std::to_string(r);
      return false;
    }
  }
  return true;
}

// --- 2: hessian closed form c * x_r^((r+1)(r-2)) with anti-triangular matrix ---
bool crit2(std::string& note) {
  const mpq_class expected_c[] = {2, 16, 72, -256, 800};  // orders 2..6
  for (int r = 2; r <= 6; ++r) {
    HessianClosedFormReport h = hessian_closed_form(build(r));
    if (!h.anti_triangular_ok) {
      note = "hessian entry above the anti-diagonal is nonzero at order " + std::to_string(r);
      return false;
    }
    if (!h.monomial_ok || h.exponent != static_cast<long>((r + 1) * (r - 2)) ||
        h.c != expected_c[r - 2]) {
      note = "closed form mismatch at order " + std::to_string(r) + ": c=" + h.c.get_str() +
             " exponent=" + std::to_string(h.exponent);
      return false;
    }
  }
  return true;
}

// --- 3: signed relation-matrix minors match the stripped partials; minor structure ---
bool crit3(std::string& note) {
  for (int r = 2; r <= 6; ++r) {
    SubHankelBundle b = build(r);
    for (int i = 1; i <= r - 1; ++i) {
      HilbertBurchReport hb = hilbert_burch_check(b, i);
      MinorReport mr = minor_checks(b, i);
      if (!hb.ok || hb.lambda == 0) {
        note = "minors do not match one scalar at order " + std::to_string(r) + ", i=" +
               std::to_string(i);
        return false;
      }
      if (!mr.delta1_is_xr_power || !mr.delta2_not_divisible || !mr.delta2_top_coeff_ok) {
        note = "minor structure fails at order " + std::to_string(r) + ", i=" +
               std::to_string(i);
        return false;
      }
    }
  }
  return true;
}

// --- 4: the order-2 and order-3 polar maps are birational (exhaustive census) ---
bool crit4(std::string& note) {
  struct Cell {
    int r;
    uint32_t p;
    mpq_class eps;
    uint64_t seed;
  };
  const Cell cells[] = {{2, 101, mpq_class(1, 20), 9001}, {3, 41, mpq_class(3, 20), 9002}};
  for (const auto& c : cells) {
    DegreeOptions o;
    o.samples = 250;
    o.seed = c.seed;
    o.eps = c.eps;
    DegreeEstimate est = polar_degree(Hypersurface(build(c.r).f), c.p, o);
    std::string tag = "order " + std::to_string(c.r) + " at p=" + std::to_string(c.p);
    if (est.verdict != DegreeVerdict::DeltaEq || est.k != 1) {
      note = tag + ": verdict " + verdict_name(est.verdict) + " k=" + std::to_string(est.k);
      return false;
    }
    if (hist_at(est, 1) < 200) {
      note = tag + ": only " + std::to_string(hist_at(est, 1)) + " singleton fibers of 250";
      return false;
    }
    if (est.image_ratio < mpq_class(19, 20)) {
      note = tag + ": image ratio " + est.image_ratio.get_str() + " below 19/20";
      return false;
    }
  }
  return true;
}

// --- 5: plane suite — three birational cases, concurrent lines degenerate ---
bool crit5(std::string& note) { return all_pass(suite_dolgachev(101, 7, 200), note); }

// --- 6: quadric / hyperplanes / tangent-quadric polar maps in P^3 at F_41 ---
bool crit6(std::string& note) { return all_pass(suite_ext(3, 41, 7, 200), note); }

// --- 7: twenty seeded vanishing-hessian builds; polar-image and dual dims ---
bool crit7(std::string& note) {
  Report rep = suite_gn_permutti(3);
  if (!all_pass(rep, note)) return false;
  int gn = 0, pm = 0, zv = 0;
  for (const auto& c : rep.checks) {
    if (c.name.rfind("gn_", 0) == 0) ++gn;
    if (c.name.rfind("permutti_", 0) == 0) ++pm;
    if (c.payload.contains("z_expected")) {
      ++zv;
      int r = c.payload.at("r"), t = c.payload.at("t");
      int z_formula = std::min(r - 1, 2 * (r - t) - 1);
      int v_formula = std::min(r - 2, 2 * (r - t - 1));
      if (c.payload.at("z_expected") != z_formula || c.payload.at("v_expected") != v_formula) {
        note = c.name + ": expected dims disagree with the min-formulas";
        return false;
      }
      if (c.payload.at("hessian_trials") != 1000) {
        note = c.name + ": hessian sampled fewer than 1000 points";
        return false;
      }
    }
  }
  if (gn != 10 || pm != 10 || zv != 3) {
    note = "coverage is " + std::to_string(gn) + "+" + std::to_string(pm) + " builds, " +
           std::to_string(zv) + " dimension rows";
    return false;
  }
  return true;
}

// --- 8: core multiplicity is exactly d - mu for direct builds, >= for bordered ---
bool crit8(std::string& note) {
  struct PRow {
    int r, t, n, d;
  };
  const PRow prows[] = {{4, 2, 2, 4}, {4, 2, 2, 5}, {5, 2, 2, 5}, {5, 3, 3, 6}};
  uint64_t s = 501;
  for (const auto& q : prows) {
    PermuttiBuild b = permutti_build({q.r, q.t, q.n, q.d, s++});
    int core = core_multiplicity(b.f, q.t);
    if (core != q.d - b.mu) {
      note = "direct build (" + std::to_string(q.r) + "," + std::to_string(q.t) + "," +
             std::to_string(q.n) + "," + std::to_string(q.d) + "): core " +
             std::to_string(core) + " != " + std::to_string(q.d - b.mu);
      return false;
    }
  }
  struct GRow {
    int r, t, m, n, d;
  };
  const GRow grows[] = {{4, 2, 1, 3, 4}, {5, 3, 2, 4, 5}};
  s = 601;
  for (const auto& g : grows) {
    GNBuild b = gn_build({g.r, g.t, g.m, g.n, g.d, s++});
    int core = core_multiplicity(b.f, g.t);
    if (core < g.d - b.mu) {
      note = "bordered build (" + std::to_string(g.r) + "," + std::to_string(g.t) + "," +
             std::to_string(g.m) + "," + std::to_string(g.n) + "," + std::to_string(g.d) +
             "): core " + std::to_string(core) + " < " + std::to_string(g.d - b.mu);
      return false;
    }
  }
  return true;
}

// --- 9: scroll-dual pipeline over the (r,d) grid ---
bool crit9(std::string& note) {
  Report rep = suite_serie(5);
  if (!all_pass(rep, note, /*allow_heuristic=*/true)) return false;
  for (const auto& c : rep.checks) {
    if (c.payload.at("kernel_dim_d") != 1 || c.payload.at("kernel_dim_dm1") != 0) {
      note = c.name + ": interpolation kernel dims are not (1, 0)";
      return false;
    }
    if (c.payload.at("mult_along") != c.payload.at("mult_expected")) {
      note = c.name + ": directrix multiplicity mismatch";
      return false;
    }
  }
  return true;
}

// --- 10: inverse polar-map degrees of the projected scroll duals ---
bool crit10(std::string& note) {
  struct Cell {
    int a, b, n_samples, expected_e;
    uint64_t seed;
  };
  const Cell cells[] = {{1, 2, 30, 3, 101}, {1, 3, 60, 5, 105}};
  for (const auto& c : cells) {
    ProjectionChain ch = build_Y(c.a, c.b, c.seed);
    DualSampleReport ds = dual_sample(ch, c.n_samples, 32003, c.seed + 2);
    InterpolatedForm itp = dual_interpolate(ds.points, c.a + c.b, 32003);
    std::string tag = "dual of the (" + std::to_string(c.a) + "," + std::to_string(c.b) +
                      ") projection";
    if (itp.kernel_dim_d != 1 || itp.kernel_dim_dm1 != 0) {
      note = tag + ": interpolation kernel dims are not (1, 0)";
      return false;
    }
    std::vector<FpPoly> grad;
    for (int v = 0; v <= c.a + 2; ++v) grad.push_back(itp.form.diff(v));
    InverseDegreeReport inv = inverse_degree_fp(grad, 6, c.seed + 4);
    if (!inv.found || inv.e != c.expected_e) {
      note = tag + ": inverse degree " + (inv.found ? std::to_string(inv.e) : "not found") +
             " instead of " + std::to_string(c.expected_e);
      return false;
    }
  }
  return true;
}

// --- 11: reciprocity and Euler identities, paired estimates, determinism ---
bool crit11(std::string& note) {
  RatField Q;
  mpq_class factorials[12];
  factorials[0] = 1;
  for (int i = 1; i < 12; ++i) factorials[i] = factorials[i - 1] * i;

  Rng rng(20260819);
  auto rand_point = [&](int nv) {
    std::vector<mpq_class> pt(nv);
    bool nonzero = false;
    for (auto& coord : pt) {
      long v = static_cast<long>(rng.int_in(-9, 9));
      coord = v;
      nonzero = nonzero || v != 0;
    }
    if (!nonzero) pt[0] = 1;
    return pt;
  };

  for (int trial = 0; trial < 50; ++trial) {
    int nv = static_cast<int>(rng.int_in(3, 4));
    int d = static_cast<int>(rng.int_in(3, 5));
    RatPoly f = dense_random_form(Q, nv, var_range(0, nv - 1), d, rng);
    Hypersurface h(f);
    int s = static_cast<int>(rng.int_in(1, d - 1));
    std::vector<mpq_class> p = rand_point(nv), q = rand_point(nv);
    PolarResult a = polar_operator(h, p, s);
    PolarResult b = polar_operator(h, q, d - s);
    if (a.poly.eval(q) / factorials[s] != b.poly.eval(p) / factorials[d - s]) {
      note = "reciprocity fails at trial " + std::to_string(trial);
      return false;
    }
  }

  for (int trial = 0; trial < 100; ++trial) {
    int nv = static_cast<int>(rng.int_in(3, 5));
    int d = static_cast<int>(rng.int_in(2, 6));
    RatPoly f = dense_random_form(Q, nv, var_range(0, nv - 1), d, rng);
    RatPoly sum(Q, nv);
    for (int v = 0; v < nv; ++v) sum = sum + RatPoly::variable(Q, nv, v) * f.diff(v);
    if (!(sum == f.scaled(mpq_class(d)))) {
      note = "euler identity fails at trial " + std::to_string(trial);
      return false;
    }
  }

  RatPoly quad = series_quadric(Q, 2);
  RatPoly x0 = RatPoly::variable(Q, 3, 0), x1 = RatPoly::variable(Q, 3, 1),
          x2 = RatPoly::variable(Q, 3, 2);
  RatPoly cube = x0 * x1 * x2, tq = x2 * quad;
  const RatPoly pairs[][2] = {{quad, quad * quad}, {cube, x0 * cube}, {tq, x2 * tq}};
  uint64_t seed = 601;
  for (const auto& pr : pairs) {
    for (const RatPoly& f : pr) {
      DegreeOptions o;
      o.samples = 200;
      o.seed = seed++;
      o.eps = mpq_class(1, 20);
      DegreeEstimate est = polar_degree(Hypersurface(f), 101, o);
      if (est.verdict != DegreeVerdict::DeltaEq || est.k != 1) {
        note = "paired estimate disagrees: verdict " + verdict_name(est.verdict) + " k=" +
               std::to_string(est.k);
        return false;
      }
    }
  }

  if (suite_dolgachev(101, 7, 200).to_json().dump() !=
      suite_dolgachev(101, 7, 200).to_json().dump()) {
    note = "identical runs produced different reports";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* desc;
    double budget;
    std::function<bool(std::string&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "determinantal partial-derivative identities hold exactly, orders 2..8", 30, crit1},
      {2, "hessian determinant is c * x_r^((r+1)(r-2)) with anti-triangular matrix, orders 2..6",
       60, crit2},
      {3, "signed minors match stripped partials up to one scalar; delta structure, orders 2..6",
       60, crit3},
      {4, "order-2/order-3 polar maps are birational: census at F_101 and F_41", 120, crit4},
      {5, "plane suite: three birational families, concurrent lines degenerate", 60, crit5},
      {6, "space suite: quadric, hyperplanes, tangent-quadric birational at F_41", 120, crit6},
      {7, "twenty seeded builds: hessian zero at 1000 F_32003 points, image dims match", 300,
       crit7},
      {8, "core multiplicity equals d - mu on direct builds, bounds it on bordered builds", 60,
       crit8},
      {9, "scroll-dual pipeline on the (r,d) grid: interpolation, multiplicity, degree", 900,
       crit9},
      {10, "inverse polar-map degrees of the projected scroll duals are 3 and 5", 600, crit10},
      {11, "reciprocity and Euler identities, paired estimates, deterministic reports", 180,
       crit11},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    std::string note;
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && el > c.budget) {
      ok = false;
      note = "exceeded the " + std::to_string(static_cast<int>(c.budget)) + "s budget";
    }
    std::printf("[%s] criterion %d: %s (%.2fs)\n", ok ? "PASS" : "FAIL", c.id, c.desc, el);
    if (!ok) {
      std::printf("       detail: %s\n", note.empty() ? "unspecified" : note.c_str());
      ++failures;
    }
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
