#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "polaris/constructions.hpp"
#include "polaris/report.hpp"
#include "polaris/scrolldual.hpp"
#include "polaris/subhankel.hpp"

using namespace polaris;

namespace {

struct Output {
  std::string json_path;
  std::string csv_path;
};

uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.json_path, "write the JSON report to this path");
  cmd->add_option("--csv", out.csv_path, "write flattened per-check rows to this path");
}

int emit(Report& rep, const Output& out, std::chrono::steady_clock::time_point t0) {
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (const auto& c : rep.checks)
    std::cout << "check " << c.name << ": " << c.status << "\n";
  std::string json = rep.to_json().dump(2) + "\n";
  if (out.json_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream f(out.json_path);
    if (!f) fail(ErrorKind::Structural, "cannot open output path: " + out.json_path);
    f << json;
  }
  if (!out.csv_path.empty()) {
    std::ofstream f(out.csv_path);
    if (!f) fail(ErrorKind::Structural, "cannot open output path: " + out.csv_path);
    f << rep.to_csv();
  }
  return rep.exit_code();
}

mpq_class parse_eps(const std::string& text) {
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    fail(ErrorKind::Parse, "eps must be a rational in (0,1), e.g. 1/20");
  q.canonicalize();
  if (q <= 0 || q >= 1) fail(ErrorKind::Parse, "eps must be a rational in (0,1), e.g. 1/20");
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) fail(ErrorKind::Parse, "cannot read polynomial file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_subhankel(int r, const std::vector<std::string>& selected, const Output& out,
                  int threads) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "subhankel";
  ordered_json sel = ordered_json::array();
  for (const auto& s : selected) sel.push_back(s);
  rep.config = {{"r", r}, {"checks", sel}, {"threads", threads}};

  SubHankelBundle b = build(r);
  for (const auto& what : selected) {
    if (what == "lemma") {
      LemmaReport lr = verify_lemma(b);
      rep.add("lemma", lr.all_ok() ? "pass" : "fail",
              {{"part_i", lr.part_i_ok},
               {"part_ii_content", lr.part_ii_gcd_ok},
               {"part_ii_no_common_factor", lr.part_ii_cofactor_free_ok},
               {"part_iii_a", lr.part_iii_a_ok},
               {"part_iii_b", lr.part_iii_b_ok}});
    } else if (what == "minors") {
      bool all = true;
      ordered_json rows = ordered_json::array();
      for (int i = 1; i <= r - 1; ++i) {
        MinorReport mr = minor_checks(b, i);
        all = all && mr.all_ok();
        rows.push_back({{"i", i},
                        {"delta1_is_xr_power", mr.delta1_is_xr_power},
                        {"delta2_not_divisible", mr.delta2_not_divisible},
                        {"delta2_top_coeff", mpq_str(mr.delta2_top_coeff)}});
      }
      rep.add("minors", all ? "pass" : "fail", {{"rows", std::move(rows)}});
    } else if (what == "hb") {
      bool all = true;
      ordered_json rows = ordered_json::array();
      for (int i = 1; i <= r - 1; ++i) {
        HilbertBurchReport hb = hilbert_burch_check(b, i);
        all = all && hb.ok;
        rows.push_back(
            {{"i", i}, {"lambda", mpq_str(hb.lambda)}, {"convention", hb.convention}});
      }
      rep.add("hilbert_burch", all ? "pass" : "fail", {{"rows", std::move(rows)}});
    } else if (what == "hessian") {
      HessianClosedFormReport hr = hessian_closed_form(b);
      rep.add("hessian", hr.all_ok() ? "pass" : "fail",
              {{"anti_triangular", hr.anti_triangular_ok},
               {"monomial", hr.monomial_ok},
               {"c", mpq_str(hr.c)},
               {"exponent", hr.exponent}});
    } else if (what == "irred") {
      bool ok = irreducibility_structure(b);
      rep.add("irreducibility_structure", ok ? "pass" : "fail",
              {{"x0_degree_one", ok}});
    } else {
      fail(ErrorKind::Parse, "unknown check '" + what +
                                 "' (expected lemma, minors, hb, hessian, irred)");
    }
  }
  return emit(rep, out, t0);
}

int run_gn(const GNSpec& spec, uint32_t p, int trials, const Output& out, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "gn";
  rep.config = {{"r", spec.r}, {"t", spec.t}, {"m", spec.m},         {"n", spec.n},
                {"d", spec.d}, {"p", p},      {"trials", trials},    {"seed", spec.seed},
                {"threads", threads}};
  GNBuild b = gn_build(spec);
  rep.add("build", "pass",
          {{"mu", b.mu},
           {"degree", b.f.d},
           {"n_vars", b.f.r + 1},
           {"n_terms", b.f.f.n_terms()},
           {"determinant_forms", b.Q.size()}});
  HessianReport hr = hessian(b.f, HessianMode::Probabilistic(p, trials, spec.seed + 7000));
  rep.add("hessian_vanishes", hr.det_is_zero ? "pass" : "fail",
          {{"p", p}, {"trials", trials}, {"zero_at_all_samples", hr.det_is_zero}});
  int core = core_multiplicity(b.f, spec.t);
  bool core_ok = core >= spec.d - b.mu;
  rep.add("core_multiplicity", core_ok ? "pass" : "fail",
          {{"observed", core}, {"lower_bound", spec.d - b.mu}, {"rule", "at_least"}});
  return emit(rep, out, t0);
}

int run_permutti(const PermuttiSpec& spec, uint32_t p, int trials, const Output& out,
                 int threads) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.command = "permutti";
  rep.config = {{"r", spec.r}, {"t", spec.t},      {"n", spec.n},
                {"d", spec.d}, {"p", p},           {"trials", trials},
                {"seed", spec.seed}, {"threads", threads}};
  PermuttiBuild b = permutti_build(spec);
  rep.add("build", "pass",
          {{"mu", b.mu},
           {"degree", b.f.d},
           {"n_vars", b.f.r + 1},
           {"n_terms", b.f.f.n_terms()},
           {"bottleneck", b.bottleneck}});
  HessianReport hr = hessian(b.f, HessianMode::Probabilistic(p, trials, spec.seed + 7000));
  rep.add("hessian_vanishes", hr.det_is_zero ? "pass" : "fail",
          {{"p", p}, {"trials", trials}, {"zero_at_all_samples", hr.det_is_zero}});
  int core = core_multiplicity(b.f, spec.t);
  bool core_ok = core == spec.d - b.mu;
  rep.add("core_multiplicity", core_ok ? "pass" : "fail",
          {{"observed", core}, {"expected", spec.d - b.mu}, {"rule", "equal"}});
  ZVReport zv = z_and_v_check(b.f, spec.r, spec.t, p, p, spec.seed + 9000);
  rep.add("polar_image_and_dual_dims", zv.z_ok && zv.v_ok ? "pass" : "fail",
          {{"z_expected", zv.z_expected},
           {"z_observed", zv.z_observed},
           {"v_expected", zv.v_expected},
           {"v_observed", zv.v_observed}});
  return emit(rep, out, t0);
}

int run_degree(const std::string& poly_path, uint32_t p, int samples, uint64_t seed,
               const std::string& eps_text, const Output& out, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  std::string text = read_file(poly_path);
  RatField Q;
  RatPoly f = parse_poly(Q, text);
  Hypersurface h(std::move(f));
  mpq_class eps = eps_text.empty() ? default_eps(h.r) : parse_eps(eps_text);

  Report rep;
  rep.command = "degree";
  rep.config = {{"poly", poly_path}, {"r", h.r},          {"degree", h.d},
                {"p", p},            {"samples", samples}, {"seed", seed},
                {"eps", mpq_str(eps)}, {"threads", threads}};
  DegreeOptions o;
  o.samples = samples;
  o.seed = seed;
  o.eps = eps;
  DegreeEstimate est = polar_degree(h, p, o);
  std::string status = est.verdict == DegreeVerdict::Inconclusive
                           ? "inconclusive"
                           : (est.heuristic ? "heuristic-pass" : "pass");
  rep.add("polar_degree", status, degree_payload(est));
  return emit(rep, out, t0);
}

int run_scroll_dual(int a, int b, uint32_t p, int samples, uint64_t seed, bool verify_degree,
                    const Output& out, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  const int d = a + b;
  const int r = a + 2;
  Report rep;
  rep.command = "scroll-dual";
  rep.config = {{"a", a},       {"b", b},           {"p", p},
                {"samples", samples}, {"seed", seed}, {"verify_degree", verify_degree},
                {"threads", threads}};

  ProjectionChain chain = build_Y(a, b, seed);
  rep.add("projection", "pass",
          {{"a", a},
           {"b", b},
           {"directrix_multiplicity_expected", chain.e_directrix},
           {"fiber_invariant", chain.mu},
           {"reseeds", chain.reseeds}});

  const int need = static_cast<int>((12 * binom(d + r, r) + 9) / 10);
  const int n1 = std::max(samples, need);
  DualSampleReport ds = dual_sample(chain, n1, p, seed + 101);
  InterpolatedForm itp = dual_interpolate(ds.points, d, p);
  bool interp_ok = itp.kernel_dim_d == 1 && itp.kernel_dim_dm1 == 0;
  std::cout << "interpolated dual form over F_" << p << ": " << to_text(itp.form) << "\n";
  rep.add("interpolation", interp_ok ? "pass" : "fail",
          {{"p", p},
           {"degree", d},
           {"n_samples", itp.n_samples},
           {"kernel_dim_d", itp.kernel_dim_d},
           {"kernel_dim_dm1", itp.kernel_dim_dm1},
           {"resamples", ds.resamples},
           {"attempts", ds.attempts},
           {"high_resample_warning", ds.high_resample_warning},
           {"form", to_text(itp.form)},
           {"n_terms", itp.form.n_terms()}});

  const FpField& fp = itp.form.field();
  const int nv = a + 3;
  FpPoly lP(fp, nv), lQ(fp, nv);
  for (int i = 0; i < nv; ++i) {
    ExpVec e(nv, 0);
    e[i] = 1;
    lP = lP + FpPoly::monomial(fp, nv, e, fp.from_rat(chain.L_pts[0][i]));
    lQ = lQ + FpPoly::monomial(fp, nv, e, fp.from_rat(chain.L_pts[1][i]));
  }
  int mult = multiplicity_along(itp.form, lP, lQ);
  rep.add("directrix_multiplicity", mult == d - a ? "pass" : "fail",
          {{"observed", mult}, {"expected", d - a}});

  if (verify_degree) {
    uint32_t p_deg = default_prime(r);
    const int n2 = static_cast<int>((16 * binom(d + r, r) + 9) / 10);
    DualSampleReport ds2 = dual_sample(chain, n2, p_deg, seed + 303);
    InterpolatedForm itp2 = dual_interpolate(ds2.points, d, p_deg);
    std::vector<FpPoly> grad;
    for (int v = 0; v < r + 1; ++v) grad.push_back(itp2.form.diff(v));
    DegreeOptions o;
    o.samples = 200;
    o.seed = seed + 404;
    o.eps = default_eps(r);
    DegreeEstimate est = polar_degree_fp(grad, o);
    ordered_json pl = degree_payload(est);
    pl["interp_kernel_dim_d"] = itp2.kernel_dim_d;
    pl["interp_kernel_dim_dm1"] = itp2.kernel_dim_dm1;
    rep.add("polar_degree", degree_status(est, DegreeVerdict::DeltaEq, 1), std::move(pl));
  }
  return emit(rep, out, t0);
}

int run_suite(const std::string& name, int r, uint32_t p, uint64_t seed, int samples,
              const Output& out, int threads) {
  auto t0 = std::chrono::steady_clock::now();
  Report rep;
  if (name == "dolgachev") {
    rep = suite_dolgachev(p == 0 ? 101 : p, seed, samples);
  } else if (name == "ext") {
    rep = suite_ext(r, p == 0 ? default_prime(r) : p, seed, samples);
  } else if (name == "subhankel-all") {
    rep = suite_subhankel_all();
  } else if (name == "gn-permutti") {
    rep = suite_gn_permutti(seed);
  } else if (name == "serie") {
    rep = suite_serie(seed);
  } else {
    fail(ErrorKind::Parse, "unknown suite '" + name +
                               "' (expected dolgachev, ext, subhankel-all, gn-permutti, serie)");
  }
  rep.config["threads"] = threads;
  return emit(rep, out, t0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polaris: exact polar maps, vanishing Hessians, and scroll duals"};
  app.require_subcommand(1);
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--threads", threads, "thread budget, recorded in reports (kernels run single-threaded)")
      ->envname("POLARIS_THREADS")
      ->check(CLI::Range(1, 1024));

  // subhankel
  auto* sh = app.add_subcommand("subhankel", "determinantal family checks at one order");
  int sh_r = 4;
  std::string sh_checks = "lemma,minors,hb,hessian,irred";
  Output sh_out;
  sh->add_option("--r", sh_r, "matrix order")->required()->check(CLI::Range(2, 8));
  sh->add_option("--checks", sh_checks, "comma list: lemma,minors,hb,hessian,irred");
  add_output_flags(sh, sh_out);

  // gn
  auto* gn = app.add_subcommand("gn", "bordered-determinant construction and its checks");
  GNSpec gn_spec{4, 2, 1, 3, 3, 1};
  uint32_t gn_p = 32003;
  int gn_trials = 1000;
  Output gn_out;
  gn->add_option("--r", gn_spec.r, "ambient dimension")->required();
  gn->add_option("--t", gn_spec.t, "core dimension")->required();
  gn->add_option("--m", gn_spec.m, "inner variable count minus one")->required();
  gn->add_option("--n", gn_spec.n, "degree of the determinant forms")->required();
  gn->add_option("--d", gn_spec.d, "degree of f")->required();
  gn->add_option("--seed", gn_spec.seed, "seed for the dense random fills");
  gn->add_option("--p", gn_p, "prime for Hessian sampling");
  gn->add_option("--trials", gn_trials, "Hessian sample points")->check(CLI::Range(1, 100000));
  add_output_flags(gn, gn_out);

  // permutti
  auto* pm = app.add_subcommand("permutti", "single-Q construction and its checks");
  PermuttiSpec pm_spec{4, 2, 2, 4, 1};
  uint32_t pm_p = 32003;
  int pm_trials = 1000;
  Output pm_out;
  pm->add_option("--r", pm_spec.r, "ambient dimension")->required();
  pm->add_option("--t", pm_spec.t, "core dimension")->required();
  pm->add_option("--n", pm_spec.n, "degree of Q")->required();
  pm->add_option("--d", pm_spec.d, "degree of f")->required();
  pm->add_option("--seed", pm_spec.seed, "seed for the dense random fills");
  pm->add_option("--p", pm_p, "prime for Hessian and dimension sampling");
  pm->add_option("--trials", pm_trials, "Hessian sample points")->check(CLI::Range(1, 100000));
  add_output_flags(pm, pm_out);

  // degree
  auto* dg = app.add_subcommand("degree", "exhaustive fiber statistics of a polar map");
  std::string dg_poly, dg_eps;
  uint32_t dg_p = 101;
  int dg_samples = 200;
  uint64_t dg_seed = 7;
  Output dg_out;
  dg->add_option("--poly", dg_poly, "file holding the form, e.g. -x2^3 + 2*x1*x2*x3 - x0*x3^2")
      ->required();
  dg->add_option("--p", dg_p, "enumeration prime");
  dg->add_option("--samples", dg_samples, "fibers to inspect")->check(CLI::Range(1, 1000000));
  dg->add_option("--seed", dg_seed, "sampling seed");
  dg->add_option("--eps", dg_eps, "image-ratio tolerance, e.g. 3/20");
  add_output_flags(dg, dg_out);

  // scroll-dual
  auto* sd = app.add_subcommand("scroll-dual", "projected scroll, dual form, multiplicities");
  int sd_a = 1, sd_b = 2;
  uint32_t sd_p = 32003;
  int sd_samples = 0;
  uint64_t sd_seed = 1;
  bool sd_verify = false;
  Output sd_out;
  sd->add_option("--a", sd_a, "directrix degree")->required()->check(CLI::Range(1, 6));
  sd->add_option("--b", sd_b, "complementary degree")->required()->check(CLI::Range(2, 12));
  sd->add_option("--p", sd_p, "interpolation prime");
  sd->add_option("--samples", sd_samples, "dual sample count (0 = 1.2x the space dimension)");
  sd->add_option("--seed", sd_seed, "seed for centers and samples");
  sd->add_flag("--verify-degree", sd_verify, "re-interpolate at a small prime and run the estimator");
  add_output_flags(sd, sd_out);

  // suite
  auto* su = app.add_subcommand("suite", "named check collections with pinned defaults");
  std::string su_name;
  int su_r = 3, su_samples = 0;
  uint32_t su_p = 0;
  uint64_t su_seed = 1;
  Output su_out;
  su->add_option("--name", su_name, "dolgachev | ext | subhankel-all | gn-permutti | serie")
      ->required();
  su->add_option("--r", su_r, "ambient dimension (ext suite)")->check(CLI::Range(2, 6));
  su->add_option("--p", su_p, "sampling prime (dolgachev / ext)");
  su->add_option("--seed", su_seed, "suite seed");
  su->add_option("--samples", su_samples, "fibers per estimate (0 = default)");
  add_output_flags(su, su_out);

  for (CLI::App* s : {sh, gn, pm, dg, sd, su}) s->fallthrough();

  try {
    app.parse(argc, argv);
    if (sh->parsed()) {
      std::vector<std::string> selected;
      std::stringstream ss(sh_checks);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) selected.push_back(item);
      if (selected.empty()) fail(ErrorKind::Parse, "--checks selected nothing");
      return run_subhankel(sh_r, selected, sh_out, threads);
    }
    if (gn->parsed()) return run_gn(gn_spec, gn_p, gn_trials, gn_out, threads);
    if (pm->parsed()) return run_permutti(pm_spec, pm_p, pm_trials, pm_out, threads);
    if (dg->parsed())
      return run_degree(dg_poly, dg_p, dg_samples, dg_seed, dg_eps, dg_out, threads);
    if (sd->parsed())
      return run_scroll_dual(sd_a, sd_b, sd_p, sd_samples, sd_seed, sd_verify, sd_out, threads);
    if (su->parsed())
      return run_suite(su_name, su_r, su_p, su_seed, su_samples, su_out, threads);
    return 2;
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::Parse) {
      std::cerr << app.help() << "\n";
      return 2;
    }
    return e.kind() == ErrorKind::Inconclusive ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
