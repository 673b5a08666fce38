#include "polaris/report.hpp"

#include <sstream>

#include "polaris/constructions.hpp"
#include "polaris/randforms.hpp"
#include "polaris/scrolldual.hpp"
#include "polaris/subhankel.hpp"

namespace polaris {

void Report::add(const std::string& name, const std::string& status, ordered_json payload) {
  checks.push_back({name, status, std::move(payload)});
}

int Report::exit_code() const {
  bool any_fail = false, all_inconclusive = !checks.empty();
  for (const auto& c : checks) {
    if (c.status == "fail") any_fail = true;
    if (c.status != "inconclusive") all_inconclusive = false;
  }
  if (any_fail) return 1;
  if (all_inconclusive) return 3;
  return 0;
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["schema"] = 1;
  j["tool"] = "polaris";
  j["version"] = kToolVersion;
  j["command"] = command;
  j["config"] = config;
  j["checks"] = ordered_json::array();
  ordered_json summary = {{"pass", 0}, {"fail", 0}, {"heuristic-pass", 0}, {"inconclusive", 0}};
  for (const auto& c : checks) {
    ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["payload"] = c.payload;
    j["checks"].push_back(std::move(jc));
    summary[c.status] = summary[c.status].get<int>() + 1;
  }
  j["summary"] = std::move(summary);
  j["exit_code"] = exit_code();
  j["wall_seconds"] = wall_seconds;  // keep last: the only nondeterministic field
  return j;
}

namespace {

void flatten(const ordered_json& v, const std::string& prefix, std::ostream& out,
             const std::string& row_head) {
  if (v.is_object()) {
    for (const auto& [k, sub] : v.items())
      flatten(sub, prefix.empty() ? k : prefix + "." + k, out, row_head);
  } else if (v.is_array()) {
    for (size_t i = 0; i < v.size(); ++i)
      flatten(v[i], prefix + "[" + std::to_string(i) + "]", out, row_head);
  } else {
    out << row_head << "," << prefix << "," << v.dump() << "\n";
  }
}

}  // namespace

std::string Report::to_csv() const {
  std::ostringstream out;
  out << "check,status,key,value\n";
  for (const auto& c : checks)
    flatten(c.payload, "", out, c.name + "," + c.status);
  return out.str();
}

std::string mpq_str(const mpq_class& q) { return q.get_str(); }

ordered_json degree_payload(const DegreeEstimate& est) {
  ordered_json j;
  j["p"] = est.p;
  j["seed"] = est.seed;
  j["samples_requested"] = est.samples_requested;
  j["samples"] = est.samples;
  j["gate_skipped"] = est.gate_skipped;
  j["base_locus_points"] = est.base_locus_points;
  j["nonbase_points"] = est.nonbase_points;
  j["distinct_images"] = est.distinct_images;
  j["image_ratio"] = mpq_str(est.image_ratio);
  j["eps"] = mpq_str(est.eps);
  ordered_json hist = ordered_json::object();
  for (const auto& [size, count] : est.fiber_histogram) hist[std::to_string(size)] = count;
  j["fiber_histogram"] = std::move(hist);
  j["verdict"] = verdict_name(est.verdict);
  j["k"] = est.k;
  j["heuristic"] = est.heuristic;
  return j;
}

std::string degree_status(const DegreeEstimate& est, DegreeVerdict expected, int expected_k) {
  if (est.verdict == DegreeVerdict::Inconclusive) return "inconclusive";
  if (est.verdict != expected) return "fail";
  if ((expected == DegreeVerdict::DeltaEq || expected == DegreeVerdict::DeltaGe) &&
      est.k != expected_k)
    return "fail";
  return est.heuristic ? "heuristic-pass" : "pass";
}

uint32_t default_prime(int r) {
  if (r <= 2) return 101;
  if (r == 3) return 41;
  return 23;
}

mpq_class default_eps(int r) {
  if (r <= 2) return mpq_class(1, 20);
  if (r == 3) return mpq_class(3, 20);
  return mpq_class(3, 10);
}

namespace {

DegreeOptions opts(uint32_t, uint64_t seed, int samples, const mpq_class& eps) {
  DegreeOptions o;
  if (samples > 0) o.samples = samples;
  o.seed = seed;
  o.eps = eps;
  return o;
}

}  // namespace

Report suite_dolgachev(uint32_t p, uint64_t seed, int samples) {
  Report rep;
  rep.command = "suite";
  rep.config = {{"name", "dolgachev"},
                {"p", p},
                {"seed", seed},
                {"samples", samples > 0 ? samples : 200},
                {"eps", mpq_str(default_eps(2))}};
  RatField Q;
  DegreeOptions o = opts(p, seed, samples, default_eps(2));

  RatPoly conic = series_quadric(Q, 2);
  DegreeEstimate e_conic = polar_degree(Hypersurface(conic), p, o);
  rep.add("smooth_conic", degree_status(e_conic, DegreeVerdict::DeltaEq, 1),
          degree_payload(e_conic));

  RatPoly x0 = RatPoly::variable(Q, 3, 0), x1 = RatPoly::variable(Q, 3, 1),
          x2 = RatPoly::variable(Q, 3, 2);
  o.seed = seed + 1;
  RatPoly lines = x0 * x1 * x2;
  DegreeEstimate e_lines = polar_degree(Hypersurface(lines), p, o);
  rep.add("three_nonconcurrent_lines", degree_status(e_lines, DegreeVerdict::DeltaEq, 1),
          degree_payload(e_lines));

  o.seed = seed + 2;
  RatPoly ct = x2 * conic;
  DegreeEstimate e_ct = polar_degree(Hypersurface(ct), p, o);
  rep.add("conic_plus_tangent", degree_status(e_ct, DegreeVerdict::DeltaEq, 1),
          degree_payload(e_ct));

  o.seed = seed + 3;
  RatPoly concurrent = x0 * x1 * (x0 + x1);
  Hypersurface hc(concurrent);
  DegreeEstimate e_cc = polar_degree(hc, p, o);
  HessianReport hr = hessian(hc, HessianMode::Symbolic());
  std::string status = degree_status(e_cc, DegreeVerdict::NotDominant, 0);
  if (!hr.det_is_zero) status = "fail";
  ordered_json payload = degree_payload(e_cc);
  payload["hessian_symbolically_zero"] = hr.det_is_zero;
  rep.add("three_concurrent_lines", status, std::move(payload));
  return rep;
}

Report suite_ext(int r, uint32_t p, uint64_t seed, int samples) {
  Report rep;
  rep.command = "suite";
  rep.config = {{"name", "ext"},
                {"r", r},
                {"p", p},
                {"seed", seed},
                {"samples", samples > 0 ? samples : 200},
                {"eps", mpq_str(default_eps(r))}};
  DegreeOptions o = opts(p, seed, samples, default_eps(r));
  SeriesSuiteReport sr = homaloidal_series_suite(r, p, o);
  for (const auto& item : sr.items)
    rep.add(item.name, degree_status(item.est, DegreeVerdict::DeltaEq, 1),
            degree_payload(item.est));
  return rep;
}

Report suite_subhankel_all() {
  Report rep;
  rep.command = "suite";
  rep.config = {{"name", "subhankel-all"}, {"lemma_orders", "2..8"}, {"full_orders", "2..6"}};
  for (int r = 2; r <= 8; ++r) {
    SubHankelBundle b = build(r);
    LemmaReport lr = verify_lemma(b);
    ordered_json pl = {{"r", r},
                       {"part_i", lr.part_i_ok},
                       {"part_ii_content", lr.part_ii_gcd_ok},
                       {"part_ii_no_common_factor", lr.part_ii_cofactor_free_ok},
                       {"part_iii_a", lr.part_iii_a_ok},
                       {"part_iii_b", lr.part_iii_b_ok},
                       {"x0_structure", irreducibility_structure(b)}};
    rep.add("lemma_r" + std::to_string(r), lr.all_ok() ? "pass" : "fail", std::move(pl));
    if (r > 6) continue;

    HessianClosedFormReport hr = hessian_closed_form(b);
    ordered_json hp = {{"r", r},
                       {"anti_triangular", hr.anti_triangular_ok},
                       {"monomial", hr.monomial_ok},
                       {"c", mpq_str(hr.c)},
                       {"exponent", hr.exponent}};
    rep.add("hessian_r" + std::to_string(r), hr.all_ok() ? "pass" : "fail", std::move(hp));

    bool hb_all = true;
    ordered_json rows = ordered_json::array();
    for (int i = 1; i <= r - 1; ++i) {
      HilbertBurchReport hb = hilbert_burch_check(b, i);
      MinorReport mr = minor_checks(b, i);
      hb_all = hb_all && hb.ok && mr.all_ok();
      rows.push_back({{"i", i},
                      {"lambda", mpq_str(hb.lambda)},
                      {"minors_match", hb.ok},
                      {"delta1_is_xr_power", mr.delta1_is_xr_power},
                      {"delta2_not_divisible", mr.delta2_not_divisible},
                      {"delta2_top_coeff", mpq_str(mr.delta2_top_coeff)}});
    }
    rep.add("hilbert_burch_r" + std::to_string(r), hb_all ? "pass" : "fail",
            {{"r", r}, {"rows", std::move(rows)}});
  }
  return rep;
}

namespace {

constexpr uint32_t kBigPrime = 32003;

ordered_json gp_common(const char* kind, int r, int t, int n, int d, uint64_t seed, int mu,
                       const HessianReport& hr, int core, int core_expected, bool core_exact) {
  return {{"kind", kind},
          {"r", r},
          {"t", t},
          {"n", n},
          {"d", d},
          {"seed", seed},
          {"mu", mu},
          {"hessian_zero_at_all_samples", hr.det_is_zero},
          {"hessian_trials", hr.trials},
          {"hessian_p", hr.p},
          {"core_multiplicity", core},
          {"core_expected", core_expected},
          {"core_rule", core_exact ? "equal" : "at_least"}};
}

}  // namespace

Report suite_gn_permutti(uint64_t seed) {
  Report rep;
  rep.command = "suite";
  rep.config = {{"name", "gn-permutti"}, {"seed", seed}, {"hessian_p", kBigPrime},
                {"hessian_trials", 1000}};

  struct GRow { int r, t, m, n, d; };
  const GRow gn_rows[] = {{4, 2, 1, 3, 3}, {4, 2, 1, 3, 4}, {4, 2, 1, 3, 5}, {5, 2, 1, 3, 3},
                          {5, 2, 1, 3, 4}, {5, 3, 1, 3, 3}, {5, 3, 1, 3, 4}, {5, 3, 2, 4, 4},
                          {5, 3, 2, 4, 5}, {6, 3, 1, 3, 3}};
  int idx = 0;
  for (const auto& g : gn_rows) {
    uint64_t s = seed + idx;
    GNBuild b = gn_build({g.r, g.t, g.m, g.n, g.d, s});
    HessianReport hr = hessian(b.f, HessianMode::Probabilistic(kBigPrime, 1000, s + 7000));
    int core = core_multiplicity(b.f, g.t);
    bool ok = hr.det_is_zero && core >= g.d - b.mu;
    rep.add("gn_" + std::to_string(idx), ok ? "pass" : "fail",
            gp_common("gordan_noether", g.r, g.t, g.n, g.d, s, b.mu, hr, core, g.d - b.mu,
                      false));
    rep.checks.back().payload["m"] = g.m;
    ++idx;
  }

  struct PRow { int r, t, n, d; bool zv; };
  const PRow pm_rows[] = {{4, 2, 2, 4, true},  {4, 2, 2, 5, false}, {4, 2, 3, 6, false},
                          {5, 2, 2, 4, true},  {5, 2, 2, 5, false}, {5, 3, 2, 4, true},
                          {5, 3, 2, 5, false}, {5, 3, 3, 6, false}, {6, 2, 2, 4, false},
                          {6, 4, 2, 4, false}};
  int pidx = 0;
  for (const auto& q : pm_rows) {
    uint64_t s = seed + 100 + pidx;
    PermuttiBuild b = permutti_build({q.r, q.t, q.n, q.d, s});
    HessianReport hr = hessian(b.f, HessianMode::Probabilistic(kBigPrime, 1000, s + 7000));
    int core = core_multiplicity(b.f, q.t);
    bool ok = hr.det_is_zero && core == q.d - b.mu;
    ordered_json pl = gp_common("permutti", q.r, q.t, q.n, q.d, s, b.mu, hr, core, q.d - b.mu,
                                true);
    pl["bottleneck"] = b.bottleneck;
    if (q.zv) {
      ZVReport zv = z_and_v_check(b.f, q.r, q.t, kBigPrime, kBigPrime, s + 9000);
      ok = ok && zv.z_ok && zv.v_ok;
      pl["z_expected"] = zv.z_expected;
      pl["z_observed"] = zv.z_observed;
      pl["v_expected"] = zv.v_expected;
      pl["v_observed"] = zv.v_observed;
    }
    rep.add("permutti_" + std::to_string(pidx), ok ? "pass" : "fail", std::move(pl));
    ++pidx;
  }
  return rep;
}

Report suite_serie(uint64_t seed) {
  Report rep;
  rep.command = "suite";
  rep.config = {{"name", "serie"}, {"seed", seed}, {"p_structure", kBigPrime}};
  struct Cell { int r, d; };
  const Cell grid[] = {{3, 3}, {3, 4}, {3, 5}, {4, 5}};
  int i = 0;
  for (const auto& c : grid) {
    SerieReport sr = serie_verify(c.r, c.d, default_prime(c.r), seed + i);
    ordered_json pl = {{"r", sr.r},
                       {"d", sr.d},
                       {"a", sr.a},
                       {"b", sr.b},
                       {"p_structure", sr.p_structure},
                       {"p_degree", sr.p_degree},
                       {"kernel_dim_d", sr.kernel_dim_d},
                       {"kernel_dim_dm1", sr.kernel_dim_dm1},
                       {"interp_ok", sr.interp_ok},
                       {"generalization_ok", sr.generalization_ok},
                       {"mult_along", sr.mult_along},
                       {"mult_expected", sr.mult_expected},
                       {"seed", sr.seed},
                       {"degree", degree_payload(sr.degree)}};
    std::string status;
    if (sr.ok)
      status = sr.degree.heuristic ? "heuristic-pass" : "pass";
    else if (sr.interp_ok && sr.generalization_ok && sr.mult_ok &&
             sr.degree.verdict == DegreeVerdict::Inconclusive)
      status = "inconclusive";
    else
      status = "fail";
    rep.add("serie_r" + std::to_string(c.r) + "_d" + std::to_string(c.d), status,
            std::move(pl));
    ++i;
  }
  return rep;
}

}  // namespace polaris
