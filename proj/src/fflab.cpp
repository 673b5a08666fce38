#include "polaris/fflab.hpp"

#include <algorithm>
#include <cstdint>

#include "polaris/rng.hpp"

namespace polaris {

namespace {

constexpr uint64_t kEnumGuard = 10'000'000;

// Flat term list for fast repeated evaluation with shared power tables.
struct CompiledForm {
  std::vector<uint64_t> coeff;
  std::vector<ExpVec> expo;
};

struct Evaluator {
  uint64_t p;
  int nv;
  std::vector<uint32_t> maxe;               // largest exponent per variable
  std::vector<std::vector<uint64_t>> pw;    // pw[v][e] = x_v^e at current point

  Evaluator(uint64_t p_, int nv_) : p(p_), nv(nv_), maxe(nv_, 0), pw(nv_) {}

  void absorb(const FpPoly& f) {
    for (const auto& t : f.terms())
      for (int v = 0; v < nv; ++v) maxe[v] = std::max(maxe[v], t.e[v]);
  }

  void finish_absorb() {
    for (int v = 0; v < nv; ++v) pw[v].assign(maxe[v] + 1, 1);
  }

  void load(const std::vector<uint32_t>& x) {
    for (int v = 0; v < nv; ++v)
      for (uint32_t e = 1; e <= maxe[v]; ++e) pw[v][e] = pw[v][e - 1] * x[v] % p;
  }

  uint64_t eval(const CompiledForm& f) const {
    uint64_t acc = 0;
    for (size_t t = 0; t < f.coeff.size(); ++t) {
      uint64_t m = f.coeff[t];
      const ExpVec& e = f.expo[t];
      for (int v = 0; v < nv; ++v)
        if (e[v]) m = m * pw[v][e[v]] % p;
      acc += m;
      if (acc >= (uint64_t(1) << 62)) acc %= p;
    }
    return acc % p;
  }
};

CompiledForm compile(const FpPoly& f) {
  CompiledForm c;
  for (const auto& t : f.terms()) {
    c.coeff.push_back(t.c);
    c.expo.push_back(t.e);
  }
  return c;
}

// Rank of a small dense matrix over F_p by Gaussian elimination.
int fp_rank(std::vector<std::vector<uint64_t>> m, uint64_t p, const FpField& fp) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size()), cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (m[i][c] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[rank], m[piv]);
    uint64_t inv = fp.inv(static_cast<FpField::Elem>(m[rank][c]));
    for (int i = rank + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      uint64_t factor = m[i][c] * inv % p;
      for (int j = c; j < cols; ++j) m[i][j] = (m[i][j] + (p - factor) * m[rank][j]) % p;
    }
    ++rank;
  }
  return rank;
}

}  // namespace

ProjEnum::ProjEnum(int r, uint32_t p) : fp_(p), r_(r) {
  if (r < 1) fail(ErrorKind::Structural, "ProjEnum: need r >= 1");
  // total = p^r + p^{r-1} + ... + 1, built incrementally under the guard.
  uint64_t acc = 1;
  for (int i = 0; i < r; ++i) {
    acc = acc * p + 1;
    if (acc > kEnumGuard)
      fail(ErrorKind::Guard, "ProjEnum: |P^r(F_p)| exceeds the 10^7 desk-scale guard");
  }
  total_ = acc;
  offset_.assign(r + 2, 0);
  // Stratum i has p^{r-i} points.
  uint64_t size = 1;
  std::vector<uint64_t> sz(r + 1);
  for (int i = r; i >= 0; --i) {
    sz[i] = size;
    if (i > 0) size *= p;
  }
  for (int i = 0; i <= r; ++i) offset_[i + 1] = offset_[i] + sz[i];
}

std::vector<uint32_t> ProjEnum::point(uint64_t index) const {
  if (index >= total_) fail(ErrorKind::Structural, "ProjEnum: index out of range");
  int i = 0;
  while (index >= offset_[i + 1]) ++i;
  uint64_t rem = index - offset_[i];
  std::vector<uint32_t> c(r_ + 1, 0);
  c[i] = 1;
  for (int j = r_; j > i; --j) {
    c[j] = static_cast<uint32_t>(rem % fp_.p);
    rem /= fp_.p;
  }
  return c;
}

void ProjEnum::normalize(std::vector<uint32_t>& c) const {
  int lead = -1;
  for (int i = 0; i <= r_; ++i)
    if (c[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0) fail(ErrorKind::Structural, "ProjEnum: cannot normalize the zero vector");
  if (c[lead] != 1) {
    FpField::Elem inv = fp_.inv(c[lead]);
    for (int i = lead; i <= r_; ++i) c[i] = fp_.mul(c[i], inv);
  }
}

uint64_t ProjEnum::index(const std::vector<uint32_t>& c) const {
  int lead = -1;
  for (int i = 0; i <= r_; ++i)
    if (c[i] != 0) {
      lead = i;
      break;
    }
  if (lead < 0 || c[lead] != 1)
    fail(ErrorKind::Structural, "ProjEnum: index requires a normalized point");
  uint64_t acc = 0;
  for (int j = lead + 1; j <= r_; ++j) acc = acc * fp_.p + c[j];
  return offset_[lead] + acc;
}

std::string verdict_name(DegreeVerdict v) {
  switch (v) {
    case DegreeVerdict::DeltaEq: return "delta_eq";
    case DegreeVerdict::DeltaGe: return "delta_ge";
    case DegreeVerdict::NotDominant: return "not_dominant";
    case DegreeVerdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

DegreeEstimate polar_degree_fp(const std::vector<FpPoly>& forms, const DegreeOptions& opt) {
  if (forms.empty()) fail(ErrorKind::Structural, "polar_degree: empty form list");
  const FpField& fp = forms.front().field();
  const int nv = forms.front().n_vars();
  const int r = nv - 1;
  for (const FpPoly& g : forms) forms.front().check_compatible(g);
  if (static_cast<int>(forms.size()) != nv)
    fail(ErrorKind::Structural, "polar_degree: need r+1 forms for a self-map of P^r");
  if (opt.samples < 1) fail(ErrorKind::Structural, "polar_degree: need samples >= 1");

  DegreeEstimate est;
  est.p = fp.p;
  est.seed = opt.seed;
  est.samples_requested = opt.samples;
  est.eps = opt.eps;

  ProjEnum en(r, fp.p);
  const uint64_t N = en.total();

  Evaluator ev(fp.p, nv);
  for (const FpPoly& g : forms) ev.absorb(g);
  // The Jacobian gate needs first partials of every coordinate form.
  std::vector<std::vector<FpPoly>> jac;
  for (const FpPoly& g : forms) {
    std::vector<FpPoly> row;
    for (int v = 0; v < nv; ++v) row.push_back(g.diff(v));
    jac.push_back(row);
  }
  for (const auto& row : jac)
    for (const FpPoly& g : row) ev.absorb(g);
  ev.finish_absorb();

  std::vector<CompiledForm> cf;
  for (const FpPoly& g : forms) cf.push_back(compile(g));
  std::vector<std::vector<CompiledForm>> cj;
  for (const auto& row : jac) {
    std::vector<CompiledForm> crow;
    for (const FpPoly& g : row) crow.push_back(compile(g));
    cj.push_back(std::move(crow));
  }

  // Full pass: count, for every image point, the number of non-base domain
  // points mapping to it.
  std::vector<uint32_t> counts(N, 0);
  std::vector<uint32_t> img(nv);
  for (uint64_t idx = 0; idx < N; ++idx) {
    std::vector<uint32_t> x = en.point(idx);
    ev.load(x);
    bool all_zero = true;
    for (int i = 0; i < nv; ++i) {
      img[i] = static_cast<uint32_t>(ev.eval(cf[i]));
      if (img[i] != 0) all_zero = false;
    }
    if (all_zero) {
      ++est.base_locus_points;
      continue;
    }
    en.normalize(img);
    ++counts[en.index(img)];
  }
  est.nonbase_points = N - est.base_locus_points;
  uint64_t covered = 0;
  for (uint64_t i = 0; i < N; ++i) {
    if (counts[i]) ++est.distinct_images;
    covered += counts[i];
  }
  if (covered != est.nonbase_points)
    fail(ErrorKind::Structural, "polar_degree: fiber-count conservation violated");

  if (est.nonbase_points == 0) {
    est.verdict = DegreeVerdict::NotDominant;
    return est;
  }
  est.image_ratio = mpq_class(static_cast<unsigned long>(est.distinct_images),
                              static_cast<unsigned long>(est.nonbase_points));
  est.image_ratio.canonicalize();

  // Sample non-base points where the Jacobian is nonsingular; read each
  // fiber size from the counter array.
  Rng rng(opt.seed, 0x6666);
  const uint64_t cap = 50ull * static_cast<uint64_t>(opt.samples);
  uint64_t max_fiber = 0;
  for (uint64_t attempt = 0; attempt < cap && est.samples < opt.samples; ++attempt) {
    std::vector<uint32_t> x = en.point(rng.below(N));
    ev.load(x);
    bool all_zero = true;
    for (int i = 0; i < nv; ++i) {
      img[i] = static_cast<uint32_t>(ev.eval(cf[i]));
      if (img[i] != 0) all_zero = false;
    }
    if (all_zero) continue;  // base point: not a sample, not a gate rejection
    std::vector<std::vector<uint64_t>> J(nv, std::vector<uint64_t>(nv));
    for (int i = 0; i < nv; ++i)
      for (int j = 0; j < nv; ++j) J[i][j] = ev.eval(cj[i][j]);
    if (fp_rank(std::move(J), fp.p, fp) < nv) {
      ++est.gate_skipped;
      continue;
    }
    en.normalize(img);
    uint64_t fiber = counts[en.index(img)];
    ++est.fiber_histogram[fiber];
    max_fiber = std::max(max_fiber, fiber);
    ++est.samples;
  }

  if (est.samples == 0) {
    est.verdict = DegreeVerdict::NotDominant;
    return est;
  }

  const mpq_class one(1);
  if (max_fiber == 1) {
    if (est.image_ratio >= one - est.eps) {
      est.verdict = DegreeVerdict::DeltaEq;
      est.k = 1;
      est.heuristic = false;
    } else {
      est.verdict = DegreeVerdict::Inconclusive;
    }
    return est;
  }
  mpq_class inv_k(1, static_cast<unsigned long>(max_fiber));
  inv_k.canonicalize();
  mpq_class gap = est.image_ratio - inv_k;
  if (gap < 0) gap = -gap;
  est.k = static_cast<int>(max_fiber);
  est.heuristic = true;
  est.verdict = gap <= est.eps ? DegreeVerdict::DeltaEq : DegreeVerdict::DeltaGe;
  return est;
}

DegreeEstimate polar_degree(const PolarMap& map, uint32_t p, const DegreeOptions& opt) {
  FpField fp(p);
  std::vector<FpPoly> forms;
  for (const RatPoly& g : map.forms) forms.push_back(to_fp(g, fp));
  return polar_degree_fp(forms, opt);
}

DegreeEstimate polar_degree(const Hypersurface& h, uint32_t p, const DegreeOptions& opt) {
  return polar_degree(gradient(h), p, opt);
}

RatPoly series_quadric(const RatField& k, int r) {
  if (r < 2) fail(ErrorKind::Structural, "series_quadric: need r >= 2");
  const int nv = r + 1;
  RatPoly q(k, nv);
  for (int i = 0; 2 * i <= r; ++i) {
    ExpVec e(nv, 0);
    if (2 * i == r) {
      e[i] = 2;
    } else {
      e[i] = 1;
      e[r - i] = 1;
    }
    q = q + RatPoly::monomial(k, nv, e, RatField::from_int(i % 2 == 0 ? 1 : -1));
  }
  return q;
}

SeriesSuiteReport homaloidal_series_suite(int r, uint32_t p, const DegreeOptions& opt) {
  if (r < 2 || r > 4) fail(ErrorKind::Structural, "homaloidal_series_suite: r in {2,3,4}");
  const RatField Q;
  const int nv = r + 1;

  RatPoly q = series_quadric(Q, r);
  RatPoly planes = RatPoly::constant(Q, nv, RatField::from_int(1));
  for (int i = 0; i <= r; ++i) planes = planes * RatPoly::variable(Q, nv, i);
  RatPoly tangent = q * RatPoly::variable(Q, nv, r);

  SeriesSuiteReport rep;
  rep.r = r;
  rep.p = p;
  DegreeOptions o = opt;
  rep.items.push_back({"quadric", polar_degree(Hypersurface(q), p, o)});
  o.seed = opt.seed + 1;
  rep.items.push_back({"hyperplanes", polar_degree(Hypersurface(planes), p, o)});
  o.seed = opt.seed + 2;
  rep.items.push_back({"quadric_tangent", polar_degree(Hypersurface(tangent), p, o)});
  rep.all_delta1 = true;
  for (const auto& it : rep.items)
    rep.all_delta1 =
        rep.all_delta1 && it.est.verdict == DegreeVerdict::DeltaEq && it.est.k == 1;
  return rep;
}

}  // namespace polaris
