#include "polaris/polarity.hpp"

#include <set>

#include "polaris/rng.hpp"

namespace polaris {

Hypersurface::Hypersurface(RatPoly poly) : f(std::move(poly)), r(f.n_vars() - 1), d(f.degree()) {
  if (f.is_zero()) fail(ErrorKind::Structural, "hypersurface polynomial must be nonzero");
  if (!f.is_homogeneous()) fail(ErrorKind::Structural, "hypersurface polynomial must be homogeneous");
  if (d < 1) fail(ErrorKind::Structural, "hypersurface degree must be >= 1");
}

PolarMap gradient(const Hypersurface& h) {
  if (h.d < 2) fail(ErrorKind::Structural, "gradient requires degree >= 2");
  PolarMap m;
  m.r = h.r;
  m.forms.reserve(h.r + 1);
  for (int i = 0; i <= h.r; ++i) m.forms.push_back(h.f.diff(i));
  return m;
}

PolarResult polar_operator(const Hypersurface& h, const std::vector<mpq_class>& p, int s) {
  if (s < 1 || s >= h.d) fail(ErrorKind::Structural, "polar order s must satisfy 1 <= s <= d-1");
  if (static_cast<int>(p.size()) != h.r + 1) fail(ErrorKind::Structural, "polar point arity mismatch");
  bool all_zero = true;
  for (const mpq_class& c : p)
    if (sgn(c) != 0) all_zero = false;
  if (all_zero) fail(ErrorKind::Structural, "polar point must be nonzero");
  const RatField& k = h.f.field();
  RatPoly g = h.f;
  for (int step = 0; step < s; ++step) {
    RatPoly next(k, g.n_vars());
    for (int i = 0; i <= h.r; ++i) {
      if (sgn(p[i]) == 0) continue;
      next = next + g.diff(i).scaled(p[i]);
    }
    g = next;
  }
  return {g, g.is_zero()};
}

PolyMatrix<RatField> hessian_matrix(const Hypersurface& h) {
  if (h.d < 2) fail(ErrorKind::Structural, "hessian requires degree >= 2");
  int n = h.r + 1;
  PolyMatrix<RatField> H(h.f.field(), n, n, n);
  std::vector<RatPoly> firsts;
  firsts.reserve(n);
  for (int i = 0; i < n; ++i) firsts.push_back(h.f.diff(i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      RatPoly s = firsts[i].diff(j);
      H.at(i, j) = s;
      if (j != i) H.at(j, i) = s;
    }
  return H;
}

namespace {

// Reductions of the Hessian entries mod p, plus gradient, reused by the
// probabilistic paths.
struct FpHessian {
  FpField k;
  int n;
  std::vector<FpPoly> grad;
  std::vector<std::vector<FpPoly>> entries;

  FpHessian(const Hypersurface& h, uint32_t p) : k(p), n(h.r + 1) {
    grad.reserve(n);
    for (int i = 0; i < n; ++i) grad.push_back(to_fp(h.f.diff(i), k));
    entries.assign(n, {});
    PolyMatrix<RatField> H = hessian_matrix(h);
    for (int i = 0; i < n; ++i) {
      entries[i].reserve(n);
      for (int j = 0; j < n; ++j) entries[i].push_back(to_fp(H.at(i, j), k));
    }
  }

  FpMat value_at(const std::vector<uint32_t>& x) const {
    FpMat M(k, n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M.a[i][j] = entries[i][j].eval(x);
    return M;
  }
};

bool symbolic_allowed(const Hypersurface& h) { return h.r <= 5 || h.d - 2 <= 2; }

}  // namespace

HessianReport hessian(const Hypersurface& h, const HessianMode& mode) {
  HessianReport rep;
  if (mode.symbolic) {
    if (!symbolic_allowed(h))
      fail(ErrorKind::Guard,
           "symbolic hessian refused for r > 5 with entry degree > 2; use probabilistic mode");
    PolyMatrix<RatField> H = hessian_matrix(h);
    RatPoly det = H.det();
    rep.det_is_zero = det.is_zero();
    if (!rep.det_is_zero) rep.hessian_det = det;
    rep.rho = H.rank();
    rep.z = rep.rho - 1;
    rep.rho_certified = true;
    return rep;
  }
  if (mode.trials < 1) fail(ErrorKind::Structural, "probabilistic hessian requires trials >= 1");
  FpHessian fph(h, mode.p);
  Rng rng(mode.seed, /*stream=*/0x68657373ULL);
  int n = h.r + 1;
  int max_rank = 0, max_count = 0;
  for (int t = 0; t < mode.trials; ++t) {
    std::vector<uint32_t> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<uint32_t>(rng.below(mode.p));
    int rk = fph.value_at(x).rank();
    if (rk > max_rank) {
      max_rank = rk;
      max_count = 1;
    } else if (rk == max_rank) {
      ++max_count;
    }
  }
  rep.det_is_zero = max_rank < n;
  rep.rho = max_rank;
  rep.z = rep.rho - 1;
  rep.rho_certified = (mode.trials >= 8 && max_count >= 2);
  rep.probabilistic = true;
  rep.p = mode.p;
  rep.trials = mode.trials;
  rep.seed = mode.seed;
  return rep;
}

ConeReport is_cone(const Hypersurface& h) {
  int n = h.r + 1;
  std::vector<RatPoly> parts;
  parts.reserve(n);
  for (int i = 0; i < n; ++i) parts.push_back(h.f.diff(i));
  // Column i lists the coefficients of f_i over the union of supports; a
  // kernel vector is a linear dependence among the partials.
  std::set<ExpVec> support;
  for (const RatPoly& g : parts)
    for (const auto& t : g.terms()) support.insert(t.e);
  ConeReport rep;
  if (support.empty()) fail(ErrorKind::Structural, "zero gradient for nonzero f");
  RatMat M(h.f.field(), static_cast<int>(support.size()), n);
  int row = 0;
  for (const ExpVec& e : support) {
    for (int i = 0; i < n; ++i) {
      for (const auto& t : parts[i].terms())
        if (t.e == e) {
          M.a[row][i] = t.c;
          break;
        }
    }
    ++row;
  }
  auto basis = M.nullspace();
  if (basis.empty()) return rep;
  rep.cone = true;
  rep.witness = integer_scaled(basis.front());
  return rep;
}

TotallyHessianReport totally_hessian_test(const Hypersurface& h, const HessianMode& mode) {
  if (h.d < 2) fail(ErrorKind::Structural, "totally-Hessian test requires degree >= 2");
  TotallyHessianReport rep;
  long num = static_cast<long>(h.d - 2) * (h.r + 1);
  if (num % h.d != 0) {
    rep.outcome = TotallyHessianOutcome::no;
    return rep;
  }
  rep.e = num / h.d;
  if (mode.symbolic) {
    if (!symbolic_allowed(h))
      fail(ErrorKind::Guard,
           "symbolic hessian refused for r > 5 with entry degree > 2; use probabilistic mode");
    RatPoly det = hessian_matrix(h).det();
    if (det.is_zero()) {
      rep.outcome = TotallyHessianOutcome::vanishing_hessian;
      return rep;
    }
    RatPoly fe = h.f.pow(static_cast<unsigned>(rep.e));
    mpq_class c = det.leading_term().c / fe.leading_term().c;
    if (det == fe.scaled(c)) {
      rep.outcome = TotallyHessianOutcome::yes;
      rep.c = c;
    }
    return rep;
  }
  if (mode.trials < 1) fail(ErrorKind::Structural, "probabilistic mode requires trials >= 1");
  FpHessian fph(h, mode.p);
  FpField k(mode.p);
  FpPoly fp = to_fp(h.f, k);
  Rng rng(mode.seed, /*stream=*/0x746F7468ULL);
  int n = h.r + 1;
  rep.probabilistic = true;
  rep.p = mode.p;
  bool have_c = false;
  bool any_det_nonzero = false;
  uint32_t c = 0;
  for (int t = 0; t < mode.trials; ++t) {
    std::vector<uint32_t> x(n);
    for (int i = 0; i < n; ++i) x[i] = static_cast<uint32_t>(rng.below(mode.p));
    // Determinant of the evaluated matrix via rank-revealing elimination
    // would lose the value; do plain elimination inline.
    FpMat M = fph.value_at(x);
    uint32_t det = k.one();
    bool zero = false;
    {
      auto a = M.a;
      for (int col = 0; col < n && !zero; ++col) {
        int piv = -1;
        for (int rr = col; rr < n; ++rr)
          if (a[rr][col] != 0) {
            piv = rr;
            break;
          }
        if (piv < 0) {
          zero = true;
          break;
        }
        if (piv != col) {
          std::swap(a[piv], a[col]);
          det = k.neg(det);
        }
        det = k.mul(det, a[col][col]);
        uint32_t inv = k.inv(a[col][col]);
        for (int rr = col + 1; rr < n; ++rr) {
          if (a[rr][col] == 0) continue;
          uint32_t fac = k.mul(a[rr][col], inv);
          for (int cc = col; cc < n; ++cc) a[rr][cc] = k.sub(a[rr][cc], k.mul(fac, a[col][cc]));
        }
      }
    }
    if (zero) det = 0;
    if (det != 0) any_det_nonzero = true;
    uint32_t fe = k.pow(fp.eval(x), static_cast<uint64_t>(rep.e));
    if (!have_c) {
      if (fe != 0) {
        c = k.div(det, fe);
        have_c = true;
      } else if (det != 0) {
        rep.outcome = TotallyHessianOutcome::no;
        return rep;
      }
      continue;
    }
    if (det != k.mul(c, fe)) {
      rep.outcome = TotallyHessianOutcome::no;
      return rep;
    }
  }
  if (!any_det_nonzero) {
    rep.outcome = TotallyHessianOutcome::vanishing_hessian;
    return rep;
  }
  if (!have_c || c == 0) {
    rep.outcome = TotallyHessianOutcome::no;
    return rep;
  }
  rep.outcome = TotallyHessianOutcome::yes;
  rep.c_mod = c;
  return rep;
}

GaussImageReport gauss_image_dim(const Hypersurface& h, uint32_t p, uint64_t seed) {
  if (p < 101) fail(ErrorKind::Structural, "gauss_image_dim requires p >= 101");
  FpField k(p);
  FpPoly fp = to_fp(h.f, k);
  FpHessian fph(h, p);
  int n = h.r + 1;
  Rng rng(seed, /*stream=*/0x6761757373ULL);
  GaussImageReport rep;
  rep.p = p;
  rep.seed = seed;
  rep.v = -1;

  std::set<std::vector<uint32_t>> seen;
  const int kWanted = 20;
  const int kMaxScans = 5000;
  int found = 0;
  for (int scan = 0; scan < kMaxScans && found < kWanted; ++scan) {
    int var = scan % n;
    std::vector<uint32_t> x(n);
    for (int i = 0; i < n; ++i)
      if (i != var) x[i] = static_cast<uint32_t>(rng.below(p));
    for (uint32_t val = 0; val < p; ++val) {
      x[var] = val;
      if (fp.eval(x) != 0) continue;
      bool all_zero_pt = true;
      for (uint32_t xi : x)
        if (xi != 0) all_zero_pt = false;
      if (all_zero_pt) continue;
      // smoothness: gradient nonzero at x
      std::vector<uint32_t> g(n);
      bool smooth = false;
      for (int i = 0; i < n; ++i) {
        g[i] = fph.grad[i].eval(x);
        if (g[i] != 0) smooth = true;
      }
      if (!smooth) continue;
      // dedupe projectively: scale so the first nonzero coordinate is 1
      std::vector<uint32_t> norm = x;
      for (int i = 0; i < n; ++i)
        if (norm[i] != 0) {
          uint32_t inv = k.inv(norm[i]);
          for (int j = 0; j < n; ++j) norm[j] = k.mul(norm[j], inv);
          break;
        }
      if (!seen.insert(norm).second) continue;
      ++found;
      // tangent hyperplane basis = kernel of the 1x n gradient row
      FpMat G(k, 1, n);
      G.a[0] = g;
      auto tangent = G.nullspace();
      FpMat H = fph.value_at(x);
      FpMat img(k, static_cast<int>(tangent.size()), n);
      for (size_t t = 0; t < tangent.size(); ++t) img.a[t] = H.apply(tangent[t]);
      int v_here = img.rank() - 1;
      rep.v = std::max(rep.v, v_here);
      if (found >= kWanted) break;
    }
  }
  rep.smooth_points_used = found;
  if (found < kWanted)
    fail(ErrorKind::Inconclusive,
         "fewer than 20 smooth points found; retry with a larger prime");
  return rep;
}

}  // namespace polaris
