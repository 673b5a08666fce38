#ifndef POLARIS_MPOLY_HPP
#define POLARIS_MPOLY_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <string>
#include <vector>

#include "polaris/error.hpp"
#include "polaris/fields.hpp"
#include "polaris/rng.hpp"

namespace polaris {

using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
  uint32_t d = 0;
  for (uint32_t x : e) d += x;
  return d;
}

// Graded reverse lexicographic: higher total degree wins; on ties the
// monomial with the smaller exponent at the last differing variable wins.
inline bool grevlex_less(const ExpVec& a, const ExpVec& b) {
  uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

struct GrevlexGreater {
  bool operator()(const ExpVec& a, const ExpVec& b) const { return grevlex_less(b, a); }
};

// Sparse multivariate polynomial over field F. Terms are kept in
// grevlex-descending order with no zero coefficients; the zero polynomial
// is the empty term list. Immutable in spirit: all ops return new values.
template <class F>
class MPoly {
public:
  using Elem = typename F::Elem;
  struct Term {
    ExpVec e;
    Elem c;
  };

  MPoly(const F& field, int n_vars) : field_(field), nv_(n_vars) {
    if (n_vars < 1) fail(ErrorKind::Structural, "n_vars must be >= 1");
  }

  static MPoly constant(const F& field, int nv, const Elem& c) {
    MPoly p(field, nv);
    if (!F::is_zero(c)) p.terms_.push_back({ExpVec(nv, 0), c});
    return p;
  }
  static MPoly variable(const F& field, int nv, int i) {
    if (i < 0 || i >= nv) fail(ErrorKind::Structural, "variable index out of range");
    MPoly p(field, nv);
    ExpVec e(nv, 0);
    e[i] = 1;
    p.terms_.push_back({e, field.one()});
    return p;
  }
  static MPoly monomial(const F& field, int nv, const ExpVec& e, const Elem& c) {
    if (static_cast<int>(e.size()) != nv) fail(ErrorKind::Structural, "exponent length != n_vars");
    MPoly p(field, nv);
    if (!F::is_zero(c)) p.terms_.push_back({e, c});
    return p;
  }

  int n_vars() const { return nv_; }
  const F& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t n_terms() const { return terms_.size(); }

  // Total degree; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(total_degree(terms_.front().e));
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    uint32_t d = total_degree(terms_.front().e);
    for (const Term& t : terms_)
      if (total_degree(t.e) != d) return false;
    return true;
  }

  bool operator==(const MPoly& o) const {
    if (!(field_ == o.field_) || nv_ != o.nv_ || terms_.size() != o.terms_.size()) return false;
    for (size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].e != o.terms_[i].e || !F::eq(terms_[i].c, o.terms_[i].c)) return false;
    return true;
  }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly operator-() const {
    MPoly r(*this);
    for (Term& t : r.terms_) t.c = field_.neg(t.c);
    return r;
  }

  MPoly operator+(const MPoly& o) const { return merged(o, /*negate=*/false); }
  MPoly operator-(const MPoly& o) const { return merged(o, /*negate=*/true); }

  MPoly operator*(const MPoly& o) const {
    check_compatible(o);
    MPoly r(field_, nv_);
    if (terms_.empty() || o.terms_.empty()) return r;
    std::map<ExpVec, Elem, GrevlexGreater> acc;
    ExpVec e(nv_);
    for (const Term& a : terms_) {
      for (const Term& b : o.terms_) {
        for (int i = 0; i < nv_; ++i) e[i] = a.e[i] + b.e[i];
        Elem prod = field_.mul(a.c, b.c);
        auto it = acc.find(e);
        if (it == acc.end()) {
          acc.emplace(e, prod);
        } else {
          it->second = field_.add(it->second, prod);
        }
      }
    }
    for (auto& kv : acc)
      if (!F::is_zero(kv.second)) r.terms_.push_back({kv.first, kv.second});
    return r;
  }

  MPoly scaled(const Elem& c) const {
    MPoly r(field_, nv_);
    if (F::is_zero(c)) return r;
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.c = field_.mul(t.c, c);
    return r;
  }

  MPoly pow(unsigned k) const {
    MPoly acc = constant(field_, nv_, field_.one());
    MPoly base = *this;
    while (k) {
      if (k & 1) acc = acc * base;
      base = (k >>= 1) ? base * base : base;
    }
    return acc;
  }

  // Formal partial derivative. Over a prime field the exponent multipliers
  // are only faithful when p > deg f; the guard enforces that.
  MPoly diff(int var) const {
    if (var < 0 || var >= nv_) fail(ErrorKind::Structural, "diff: variable index out of range");
    if constexpr (F::kFinite) {
      if (static_cast<long>(field_.p) <= degree())
        fail(ErrorKind::Guard, "derivative over F_p requires p > deg f");
    }
    MPoly r(field_, nv_);
    for (const Term& t : terms_) {
      if (t.e[var] == 0) continue;
      Term d;
      d.e = t.e;
      d.c = field_.mul(t.c, field_.from_int(static_cast<long>(t.e[var])));
      d.e[var] -= 1;
      if (!F::is_zero(d.c)) r.terms_.push_back(std::move(d));
    }
    // Dropping/zeroing terms preserves the grevlex-descending invariant only
    // up to gaps; a same-degree reorder can occur, so re-sort.
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_less(b.e, a.e); });
    return r;
  }

  Elem eval(const std::vector<Elem>& pt) const {
    if (static_cast<int>(pt.size()) != nv_) fail(ErrorKind::Structural, "eval: point arity mismatch");
    Elem acc = field_.zero();
    for (const Term& t : terms_) {
      Elem m = t.c;
      for (int i = 0; i < nv_; ++i) {
        for (uint32_t k = 0; k < t.e[i]; ++k) m = field_.mul(m, pt[i]);
      }
      acc = field_.add(acc, m);
    }
    return acc;
  }

  // Simultaneous substitution x_i -> images[i]; images share a common ring.
  MPoly subst(const std::vector<MPoly>& images) const {
    if (static_cast<int>(images.size()) != nv_)
      fail(ErrorKind::Structural, "subst: need one image per variable");
    for (const MPoly& g : images) images.front().check_compatible(g);
    const F& tf = images.front().field_;
    int tnv = images.front().nv_;
    // Power tables keyed by the largest exponent each variable reaches.
    std::vector<uint32_t> maxe(nv_, 0);
    for (const Term& t : terms_)
      for (int i = 0; i < nv_; ++i) maxe[i] = std::max(maxe[i], t.e[i]);
    std::vector<std::vector<MPoly>> pw(nv_);
    for (int i = 0; i < nv_; ++i) {
      pw[i].push_back(constant(tf, tnv, tf.one()));
      for (uint32_t k = 1; k <= maxe[i]; ++k) pw[i].push_back(pw[i].back() * images[i]);
    }
    MPoly r(tf, tnv);
    for (const Term& t : terms_) {
      MPoly m = constant(tf, tnv, convert_coeff(t.c, tf));
      for (int i = 0; i < nv_; ++i)
        if (t.e[i] > 0) m = m * pw[i][t.e[i]];
      r = r + m;
    }
    return r;
  }

  // Re-embed into a ring with new_nv variables, sending x_i -> x_{i+shift}.
  MPoly embed(int new_nv, int shift) const {
    if (shift < 0 || nv_ + shift > new_nv)
      fail(ErrorKind::Structural, "embed: target ring too small");
    MPoly r(field_, new_nv);
    for (const Term& t : terms_) {
      ExpVec e(new_nv, 0);
      for (int i = 0; i < nv_; ++i) e[i + shift] = t.e[i];
      r.terms_.push_back({std::move(e), t.c});
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_less(b.e, a.e); });
    return r;
  }

  int degree_in(int var) const {
    int d = 0;
    for (const Term& t : terms_) d = std::max(d, static_cast<int>(t.e[var]));
    return d;
  }

  // Coefficient of var^k, returned in the same ring with var's exponent zeroed.
  MPoly coeff_of(int var, uint32_t k) const {
    MPoly r(field_, nv_);
    for (const Term& t : terms_) {
      if (t.e[var] != k) continue;
      Term s = t;
      s.e[var] = 0;
      r.terms_.push_back(std::move(s));
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_less(b.e, a.e); });
    return r;
  }

  // Minimum, over monomials, of the total degree in the given variable block.
  int min_degree_in_block(const std::vector<int>& vars) const {
    if (terms_.empty()) fail(ErrorKind::Structural, "min_degree_in_block of zero polynomial");
    int best = -1;
    for (const Term& t : terms_) {
      int s = 0;
      for (int v : vars) s += static_cast<int>(t.e[v]);
      if (best < 0 || s < best) best = s;
    }
    return best;
  }

  // True when every monomial uses only variables for which allowed[i] holds.
  bool supported_on(const std::vector<bool>& allowed) const {
    for (const Term& t : terms_)
      for (int i = 0; i < nv_; ++i)
        if (t.e[i] > 0 && !allowed[i]) return false;
    return true;
  }

  ExpVec monomial_content_single() const {
    if (terms_.empty()) fail(ErrorKind::Structural, "monomial content of zero polynomial");
    ExpVec m = terms_.front().e;
    for (const Term& t : terms_)
      for (int i = 0; i < nv_; ++i) m[i] = std::min(m[i], t.e[i]);
    return m;
  }

  MPoly divide_by_monomial(const ExpVec& m) const {
    MPoly r(*this);
    for (Term& t : r.terms_) {
      for (int i = 0; i < nv_; ++i) {
        if (t.e[i] < m[i]) fail(ErrorKind::Structural, "monomial division not exact");
        t.e[i] -= m[i];
      }
    }
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return grevlex_less(b.e, a.e); });
    return r;
  }

  const Term& leading_term() const {
    if (terms_.empty()) fail(ErrorKind::Structural, "leading term of zero polynomial");
    return terms_.front();
  }

  void check_compatible(const MPoly& o) const {
    if (nv_ != o.nv_ || !(field_ == o.field_))
      fail(ErrorKind::Structural, "polynomial ring mismatch (n_vars or field)");
  }

private:
  MPoly merged(const MPoly& o, bool negate) const {
    check_compatible(o);
    MPoly r(field_, nv_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      bool take_left;
      if (i == terms_.size()) {
        take_left = false;
      } else if (j == o.terms_.size()) {
        take_left = true;
      } else if (terms_[i].e == o.terms_[j].e) {
        Elem c = negate ? field_.sub(terms_[i].c, o.terms_[j].c)
                        : field_.add(terms_[i].c, o.terms_[j].c);
        if (!F::is_zero(c)) r.terms_.push_back({terms_[i].e, c});
        ++i, ++j;
        continue;
      } else {
        take_left = grevlex_less(o.terms_[j].e, terms_[i].e);
      }
      if (take_left) {
        r.terms_.push_back(terms_[i++]);
      } else {
        Term t = o.terms_[j++];
        if (negate) t.c = field_.neg(t.c);
        r.terms_.push_back(std::move(t));
      }
    }
    return r;
  }

  template <class G>
  static typename G::Elem convert_coeff(const Elem& c, const G& g) {
    if constexpr (std::is_same_v<F, G>) {
      (void)g;
      return c;
    } else {
      static_assert(std::is_same_v<F, RatField> && std::is_same_v<G, FpField>,
                    "only rational -> prime-field coefficient transport is supported");
      return g.from_rat(c);
    }
  }

  F field_;
  int nv_;
  std::vector<Term> terms_;
};

using RatPoly = MPoly<RatField>;
using FpPoly = MPoly<FpField>;

// Reduction mod p of an exact rational polynomial (denominators must be units).
inline FpPoly to_fp(const RatPoly& f, const FpField& k) {
  FpPoly r(k, f.n_vars());
  for (const auto& t : f.terms()) {
    uint32_t c = k.from_rat(t.c);
    if (c != 0) r = r + FpPoly::monomial(k, f.n_vars(), t.e, c);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Text format: terms joined by +/-, term = [coefficient *] monomial,
// monomial = x<i>[^<e>] factors joined by *.  Example: 2*x1*x2*x3 - x0*x3^2.
// Printing is canonical (grevlex-descending); parsing accepts any order.
// ---------------------------------------------------------------------------

template <class F>
std::string to_text(const MPoly<F>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string cs = F::str(t.c);
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    if (first) {
      if (neg) out += "-";
      first = false;
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mono;
    for (int i = 0; i < f.n_vars(); ++i) {
      if (t.e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i);
      if (t.e[i] > 1) mono += "^" + std::to_string(t.e[i]);
    }
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else {
      out += cs + "*" + mono;
    }
  }
  return out;
}

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline unsigned long parse_uint(const std::string& s, size_t& i, const char* what) {
  skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == start) fail(ErrorKind::Parse, std::string("expected ") + what + " at position " + std::to_string(start));
  return std::stoul(s.substr(start, i - start));
}

}  // namespace detail

// Parse in the text format above. When n_vars < 0 the ring size is inferred
// as 1 + the largest variable index mentioned (at least 1).
template <class F>
MPoly<F> parse_poly(const F& field, const std::string& text, int n_vars = -1) {
  struct RawTerm {
    long num = 1;
    unsigned long den = 1;
    std::vector<std::pair<unsigned long, unsigned long>> factors;  // (var, exp)
  };
  std::vector<RawTerm> raw;
  size_t i = 0;
  detail::skip_ws(text, i);
  if (i == text.size()) fail(ErrorKind::Parse, "empty polynomial text");
  long max_var = -1;
  bool lead = true;
  while (i < text.size()) {
    int sign = 1;
    detail::skip_ws(text, i);
    if (!lead) {
      if (text[i] == '+') {
        ++i;
      } else if (text[i] == '-') {
        sign = -1;
        ++i;
      } else {
        fail(ErrorKind::Parse, "expected + or - at position " + std::to_string(i));
      }
    } else if (text[i] == '-') {
      sign = -1;
      ++i;
    } else if (text[i] == '+') {
      ++i;
    }
    lead = false;
    detail::skip_ws(text, i);
    RawTerm term;
    term.num = sign;
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      detail::skip_ws(text, i);
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        unsigned long v = detail::parse_uint(text, i, "integer");
        term.num *= static_cast<long>(v);
        detail::skip_ws(text, i);
        if (i < text.size() && text[i] == '/') {
          ++i;
          unsigned long d = detail::parse_uint(text, i, "denominator");
          if (d == 0) fail(ErrorKind::Parse, "zero denominator");
          term.den *= d;
        }
      } else if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
        ++i;
        unsigned long var = detail::parse_uint(text, i, "variable index");
        unsigned long exp = 1;
        detail::skip_ws(text, i);
        if (i < text.size() && text[i] == '^') {
          ++i;
          exp = detail::parse_uint(text, i, "exponent");
        }
        term.factors.push_back({var, exp});
        max_var = std::max(max_var, static_cast<long>(var));
      } else {
        fail(ErrorKind::Parse, "expected coefficient or variable at position " + std::to_string(i));
      }
      saw_factor = true;
      detail::skip_ws(text, i);
      if (i < text.size() && text[i] == '*') {
        ++i;
      } else {
        expect_factor = false;
      }
    }
    if (!saw_factor) fail(ErrorKind::Parse, "empty term");
    raw.push_back(std::move(term));
    detail::skip_ws(text, i);
  }

  int nv = n_vars >= 0 ? n_vars : static_cast<int>(std::max(max_var + 1, 1L));
  if (max_var >= nv)
    fail(ErrorKind::Parse, "variable index x" + std::to_string(max_var) + " exceeds n_vars=" + std::to_string(nv));
  MPoly<F> out(field, nv);
  for (const RawTerm& t : raw) {
    ExpVec e(nv, 0);
    for (auto [v, x] : t.factors) e[v] += static_cast<uint32_t>(x);
    typename F::Elem c;
    if constexpr (F::kFinite) {
      if (t.den != 1) c = field.div(field.from_int(t.num), field.from_int(static_cast<long>(t.den)));
      else c = field.from_int(t.num);
    } else {
      c = F::from_frac(t.num, static_cast<long>(t.den));
    }
    out = out + MPoly<F>::monomial(field, nv, e, c);
  }
  return out;
}

// Invertible substitution g(x) = f(A x): variable x_i is replaced by the
// linear form sum_j A[i][j] * x_j.  Rejects singular A.
template <class F>
MPoly<F> linear_change(const MPoly<F>& f, const std::vector<std::vector<typename F::Elem>>& A) {
  const F& k = f.field();
  int n = f.n_vars();
  if (static_cast<int>(A.size()) != n)
    fail(ErrorKind::Structural, "linear_change: matrix must be n_vars x n_vars");
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != n)
      fail(ErrorKind::Structural, "linear_change: matrix must be n_vars x n_vars");
  // Invertibility via plain elimination on a scratch copy.
  auto M = A;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (!F::is_zero(M[r][col])) {
        pivot = r;
        break;
      }
    if (pivot < 0) fail(ErrorKind::Structural, "linear_change: singular matrix");
    std::swap(M[col], M[pivot]);
    for (int r = col + 1; r < n; ++r) {
      if (F::is_zero(M[r][col])) continue;
      typename F::Elem factor = k.div(M[r][col], M[col][col]);
      for (int c = col; c < n; ++c) M[r][c] = k.sub(M[r][c], k.mul(factor, M[col][c]));
    }
  }
  std::vector<MPoly<F>> images;
  images.reserve(n);
  for (int i = 0; i < n; ++i) {
    MPoly<F> L(k, n);
    for (int j = 0; j < n; ++j) {
      if (F::is_zero(A[i][j])) continue;
      L = L + MPoly<F>::variable(k, n, j).scaled(A[i][j]);
    }
    images.push_back(std::move(L));
  }
  return f.subst(images);
}

// All exponent vectors of total degree deg in nv variables, grevlex-descending.
inline std::vector<ExpVec> monomials_of_degree(int nv, int deg) {
  std::vector<ExpVec> out;
  ExpVec cur(nv, 0);
  // Depth-first over positions, assigning what remains of the degree.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == nv - 1) {
      cur[pos] = static_cast<uint32_t>(remaining);
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[pos] = static_cast<uint32_t>(e);
      self(self, pos + 1, remaining - e);
    }
  };
  rec(rec, 0, deg);
  std::sort(out.begin(), out.end(), [](const ExpVec& a, const ExpVec& b) { return grevlex_less(b, a); });
  return out;
}

// Largest monomial dividing every input: componentwise exponent minimum.
template <class F>
ExpVec monomial_content(const std::vector<MPoly<F>>& fs) {
  if (fs.empty()) fail(ErrorKind::Structural, "monomial_content of empty list");
  ExpVec m = fs.front().monomial_content_single();
  for (size_t k = 1; k < fs.size(); ++k) {
    ExpVec mk = fs[k].monomial_content_single();
    for (size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], mk[i]);
  }
  return m;
}

namespace detail {

// Univariate gcd degree over Q (plain Euclid; mpq keeps it exact).
inline int univariate_gcd_degree(std::vector<std::vector<mpq_class>> polys) {
  auto deg = [](const std::vector<mpq_class>& p) {
    for (size_t i = p.size(); i-- > 0;)
      if (sgn(p[i]) != 0) return static_cast<int>(i);
    return -1;
  };
  std::vector<mpq_class> g;
  for (auto& p : polys) {
    if (deg(p) < 0) continue;
    if (deg(g) < 0) {
      g = p;
      continue;
    }
    std::vector<mpq_class> a = g, b = p;
    while (deg(b) >= 0) {
      int da = deg(a), db = deg(b);
      if (da < db) {
        std::swap(a, b);
        continue;
      }
      mpq_class q = a[da] / b[db];
      for (int k = 0; k <= db; ++k) a[da - db + k] -= q * b[k];
      a[da] = 0;
    }
    g = a;
    if (deg(g) == 0) return 0;
  }
  return deg(g);
}

}  // namespace detail

// One-sided common-factor probe: restrict to one variable at a time with the
// other variables pinned to random small integers, and check the univariate
// gcd of the restrictions is constant. true = evidence of coprimality;
// false = some restriction produced a positive-degree gcd.
inline bool no_common_factor_probabilistic(const std::vector<RatPoly>& fs,
                                           int trials, uint64_t seed) {
  if (fs.empty()) fail(ErrorKind::Structural, "no_common_factor_probabilistic: empty list");
  for (const RatPoly& f : fs)
    if (f.is_zero()) fail(ErrorKind::Structural, "no_common_factor_probabilistic: zero polynomial");
  int nv = fs.front().n_vars();
  Rng rng(seed, /*stream=*/0x6763645F70726F62ULL);
  int usable_trials = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int kept = trial % nv;
    std::vector<mpq_class> vals(nv);
    for (int i = 0; i < nv; ++i)
      if (i != kept) vals[i] = mpq_class(rng.small_nonzero(20));
    std::vector<std::vector<mpq_class>> restricted;
    bool any_nonzero = false;
    for (const RatPoly& f : fs) {
      std::vector<mpq_class> uni(static_cast<size_t>(f.degree()) + 1, mpq_class(0));
      for (const auto& t : f.terms()) {
        mpq_class c = t.c;
        for (int i = 0; i < nv; ++i) {
          if (i == kept) continue;
          for (uint32_t k = 0; k < t.e[i]; ++k) c *= vals[i];
        }
        uni[t.e[kept]] += c;
      }
      bool nz = false;
      for (const mpq_class& c : uni)
        if (sgn(c) != 0) nz = true;
      if (nz) {
        restricted.push_back(std::move(uni));
        any_nonzero = true;
      }
    }
    if (!any_nonzero) continue;  // degenerate restriction, does not count
    ++usable_trials;
    if (detail::univariate_gcd_degree(std::move(restricted)) > 0) return false;
  }
  if (usable_trials == 0)
    fail(ErrorKind::Inconclusive, "all restrictions degenerate; retry with another seed");
  return true;
}

}  // namespace polaris

#endif
