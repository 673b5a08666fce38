#ifndef POLARIS_RANDFORMS_HPP
#define POLARIS_RANDFORMS_HPP

#include <vector>

#include "polaris/mpoly.hpp"
#include "polaris/rng.hpp"

namespace polaris {

// Dense homogeneous form of the given degree supported on the listed
// variables, with coefficients drawn from {-5..5}\{0}.
inline RatPoly dense_random_form(const RatField& Q, int nv, const std::vector<int>& vars,
                                 int degree, Rng& rng) {
  if (vars.empty()) fail(ErrorKind::Structural, "dense_random_form: empty variable set");
  if (degree == 0) return RatPoly::constant(Q, nv, RatField::from_int(rng.small_nonzero(5)));
  RatPoly out(Q, nv);
  for (const ExpVec& e : monomials_of_degree(static_cast<int>(vars.size()), degree)) {
    ExpVec full(nv, 0);
    for (size_t i = 0; i < vars.size(); ++i) full[vars[i]] = e[i];
    out = out + RatPoly::monomial(Q, nv, full, RatField::from_int(rng.small_nonzero(5)));
  }
  return out;
}

inline std::vector<int> var_range(int lo, int hi) {  // inclusive
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace polaris

#endif
