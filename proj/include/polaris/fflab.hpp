#ifndef POLARIS_FFLAB_HPP
#define POLARIS_FFLAB_HPP

#include <map>
#include <string>
#include <vector>

#include "polaris/polarity.hpp"

namespace polaris {

// Canonical enumeration of P^r(F_p): stratum i holds the points whose first
// nonzero coordinate is x_i (normalized to 1), ordered by the base-p digits
// of the remaining coordinates.
class ProjEnum {
public:
  ProjEnum(int r, uint32_t p);

  uint64_t total() const { return total_; }
  uint32_t p() const { return fp_.p; }
  int r() const { return r_; }

  std::vector<uint32_t> point(uint64_t index) const;
  // Scales so the first nonzero coordinate is 1; fails on the zero vector.
  void normalize(std::vector<uint32_t>& c) const;
  uint64_t index(const std::vector<uint32_t>& normalized) const;

private:
  FpField fp_;
  int r_;
  uint64_t total_;
  std::vector<uint64_t> offset_;  // offset_[i] = first index of stratum i
};

enum class DegreeVerdict { DeltaEq, DeltaGe, NotDominant, Inconclusive };

std::string verdict_name(DegreeVerdict v);

struct DegreeEstimate {
  uint32_t p = 0;
  uint64_t seed = 0;
  int samples_requested = 0;
  int samples = 0;  // accepted (Jacobian-nonsingular) samples; histogram total
  uint64_t base_locus_points = 0;
  uint64_t nonbase_points = 0;
  uint64_t distinct_images = 0;
  std::map<uint64_t, uint64_t> fiber_histogram;  // fiber size -> frequency
  mpq_class image_ratio;                         // distinct images / non-base points
  mpq_class eps;
  DegreeVerdict verdict = DegreeVerdict::Inconclusive;
  int k = 0;            // the delta value for DeltaEq / DeltaGe
  bool heuristic = false;
  uint64_t gate_skipped = 0;  // draws rejected by the Jacobian gate
};

struct DegreeOptions {
  int samples = 200;
  uint64_t seed = 0;
  mpq_class eps = mpq_class(1, 20);
};

// Exhaustive fiber statistics for the map P^r -> P^r given by equal-degree
// forms over F_p. One full enumeration pass fills a per-image-point counter;
// sampled fibers are then read off exactly.
DegreeEstimate polar_degree_fp(const std::vector<FpPoly>& forms, const DegreeOptions& opt);

// Reduction mod p of a rational map / of the first polars of f.
DegreeEstimate polar_degree(const PolarMap& map, uint32_t p, const DegreeOptions& opt);
DegreeEstimate polar_degree(const Hypersurface& h, uint32_t p, const DegreeOptions& opt);

// Smooth quadric sum_{i+j=r} +-x_i x_j with alternating signs.
RatPoly series_quadric(const RatField& k, int r);

struct SeriesSuiteItem {
  std::string name;
  DegreeEstimate est;
};

struct SeriesSuiteReport {
  int r = 0;
  uint32_t p = 0;
  std::vector<SeriesSuiteItem> items;
  bool all_delta1 = false;
};

// The three standard birational-polar families: smooth quadric, product of
// r+1 independent hyperplanes, quadric times a tangent hyperplane.
SeriesSuiteReport homaloidal_series_suite(int r, uint32_t p, const DegreeOptions& opt);

}  // namespace polaris

#endif
