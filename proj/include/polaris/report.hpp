#ifndef POLARIS_REPORT_HPP
#define POLARIS_REPORT_HPP

#include <json.hpp>
#include <string>
#include <vector>

#include "polaris/fflab.hpp"

namespace polaris {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | heuristic-pass | inconclusive
  ordered_json payload;
};

struct Report {
  std::string command;
  ordered_json config;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;

  void add(const std::string& name, const std::string& status, ordered_json payload);
  // 1 if any check failed, 3 if nothing failed and everything is
  // inconclusive, 0 otherwise.
  int exit_code() const;
  ordered_json to_json() const;  // schema 1; wall time is the final key
  std::string to_csv() const;    // flattened rows: check,status,key,value
};

std::string mpq_str(const mpq_class& q);

// Estimator payload and the status it earns against an expected verdict.
ordered_json degree_payload(const DegreeEstimate& est);
std::string degree_status(const DegreeEstimate& est, DegreeVerdict expected, int expected_k);

// Default sampling prime and image-ratio tolerance at each ambient dimension.
uint32_t default_prime(int r);
mpq_class default_eps(int r);

// Named suites; `samples` <= 0 selects the 200-sample default.
Report suite_dolgachev(uint32_t p, uint64_t seed, int samples);
Report suite_ext(int r, uint32_t p, uint64_t seed, int samples);
Report suite_subhankel_all();
Report suite_gn_permutti(uint64_t seed);
Report suite_serie(uint64_t seed);

}  // namespace polaris

#endif
