#ifndef POLARIS_ERROR_HPP
#define POLARIS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace polaris {

// Structured failure kinds; the CLI maps these onto exit codes
// (usage -> 2, inconclusive -> 3, everything else -> 1 when fatal).
enum class ErrorKind {
  Structural,      // mismatched n_vars/field, non-square matrix, bad arguments
  Guard,           // desk-scale guard exceeded (use probabilistic / smaller input)
  BadPrime,        // p divides a needed denominator, or p not an odd prime < 2^31
  DegenerateSpec,  // seeded "general" spec hit a degenerate locus
  Inconclusive,    // sampling could not reach a verdict
  Parse,           // polynomial text / CLI input malformed
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) {
  throw Error(k, msg);
}

}  // namespace polaris

#endif
