#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "keypoly/parallel.hpp"
#include "keypoly/polynomial.hpp"
#include "keypoly/random.hpp"
#include "keypoly/report.hpp"

namespace keypoly {

// Random input of one property. Polynomials in ps/rs are shrinkable; ints
// carry structural choices (member index, n, b, ...) and are left alone.
struct SuiteCase {
  unsigned p = 2;
  bool rational = false;  // rs instead of ps
  std::vector<PolyP> ps;
  std::vector<PolyR> rs;
  std::vector<long> ints;
  Json to_json() const;
};

struct Outcome {
  enum Kind { Pass, Fail, Skip, Invalid } kind = Pass;
  std::string detail;
};

struct Property {
  std::string name;
  std::string group;
  std::function<SuiteCase(Rng&)> generate;
  std::function<Outcome(const SuiteCase&)> check;  // may throw
};

struct CaseFailure {
  std::size_t index = 0;
  SuiteCase input;
  std::string detail;
  SuiteCase shrunk;
  std::string shrunk_detail;
  unsigned shrink_steps = 0;
};

struct PropertyResult {
  std::string name;
  std::string group;
  std::size_t generated = 0;
  std::size_t applicable = 0;
  std::size_t passed = 0;
  std::vector<CaseFailure> failures;  // the first few, in case order
  bool pass() const { return failures.empty() && applicable > 0; }
  Json to_json() const;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  unsigned cases = 64;          // applicable cases wanted per property
  unsigned max_attempts = 16;   // generated cases per wanted case, at most
  std::vector<std::string> only;  // property names or groups; empty = all
  unsigned precision_depth = 0;
  unsigned chain_length = 6;
  Execution mode = Execution::Parallel;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  unsigned cases = 0;
  std::vector<PropertyResult> properties;
  bool pass() const;
  Json to_json() const;
};

// Runs `check` and maps exceptions: AssertionFailure and PrecisionError to
// Fail, InputError to Invalid.
Outcome run_check(const Property& prop, const SuiteCase& c);

// Degree-first shrinking: drop leading coefficients, then single terms, for
// as long as the case keeps failing.
SuiteCase shrink_case(const Property& prop, SuiteCase c, std::string& detail, unsigned& steps,
                      unsigned max_steps = 200);

PropertyResult run_property(const Property& prop, const SuiteOptions& o, std::size_t stream);

std::vector<Property> suite_properties(const SuiteOptions& o);
SuiteReport run_suite(const SuiteOptions& o);

}  // namespace keypoly
