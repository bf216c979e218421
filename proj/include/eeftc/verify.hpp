#pragma once

#include <cstdint>
#include <iosfwd>

namespace eeftc {

/// Largest deviations between the closed forms and brute-force enumeration
/// over randomized small instances.
struct VerificationSummary {
  int cases = 0;
  double cumulant = 0.0;            // |K1 - exact cumulant|
  double moment = 0.0;              // |central difference of exact cumulant - exact embedded moment|
  double derivative = 0.0;          // |analytic K1' - exact embedded moment|
  double normalization = 0.0;       // |embedded mass - 1|
  double ppt_identity = 0.0;        // |eef score at theta = 1 - ppt score|
  double stationarity = 0.0;        // |K1'(theta*) - sum z_bar beta| at interior optima
  int decision_mismatches = 0;      // eef(theta = 1) vs ppt vs enumerated Bayes decision
};

VerificationSummary run_verification(std::uint64_t seed, int cases);

void print_summary(std::ostream& out, const VerificationSummary& summary);

}  // namespace eeftc
