#pragma once

#include <cstdint>
#include <vector>

#include "ordmetrics/core.hpp"
#include "ordmetrics/kemeny.hpp"

namespace ordmetrics {

// exact rational with int64 terms, always normalized (den > 0, gcd = 1)
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool operator==(const Fraction& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Fraction& o) const { return !(*this == o); }
};

// mean over candidate pairs of |p(a,b) - p(b,a)|: exactly
// sum_{a<b} |wins[a][b] - wins[b][a]| / (n * C(m,2)).
Fraction agreement_index(const Election& e);

// the same quantity through the majority relation: 1 minus twice the mean
// per-pair disagreement with the (possibly tied) majority ranking, ties
// counting 1/2. Equal to agreement_index on every election.
Fraction agreement_via_majority(const Election& e);

// (sum_k kappa_k / k) / (n * C(m,2)), kappa from kappa_profile_for_indices
double diversity_index(const Election& e, KKMethod solver = KKMethod::best_of, uint64_t seed = 1);

// 2 (kappa_1 - kappa_2) / (n * C(m,2)); kappa_1 exact for m <= 16
double polarization_index(const Election& e, KKMethod solver = KKMethod::best_of, uint64_t seed = 1);

// exact-ratio variants built from the integer kappa values; the diversity sum
// throws ValidationError if the running denominator leaves int64 range (fine
// for the reference elections these are used on)
Fraction polarization_fraction(const Election& e, KKMethod solver = KKMethod::best_of, uint64_t seed = 1);
Fraction diversity_fraction(const Election& e, KKMethod solver = KKMethod::best_of, uint64_t seed = 1);

struct IndexReport {
  double agreement = 0;
  double diversity = 0;
  double polarization = 0;
  std::vector<long long> kappa_profile;  // the kappa_k vector the indices used
};

// one shared kappa profile for all three indices
IndexReport index_report(const Election& e, KKMethod solver = KKMethod::best_of, uint64_t seed = 1);

}  // namespace ordmetrics
