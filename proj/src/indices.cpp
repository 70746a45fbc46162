#include "ordmetrics/indices.hpp"

#include <cstdlib>
#include <numeric>

namespace ordmetrics {

Fraction::Fraction(long long n, long long d) {
  if (d == 0) throw ValidationError("fraction with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

namespace {

Fraction reduce128(__int128 num, __int128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  __int128 g = den;
  __int128 x = num < 0 ? -num : num;
  while (x) {
    __int128 t = g % x;
    g = x;
    x = t;
  }
  if (g == 0) g = 1;
  num /= g;
  den /= g;
  const __int128 hi = static_cast<__int128>(0x7FFFFFFFFFFFFFFFLL);
  if (num < -hi || num > hi || den > hi) throw ValidationError("fraction overflow");
  return Fraction(static_cast<long long>(num), static_cast<long long>(den));
}

Fraction add(const Fraction& a, const Fraction& b) {
  return reduce128(static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den,
                   static_cast<__int128>(a.den) * b.den);
}

}  // namespace

Fraction agreement_index(const Election& e) {
  validate_election(e);
  if (e.num_voters() == 0 || e.num_candidates < 2)
    throw ValidationError("agreement index needs voters and at least two candidates");
  auto p = pairwise_preference(e);
  long long total = 0;
  for (int a = 0; a < e.num_candidates; ++a)
    for (int b = a + 1; b < e.num_candidates; ++b)
      total += std::llabs(p.wins[static_cast<size_t>(a)][static_cast<size_t>(b)] -
                          p.wins[static_cast<size_t>(b)][static_cast<size_t>(a)]);
  return Fraction(total, static_cast<long long>(e.num_voters()) * pair_count(e.num_candidates));
}

Fraction agreement_via_majority(const Election& e) {
  validate_election(e);
  if (e.num_voters() == 0 || e.num_candidates < 2)
    throw ValidationError("agreement index needs voters and at least two candidates");
  auto p = pairwise_preference(e);
  long long n = e.num_voters();
  // twice the summed tau(v, majority): strict disagreements count 2, majority
  // ties count 1 per (vote, pair)
  long long twice_tau = 0;
  for (int a = 0; a < e.num_candidates; ++a)
    for (int b = a + 1; b < e.num_candidates; ++b) {
      long long ab = p.wins[static_cast<size_t>(a)][static_cast<size_t>(b)];
      long long ba = p.wins[static_cast<size_t>(b)][static_cast<size_t>(a)];
      if (ab == ba)
        twice_tau += n;  // every vote contributes 1/2
      else
        twice_tau += 2 * std::min(ab, ba);  // the minority side disagrees
    }
  long long den = n * pair_count(e.num_candidates);
  return Fraction(den - twice_tau, den);
}

namespace {

long long norm_denominator(const Election& e) {
  return static_cast<long long>(e.num_voters()) * pair_count(e.num_candidates);
}

}  // namespace

double diversity_index(const Election& e, KKMethod solver, uint64_t seed) {
  auto kappa = kappa_profile_for_indices(e, solver, seed);
  long double s = 0;
  for (size_t k = 0; k < kappa.size(); ++k) s += static_cast<long double>(kappa[k]) / static_cast<long double>(k + 1);
  return static_cast<double>(s / static_cast<long double>(norm_denominator(e)));
}

double polarization_index(const Election& e, KKMethod solver, uint64_t seed) {
  auto [k1, k2] = kappa_head(e, solver, seed);
  return 2.0 * static_cast<double>(k1 - k2) / static_cast<double>(norm_denominator(e));
}

Fraction polarization_fraction(const Election& e, KKMethod solver, uint64_t seed) {
  auto [k1, k2] = kappa_head(e, solver, seed);
  return Fraction(2 * (k1 - k2), norm_denominator(e));
}

Fraction diversity_fraction(const Election& e, KKMethod solver, uint64_t seed) {
  auto kappa = kappa_profile_for_indices(e, solver, seed);
  Fraction sum(0, 1);
  for (size_t k = 0; k < kappa.size(); ++k) sum = add(sum, Fraction(kappa[k], static_cast<long long>(k + 1)));
  return reduce128(sum.num, static_cast<__int128>(sum.den) * norm_denominator(e));
}

IndexReport index_report(const Election& e, KKMethod solver, uint64_t seed) {
  IndexReport rep;
  rep.agreement = agreement_index(e).value();
  rep.kappa_profile = kappa_profile_for_indices(e, solver, seed);
  long double s = 0;
  for (size_t k = 0; k < rep.kappa_profile.size(); ++k)
    s += static_cast<long double>(rep.kappa_profile[k]) / static_cast<long double>(k + 1);
  long long den = norm_denominator(e);
  rep.diversity = static_cast<double>(s / static_cast<long double>(den));
  long long k1 = rep.kappa_profile.empty() ? 0 : rep.kappa_profile[0];
  long long k2 = rep.kappa_profile.size() > 1 ? rep.kappa_profile[1] : k1;
  rep.polarization = 2.0 * static_cast<double>(k1 - k2) / static_cast<double>(den);
  return rep;
}

}  // namespace ordmetrics
