#include "casemark/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "casemark/error.hpp"

namespace casemark {

namespace {

// 80-bit lgamma keeps ln C(n, k) within ~1e-11 for n up to 1e7, where the
// double version loses about eight digits to cancellation.
long double log_choose_ld(std::uint64_t n, std::uint64_t k) {
  if (k == 0 || k == n) return 0.0L;
  const long double nl = static_cast<long double>(n);
  const long double kl = static_cast<long double>(k);
  return std::lgamma(nl + 1.0L) - std::lgamma(kl + 1.0L) - std::lgamma(nl - kl + 1.0L);
}

constexpr long double kTieSlack = 1e-12L;
// Terms below observed * kNegligible cannot move p by more than ~1e-13 relative.
constexpr long double kNegligible = 1e-20L;

}  // namespace

double log_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("log_choose: k > n");
  return static_cast<double>(log_choose_ld(n, k));
}

double fisher_exact_two_sided(const ContingencyTable& t) {
  const std::uint64_t n = t.total();
  if (n == 0) throw DomainError("fisher_exact_two_sided: all-zero table");

  // Hypergeometric over x = top-left cell with row margins (r1, r2) and first column c1.
  const std::uint64_t r1 = t.a + t.b;
  const std::uint64_t r2 = t.c + t.d;
  const std::uint64_t c1 = t.a + t.c;
  const std::uint64_t lo = c1 > r2 ? c1 - r2 : 0;
  const std::uint64_t hi = std::min(r1, c1);
  if (lo == hi) return 1.0;

  auto log_weight = [&](std::uint64_t x) { return log_choose_ld(r1, x) + log_choose_ld(r2, c1 - x); };

  // The distribution is unimodal; the mode is floor((r1+1)(c1+1)/(n+2)).
  const long double mode_real =
      std::floor((static_cast<long double>(r1) + 1) * (static_cast<long double>(c1) + 1) / (static_cast<long double>(n) + 2));
  const std::uint64_t mode = std::clamp(static_cast<std::uint64_t>(mode_real), lo, hi);
  const long double log_peak = log_weight(mode);
  const long double observed = std::exp(log_weight(t.a) - log_peak);
  if (observed == 0.0L) return 0.0;  // below even extended-precision range
  const long double cutoff = observed * (1.0L + kTieSlack);
  const long double negligible = observed * kNegligible;

  long double all = 0.0L;
  long double qualifying = 0.0L;
  auto visit = [&](std::uint64_t x) {
    const long double w = std::exp(log_weight(x) - log_peak);
    all += w;
    if (w <= cutoff) qualifying += w;
    return w;
  };

  visit(mode);
  for (std::uint64_t x = mode; x > lo;) {
    if (visit(--x) < negligible) break;
  }
  for (std::uint64_t x = mode; x < hi;) {
    if (visit(++x) < negligible) break;
  }

  if (qualifying == all) return 1.0;
  const double p = static_cast<double>(qualifying / all);
  return std::clamp(p, 0.0, 1.0);
}

std::optional<double> try_odds_ratio(const ContingencyTable& t) {
  const long double ad = static_cast<long double>(t.a) * static_cast<long double>(t.d);
  const long double bc = static_cast<long double>(t.b) * static_cast<long double>(t.c);
  if (ad == 0 && bc == 0) return std::nullopt;
  if (bc == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(ad / bc);
}

double odds_ratio(const ContingencyTable& t) {
  auto r = try_odds_ratio(t);
  if (!r) throw UndefinedOddsError();
  return *r;
}

}  // namespace casemark
