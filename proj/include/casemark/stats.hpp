#pragma once

#include <cstdint>
#include <optional>

namespace casemark {

/// 2x2 table [a, b; c, d] = [inside(cand), inside(others); outside(cand), outside(others)].
struct ContingencyTable {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t d = 0;

  std::uint64_t total() const { return a + b + c + d; }
  bool operator==(const ContingencyTable&) const = default;
};

/// ln(n choose k). Throws DomainError if k > n.
double log_choose(std::uint64_t n, std::uint64_t k);

/// Two-sided Fisher exact test: the probability mass of all tables with the
/// observed margins that are no more likely than the observed one.
/// Throws DomainError for an all-zero table.
double fisher_exact_two_sided(const ContingencyTable& t);

/// Sample odds ratio (a*d)/(b*c); +infinity when only b*c is zero.
/// Throws UndefinedOddsError when both products are zero.
double odds_ratio(const ContingencyTable& t);

/// As odds_ratio, but nullopt instead of throwing on 0/0.
std::optional<double> try_odds_ratio(const ContingencyTable& t);

}  // namespace casemark
