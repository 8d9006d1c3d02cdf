#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

namespace casemark::testing {

using boost::multiprecision::cpp_int;
using Float50 = boost::multiprecision::cpp_bin_float_50;

inline cpp_int binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  cpp_int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Two-sided p-values for every table with row sums (r1, r2) and first column sum c1,
/// indexed by a - max(0, c1 - r2). Hypergeometric weights are exact integers, so
/// ties are exact and the only rounding is the final division.
inline std::vector<double> fisher_oracle_column(std::uint64_t r1, std::uint64_t r2, std::uint64_t c1) {
  const std::uint64_t lo = c1 > r2 ? c1 - r2 : 0;
  const std::uint64_t hi = c1 < r1 ? c1 : r1;
  std::vector<cpp_int> w;
  cpp_int total = 0;
  for (std::uint64_t a = lo; a <= hi; ++a) {
    w.push_back(binomial(r1, a) * binomial(r2, c1 - a));
    total += w.back();
  }
  std::vector<double> p;
  for (const auto& observed : w) {
    cpp_int mass = 0;
    for (const auto& x : w)
      if (x <= observed) mass += x;
    p.push_back(static_cast<double>(Float50(mass) / Float50(total)));
  }
  return p;
}

inline double fisher_oracle(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const std::uint64_t c1 = a + c;
  const std::uint64_t lo = c1 > c + d ? c1 - (c + d) : 0;
  return fisher_oracle_column(a + b, c + d, c1)[a - lo];
}

}  // namespace casemark::testing
