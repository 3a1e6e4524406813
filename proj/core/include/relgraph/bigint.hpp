#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace relgraph {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient; zero outside 0 <= k <= n.
BigInt binomial(int n, int k);

/// Binomial coefficient in 64 bits. Valid for n <= 66.
std::uint64_t binomial_u64(int n, int k);

inline std::string to_decimal(const BigInt& value) { return value.str(); }

std::vector<std::string> to_decimal(const std::vector<BigInt>& values);

}  // namespace relgraph
