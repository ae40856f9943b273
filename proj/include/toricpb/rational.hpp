#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace toricpb {

/// Exact rational scalar. Expression templates are off so values compose
/// cleanly inside Eigen expressions.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/// Parses "p/q", "p", or "-p/q". Throws std::invalid_argument on bad text or a
/// zero denominator.
Rational parseRational(std::string_view text);

/// Canonical text form: "p/q" with q > 0 and gcd(p,q) = 1, or "p" when q = 1.
std::string formatRational(const Rational& value);

}  // namespace toricpb
