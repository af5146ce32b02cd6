#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "ncgkit/numeric.hpp"

namespace ncg {

using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Floor of an exact rational.
BigInt rat_floor(const Rational& q);

/// Reduce into [0, m): q - m*floor(q/m).
Rational rat_mod(const Rational& q, const Rational& m);

inline Rational rat_mod1(const Rational& q) { return rat_mod(q, 1); }

Real rat_to_real(const Rational& q);

/// "p/q" or "p"; throws parameter_error on garbage.
Rational parse_rational(const std::string& s);

std::string rat_str(const Rational& q);

}  // namespace ncg
