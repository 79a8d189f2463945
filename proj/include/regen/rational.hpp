#pragma once

#include <boost/rational.hpp>
#include <string>

namespace regen {

using Rational = boost::rational<long long>;

/// "num/den" in lowest terms; integers render without a denominator.
std::string format_rational(const Rational& r);

}  // namespace regen
