#pragma once

#include <boost/rational.hpp>

#include <string>

namespace lsskit {

/// Exact rational arithmetic. Every epsilon comparison in the library is a
/// strict exact comparison; nothing is ever rounded through floating point.
using Rational = boost::rational<long long>;

/// Parses "p/q" or "p". Throws lsskit::ParseError on malformed input.
Rational parse_rational(const std::string& text);

/// Renders as "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& r);

}  // namespace lsskit
