#include "lsskit/rational.hpp"

#include <cstdlib>

#include "lsskit/errors.hpp"

namespace lsskit {

namespace {

long long parse_int(const std::string& text) {
  if (text.empty()) throw ParseError("empty integer in rational");
  char* end = nullptr;
  long long v = std::strtoll(text.c_str(), &end, 10);
  if (!end || *end != '\0') throw ParseError("malformed integer '" + text + "' in rational");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_int(text));
  long long num = parse_int(text.substr(0, slash));
  long long den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw ParseError("rational denominator must be positive in '" + text + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace lsskit
