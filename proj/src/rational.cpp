#include "sofic/rational.hpp"

#include "sofic/error.hpp"

namespace sofic {

std::string to_string(const Integer& z) { return z.str(); }

std::string to_string(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational parse_rational(const std::string& text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("not a rational: '" + text + "'");
  }
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational make_rational(long long num, long long den) {
  return Rational(Integer(num), Integer(den));
}

}  // namespace sofic
