#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/rational_adaptor.hpp>

namespace sofic {

using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

// "p/q" in lowest terms; integers keep the "/1" suffix.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

// Accepts "p/q" or "p".
Rational parse_rational(const std::string& text);

// Display-only conversion.
double to_double(const Rational& q);

Rational make_rational(long long num, long long den = 1);

}  // namespace sofic
