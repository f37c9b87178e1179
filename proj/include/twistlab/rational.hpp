#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "twistlab/config.hpp"

namespace twistlab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

inline Rational rat_parse(const std::string& s) {
  if (s.empty()) throw UsageError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw UsageError("rational literal with zero denominator: " + s);
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw UsageError("unparsable rational literal: " + s);
  }
}

inline long long rat_to_ll(const Rational& r) {
  if (denominator(r) != 1) throw ConsistencyError("expected integer, got " + rat_to_string(r));
  return numerator(r).convert_to<long long>();
}

}  // namespace twistlab
