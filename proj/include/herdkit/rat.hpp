#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <stdexcept>
#include <string>

namespace herdkit {

// Exact rational scalar with arbitrary-precision numerator and denominator.
// The backing type keeps every value in lowest terms with a positive
// denominator, which is the canonical form assumed throughout.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string rat_to_string(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

// Parses "p" or "p/q" in decimal, optional leading '-'. Throws
// std::invalid_argument on junk or a zero denominator. Non-canonical input
// ("-3/6", "2/-4") is accepted and normalized.
inline Rat rat_from_string(const std::string& s) {
  auto is_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  const std::size_t slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den))
    throw std::invalid_argument("not a rational: '" + s + "'");
  Int p(num), q(den);
  if (q == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return Rat(p, q);
}

}  // namespace herdkit
