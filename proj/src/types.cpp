#include "nsforge/types.hpp"

#include "nsforge/error.hpp"

#include <cctype>

namespace nsforge {

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

BigInt parse_integer(const std::string& s) {
  if (s.empty()) fail(ErrorCode::ParseError, "empty integer");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) fail(ErrorCode::ParseError, "bad integer '" + s + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) fail(ErrorCode::ParseError, "bad integer '" + s + "'");
  BigInt v(s.substr(i));
  return s[0] == '-' ? BigInt(-v) : v;
}

}  // namespace

// Accepts "p", "p/q", and plain decimals such as "-0.125".
Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const BigInt den = parse_integer(s.substr(slash + 1));
    if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + text + "'");
    return Rational(parse_integer(s.substr(0, slash)), den);
  }
  if (const auto dot = s.find('.'); dot != std::string::npos) {
    const bool neg = !s.empty() && s[0] == '-';
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole == "-" || whole == "+" || whole.empty()) whole += "0";
    if (frac.empty()) frac = "0";
    BigInt scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const BigInt w = parse_integer(whole);
    const BigInt f = parse_integer(frac);
    const BigInt mag = abs(w) * scale + f;
    return Rational(neg ? BigInt(-mag) : mag, scale);
  }
  return Rational(parse_integer(s));
}

}  // namespace nsforge
