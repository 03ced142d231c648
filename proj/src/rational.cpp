#include "rrw/rational.hpp"

#include <cctype>
#include <cstddef>

namespace rrw {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

rat parse_rational(const std::string& text) {
  std::string s = text;
  // strip surrounding blanks
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) throw input_error("empty rational literal");
  s = s.substr(b, e - b + 1);

  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = (s[0] == '-');
    s = s.substr(1);
  }
  if (s.empty()) throw input_error("malformed rational literal '" + text + "'");

  rat value;
  std::size_t slash = s.find('/');
  std::size_t dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw input_error("malformed rational literal '" + text + "'");
    bigint d(den);
    if (d == 0) throw input_error("zero denominator in '" + text + "'");
    value = rat(bigint(num), d);
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw input_error("malformed rational literal '" + text + "'");
    bigint scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    bigint num = bigint(whole) * scale + (frac.empty() ? bigint(0) : bigint(frac));
    value = rat(num, scale);
  } else {
    if (!all_digits(s)) throw input_error("malformed rational literal '" + text + "'");
    value = rat(bigint(s));
  }
  if (neg) value = -value;
  return value;
}

std::string format_rational(const rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

}  // namespace rrw
