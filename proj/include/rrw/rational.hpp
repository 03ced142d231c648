#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "rrw/errors.hpp"

namespace rrw {

using bigint = boost::multiprecision::cpp_int;
using rat = boost::multiprecision::cpp_rational;

// Parses "3/2", "-7", "0.25" (decimals are read digit-exactly, so "0.1" is
// 1/10) into a rational.  Throws input_error on malformed text or a zero
// denominator.
rat parse_rational(const std::string& text);

// Canonical rendering: integers without a denominator, otherwise "p/q".
std::string format_rational(const rat& q);

inline double to_double(const rat& q) { return q.template convert_to<double>(); }

}  // namespace rrw
