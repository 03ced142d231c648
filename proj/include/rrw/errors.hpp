#pragma once

#include <stdexcept>
#include <string>

namespace rrw {

// Bad caller-supplied data: malformed files, unknown labels, infeasible
// arguments.  Maps to CLI exit code 2.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// Structurally invalid model for the requested operation (sink vertex,
// isolated vertex, capacity exhausted).  Also exit code 2.
struct model_error : std::runtime_error {
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration or sampling budget was exceeded.  The message names the
// offending count.  Maps to the "inconclusive" CLI exit code 3.
struct resource_error : std::runtime_error {
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Floating-point evaluation produced something unusable (unnormalizable
// distribution, NaN).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rrw
