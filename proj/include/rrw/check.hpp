#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "rrw/schemes.hpp"

namespace rrw {

enum class verdict { holds, violated, inconclusive_budget };

const char* verdict_name(verdict v);

// One concrete violation.  The structured fields let tests re-evaluate the
// reported probabilities; text is the rendered story for reports.
struct witness {
  std::string kind;  // class-pair | one-step | pattern | k-step | linear | color-product
  path a, b;
  std::vector<state> ext_a, ext_b;
  std::vector<std::uint32_t> row;  // linear checker: the probed count row
  rat lhs, rhs;
  std::string text;
};

struct check_coverage {
  std::uint64_t histories = 0;
  std::uint64_t classes = 0;
  std::uint64_t pairs = 0;
  std::uint64_t patterns = 0;
  std::uint64_t evaluations = 0;
};

struct check_report {
  verdict v = verdict::holds;
  std::vector<witness> witnesses;
  check_coverage cov;
  bool numeric = false;  // float evaluation with 1e-9 relative comparisons
  int max_len = 0;
  std::string note;

  bool holds() const { return v == verdict::holds; }
};

struct check_options {
  int max_len = 5;
  std::uint64_t budget = kDefaultEnumBudget;
  b_budget patterns;
  int witness_cap = 64;
  bool numeric = false;
  int probe_max = 5;  // linear checker grid bound
  int k_steps = 3;    // joint horizon for the k-step sufficiency check
};

// Definition-level oracle: enumerate every string up to max_len, group into
// equivalence classes, demand constant probability within each class.
check_report brute_force_markov_exchangeable(const scheme& s, state x0,
                                             const check_options& opt = {});

// Necessary condition (a): equivalent positive-probability histories share
// their one-step predictive distribution.
check_report check_condition_a(const scheme& s, state x0, const check_options& opt = {});

// Necessary-and-sufficient complement (b): excursion-swap pattern pairs get
// equal conditional probability after every positive-probability history.
// Precondition: condition (a) holds (throws input_error otherwise).  The
// report notes the bi/bii/biii split.
check_report check_condition_b(const scheme& s, state x0, const check_options& opt = {});

// Equivalent positive-probability histories share the whole k-step joint
// predictive, not just one step.
check_report check_one_step_vs_full_sufficiency(const scheme& s, state x0,
                                                const check_options& opt = {});

// Row-predictive probe: pi(u | T_i, i).
using linear_predictive =
    std::function<rat(state u, const std::vector<std::uint32_t>& row, state i)>;

// Order-independence of two successive draws from one row:
//   pi(u|T) pi(v|T+e_u) == pi(v|T) pi(u|T+e_v)
// over the grid of rows with entries <= probe_max.
check_report check_linear_condition(const linear_predictive& pi, int n_states,
                                    const check_options& opt = {});

// Colored-walk exchangeability condition: along each excursion-swap pattern
// pair the products of (alpha_{C(base)} + color counts so far) must agree.
check_report check_colored_condition(const colored_graph& g, state x0,
                                     const check_options& opt = {});

}  // namespace rrw
