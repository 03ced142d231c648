#pragma once

#include <cstdint>
#include <vector>

#include "rrw/core.hpp"
#include "rrw/rational.hpp"

namespace rrw {

// What part of the history a scheme's predictive actually reads.
enum class sufficiency {
  full_history,     // arbitrary dependence on the whole string
  last_and_counts,  // current state plus the full transition-count table
  last_and_row,     // current state plus its own row of counts
};

const char* sufficiency_name(sufficiency s);

// View handed to a scheme when asked for the next-step distribution.  p and t
// always describe the same history; schemes read only what their declared
// sufficiency allows.
struct history_view {
  const path& p;
  const transition_counts& t;

  state last() const { return t.last(); }
};

// One-step predictive rule.  Distributions are dense over the scheme's state
// space and must sum to one (exactly for the rational form, 1e-12 for the
// float form).
class scheme {
 public:
  virtual ~scheme() = default;

  virtual const state_space& space() const = 0;
  virtual sufficiency declared_sufficiency() const = 0;
  virtual void next_exact(const history_view& h, std::vector<rat>& out) const = 0;
  virtual void next_float(const history_view& h, std::vector<double>& out) const = 0;
};

// Maintains a growing path together with its transition counts; push/pop are
// O(1) so depth-first enumeration over histories stays cheap.
class walker {
 public:
  walker(int n_states, state x0) : p_{x0, {}}, t_(n_states, x0) {}

  void push(state s) {
    t_.add(s);
    p_.steps.push_back(s);
  }

  void pop() {
    if (p_.steps.empty()) throw input_error("walker underflow");
    p_.steps.pop_back();
    t_.remove_last(p_.last());
  }

  history_view view() const { return history_view{p_, t_}; }
  const path& current() const { return p_; }
  const transition_counts& counts() const { return t_; }

 private:
  path p_;
  transition_counts t_;
};

// Product of one-step predictive masses along p; 1 for the empty path,
// short-circuits at the first zero factor.
rat path_probability(const scheme& s, const path& p);

// log of the same product in doubles; -inf when a factor vanishes.
double path_log_probability(const scheme& s, const path& p);

// Next-step distribution after an explicit history; convenience wrapper that
// builds the counts.
std::vector<rat> next_distribution(const scheme& s, const path& history);

// Seeded sampling of n steps from x0.  Identical (scheme, x0, n, seed) give
// identical paths.  Throws numeric_error if a float distribution fails to
// normalize to within 1e-9.
path simulate(const scheme& s, state x0, int n, std::uint64_t seed);

// Compile-time dispatch helper so checkers can be written once over the
// number type.
template <class Num>
void scheme_next(const scheme& s, const history_view& h, std::vector<Num>& out);

template <>
inline void scheme_next<rat>(const scheme& s, const history_view& h, std::vector<rat>& out) {
  s.next_exact(h, out);
}

template <>
inline void scheme_next<double>(const scheme& s, const history_view& h, std::vector<double>& out) {
  s.next_float(h, out);
}

}  // namespace rrw
