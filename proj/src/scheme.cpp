#include "rrw/scheme.hpp"

#include <cmath>
#include <limits>

#include "rrw/rng.hpp"

namespace rrw {

const char* sufficiency_name(sufficiency s) {
  switch (s) {
    case sufficiency::full_history: return "full-history";
    case sufficiency::last_and_counts: return "last-and-counts";
    case sufficiency::last_and_row: return "last-and-row";
  }
  return "?";
}

rat path_probability(const scheme& s, const path& p) {
  walker w(s.space().size(), p.x0);
  std::vector<rat> dist;
  rat prob = 1;
  for (state next : p.steps) {
    s.next_exact(w.view(), dist);
    const rat& f = dist[static_cast<std::size_t>(next)];
    if (f == 0) return rat(0);
    prob *= f;
    w.push(next);
  }
  return prob;
}

double path_log_probability(const scheme& s, const path& p) {
  walker w(s.space().size(), p.x0);
  std::vector<double> dist;
  double logp = 0.0;
  for (state next : p.steps) {
    s.next_float(w.view(), dist);
    double f = dist[static_cast<std::size_t>(next)];
    if (!(f > 0.0)) return -std::numeric_limits<double>::infinity();
    logp += std::log(f);
    w.push(next);
  }
  return logp;
}

std::vector<rat> next_distribution(const scheme& s, const path& history) {
  walker w(s.space().size(), history.x0);
  for (state st : history.steps) w.push(st);
  std::vector<rat> dist;
  s.next_exact(w.view(), dist);
  return dist;
}

path simulate(const scheme& s, state x0, int n, std::uint64_t seed) {
  if (x0 < 0 || x0 >= s.space().size()) throw input_error("start state out of range");
  if (n < 0) throw input_error("negative step count");
  rng64 rng(seed);
  walker w(s.space().size(), x0);
  std::vector<double> dist;
  for (int t = 0; t < n; ++t) {
    s.next_float(w.view(), dist);
    double total = 0.0;
    for (double v : dist) {
      if (!(v >= 0.0)) throw numeric_error("negative predictive mass during simulation");
      total += v;
    }
    if (std::abs(total - 1.0) > 1e-9)
      throw numeric_error("predictive distribution does not normalize (sum " +
                          std::to_string(total) + ")");
    double u = rng.next_unit() * total;
    double acc = 0.0;
    state pick = static_cast<state>(dist.size()) - 1;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      acc += dist[k];
      if (u < acc) {
        pick = static_cast<state>(k);
        break;
      }
    }
    w.push(pick);
  }
  return w.current();
}

}  // namespace rrw
