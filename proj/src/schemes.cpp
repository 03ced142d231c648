#include "rrw/schemes.hpp"

#include <algorithm>
#include <set>

namespace rrw {

namespace {

template <class Num>
Num from_rat(const rat& q) {
  if constexpr (std::is_same_v<Num, rat>) {
    return q;
  } else {
    return to_double(q);
  }
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t hash_path(std::uint64_t seed, const path& p) {
  std::uint64_t h = mix64(seed ^ 0x632BE59BD9B4E019ull);
  h = mix64(h ^ static_cast<std::uint64_t>(p.x0 + 1));
  for (state s : p.steps) h = mix64(h ^ static_cast<std::uint64_t>(s + 1));
  return h;
}

std::vector<rat> weights_to_dist(const std::vector<std::uint64_t>& w) {
  std::uint64_t total = 0;
  for (auto x : w) total += x;
  std::vector<rat> out;
  out.reserve(w.size());
  for (auto x : w) out.push_back(rat(bigint(x), bigint(total)));
  return out;
}

}  // namespace

// ----------------------------------------------------------------- ERRW ----

errw_scheme::errw_scheme(errw_params par) : par_(std::move(par)) {
  const int n = par_.sp.size();
  adj_.resize(static_cast<std::size_t>(n));
  alpha_dot_.assign(static_cast<std::size_t>(n), rat(0));
  std::set<std::pair<state, state>> seen;
  for (std::size_t e = 0; e < par_.edges.size(); ++e) {
    auto& [a, b, w] = par_.edges[e];
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n) throw input_error("edge endpoint out of range");
    if (!(w > 0)) throw input_error("edge weights must be positive");
    if (!seen.emplace(a, b).second) throw input_error("duplicate undirected edge");
    adj_[static_cast<std::size_t>(a)].emplace_back(b, e);
    if (a != b) adj_[static_cast<std::size_t>(b)].emplace_back(a, e);
    alpha_dot_[static_cast<std::size_t>(a)] += w;
    if (a != b) alpha_dot_[static_cast<std::size_t>(b)] += w;
  }
  for (auto& row : adj_) std::sort(row.begin(), row.end());
  alpha_f_.reserve(par_.edges.size());
  for (const auto& [a, b, w] : par_.edges) alpha_f_.push_back(to_double(w));
  alpha_dot_f_.reserve(alpha_dot_.size());
  for (const rat& w : alpha_dot_) alpha_dot_f_.push_back(to_double(w));
}

template <class Num>
void errw_scheme::predict_impl(const transition_counts& t, std::vector<Num>& out) const {
  const state i = t.last();
  const auto& nbrs = adj_[static_cast<std::size_t>(i)];
  if (nbrs.empty())
    throw model_error("isolated vertex '" + par_.sp.label(i) + "' has no predictive");
  out.assign(static_cast<std::size_t>(par_.sp.size()), Num(0));

  Num denom;
  if constexpr (std::is_same_v<Num, rat>) {
    denom = alpha_dot_[static_cast<std::size_t>(i)];
  } else {
    denom = alpha_dot_f_[static_cast<std::size_t>(i)];
  }
  denom += static_cast<Num>(t.row_total(i)) + static_cast<Num>(t.col_total(i));

  for (const auto& [j, e] : nbrs) {
    Num num;
    if constexpr (std::is_same_v<Num, rat>) {
      num = std::get<2>(par_.edges[e]);
    } else {
      num = alpha_f_[e];
    }
    num += static_cast<Num>(t.at(i, j)) + static_cast<Num>(t.at(j, i));
    out[static_cast<std::size_t>(j)] = num / denom;
  }
}

void errw_scheme::predict(const transition_counts& t, std::vector<rat>& out) const {
  predict_impl(t, out);
}
void errw_scheme::predict(const transition_counts& t, std::vector<double>& out) const {
  predict_impl(t, out);
}
void errw_scheme::next_exact(const history_view& h, std::vector<rat>& out) const {
  predict_impl(h.t, out);
}
void errw_scheme::next_float(const history_view& h, std::vector<double>& out) const {
  predict_impl(h.t, out);
}

std::vector<rat> errw_predictive(const errw_params& par, const transition_counts& t, state i) {
  if (i != t.last()) throw input_error("predictive asked away from the current state");
  errw_scheme s(par);
  std::vector<rat> out;
  s.predict(t, out);
  return out;
}

// ---------------------------------------------------------------- Hoppe ----

hoppe_scheme::hoppe_scheme(hoppe_params par) : par_(std::move(par)) {
  const int n = par_.sp.size();
  if (static_cast<int>(par_.alpha.size()) != n || static_cast<int>(par_.q.size()) != n)
    throw input_error("per-state parameter tables must match the state count");
  aq_.resize(static_cast<std::size_t>(n));
  aq_f_.resize(static_cast<std::size_t>(n));
  alpha_f_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (!(par_.alpha[static_cast<std::size_t>(i)] > 0))
      throw input_error("alpha must be positive");
    const auto& qi = par_.q[static_cast<std::size_t>(i)];
    if (static_cast<int>(qi.size()) != n) throw input_error("base distribution has wrong size");
    rat sum = 0;
    for (const rat& v : qi) {
      if (v < 0) throw input_error("base distribution mass must be non-negative");
      sum += v;
    }
    if (sum != 1) throw input_error("base distribution must sum to one");
    alpha_f_[static_cast<std::size_t>(i)] = to_double(par_.alpha[static_cast<std::size_t>(i)]);
    auto& row = aq_[static_cast<std::size_t>(i)];
    auto& rowf = aq_f_[static_cast<std::size_t>(i)];
    row.resize(static_cast<std::size_t>(n));
    rowf.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      row[static_cast<std::size_t>(j)] =
          par_.alpha[static_cast<std::size_t>(i)] * qi[static_cast<std::size_t>(j)];
      rowf[static_cast<std::size_t>(j)] = to_double(row[static_cast<std::size_t>(j)]);
    }
  }
}

template <class Num>
void hoppe_scheme::predict_impl(const transition_counts& t, std::vector<Num>& out) const {
  const state i = t.last();
  const int n = par_.sp.size();
  out.assign(static_cast<std::size_t>(n), Num(0));
  Num denom;
  if constexpr (std::is_same_v<Num, rat>) {
    denom = par_.alpha[static_cast<std::size_t>(i)];
  } else {
    denom = alpha_f_[static_cast<std::size_t>(i)];
  }
  denom += static_cast<Num>(t.row_total(i));
  for (int j = 0; j < n; ++j) {
    Num num;
    if constexpr (std::is_same_v<Num, rat>) {
      num = aq_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    } else {
      num = aq_f_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    num += static_cast<Num>(t.at(i, j));
    out[static_cast<std::size_t>(j)] = num / denom;
  }
}

void hoppe_scheme::predict(const transition_counts& t, std::vector<rat>& out) const {
  predict_impl(t, out);
}
void hoppe_scheme::predict(const transition_counts& t, std::vector<double>& out) const {
  predict_impl(t, out);
}
void hoppe_scheme::next_exact(const history_view& h, std::vector<rat>& out) const {
  predict_impl(h.t, out);
}
void hoppe_scheme::next_float(const history_view& h, std::vector<double>& out) const {
  predict_impl(h.t, out);
}

std::vector<rat> hoppe_predictive(const hoppe_params& par, const transition_counts& t, state i) {
  if (i != t.last()) throw input_error("predictive asked away from the current state");
  hoppe_scheme s(par);
  std::vector<rat> out;
  s.predict(t, out);
  return out;
}

// -------------------------------------------------------------- colored ----

void colored_graph::finalize() {
  const int n = sp.size();
  const int nc = static_cast<int>(color_names.size());
  if (static_cast<int>(alpha.size()) != nc)
    throw input_error("one alpha per color is required");
  for (const rat& a : alpha)
    if (!(a > 0)) throw input_error("color weights must be positive");
  {
    std::set<std::string> names(color_names.begin(), color_names.end());
    if (static_cast<int>(names.size()) != nc) throw input_error("duplicate color name");
  }

  rows.assign(static_cast<std::size_t>(n), {});
  e_c.assign(static_cast<std::size_t>(nc), {});
  c_of.assign(static_cast<std::size_t>(n), {});
  alpha_row.assign(static_cast<std::size_t>(n), rat(0));

  std::set<std::pair<state, state>> seen;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const colored_edge& ed = edges[e];
    if (ed.from < 0 || ed.from >= n || ed.to < 0 || ed.to >= n)
      throw input_error("edge endpoint out of range");
    if (ed.color < 0 || ed.color >= nc)
      throw input_error("edge refers to an undeclared color");
    if (!(ed.beta > 0)) throw input_error("edge weights must be positive");
    if (!seen.emplace(ed.from, ed.to).second)
      throw input_error("duplicate directed edge " + sp.label(ed.from) + " -> " + sp.label(ed.to));
    e_c[static_cast<std::size_t>(ed.color)].push_back(e);
  }

  for (int i = 0; i < n; ++i) {
    std::map<int, row_group> groups;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].from != i) continue;
      row_group& g = groups[edges[e].color];
      g.color = edges[e].color;
      g.edge_ids.push_back(e);
      g.beta_sum += edges[e].beta;
    }
    for (auto& [c, g] : groups) {
      rows[static_cast<std::size_t>(i)].push_back(std::move(g));
      c_of[static_cast<std::size_t>(i)].push_back(c);
      alpha_row[static_cast<std::size_t>(i)] += alpha[static_cast<std::size_t>(c)];
    }
  }
}

int colored_graph::color_index(const std::string& name) const {
  for (std::size_t c = 0; c < color_names.size(); ++c)
    if (color_names[c] == name) return static_cast<int>(c);
  throw input_error("unknown color '" + name + "'");
}

std::size_t colored_graph::edge_between(state i, state j) const {
  for (const auto& g : rows[static_cast<std::size_t>(i)])
    for (std::size_t e : g.edge_ids)
      if (edges[e].to == j) return e;
  return npos;
}

colored_scheme::colored_scheme(colored_graph g) : g_(std::move(g)) {
  if (g_.rows.empty()) g_.finalize();
  alpha_f_.reserve(g_.alpha.size());
  for (const rat& a : g_.alpha) alpha_f_.push_back(to_double(a));
  alpha_row_f_.reserve(g_.alpha_row.size());
  for (const rat& a : g_.alpha_row) alpha_row_f_.push_back(to_double(a));
  beta_f_.reserve(g_.edges.size());
  for (const auto& e : g_.edges) beta_f_.push_back(to_double(e.beta));
  beta_sum_f_.resize(g_.rows.size());
  for (std::size_t i = 0; i < g_.rows.size(); ++i)
    for (const auto& grp : g_.rows[i]) beta_sum_f_[i].push_back(to_double(grp.beta_sum));
}

template <class Num>
void colored_scheme::predict_impl(const transition_counts& t, std::vector<Num>& out) const {
  const state i = t.last();
  const auto& groups = g_.rows[static_cast<std::size_t>(i)];
  if (groups.empty())
    throw model_error("sink vertex '" + g_.sp.label(i) + "' has no predictive");
  out.assign(static_cast<std::size_t>(g_.sp.size()), Num(0));

  // color totals restricted to the colors leaving i
  Num color_denom;
  if constexpr (std::is_same_v<Num, rat>) {
    color_denom = g_.alpha_row[static_cast<std::size_t>(i)];
  } else {
    color_denom = alpha_row_f_[static_cast<std::size_t>(i)];
  }
  std::vector<Num> color_count(groups.size(), Num(0));
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    std::uint64_t cnt = 0;
    for (std::size_t e : g_.e_c[static_cast<std::size_t>(groups[gi].color)])
      cnt += t.at(g_.edges[e].from, g_.edges[e].to);
    color_count[gi] = static_cast<Num>(cnt);
    color_denom += color_count[gi];
  }

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& grp = groups[gi];
    Num cfac;
    if constexpr (std::is_same_v<Num, rat>) {
      cfac = g_.alpha[static_cast<std::size_t>(grp.color)];
    } else {
      cfac = alpha_f_[static_cast<std::size_t>(grp.color)];
    }
    cfac += color_count[gi];
    cfac /= color_denom;

    Num row_denom;
    if constexpr (std::is_same_v<Num, rat>) {
      row_denom = grp.beta_sum;
    } else {
      row_denom = beta_sum_f_[static_cast<std::size_t>(i)][gi];
    }
    std::uint64_t row_cnt = 0;
    for (std::size_t e : grp.edge_ids) row_cnt += t.at(i, g_.edges[e].to);
    row_denom += static_cast<Num>(row_cnt);

    for (std::size_t e : grp.edge_ids) {
      Num num;
      if constexpr (std::is_same_v<Num, rat>) {
        num = g_.edges[e].beta;
      } else {
        num = beta_f_[e];
      }
      num += static_cast<Num>(t.at(i, g_.edges[e].to));
      out[static_cast<std::size_t>(g_.edges[e].to)] = cfac * num / row_denom;
    }
  }
}

void colored_scheme::predict(const transition_counts& t, std::vector<rat>& out) const {
  predict_impl(t, out);
}
void colored_scheme::predict(const transition_counts& t, std::vector<double>& out) const {
  predict_impl(t, out);
}
void colored_scheme::next_exact(const history_view& h, std::vector<rat>& out) const {
  predict_impl(h.t, out);
}
void colored_scheme::next_float(const history_view& h, std::vector<double>& out) const {
  predict_impl(h.t, out);
}

std::vector<rat> colored_predictive(const colored_graph& g, const transition_counts& t, state i) {
  if (i != t.last()) throw input_error("predictive asked away from the current state");
  colored_scheme s(g);
  std::vector<rat> out;
  s.predict(t, out);
  return out;
}

bool is_partitioned_colors(const colored_graph& g) { return analyze_partition(g).partitioned; }

color_partition analyze_partition(const colored_graph& g) {
  color_partition part;
  part.partitioned = true;
  const int n = g.sp.size();
  part.group_of_state.assign(static_cast<std::size_t>(n), -1);

  std::map<std::vector<int>, int> group_of;
  for (int i = 0; i < n; ++i) {
    const auto& ci = g.c_of[static_cast<std::size_t>(i)];
    if (ci.empty()) continue;
    auto it = group_of.find(ci);
    if (it == group_of.end()) {
      it = group_of.emplace(ci, static_cast<int>(part.group_colors.size())).first;
      part.group_colors.push_back(ci);
      part.group_states.push_back({});
    }
    part.group_of_state[static_cast<std::size_t>(i)] = it->second;
    part.group_states[static_cast<std::size_t>(it->second)].push_back(i);
  }

  // distinct groups must not share a color
  std::map<int, int> color_owner;
  for (std::size_t gi = 0; gi < part.group_colors.size(); ++gi)
    for (int c : part.group_colors[gi]) {
      auto [it, fresh] = color_owner.emplace(c, static_cast<int>(gi));
      if (!fresh && it->second != static_cast<int>(gi)) part.partitioned = false;
    }
  return part;
}

// ---------------------------------------------------------------- table ----

table_scheme::table_scheme(state_space sp, generator gen, sufficiency declared)
    : sp_(std::move(sp)), gen_(std::move(gen)), declared_(declared) {}

void table_scheme::set_entry(const path& h, std::vector<rat> dist) {
  if (static_cast<int>(dist.size()) != sp_.size())
    throw input_error("table row has the wrong length");
  rat sum = 0;
  for (const rat& v : dist) {
    if (v < 0) throw input_error("table row has negative mass");
    sum += v;
  }
  if (sum != 1) throw input_error("table row must sum to one");
  cache_[{h.x0, h.steps}] = std::move(dist);
}

const std::vector<rat>& table_scheme::lookup(const path& h) const {
  auto key = std::make_pair(h.x0, h.steps);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  std::vector<rat> dist = gen_(h);
  if (static_cast<int>(dist.size()) != sp_.size())
    throw input_error("generated row has the wrong length");
  rat sum = 0;
  for (const rat& v : dist) {
    if (v < 0) throw input_error("generated row has negative mass");
    sum += v;
  }
  if (sum != 1) throw input_error("generated row must sum to one");
  return cache_.emplace(std::move(key), std::move(dist)).first->second;
}

void table_scheme::next_exact(const history_view& h, std::vector<rat>& out) const {
  out = lookup(h.p);
}

void table_scheme::next_float(const history_view& h, std::vector<double>& out) const {
  const auto& d = lookup(h.p);
  out.resize(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) out[k] = to_double(d[k]);
}

table_scheme::generator uniform_generator(int n_states) {
  return [n_states](const path&) {
    return std::vector<rat>(static_cast<std::size_t>(n_states),
                            rat(1, static_cast<unsigned>(n_states)));
  };
}

table_scheme::generator hashed_history_generator(int n_states, std::uint64_t seed) {
  return [n_states, seed](const path& p) {
    std::uint64_t h = hash_path(seed, p);
    std::vector<std::uint64_t> w(static_cast<std::size_t>(n_states));
    for (int s = 0; s < n_states; ++s) {
      h = mix64(h + 0x9E3779B97F4A7C15ull);
      w[static_cast<std::size_t>(s)] = 1 + (h & 7);
    }
    return weights_to_dist(w);
  };
}

table_scheme::generator hashed_summary_generator(int n_states, std::uint64_t seed) {
  return [n_states, seed](const path& p) {
    transition_counts t = count_transitions(n_states, p);
    std::uint64_t h = mix64(seed ^ 0xA24BAED4963EE407ull);
    h = mix64(h ^ static_cast<std::uint64_t>(t.last() + 1));
    for (std::uint32_t c : t.table()) h = mix64(h ^ (c + 0x165667B19E3779F9ull));
    std::vector<std::uint64_t> w(static_cast<std::size_t>(n_states));
    for (int s = 0; s < n_states; ++s) {
      h = mix64(h + 0x9E3779B97F4A7C15ull);
      w[static_cast<std::size_t>(s)] = 1 + (h & 7);
    }
    return weights_to_dist(w);
  };
}

// ------------------------------------------------------- growing uniform ----

growing_uniform_scheme::growing_uniform_scheme(int capacity)
    : sp_(state_space::integers(capacity)) {
  if (capacity < 2) throw input_error("capacity must be at least 2");
}

void growing_uniform_scheme::next_exact(const history_view& h, std::vector<rat>& out) const {
  const std::uint64_t n = h.t.total() + 1;  // index of the step being predicted
  if (n + 1 > static_cast<std::uint64_t>(sp_.size()))
    throw model_error("label capacity " + std::to_string(sp_.size()) +
                      " exhausted at step " + std::to_string(n));
  out.assign(static_cast<std::size_t>(sp_.size()), rat(0));
  for (std::uint64_t j = 1; j <= n; ++j)
    out[static_cast<std::size_t>(j)] = rat(1, static_cast<unsigned>(n));
}

void growing_uniform_scheme::next_float(const history_view& h, std::vector<double>& out) const {
  const std::uint64_t n = h.t.total() + 1;
  if (n + 1 > static_cast<std::uint64_t>(sp_.size()))
    throw model_error("label capacity " + std::to_string(sp_.size()) +
                      " exhausted at step " + std::to_string(n));
  out.assign(static_cast<std::size_t>(sp_.size()), 0.0);
  for (std::uint64_t j = 1; j <= n; ++j)
    out[static_cast<std::size_t>(j)] = 1.0 / static_cast<double>(n);
}

// ----------------------------------------------------------- reductions ----

colored_graph hoppe_as_colored(const hoppe_params& par, const std::string& color_name) {
  colored_graph g;
  g.sp = par.sp;
  g.color_names = {color_name};
  rat alpha_sum = 0;  // any positive value works; pick the total so the walk is literal
  for (const rat& a : par.alpha) alpha_sum += a;
  g.alpha = {alpha_sum};
  const int n = par.sp.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const rat& qij = par.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (qij > 0)
        g.edges.push_back(colored_edge{i, j, 0, par.alpha[static_cast<std::size_t>(i)] * qij});
    }
  g.finalize();
  return g;
}

errw_embedding embed_errw(const errw_params& par) {
  errw_embedding emb;
  const int n = par.sp.size();
  emb.loop_aux.assign(static_cast<std::size_t>(n), -1);

  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(par.sp.label(i));
  int next_vertex = n;
  for (const auto& [a, b, w] : par.edges)
    if (a == b) {
      emb.loop_aux[static_cast<std::size_t>(a)] = next_vertex++;
      labels.push_back(par.sp.label(a) + "'");
    }

  colored_graph g;
  g.sp = state_space(labels);
  for (std::size_t e = 0; e < par.edges.size(); ++e) {
    const auto& [a, b, w] = par.edges[e];
    g.color_names.push_back("e" + std::to_string(e));
    g.alpha.push_back(w);
    int c = static_cast<int>(e);
    if (a == b) {
      state aux = emb.loop_aux[static_cast<std::size_t>(a)];
      g.edges.push_back(colored_edge{a, aux, c, rat(1)});
      g.edges.push_back(colored_edge{aux, a, c, rat(1)});
    } else {
      g.edges.push_back(colored_edge{a, b, c, rat(1)});
      g.edges.push_back(colored_edge{b, a, c, rat(1)});
    }
  }
  g.finalize();
  emb.graph = std::move(g);
  return emb;
}

path errw_embedding::embed(const path& base) const {
  path out{base.x0, {}};
  for (int t = 1; t <= base.length(); ++t) {
    state prev = base.at(t - 1), cur = base.at(t);
    if (prev == cur) {
      state aux = loop_aux[static_cast<std::size_t>(prev)];
      if (aux < 0) throw input_error("loop traversal at a vertex without a loop edge");
      out.steps.push_back(aux);
    }
    out.steps.push_back(cur);
  }
  return out;
}

}  // namespace rrw
