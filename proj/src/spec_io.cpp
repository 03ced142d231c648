#include "rrw/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "rrw/errors.hpp"

namespace rrw {

namespace {

using nlohmann::json;

rat weight_from(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return rat(v.get<long long>());
    if (v.is_number_unsigned()) return rat(v.get<unsigned long long>());
  } catch (const input_error& e) {
    throw input_error(where + ": " + e.what());
  }
  if (v.is_number_float())
    throw input_error(where + ": write non-integral weights as strings (\"3/2\", \"0.25\"), "
                      "a JSON float is not exact");
  throw input_error(where + ": expected a weight");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw input_error(where + ": missing key \"" + key + "\"");
  return *it;
}

std::string str_field(const json& obj, const char* key, const std::string& where) {
  const json& v = field(obj, key, where);
  if (!v.is_string()) throw input_error(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace

graph_spec parse_graph_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("spec root must be an object");

  graph_spec gs;

  const json& jv = field(doc, "vertices", "spec");
  if (!jv.is_array() || jv.empty()) throw input_error("\"vertices\" must be a non-empty array");
  std::vector<std::string> labels;
  for (const json& v : jv) {
    if (!v.is_string()) throw input_error("\"vertices\" entries must be strings");
    labels.push_back(v.get<std::string>());
  }
  gs.graph.sp = state_space(labels);

  const json& jc = field(doc, "colors", "spec");
  if (!jc.is_array() || jc.empty()) throw input_error("\"colors\" must be a non-empty array");
  for (std::size_t k = 0; k < jc.size(); ++k) {
    std::string where = "colors[" + std::to_string(k) + "]";
    const json& c = jc[k];
    if (!c.is_object()) throw input_error(where + " must be an object");
    std::string name = str_field(c, "name", where);
    for (const auto& existing : gs.graph.color_names)
      if (existing == name) throw input_error(where + ": duplicate color \"" + name + "\"");
    gs.graph.color_names.push_back(name);
    gs.graph.alpha.push_back(weight_from(field(c, "alpha", where), where + ".alpha"));
  }

  const json& je = field(doc, "edges", "spec");
  if (!je.is_array()) throw input_error("\"edges\" must be an array");
  for (std::size_t k = 0; k < je.size(); ++k) {
    std::string where = "edges[" + std::to_string(k) + "]";
    const json& e = je[k];
    if (!e.is_object()) throw input_error(where + " must be an object");
    colored_edge ed;
    ed.from = gs.graph.sp.index_of(str_field(e, "from", where));
    ed.to = gs.graph.sp.index_of(str_field(e, "to", where));
    ed.color = gs.graph.color_index(str_field(e, "color", where));
    ed.beta = weight_from(field(e, "beta", where), where + ".beta");
    gs.graph.edges.push_back(ed);
  }

  gs.graph.finalize();
  gs.x0 = gs.graph.sp.index_of(str_field(doc, "x0", "spec"));

  if (doc.contains("dummies")) {
    const json& jd = doc["dummies"];
    if (!jd.is_array()) throw input_error("\"dummies\" must be an array");
    for (std::size_t k = 0; k < jd.size(); ++k) {
      std::string where = "dummies[" + std::to_string(k) + "]";
      const json& d = jd[k];
      if (!d.is_object()) throw input_error(where + " must be an object");
      dummy_placement pl;
      pl.from = str_field(d, "from", where);
      pl.to = str_field(d, "to", where);
      const json& cnt = field(d, "count", where);
      if (!cnt.is_number_integer() && !cnt.is_number_unsigned())
        throw input_error(where + ": \"count\" must be an integer");
      pl.count = cnt.get<int>();
      const json& ec = field(d, "edge_colors", where);
      pl.in_color = str_field(ec, "in", where + ".edge_colors");
      pl.out_color = str_field(ec, "out", where + ".edge_colors");
      if (d.contains("alphas")) {
        pl.in_alpha = weight_from(field(d["alphas"], "in", where + ".alphas"), where + ".alphas.in");
        pl.out_alpha =
            weight_from(field(d["alphas"], "out", where + ".alphas"), where + ".alphas.out");
      }
      if (d.contains("betas")) {
        pl.in_beta = weight_from(field(d["betas"], "in", where + ".betas"), where + ".betas.in");
        pl.out_beta =
            weight_from(field(d["betas"], "out", where + ".betas"), where + ".betas.out");
      }
      gs.dummies.push_back(std::move(pl));
    }
  }
  return gs;
}

std::string serialize_graph_spec(const graph_spec& gs) {
  json doc;
  doc["vertices"] = json::array();
  for (state i = 0; i < gs.graph.sp.size(); ++i) doc["vertices"].push_back(gs.graph.sp.label(i));
  doc["colors"] = json::array();
  for (std::size_t c = 0; c < gs.graph.color_names.size(); ++c)
    doc["colors"].push_back(
        {{"name", gs.graph.color_names[c]}, {"alpha", format_rational(gs.graph.alpha[c])}});
  doc["edges"] = json::array();
  for (const auto& e : gs.graph.edges)
    doc["edges"].push_back({{"from", gs.graph.sp.label(e.from)},
                            {"to", gs.graph.sp.label(e.to)},
                            {"color", gs.graph.color_names[static_cast<std::size_t>(e.color)]},
                            {"beta", format_rational(e.beta)}});
  doc["x0"] = gs.graph.sp.label(gs.x0);
  if (!gs.dummies.empty()) {
    doc["dummies"] = json::array();
    for (const auto& pl : gs.dummies)
      doc["dummies"].push_back({{"from", pl.from},
                                {"to", pl.to},
                                {"count", pl.count},
                                {"edge_colors", {{"in", pl.in_color}, {"out", pl.out_color}}},
                                {"alphas",
                                 {{"in", format_rational(pl.in_alpha)},
                                  {"out", format_rational(pl.out_alpha)}}},
                                {"betas",
                                 {{"in", format_rational(pl.in_beta)},
                                  {"out", format_rational(pl.out_beta)}}}});
  }
  return doc.dump(2) + "\n";
}

graph_spec load_graph_spec(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw input_error("cannot open spec file " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph_spec(buf.str());
  } catch (const input_error& e) {
    throw input_error(file + ": " + e.what());
  }
}

void save_graph_spec(const graph_spec& gs, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw resource_error("cannot write spec file " + file);
  out << serialize_graph_spec(gs);
}

std::vector<state> load_steps_csv(const std::string& file, const state_space& sp) {
  std::ifstream in(file);
  if (!in) throw input_error("cannot open walk file " + file);
  std::string line;
  if (!std::getline(in, line) || line != "step,state")
    throw input_error(file + ": first line must be the header \"step,state\"");
  std::vector<state> steps;
  int expected = 1;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw input_error(file + ":" + std::to_string(lineno) + ": expected \"step,state\"");
    std::string num = line.substr(0, comma);
    std::string label = line.substr(comma + 1);
    int k;
    try {
      k = std::stoi(num);
    } catch (...) {
      throw input_error(file + ":" + std::to_string(lineno) + ": bad step number \"" + num + "\"");
    }
    if (k != expected)
      throw input_error(file + ":" + std::to_string(lineno) + ": steps must run 1..n, got " +
                        num);
    ++expected;
    steps.push_back(sp.index_of(label));
  }
  return steps;
}

void save_walk_csv(const path& p, const state_space& sp, const std::string& file) {
  std::ofstream out(file);
  if (!out) throw resource_error("cannot write walk file " + file);
  out << "step,state\n";
  for (int t = 1; t <= p.length(); ++t)
    out << t << "," << sp.label(p.steps[static_cast<std::size_t>(t) - 1]) << "\n";
}

std::vector<state> parse_steps(const std::string& csv_labels, const state_space& sp) {
  std::vector<state> steps;
  std::string cur;
  std::stringstream ss(csv_labels);
  while (std::getline(ss, cur, ',')) {
    // trim surrounding blanks
    auto b = cur.find_first_not_of(" \t");
    auto e = cur.find_last_not_of(" \t");
    if (b == std::string::npos) throw input_error("empty label in walk string");
    steps.push_back(sp.index_of(cur.substr(b, e - b + 1)));
  }
  if (steps.empty()) throw input_error("walk string is empty");
  return steps;
}

table_file parse_table_file(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw input_error(std::string("table file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw input_error("table root must be an object");

  const json& js = field(doc, "states", "table");
  if (!js.is_array() || js.empty()) throw input_error("\"states\" must be a non-empty array");
  std::vector<std::string> labels;
  for (const json& v : js) {
    if (!v.is_string()) throw input_error("\"states\" entries must be strings");
    labels.push_back(v.get<std::string>());
  }
  state_space sp(labels);
  const int K = sp.size();

  std::uint64_t seed = 0;
  if (doc.contains("seed")) {
    const json& v = doc["seed"];
    if (!v.is_number_unsigned() && !v.is_number_integer())
      throw input_error("\"seed\" must be an integer");
    seed = v.get<std::uint64_t>();
  }

  std::string base = "uniform";
  if (doc.contains("base")) base = str_field(doc, "base", "table");
  table_scheme::generator gen;
  if (base == "uniform") {
    gen = uniform_generator(K);
  } else if (base == "hashed-history") {
    gen = hashed_history_generator(K, seed);
  } else if (base == "hashed-summary") {
    gen = hashed_summary_generator(K, seed);
  } else {
    throw input_error("unknown base generator \"" + base + "\"");
  }

  sufficiency declared = sufficiency::full_history;
  if (doc.contains("declared")) {
    std::string d = str_field(doc, "declared", "table");
    if (d == "full-history") {
      declared = sufficiency::full_history;
    } else if (d == "last-and-counts") {
      declared = sufficiency::last_and_counts;
    } else if (d == "last-and-row") {
      declared = sufficiency::last_and_row;
    } else {
      throw input_error("unknown declared sufficiency \"" + d + "\"");
    }
  }

  table_file tf;
  tf.x0 = sp.index_of(str_field(doc, "x0", "table"));
  tf.scheme = std::make_unique<table_scheme>(sp, std::move(gen), declared);

  if (doc.contains("entries")) {
    const json& je = doc["entries"];
    if (!je.is_array()) throw input_error("\"entries\" must be an array");
    for (std::size_t k = 0; k < je.size(); ++k) {
      std::string where = "entries[" + std::to_string(k) + "]";
      const json& e = je[k];
      if (!e.is_object()) throw input_error(where + " must be an object");
      std::string after = str_field(e, "after", where);
      path h{tf.x0, {}};
      if (!after.empty()) h.steps = parse_steps(after, sp);
      const json& jd = field(e, "dist", where);
      if (!jd.is_array() || static_cast<int>(jd.size()) != K)
        throw input_error(where + ": \"dist\" must list one weight per state");
      std::vector<rat> dist;
      for (std::size_t j = 0; j < jd.size(); ++j)
        dist.push_back(weight_from(jd[j], where + ".dist[" + std::to_string(j) + "]"));
      tf.scheme->set_entry(h, std::move(dist));
    }
  }
  return tf;
}

table_file load_table_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw input_error("cannot open table file " + file);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_table_file(buf.str());
  } catch (const input_error& e) {
    throw input_error(file + ": " + e.what());
  }
}

errw_params errw_view(const graph_spec& gs) {
  errw_params par;
  par.sp = gs.graph.sp;
  std::map<std::pair<state, state>, rat> undirected;
  for (const auto& e : gs.graph.edges) {
    std::pair<state, state> key = std::minmax(e.from, e.to);
    auto it = undirected.find(key);
    if (it == undirected.end()) {
      undirected.emplace(key, e.beta);
    } else if (it->second != e.beta) {
      throw input_error("edge {" + gs.graph.sp.label(key.first) + ", " +
                        gs.graph.sp.label(key.second) +
                        "} has two different weights; an undirected view needs one");
    }
  }
  for (const auto& [key, w] : undirected) par.edges.emplace_back(key.first, key.second, w);
  return par;
}

hoppe_params hoppe_view(const graph_spec& gs) {
  const colored_graph& g = gs.graph;
  hoppe_params par;
  par.sp = g.sp;
  const int K = g.sp.size();
  par.alpha.assign(static_cast<std::size_t>(K), rat(0));
  par.q.assign(static_cast<std::size_t>(K), std::vector<rat>(static_cast<std::size_t>(K), rat(0)));
  for (state i = 0; i < K; ++i) {
    if (g.out_degree_zero(i))
      throw input_error("vertex " + g.sp.label(i) + " has no outgoing edge");
    par.alpha[static_cast<std::size_t>(i)] = g.alpha_row[static_cast<std::size_t>(i)];
    rat total = 0;
    for (const auto& grp : g.rows[static_cast<std::size_t>(i)]) total += grp.beta_sum;
    for (const auto& grp : g.rows[static_cast<std::size_t>(i)])
      for (std::size_t e : grp.edge_ids)
        par.q[static_cast<std::size_t>(i)][static_cast<std::size_t>(g.edges[e].to)] =
            g.edges[e].beta / total;
  }
  return par;
}

}  // namespace rrw
