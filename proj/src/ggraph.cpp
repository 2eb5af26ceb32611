#include "metab/ggraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "metab/error.hpp"
#include "metab/zlattice.hpp"

namespace metab {

GGraph::GGraph(std::vector<Exponent> steps) : steps_(std::move(steps)) {
  if (steps_.empty()) throw PreconditionError("a G-graph needs at least one generator step");
  n_ = steps_.front().size();
  for (const auto& a : steps_)
    if (a.size() != n_) throw DimensionMismatch("generator steps differ in dimension");
}

GGraph::GGraph(std::vector<Exponent> steps, std::vector<Edge> edges) : GGraph(std::move(steps)) {
  for (auto& e : edges) {
    if (e.s.size() != n_) throw DimensionMismatch("edge source has the wrong dimension");
    if (e.label < 1 || static_cast<std::size_t>(e.label) > steps_.size())
      throw PreconditionError("edge label " + std::to_string(e.label) + " out of range");
  }
  edges_ = std::move(edges);
  std::sort(edges_.begin(), edges_.end());
}

void GGraph::add_edge(Exponent s, int label) {
  if (s.size() != n_) throw DimensionMismatch("edge source has the wrong dimension");
  if (label < 1 || static_cast<std::size_t>(label) > steps_.size())
    throw PreconditionError("edge label " + std::to_string(label) + " out of range");
  Edge e{std::move(s), label};
  edges_.insert(std::upper_bound(edges_.begin(), edges_.end(), e), std::move(e));
}

Exponent GGraph::destination(const Edge& e) const {
  return e.s + steps_[static_cast<std::size_t>(e.label) - 1];
}

std::vector<Exponent> GGraph::vertices() const {
  std::set<Exponent> vs;
  for (const auto& e : edges_) {
    vs.insert(e.s);
    vs.insert(destination(e));
  }
  return {vs.begin(), vs.end()};
}

namespace {

// Union-find over the vertex list of g; returns the component id per vertex.
std::map<Exponent, std::size_t> components(const GGraph& g) {
  auto vs = g.vertices();
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < vs.size(); ++i) index.emplace(vs[i], i);
  std::vector<std::size_t> parent(vs.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : g.edges()) {
    auto a = find(index.at(e.s)), b = find(index.at(g.destination(e)));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<Exponent, std::size_t> comp;
  for (const auto& [v, i] : index) comp.emplace(v, find(i));
  return comp;
}

}  // namespace

GGraph graph_of_word(const std::vector<Exponent>& steps, const Word& w) {
  if (w.empty()) throw PreconditionError("graph_of_word needs a nonempty word");
  GGraph full(steps);
  Exponent pos = zero_exponent(full.nvars());
  for (int letter : w) {
    if (letter < 1 || static_cast<std::size_t>(letter) > steps.size())
      throw PreconditionError("graph_of_word needs positive letters in range");
    full.add_edge(pos, letter);
    pos = pos + steps[static_cast<std::size_t>(letter) - 1];
  }
  auto comp = components(full);
  std::size_t origin = comp.at(zero_exponent(full.nvars()));
  GGraph out(steps);
  for (const auto& e : full.edges())
    if (comp.at(e.s) == origin) out.add_edge(e.s, e.label);
  return out;
}

GroupElement represented_element(const GGraph& g, const Instance& inst) {
  if (inst.steps != g.steps()) throw DimensionMismatch("graph and instance use different steps");
  LaurentVector y = zero_vector(inst.nvars(), inst.rank());
  Exponent a = zero_exponent(inst.nvars());
  for (const auto& e : g.edges()) {
    std::size_t i = static_cast<std::size_t>(e.label) - 1;
    y = y + shift_vector(inst.ys[i], e.s);
    a = a + inst.steps[i];
  }
  return GroupElement(ModuleElement(std::move(y), inst.module), std::move(a));
}

bool is_symmetric(const GGraph& g) {
  std::map<Exponent, long> balance;
  for (const auto& e : g.edges()) {
    balance[e.s] += 1;
    balance[g.destination(e)] -= 1;
  }
  return std::all_of(balance.begin(), balance.end(), [](const auto& kv) { return kv.second == 0; });
}

bool is_full_image(const GGraph& g) {
  std::vector<bool> seen(g.labels(), false);
  for (const auto& e : g.edges()) seen[static_cast<std::size_t>(e.label) - 1] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool is_zn_generating(const GGraph& g) {
  std::vector<Exponent> used;
  for (const auto& e : g.edges()) used.push_back(g.steps()[static_cast<std::size_t>(e.label) - 1]);
  return generates_full_lattice(used, g.nvars());
}

bool is_connected(const GGraph& g) {
  auto comp = components(g);
  std::set<std::size_t> ids;
  for (const auto& [v, c] : comp) ids.insert(c);
  return ids.size() <= 1;
}

GGraph translate(const GGraph& g, const Exponent& z) {
  if (z.size() != g.nvars()) throw DimensionMismatch("translation has the wrong dimension");
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(Edge{e.s + z, e.label});
  return GGraph(g.steps(), std::move(edges));
}

GGraph graph_union(const std::vector<GGraph>& parts) {
  if (parts.empty()) throw PreconditionError("union of no graphs");
  std::vector<Edge> edges;
  for (const auto& p : parts) {
    if (p.steps() != parts.front().steps())
      throw DimensionMismatch("union of graphs over different generator sets");
    edges.insert(edges.end(), p.edges().begin(), p.edges().end());
  }
  return GGraph(parts.front().steps(), std::move(edges));
}

std::optional<Word> euler_circuit(const GGraph& g, const Exponent& start) {
  auto vs = g.vertices();
  if (!std::binary_search(vs.begin(), vs.end(), start))
    throw PreconditionError("euler_circuit start " + vertex_name(start) + " is not a vertex");
  if (!is_symmetric(g) || !is_connected(g)) return std::nullopt;

  // Out-edges per vertex in canonical order (edges are sorted by source, label).
  std::map<Exponent, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < g.edges().size(); ++i) out[g.edges()[i].s].push_back(i);
  std::map<Exponent, std::size_t> next;

  // Hierholzer: stack of (vertex, edge used to arrive).
  std::vector<std::pair<Exponent, long>> stack{{start, -1}};
  std::vector<int> reversed;
  while (!stack.empty()) {
    const Exponent v = stack.back().first;
    auto& used = next[v];
    auto it = out.find(v);
    if (it != out.end() && used < it->second.size()) {
      std::size_t e = it->second[used++];
      stack.emplace_back(g.destination(g.edges()[e]), static_cast<long>(e));
    } else {
      long e = stack.back().second;
      stack.pop_back();
      if (e >= 0) reversed.push_back(g.edges()[static_cast<std::size_t>(e)].label);
    }
  }
  return Word(reversed.rbegin(), reversed.rend());
}

std::string vertex_name(const Exponent& v) {
  std::string s = "v(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

nlohmann::json to_json(const GGraph& g) {
  auto edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back({{"s", e.s}, {"label", e.label}});
  return {{"steps", g.steps()}, {"edges", edges}};
}

GGraph graph_from_json(const nlohmann::json& j, const std::optional<std::vector<Exponent>>& steps) {
  if (!j.is_object() || !j.contains("edges") || !j.at("edges").is_array())
    throw ParseError("graph needs an \"edges\" array");
  std::vector<Exponent> a;
  if (steps) {
    a = *steps;
  } else {
    if (!j.contains("steps") || !j.at("steps").is_array())
      throw ParseError("graph needs \"steps\" unless an instance is supplied");
    for (const auto& s : j.at("steps")) {
      if (!s.is_array()) throw ParseError("each step must be an integer array");
      Exponent v;
      for (const auto& x : s) {
        if (!x.is_number_integer()) throw ParseError("steps must be integers");
        v.push_back(x.get<long>());
      }
      a.push_back(std::move(v));
    }
  }
  if (a.empty()) throw ParseError("graph needs at least one generator step");
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_object() || !e.contains("s") || !e.contains("label") ||
        !e.at("label").is_number_integer() || !e.at("s").is_array())
      throw ParseError("edges need an integer array \"s\" and an integer \"label\"");
    Exponent s;
    for (const auto& x : e.at("s")) {
      if (!x.is_number_integer()) throw ParseError("edge sources must be integers");
      s.push_back(x.get<long>());
    }
    long label = e.at("label").get<long>();
    if (label < 1 || static_cast<std::size_t>(label) > a.size())
      throw ParseError("edge label " + std::to_string(label) + " out of range");
    if (s.size() != a.front().size()) throw ParseError("edge source has the wrong dimension");
    edges.push_back(Edge{std::move(s), static_cast<int>(label)});
  }
  try {
    return GGraph(std::move(a), std::move(edges));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

std::string to_dot(const GGraph& g) {
  std::string s = "digraph G {\n";
  for (const auto& v : g.vertices()) s += "  \"" + vertex_name(v) + "\";\n";
  for (const auto& e : g.edges())
    s += "  \"" + vertex_name(e.s) + "\" -> \"" + vertex_name(g.destination(e)) +
         "\" [label=\"" + std::to_string(e.label) + "\"];\n";
  return s + "}\n";
}

}  // namespace metab
