#pragma once

// G-graphs: finite directed multigraphs on Z^n whose edges step by the
// generator steps, d(e) = s(e) + a_label.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "metab/group.hpp"

namespace metab {

struct Edge {
  Exponent s;
  int label;  // 1-based

  auto operator<=>(const Edge&) const = default;
};

class GGraph {
 public:
  explicit GGraph(std::vector<Exponent> steps);
  GGraph(std::vector<Exponent> steps, std::vector<Edge> edges);

  std::size_t nvars() const { return n_; }
  std::size_t labels() const { return steps_.size(); }
  const std::vector<Exponent>& steps() const { return steps_; }
  /// Edges in canonical (sorted) order; parallel edges repeat.
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  void add_edge(Exponent s, int label);
  Exponent destination(const Edge& e) const;
  /// Sorted distinct endpoints of all edges.
  std::vector<Exponent> vertices() const;

  bool operator==(const GGraph& other) const = default;

 private:
  std::size_t n_;
  std::vector<Exponent> steps_;
  std::vector<Edge> edges_;
};

/// Partial-sum trace of a word with positive letters, restricted to the
/// connected component of the origin.
GGraph graph_of_word(const std::vector<Exponent>& steps, const Word& w);

/// (sum over edges of X^{s(e)} y_label, sum of steps).
GroupElement represented_element(const GGraph& g, const Instance& inst);

bool is_symmetric(const GGraph& g);
bool is_full_image(const GGraph& g);
bool is_zn_generating(const GGraph& g);
/// Weak connectivity (equivalent to strong connectivity for symmetric graphs).
bool is_connected(const GGraph& g);

GGraph translate(const GGraph& g, const Exponent& z);
GGraph graph_union(const std::vector<GGraph>& parts);

/// Label sequence of an Euler circuit from `start`, or nothing when the graph
/// is not symmetric and connected. Throws if start is not a vertex.
std::optional<Word> euler_circuit(const GGraph& g, const Exponent& start);

nlohmann::json to_json(const GGraph& g);
/// Reads {"edges": [...], "steps": [...]}; `steps` may be supplied instead.
GGraph graph_from_json(const nlohmann::json& j,
                       const std::optional<std::vector<Exponent>>& steps = std::nullopt);
std::string to_dot(const GGraph& g);

std::string vertex_name(const Exponent& v);

}  // namespace metab
