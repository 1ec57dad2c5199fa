#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "scovist/errors.hpp"

namespace scovist {

enum class NodeKind {
  Theme,
  Caption,
  CommonsenseBefore,
  CommonsenseAfter,
  DummyEnd,
};

// The four ATOMIC social-interaction relations used for commonsense nodes.
// xNeed/xIntent describe preconditions and intentions (BEFORE an event),
// xEffect/xWant describe effects and post-desires (AFTER an event).
enum class Relation { xNeed, xIntent, xEffect, xWant };

inline const char* to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::Theme: return "theme";
    case NodeKind::Caption: return "caption";
    case NodeKind::CommonsenseBefore: return "commonsense_before";
    case NodeKind::CommonsenseAfter: return "commonsense_after";
    case NodeKind::DummyEnd: return "dummy_end";
  }
  return "unknown";
}

inline const char* to_string(Relation relation) {
  switch (relation) {
    case Relation::xNeed: return "xNeed";
    case Relation::xIntent: return "xIntent";
    case Relation::xEffect: return "xEffect";
    case Relation::xWant: return "xWant";
  }
  return "unknown";
}

inline std::optional<NodeKind> node_kind_from_string(const std::string& s) {
  if (s == "theme") return NodeKind::Theme;
  if (s == "caption") return NodeKind::Caption;
  if (s == "commonsense_before") return NodeKind::CommonsenseBefore;
  if (s == "commonsense_after") return NodeKind::CommonsenseAfter;
  if (s == "dummy_end") return NodeKind::DummyEnd;
  return std::nullopt;
}

inline std::optional<Relation> relation_from_string(const std::string& s) {
  if (s == "xNeed") return Relation::xNeed;
  if (s == "xIntent") return Relation::xIntent;
  if (s == "xEffect") return Relation::xEffect;
  if (s == "xWant") return Relation::xWant;
  return std::nullopt;
}

inline bool is_commonsense(NodeKind kind) {
  return kind == NodeKind::CommonsenseBefore || kind == NodeKind::CommonsenseAfter;
}

using Embedding = std::vector<double>;

// One plot point of the story graph: a theme (detected concepts), a caption,
// a commonsense inference, or the artificial end node.
struct StoryNode {
  std::string id;
  NodeKind kind = NodeKind::Caption;
  std::string text;
  std::optional<int> image_index;      // 1-based; absent for DummyEnd
  std::optional<Relation> relation;    // present iff kind is commonsense
  std::optional<Embedding> embedding;  // cached sentence embedding

  bool operator==(const StoryNode& other) const = default;
};

struct Edge {
  std::string source;
  std::string target;
  std::optional<double> weight;  // absent until Stage-2 assignment

  bool operator==(const Edge& other) const = default;
};

// Checks the per-node invariants and raises invalid-node on violation.
inline void validate_node(const StoryNode& node) {
  if (node.id.empty())
    raise(ErrorCode::invalid_node, "node id is empty");
  if (node.kind == NodeKind::DummyEnd) {
    if (node.image_index)
      raise(ErrorCode::invalid_node,
            "dummy end node '" + node.id + "' must not carry an image_index");
    if (node.relation)
      raise(ErrorCode::invalid_node,
            "dummy end node '" + node.id + "' must not carry a relation");
    return;
  }
  if (!node.image_index)
    raise(ErrorCode::invalid_node,
          "node '" + node.id + "' of kind " + to_string(node.kind) +
              " requires an image_index");
  if (*node.image_index < 1)
    raise(ErrorCode::invalid_node,
          "node '" + node.id + "' has image_index " +
              std::to_string(*node.image_index) + " outside sequence bounds");
  if (node.text.empty())
    raise(ErrorCode::invalid_node, "node '" + node.id + "' has empty text");
  if (is_commonsense(node.kind)) {
    if (!node.relation)
      raise(ErrorCode::invalid_node,
            "commonsense node '" + node.id + "' requires a relation");
    const bool before = node.kind == NodeKind::CommonsenseBefore;
    const bool before_relation =
        *node.relation == Relation::xNeed || *node.relation == Relation::xIntent;
    if (before != before_relation)
      raise(ErrorCode::invalid_node,
            "node '" + node.id + "' of kind " + to_string(node.kind) +
                " cannot carry relation " + to_string(*node.relation));
  } else if (node.relation) {
    raise(ErrorCode::invalid_node,
          "node '" + node.id + "' of kind " + to_string(node.kind) +
              " must not carry a relation");
  }
}

// Directed acyclic graph of plot points. Nodes and edges keep insertion
// order, which downstream serialization and wiring rely on for determinism.
// A graph under construction is confined to one thread; once validated it is
// treated as immutable.
class StoryGraph {
 public:
  const std::vector<StoryNode>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool weighted() const { return weighted_; }

  bool has_node(const std::string& id) const {
    return node_index_.count(id) != 0;
  }

  const StoryNode& node(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
      raise(ErrorCode::missing_endpoint, "no node with id '" + id + "'");
    return nodes_[it->second];
  }

  bool has_edge(const std::string& source, const std::string& target) const {
    return edge_index_.count(edge_key(source, target)) != 0;
  }

  const Edge& edge(const std::string& source, const std::string& target) const {
    auto it = edge_index_.find(edge_key(source, target));
    if (it == edge_index_.end())
      raise(ErrorCode::missing_endpoint,
            "no edge " + source + " -> " + target);
    return edges_[it->second];
  }

  void add_node(const StoryNode& node) {
    validate_node(node);
    if (has_node(node.id))
      raise(ErrorCode::duplicate_id, "node id '" + node.id + "' already present");
    node_index_.emplace(node.id, nodes_.size());
    nodes_.push_back(node);
  }

  void add_edge(const std::string& source, const std::string& target,
                std::optional<double> weight = std::nullopt) {
    if (!has_node(source))
      raise(ErrorCode::missing_endpoint, "edge source '" + source + "' not in graph");
    if (!has_node(target))
      raise(ErrorCode::missing_endpoint, "edge target '" + target + "' not in graph");
    if (source == target)
      raise(ErrorCode::invariant_violation,
            "self edge on '" + source + "' not allowed");
    if (has_edge(source, target))
      raise(ErrorCode::duplicate_edge,
            "edge " + source + " -> " + target + " already present");
    if (weight && !std::isfinite(*weight))
      raise(ErrorCode::invariant_violation,
            "edge " + source + " -> " + target + " has non-finite weight");
    edge_index_.emplace(edge_key(source, target), edges_.size());
    edges_.push_back(Edge{source, target, weight});
  }

  void set_edge_weight(const std::string& source, const std::string& target,
                       double weight) {
    auto it = edge_index_.find(edge_key(source, target));
    if (it == edge_index_.end())
      raise(ErrorCode::missing_endpoint, "no edge " + source + " -> " + target);
    if (!std::isfinite(weight))
      raise(ErrorCode::invariant_violation,
            "edge " + source + " -> " + target + " assigned non-finite weight");
    edges_[it->second].weight = weight;
  }

  void set_node_embedding(const std::string& id, Embedding embedding) {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
      raise(ErrorCode::missing_endpoint, "no node with id '" + id + "'");
    nodes_[it->second].embedding = std::move(embedding);
  }

  // weighted=true promises that every edge carries a weight.
  void set_weighted(bool weighted) {
    if (weighted) {
      for (const Edge& e : edges_)
        if (!e.weight)
          raise(ErrorCode::invariant_violation,
                "cannot mark graph weighted: edge " + e.source + " -> " +
                    e.target + " has no weight");
    }
    weighted_ = weighted;
  }

  std::vector<std::string> successors(const std::string& id) const {
    std::vector<std::string> out;
    for (const Edge& e : edges_)
      if (e.source == id) out.push_back(e.target);
    return out;
  }

  std::size_t out_degree(const std::string& id) const {
    std::size_t n = 0;
    for (const Edge& e : edges_)
      if (e.source == id) ++n;
    return n;
  }

  std::size_t in_degree(const std::string& id) const {
    std::size_t n = 0;
    for (const Edge& e : edges_)
      if (e.target == id) ++n;
    return n;
  }

  bool operator==(const StoryGraph& other) const {
    return nodes_ == other.nodes_ && edges_ == other.edges_ &&
           weighted_ == other.weighted_;
  }

 private:
  static std::string edge_key(const std::string& source, const std::string& target) {
    return source + '\x01' + target;
  }

  std::vector<StoryNode> nodes_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, std::size_t> node_index_;
  std::unordered_map<std::string, std::size_t> edge_index_;
  bool weighted_ = false;
};

// Kahn's algorithm with a min-heap over node ids: the returned order is the
// unique topological order whose ties are broken by ascending id, so equal
// graphs always produce equal orders. On a cycle, reports one offending
// cycle found by walking still-unprocessed nodes.
inline std::vector<std::string> validate_dag(const StoryGraph& graph) {
  std::unordered_map<std::string, std::vector<std::string>> adjacency;
  std::unordered_map<std::string, std::size_t> in_degree;
  for (const StoryNode& n : graph.nodes()) {
    adjacency[n.id];
    in_degree[n.id] = 0;
  }
  for (const Edge& e : graph.edges()) {
    adjacency[e.source].push_back(e.target);
    ++in_degree[e.target];
  }

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (const StoryNode& n : graph.nodes())
    if (in_degree[n.id] == 0) ready.push(n.id);

  std::vector<std::string> order;
  order.reserve(graph.nodes().size());
  while (!ready.empty()) {
    std::string id = ready.top();
    ready.pop();
    order.push_back(id);
    for (const std::string& next : adjacency[id])
      if (--in_degree[next] == 0) ready.push(next);
  }

  if (order.size() != graph.nodes().size()) {
    // Every node with remaining in-degree has at least one unprocessed
    // predecessor, so walking predecessors must eventually revisit a node and
    // close a cycle.
    std::unordered_set<std::string> leftover;
    for (const StoryNode& n : graph.nodes())
      if (in_degree[n.id] > 0) leftover.insert(n.id);
    std::unordered_map<std::string, std::vector<std::string>> predecessors;
    for (const Edge& e : graph.edges())
      if (leftover.count(e.source) && leftover.count(e.target))
        predecessors[e.target].push_back(e.source);
    std::string current = *std::min_element(leftover.begin(), leftover.end());
    std::vector<std::string> trail;
    std::unordered_map<std::string, std::size_t> seen_at;
    while (seen_at.find(current) == seen_at.end()) {
      seen_at[current] = trail.size();
      trail.push_back(current);
      auto& preds = predecessors[current];
      current = *std::min_element(preds.begin(), preds.end());
    }
    // trail holds the walk in predecessor direction; reverse the repeated
    // segment to report the cycle along edge direction.
    std::vector<std::string> cycle_nodes(trail.begin() + seen_at[current],
                                         trail.end());
    std::reverse(cycle_nodes.begin(), cycle_nodes.end());
    std::string cycle;
    for (const std::string& id : cycle_nodes) {
      if (!cycle.empty()) cycle += " -> ";
      cycle += id;
    }
    raise(ErrorCode::cycle_detected, "cycle: " + cycle + " -> " + cycle_nodes.front());
  }
  return order;
}

}  // namespace scovist
