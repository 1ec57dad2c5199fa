#pragma once

#include <sstream>
#include <string>

#include <json.hpp>

#include "scovist/errors.hpp"
#include "scovist/files.hpp"
#include "scovist/story_graph.hpp"

namespace scovist {

// Shortest decimal representation that parses back to the identical double;
// shared by the JSON and DOT emitters so weights print the same everywhere.
inline std::string format_weight(double w) { return nlohmann::json(w).dump(); }

inline nlohmann::json node_to_json(const StoryNode& node) {
  nlohmann::json j;
  j["id"] = node.id;
  j["kind"] = to_string(node.kind);
  j["text"] = node.text;
  if (node.image_index) j["image_index"] = *node.image_index;
  if (node.relation) j["relation"] = to_string(*node.relation);
  if (node.embedding) j["embedding"] = *node.embedding;
  return j;
}

inline nlohmann::json graph_to_json(const StoryGraph& graph) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (const StoryNode& n : graph.nodes()) j["nodes"].push_back(node_to_json(n));
  j["edges"] = nlohmann::json::array();
  for (const Edge& e : graph.edges()) {
    nlohmann::json je;
    je["source"] = e.source;
    je["target"] = e.target;
    if (e.weight) je["weight"] = *e.weight;
    j["edges"].push_back(je);
  }
  j["weighted"] = graph.weighted();
  return j;
}

inline std::string export_graph_json(const StoryGraph& graph) {
  validate_dag(graph);
  return graph_to_json(graph).dump(2) + "\n";
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

// Fill colors follow the story-graph visualization convention: grey themes,
// blue captions, yellow BEFORE commonsense, red AFTER commonsense.
inline const char* fill_color(NodeKind kind) {
  switch (kind) {
    case NodeKind::Theme: return "grey";
    case NodeKind::Caption: return "lightblue";
    case NodeKind::CommonsenseBefore: return "yellow";
    case NodeKind::CommonsenseAfter: return "red";
    case NodeKind::DummyEnd: return "white";
  }
  return "white";
}

}  // namespace detail

inline std::string export_graph_dot(const StoryGraph& graph) {
  validate_dag(graph);
  std::ostringstream os;
  os << "digraph story_graph {\n";
  os << "  rankdir=LR;\n";
  os << "  node [style=filled];\n";
  for (const StoryNode& n : graph.nodes()) {
    const std::string label = n.text.empty() ? n.id : n.text;
    os << "  \"" << detail::dot_escape(n.id) << "\" [label=\""
       << detail::dot_escape(label) << "\", kind=\"" << to_string(n.kind)
       << "\", fillcolor=" << detail::fill_color(n.kind) << "];\n";
  }
  for (const Edge& e : graph.edges()) {
    os << "  \"" << detail::dot_escape(e.source) << "\" -> \""
       << detail::dot_escape(e.target) << "\"";
    if (e.weight) os << " [label=\"" << format_weight(*e.weight) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

inline StoryGraph graph_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j.contains("edges"))
    raise(ErrorCode::parse_error, "graph json requires nodes and edges arrays");
  StoryGraph graph;
  try {
    for (const auto& jn : j.at("nodes")) {
      StoryNode node;
      node.id = jn.at("id").get<std::string>();
      auto kind = node_kind_from_string(jn.at("kind").get<std::string>());
      if (!kind)
        raise(ErrorCode::parse_error,
              "unknown node kind '" + jn.at("kind").get<std::string>() + "'");
      node.kind = *kind;
      node.text = jn.at("text").get<std::string>();
      if (jn.contains("image_index"))
        node.image_index = jn.at("image_index").get<int>();
      if (jn.contains("relation")) {
        auto relation = relation_from_string(jn.at("relation").get<std::string>());
        if (!relation)
          raise(ErrorCode::parse_error,
                "unknown relation '" + jn.at("relation").get<std::string>() + "'");
        node.relation = *relation;
      }
      if (jn.contains("embedding"))
        node.embedding = jn.at("embedding").get<Embedding>();
      graph.add_node(node);
    }
    for (const auto& je : j.at("edges")) {
      std::optional<double> weight;
      if (je.contains("weight")) weight = je.at("weight").get<double>();
      graph.add_edge(je.at("source").get<std::string>(),
                     je.at("target").get<std::string>(), weight);
    }
    graph.set_weighted(j.value("weighted", false));
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, e.what());
  }
  validate_dag(graph);  // rejects cyclic inputs
  return graph;
}

inline StoryGraph import_graph_json(const std::string& bytes) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCode::parse_error, e.what());
  }
  return graph_from_json(j);
}

inline StoryGraph read_graph_file(const std::string& path) {
  return import_graph_json(read_text_file(path));
}

inline void write_graph_file(const StoryGraph& graph, const std::string& path) {
  write_text_file(path, export_graph_json(graph));
}

}  // namespace scovist
