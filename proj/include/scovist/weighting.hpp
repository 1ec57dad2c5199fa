#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "scovist/corpus_index.hpp"
#include "scovist/errors.hpp"
#include "scovist/files.hpp"
#include "scovist/story_graph.hpp"

namespace scovist {

inline double cosine(const Embedding& u, const Embedding& v) {
  if (u.size() != v.size())
    raise(ErrorCode::dimension_mismatch,
          "cosine of vectors with dimensions " + std::to_string(u.size()) +
              " and " + std::to_string(v.size()));
  if (u.empty())
    raise(ErrorCode::dimension_mismatch, "cosine of empty vectors");
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    dot += u[i] * v[i];
    nu += u[i] * u[i];
    nv += v[i] * v[i];
  }
  if (nu == 0.0 || nv == 0.0)
    raise(ErrorCode::zero_vector, "cosine of an all-zero vector");
  double result = dot / (std::sqrt(nu) * std::sqrt(nv));
  // guard against rounding drifting a hair outside [-1, 1]
  if (result > 1.0) result = 1.0;
  if (result < -1.0) result = -1.0;
  return result;
}

// Normalized pointwise mutual information over sentence-level probabilities:
//   PMI(i,j)  = log(p(i,j) / (p(i) p(j)))
//   NPMI(i,j) = PMI(i,j) / (-log p(i,j))
// Conventions: both words present but never co-occurring -> -1 (the limit as
// p(i,j) -> 0); pair present in every sentence -> +1 (the denominator is 0);
// either word absent from the corpus -> nullopt, callers skip the pair.
inline std::optional<double> npmi(const std::string& i, const std::string& j,
                                  const CorpusIndex& index) {
  if (index.total_sentences() == 0)
    raise(ErrorCode::empty_index, "corpus index holds no sentences");
  const double total = static_cast<double>(index.total_sentences());
  const std::uint64_t ci = index.word_count(i);
  const std::uint64_t cj = index.word_count(j);
  if (ci == 0 || cj == 0) return std::nullopt;
  const std::uint64_t cij = index.pair_count(i, j);
  if (cij == 0) return -1.0;
  const double pij = static_cast<double>(cij) / total;
  if (pij == 1.0) return 1.0;
  const double pi = static_cast<double>(ci) / total;
  const double pj = static_cast<double>(cj) / total;
  const double pmi = std::log(pij / (pi * pj));
  double result = pmi / (-std::log(pij));
  if (result > 1.0) result = 1.0;
  if (result < -1.0) result = -1.0;
  return result;
}

// Edge weight between two phrases: the maximum NPMI over all token pairs,
// skipping pairs where either token is out of corpus. All pairs undefined
// falls back to weight 0.
inline double edge_weight_npmi(const std::string& phrase_u,
                               const std::string& phrase_v,
                               const CorpusIndex& index) {
  std::vector<std::string> raw_u = tokenize(phrase_u, index.options());
  std::vector<std::string> raw_v = tokenize(phrase_v, index.options());
  if (raw_u.empty())
    raise(ErrorCode::empty_phrase, "phrase '" + phrase_u + "' has no tokens");
  if (raw_v.empty())
    raise(ErrorCode::empty_phrase, "phrase '" + phrase_v + "' has no tokens");
  std::set<std::string> tokens_u(raw_u.begin(), raw_u.end());
  std::set<std::string> tokens_v(raw_v.begin(), raw_v.end());
  std::optional<double> best;
  for (const std::string& i : tokens_u) {
    for (const std::string& j : tokens_v) {
      std::optional<double> score = npmi(i, j, index);
      if (score && (!best || *score > *best)) best = *score;
    }
  }
  return best.value_or(0.0);
}

enum class WeightingStrategy { cosine, npmi, learned_cosine };

inline const char* to_string(WeightingStrategy strategy) {
  switch (strategy) {
    case WeightingStrategy::cosine: return "cosine";
    case WeightingStrategy::npmi: return "npmi";
    case WeightingStrategy::learned_cosine: return "learned_cosine";
  }
  return "unknown";
}

inline std::optional<WeightingStrategy> weighting_strategy_from_string(
    const std::string& s) {
  if (s == "cosine") return WeightingStrategy::cosine;
  if (s == "npmi") return WeightingStrategy::npmi;
  if (s == "learned" || s == "learned_cosine") return WeightingStrategy::learned_cosine;
  return std::nullopt;
}

// Batch embedding callback: one vector per input text.
using EmbedFn =
    std::function<std::vector<Embedding>(const std::vector<std::string>&)>;

// Embeds each distinct node text once (reusing embeddings already cached on
// nodes), caches the vectors, and weights every edge with the cosine of its
// endpoint embeddings.
inline StoryGraph assign_weights_cosine(StoryGraph graph, const EmbedFn& embed) {
  validate_dag(graph);
  std::unordered_map<std::string, Embedding> by_text;
  for (const StoryNode& n : graph.nodes())
    if (n.embedding) by_text.emplace(n.text, *n.embedding);
  std::vector<std::string> missing;
  for (const StoryNode& n : graph.nodes())
    if (!by_text.count(n.text)) {
      by_text.emplace(n.text, Embedding{});
      missing.push_back(n.text);
    }
  if (!missing.empty()) {
    std::vector<Embedding> vectors = embed(missing);
    if (vectors.size() != missing.size())
      raise(ErrorCode::provider_bad_response,
            "embedder returned " + std::to_string(vectors.size()) +
                " vectors for " + std::to_string(missing.size()) + " texts");
    for (std::size_t i = 0; i < missing.size(); ++i)
      by_text[missing[i]] = std::move(vectors[i]);
  }
  for (const StoryNode& n : graph.nodes())
    if (!n.embedding) graph.set_node_embedding(n.id, by_text.at(n.text));
  for (const Edge& e : graph.edges())
    graph.set_edge_weight(e.source, e.target,
                          cosine(by_text.at(graph.node(e.source).text),
                                 by_text.at(graph.node(e.target).text)));
  graph.set_weighted(true);
  return graph;
}

inline StoryGraph assign_weights_npmi(StoryGraph graph, const CorpusIndex& index) {
  validate_dag(graph);
  for (const Edge& e : graph.edges())
    graph.set_edge_weight(e.source, e.target,
                          edge_weight_npmi(graph.node(e.source).text,
                                           graph.node(e.target).text, index));
  graph.set_weighted(true);
  return graph;
}

// Node-id keyed embeddings produced by an external graph-learning step.
struct EmbeddingTable {
  std::unordered_map<std::string, Embedding> vectors;
  std::size_t dimension = 0;
};

inline StoryGraph assign_weights_learned(StoryGraph graph,
                                         const EmbeddingTable& table) {
  validate_dag(graph);
  for (const StoryNode& n : graph.nodes())
    if (!table.vectors.count(n.id))
      raise(ErrorCode::missing_embedding,
            "no learned embedding for node '" + n.id + "'");
  for (const Edge& e : graph.edges())
    graph.set_edge_weight(e.source, e.target,
                          cosine(table.vectors.at(e.source),
                                 table.vectors.at(e.target)));
  graph.set_weighted(true);
  return graph;
}

// Parses a learned-embedding table: a JSON object {node_id: [reals]}. All
// vectors must share one dimension. An empty or whitespace-only file yields
// an empty table.
inline EmbeddingTable parse_learned_embeddings(const std::string& bytes) {
  EmbeddingTable table;
  bool blank = true;
  for (char c : bytes)
    if (!std::isspace(static_cast<unsigned char>(c))) {
      blank = false;
      break;
    }
  if (blank) return table;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(bytes);
  } catch (const nlohmann::json::parse_error& e) {
    raise(ErrorCode::parse_error, e.what());
  }
  if (!j.is_object())
    raise(ErrorCode::parse_error, "embedding table must be a JSON object");
  try {
    for (const auto& [id, value] : j.items()) {
      Embedding vec = value.get<Embedding>();
      if (table.vectors.empty()) {
        table.dimension = vec.size();
      } else if (vec.size() != table.dimension) {
        raise(ErrorCode::ragged_dimension,
              "embedding for '" + id + "' has dimension " +
                  std::to_string(vec.size()) + ", expected " +
                  std::to_string(table.dimension));
      }
      table.vectors.emplace(id, std::move(vec));
    }
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorCode::parse_error, e.what());
  }
  return table;
}

inline EmbeddingTable import_learned_embeddings(const std::string& path) {
  return parse_learned_embeddings(read_text_file(path));
}

}  // namespace scovist
