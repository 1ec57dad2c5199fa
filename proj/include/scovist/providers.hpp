#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "scovist/errors.hpp"
#include "scovist/files.hpp"
#include "scovist/story_graph.hpp"

namespace scovist {

struct ProviderEndpointConfig {
  std::string base_url;
  std::chrono::milliseconds timeout{30000};
  int max_retries = 2;
  int max_in_flight = 4;
  std::optional<std::string> auth_token;

  void validate() const {
    if (timeout.count() <= 0)
      raise(ErrorCode::config, "endpoint timeout must be positive");
    if (max_retries < 0)
      raise(ErrorCode::config, "endpoint max_retries must be >= 0");
    if (max_in_flight < 1)
      raise(ErrorCode::config, "endpoint max_in_flight must be >= 1");
  }
};

// Sampling parameters forwarded to the story generator.
struct GenerationParams {
  double nucleus_p = 0.9;
  double temperature = 0.9;
  int max_length = 256;
  std::optional<std::int64_t> seed;

  void validate() const {
    if (!(nucleus_p > 0.0 && nucleus_p <= 1.0))
      raise(ErrorCode::config, "nucleus_p must be in (0, 1]");
    if (!(temperature > 0.0))
      raise(ErrorCode::config, "temperature must be > 0");
    if (max_length < 1)
      raise(ErrorCode::config, "max_length must be >= 1");
  }
};

inline bool is_known_relation(const std::string& relation) {
  return relation_from_string(relation).has_value();
}

inline void require_known_relation(const std::string& relation) {
  if (!is_known_relation(relation))
    raise(ErrorCode::provider_unknown_relation,
          "relation '" + relation + "' is not one of xNeed/xIntent/xEffect/xWant");
}

// External model capabilities behind one contract: captioning, commonsense
// inference, concept detection, sentence embedding, and story generation.
// Implementations must be safe for concurrent calls.
class Provider {
 public:
  virtual ~Provider() = default;

  virtual std::string caption(const std::string& image_ref) = 0;
  virtual std::vector<std::string> commonsense(const std::string& head,
                                               const std::string& relation,
                                               int k) = 0;
  virtual std::vector<std::string> concepts(const std::string& image_ref,
                                            int k) = 0;
  virtual std::vector<Embedding> embed(const std::vector<std::string>& texts) = 0;
  virtual std::string generate(const std::string& storyline,
                               const GenerationParams& params) = 0;
};

using ProviderPtr = std::shared_ptr<Provider>;

// Deterministic file-backed provider. The fixture file is a JSON object:
//   {"captions":    {image_ref: text},
//    "commonsense": {head_text: {relation: [tails]}},
//    "concepts":    {image_ref: [strings]},
//    "embeddings":  {text: [reals]},
//    "stories":     {serialized_storyline: story}}   (optional)
// A missing entry is a hard not-found error, never a silent skip.
class FixtureProvider : public Provider {
 public:
  static std::shared_ptr<FixtureProvider> from_file(const std::string& path) {
    return std::make_shared<FixtureProvider>(read_text_file(path), path);
  }

  explicit FixtureProvider(const std::string& bytes,
                           const std::string& source = "<memory>")
      : source_(source) {
    try {
      data_ = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::parse_error& e) {
      raise(ErrorCode::parse_error,
            std::string("fixture file ") + source + ": " + e.what());
    }
    if (!data_.is_object())
      raise(ErrorCode::parse_error,
            "fixture file " + source + " must be a JSON object");
  }

  std::string caption(const std::string& image_ref) override {
    const nlohmann::json* entry = find("captions", image_ref);
    if (!entry)
      raise(ErrorCode::provider_not_found,
            "fixture has no caption for image '" + image_ref + "'");
    return entry->get<std::string>();
  }

  std::vector<std::string> commonsense(const std::string& head,
                                       const std::string& relation,
                                       int k) override {
    require_known_relation(relation);
    const nlohmann::json* by_head = find("commonsense", head);
    if (!by_head)
      raise(ErrorCode::provider_not_found,
            "fixture has no commonsense for head '" + head + "'");
    std::vector<std::string> tails;
    if (by_head->contains(relation)) {
      for (const auto& t : by_head->at(relation)) {
        if (static_cast<int>(tails.size()) >= k) break;
        tails.push_back(t.get<std::string>());
      }
    }
    return tails;
  }

  std::vector<std::string> concepts(const std::string& image_ref, int k) override {
    const nlohmann::json* entry = find("concepts", image_ref);
    if (!entry)
      raise(ErrorCode::provider_not_found,
            "fixture has no concepts for image '" + image_ref + "'");
    std::vector<std::string> out;
    for (const auto& c : *entry) {
      if (static_cast<int>(out.size()) >= k) break;
      out.push_back(c.get<std::string>());
    }
    return out;
  }

  std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
    std::vector<Embedding> vectors;
    vectors.reserve(texts.size());
    for (const std::string& text : texts) {
      const nlohmann::json* entry = find("embeddings", text);
      if (!entry)
        raise(ErrorCode::provider_not_found,
              "fixture has no embedding for text '" + text + "'");
      vectors.push_back(entry->get<Embedding>());
    }
    return vectors;
  }

  std::string generate(const std::string& storyline,
                       const GenerationParams&) override {
    const nlohmann::json* entry = find("stories", storyline);
    if (!entry)
      raise(ErrorCode::provider_not_found,
            "fixture has no story for storyline '" + storyline + "'");
    return entry->get<std::string>();
  }

 private:
  const nlohmann::json* find(const char* section, const std::string& key) const {
    auto s = data_.find(section);
    if (s == data_.end()) return nullptr;
    auto e = s->find(key);
    if (e == s->end()) return nullptr;
    return &*e;
  }

  nlohmann::json data_;
  std::string source_;
};

// Single validation chokepoint in front of any backend: non-empty payloads
// and uniform embedding dimensions, before results enter the pipeline.
class ValidatingProvider : public Provider {
 public:
  explicit ValidatingProvider(ProviderPtr inner) : inner_(std::move(inner)) {}

  std::string caption(const std::string& image_ref) override {
    std::string text = inner_->caption(image_ref);
    if (text.empty())
      raise(ErrorCode::provider_empty_response,
            "empty caption for image '" + image_ref + "'");
    return text;
  }

  std::vector<std::string> commonsense(const std::string& head,
                                       const std::string& relation,
                                       int k) override {
    require_known_relation(relation);
    std::vector<std::string> tails = inner_->commonsense(head, relation, k);
    if (static_cast<int>(tails.size()) > k)
      raise(ErrorCode::provider_bad_response,
            "provider returned more than k=" + std::to_string(k) + " tails");
    for (const std::string& t : tails)
      if (t.empty())
        raise(ErrorCode::provider_empty_response,
              "empty commonsense tail for head '" + head + "'");
    return tails;
  }

  std::vector<std::string> concepts(const std::string& image_ref, int k) override {
    std::vector<std::string> out = inner_->concepts(image_ref, k);
    if (static_cast<int>(out.size()) > k)
      raise(ErrorCode::provider_bad_response,
            "provider returned more than k=" + std::to_string(k) + " concepts");
    for (const std::string& c : out)
      if (c.empty())
        raise(ErrorCode::provider_empty_response,
              "empty concept for image '" + image_ref + "'");
    return out;
  }

  std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
    for (const std::string& t : texts)
      if (t.empty()) raise(ErrorCode::empty_phrase, "cannot embed empty text");
    std::vector<Embedding> vectors = inner_->embed(texts);
    if (vectors.size() != texts.size())
      raise(ErrorCode::provider_bad_response,
            "embedder returned " + std::to_string(vectors.size()) +
                " vectors for " + std::to_string(texts.size()) + " texts");
    for (const Embedding& v : vectors) {
      if (v.empty())
        raise(ErrorCode::provider_bad_response, "embedder returned empty vector");
      if (v.size() != vectors.front().size())
        raise(ErrorCode::ragged_dimension,
              "embedder returned vectors of dimensions " +
                  std::to_string(vectors.front().size()) + " and " +
                  std::to_string(v.size()));
    }
    return vectors;
  }

  std::string generate(const std::string& storyline,
                       const GenerationParams& params) override {
    if (storyline.empty())
      raise(ErrorCode::empty_storyline, "cannot generate from empty storyline");
    params.validate();
    std::string story = inner_->generate(storyline, params);
    if (story.empty())
      raise(ErrorCode::provider_empty_response, "generator returned empty story");
    return story;
  }

 private:
  ProviderPtr inner_;
};

struct ProviderCallCounts {
  std::uint64_t caption = 0;
  std::uint64_t commonsense = 0;
  std::uint64_t concepts = 0;
  std::uint64_t embed = 0;
  std::uint64_t generate = 0;
};

class CountingProvider : public Provider {
 public:
  explicit CountingProvider(ProviderPtr inner) : inner_(std::move(inner)) {}

  std::string caption(const std::string& image_ref) override {
    ++counts_caption_;
    return inner_->caption(image_ref);
  }
  std::vector<std::string> commonsense(const std::string& head,
                                       const std::string& relation,
                                       int k) override {
    ++counts_commonsense_;
    return inner_->commonsense(head, relation, k);
  }
  std::vector<std::string> concepts(const std::string& image_ref, int k) override {
    ++counts_concepts_;
    return inner_->concepts(image_ref, k);
  }
  std::vector<Embedding> embed(const std::vector<std::string>& texts) override {
    ++counts_embed_;
    return inner_->embed(texts);
  }
  std::string generate(const std::string& storyline,
                       const GenerationParams& params) override {
    ++counts_generate_;
    return inner_->generate(storyline, params);
  }

  ProviderCallCounts counts() const {
    return ProviderCallCounts{counts_caption_.load(), counts_commonsense_.load(),
                              counts_concepts_.load(), counts_embed_.load(),
                              counts_generate_.load()};
  }

 private:
  ProviderPtr inner_;
  std::atomic<std::uint64_t> counts_caption_{0};
  std::atomic<std::uint64_t> counts_commonsense_{0};
  std::atomic<std::uint64_t> counts_concepts_{0};
  std::atomic<std::uint64_t> counts_embed_{0};
  std::atomic<std::uint64_t> counts_generate_{0};
};

}  // namespace scovist
