#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "scovist/errors.hpp"

namespace scovist {

// Tokenization rules: lowercase, split on whitespace, strip leading/trailing
// punctuation, no stemming. Stopword removal is optional and off by default.
struct TokenizerOptions {
  std::unordered_set<std::string> stopwords;

  bool operator==(const TokenizerOptions& other) const {
    return stopwords == other.stopwords;
  }
};

inline std::string tokenizer_fingerprint(const TokenizerOptions& options) {
  std::string fp = "lower+ws-split+strip-punct";
  if (!options.stopwords.empty())
    fp += "+stopwords:" + std::to_string(options.stopwords.size());
  return fp;
}

inline std::vector<std::string> tokenize(const std::string& text,
                                         const TokenizerOptions& options = {}) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    // strip leading/trailing ASCII punctuation
    std::size_t begin = 0, end = current.size();
    while (begin < end && std::ispunct(static_cast<unsigned char>(current[begin])))
      ++begin;
    while (end > begin && std::ispunct(static_cast<unsigned char>(current[end - 1])))
      --end;
    std::string token = current.substr(begin, end - begin);
    current.clear();
    if (token.empty()) return;
    if (options.stopwords.count(token)) return;
    tokens.push_back(std::move(token));
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  flush();
  return tokens;
}

// Sentence-level occurrence and co-occurrence counts: a word appearing twice
// in one sentence counts once, and pair counts exist only for pairs observed
// together in at least one sentence.
class CorpusIndex {
 public:
  CorpusIndex() = default;
  explicit CorpusIndex(TokenizerOptions options) : options_(std::move(options)) {}

  std::uint64_t total_sentences() const { return total_; }

  std::uint64_t word_count(const std::string& word) const {
    auto it = words_.find(word);
    return it == words_.end() ? 0 : it->second;
  }

  // Unordered: pair_count(a, b) == pair_count(b, a). For a == b the sentence
  // count containing "both" is just the word count.
  std::uint64_t pair_count(const std::string& a, const std::string& b) const {
    if (a == b) return word_count(a);
    auto it = pairs_.find(pair_key(a, b));
    return it == pairs_.end() ? 0 : it->second;
  }

  const TokenizerOptions& options() const { return options_; }
  std::string fingerprint() const { return tokenizer_fingerprint(options_); }

  const std::unordered_map<std::string, std::uint64_t>& word_counts() const {
    return words_;
  }
  const std::unordered_map<std::string, std::uint64_t>& pair_counts() const {
    return pairs_;
  }

  // Lines that tokenize to nothing are not sentences and do not count.
  void add_sentence(const std::string& sentence) {
    std::set<std::string> unique;
    for (std::string& token : tokenize(sentence, options_))
      unique.insert(std::move(token));
    if (unique.empty()) return;
    ++total_;
    for (const std::string& w : unique) ++words_[w];
    for (auto i = unique.begin(); i != unique.end(); ++i) {
      auto j = i;
      for (++j; j != unique.end(); ++j) ++pairs_[pair_key(*i, *j)];
    }
  }

  // Counts are additive, so sharded builds can merge in any order.
  void merge(const CorpusIndex& other) {
    if (!(options_ == other.options_))
      raise(ErrorCode::invariant_violation,
            "cannot merge corpus indexes built with different tokenizers");
    total_ += other.total_;
    for (const auto& [w, c] : other.words_) words_[w] += c;
    for (const auto& [p, c] : other.pairs_) pairs_[p] += c;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["total"] = total_;
    j["words"] = nlohmann::json::object();
    for (const auto& [w, c] : words_) j["words"][w] = c;
    j["pairs"] = nlohmann::json::object();
    for (const auto& [p, c] : pairs_) j["pairs"][p] = c;
    j["tokenizer"] = fingerprint();
    if (!options_.stopwords.empty()) {
      std::vector<std::string> sorted(options_.stopwords.begin(),
                                      options_.stopwords.end());
      std::sort(sorted.begin(), sorted.end());
      j["stopwords"] = sorted;
    }
    return j;
  }

  static CorpusIndex from_json(const nlohmann::json& j) {
    try {
      TokenizerOptions options;
      if (j.contains("stopwords"))
        for (const auto& w : j.at("stopwords"))
          options.stopwords.insert(w.get<std::string>());
      CorpusIndex index(std::move(options));
      if (j.contains("tokenizer") &&
          j.at("tokenizer").get<std::string>() != index.fingerprint())
        raise(ErrorCode::parse_error,
              "tokenizer fingerprint mismatch: index was built with '" +
                  j.at("tokenizer").get<std::string>() + "'");
      index.total_ = j.at("total").get<std::uint64_t>();
      for (const auto& [w, c] : j.at("words").items())
        index.words_[w] = c.get<std::uint64_t>();
      for (const auto& [p, c] : j.at("pairs").items())
        index.pairs_[p] = c.get<std::uint64_t>();
      return index;
    } catch (const nlohmann::json::exception& e) {
      raise(ErrorCode::parse_error, e.what());
    }
  }

 private:
  // Persisted pair keys are the two words in lexicographic order joined by
  // U+0001; the in-memory map uses the same keys.
  static std::string pair_key(const std::string& a, const std::string& b) {
    return a <= b ? a + '\x01' + b : b + '\x01' + a;
  }

  std::uint64_t total_ = 0;
  std::unordered_map<std::string, std::uint64_t> words_;
  std::unordered_map<std::string, std::uint64_t> pairs_;
  TokenizerOptions options_;
};

inline CorpusIndex build_corpus_index(std::istream& sentences,
                                      TokenizerOptions options = {}) {
  CorpusIndex index(std::move(options));
  std::string line;
  while (std::getline(sentences, line)) index.add_sentence(line);
  return index;
}

inline CorpusIndex build_corpus_index(const std::vector<std::string>& sentences,
                                      TokenizerOptions options = {}) {
  CorpusIndex index(std::move(options));
  for (const std::string& s : sentences) index.add_sentence(s);
  return index;
}

}  // namespace scovist
