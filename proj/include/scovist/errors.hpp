#pragma once

#include <stdexcept>
#include <string>

namespace scovist {

// Fine-grained error codes. Each maps onto one of four coarse kinds that the
// CLI turns into exit codes: config/usage (2), provider (3), data/invariant (4).
enum class ErrorCode {
  // configuration and usage
  config,

  // provider failures
  provider_not_found,
  provider_transport,
  provider_empty_response,
  provider_unknown_relation,
  provider_bad_response,

  // graph construction and validation
  duplicate_id,
  invalid_node,
  missing_endpoint,
  duplicate_edge,
  cycle_detected,
  index_gap,
  invariant_violation,

  // serialization
  parse_error,
  io_error,

  // weighting
  dimension_mismatch,
  zero_vector,
  empty_index,
  empty_phrase,
  missing_embedding,
  ragged_dimension,

  // storyline
  unweighted_graph,
  already_attached,
  unreachable,
  missing_start,
  empty_storyline,
  separator_in_event,
};

enum class ErrorKind { config, provider, data };

constexpr ErrorKind kind_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config:
      return ErrorKind::config;
    case ErrorCode::provider_not_found:
    case ErrorCode::provider_transport:
    case ErrorCode::provider_empty_response:
    case ErrorCode::provider_unknown_relation:
    case ErrorCode::provider_bad_response:
      return ErrorKind::provider;
    default:
      return ErrorKind::data;
  }
}

constexpr const char* name_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::config: return "config";
    case ErrorCode::provider_not_found: return "provider-not-found";
    case ErrorCode::provider_transport: return "provider-transport";
    case ErrorCode::provider_empty_response: return "provider-empty-response";
    case ErrorCode::provider_unknown_relation: return "provider-unknown-relation";
    case ErrorCode::provider_bad_response: return "provider-bad-response";
    case ErrorCode::duplicate_id: return "duplicate-id";
    case ErrorCode::invalid_node: return "invalid-node";
    case ErrorCode::missing_endpoint: return "missing-endpoint";
    case ErrorCode::duplicate_edge: return "duplicate-edge";
    case ErrorCode::cycle_detected: return "cycle-detected";
    case ErrorCode::index_gap: return "index-gap";
    case ErrorCode::invariant_violation: return "invariant-violation";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::io_error: return "io-error";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::zero_vector: return "zero-vector";
    case ErrorCode::empty_index: return "empty-index";
    case ErrorCode::empty_phrase: return "empty-phrase";
    case ErrorCode::missing_embedding: return "missing-embedding";
    case ErrorCode::ragged_dimension: return "ragged-dimension";
    case ErrorCode::unweighted_graph: return "unweighted-graph";
    case ErrorCode::already_attached: return "already-attached";
    case ErrorCode::unreachable: return "unreachable";
    case ErrorCode::missing_start: return "missing-start";
    case ErrorCode::empty_storyline: return "empty-storyline";
    case ErrorCode::separator_in_event: return "separator-in-event";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(name_of(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace scovist
