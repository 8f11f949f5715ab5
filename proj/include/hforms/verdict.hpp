#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

namespace hforms {

using json = nlohmann::json;

enum class Status { Proven, Refuted, Inconclusive };

std::string to_string(Status s);

/// Three-state outcome of a check. Proven/Refuted carry their witness in
/// `evidence` in a form that can be re-verified independently.
struct Verdict {
  Status status = Status::Inconclusive;
  std::string detail;
  json evidence = json::object();

  static Verdict proven(std::string detail, json evidence = json::object()) {
    return {Status::Proven, std::move(detail), std::move(evidence)};
  }
  static Verdict refuted(std::string detail, json evidence = json::object()) {
    return {Status::Refuted, std::move(detail), std::move(evidence)};
  }
  static Verdict inconclusive(std::string detail, json evidence = json::object()) {
    return {Status::Inconclusive, std::move(detail), std::move(evidence)};
  }

  bool is_proven() const { return status == Status::Proven; }
  bool is_refuted() const { return status == Status::Refuted; }
  bool is_inconclusive() const { return status == Status::Inconclusive; }

  json to_json() const;
};

enum class ErrorCode {
  Domain,
  BidegreeMismatch,
  NotReal,
  NotUnimodular,
  NotNilpotent,
  NotClosed,
  NotComplexParallelizable,
  NotDecomposable,
  NotPositive,
  IrrationalRoot,
  Parse,
  Verification,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hforms
