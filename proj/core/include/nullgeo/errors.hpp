// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace nullgeo {

// Every failure mode the library can signal. The CLI maps these onto exit
// codes: construction/evaluation failures -> 2, configuration -> 3.
enum class ErrorKind {
  kNonSpd,
  kNoConvergence,
  kNotDegenerate,
  kRankDeficient,
  kDimensionMismatch,
  kOutOfDomain,
  kSingularMetric,
  kInvalidWarping,
  kNotNull,
  kDegenerateScreen,
  kNotAGraph,
  kJetFailure,
  kEikonalViolated,
  kBadParams,
  kNotIsoparametric,
  kNotEinstein,
  kConfig,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::kNonSpd: return "NonSPD";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNotDegenerate: return "NotDegenerate";
    case ErrorKind::kRankDeficient: return "RankDeficient";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kSingularMetric: return "SingularMetric";
    case ErrorKind::kInvalidWarping: return "InvalidWarping";
    case ErrorKind::kNotNull: return "NotNull";
    case ErrorKind::kDegenerateScreen: return "DegenerateScreen";
    case ErrorKind::kNotAGraph: return "NotAGraph";
    case ErrorKind::kJetFailure: return "JetFailure";
    case ErrorKind::kEikonalViolated: return "EikonalViolated";
    case ErrorKind::kBadParams: return "BadParams";
    case ErrorKind::kNotIsoparametric: return "NotIsoparametric";
    case ErrorKind::kNotEinstein: return "NotEinstein";
    case ErrorKind::kConfig: return "ConfigError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace nullgeo
