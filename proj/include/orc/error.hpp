#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orc {

enum class ErrorCode {
  // graph construction / structure
  NonPositiveWeight,
  DuplicateEdge,
  AsymmetricWeights,
  EmptyGraph,
  IsolatedVertex,
  InvalidVertex,
  DisconnectedGraph,
  NotNeighbors,
  SameVertex,
  LoopAlreadyPresent,
  InvalidLaziness,
  // measures / transport
  InvalidMeasure,
  InfiniteDistance,
  UnbalancedMeasures,
  CertificateGapNonzero,
  // numerics / bounds
  InvalidStep,
  ZeroDenominator,
  InvalidBoundInput,
  EigenSolverFailure,
  // front end
  ParseError,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::AsymmetricWeights: return "AsymmetricWeights";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::IsolatedVertex: return "IsolatedVertex";
    case ErrorCode::InvalidVertex: return "InvalidVertex";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::NotNeighbors: return "NotNeighbors";
    case ErrorCode::SameVertex: return "SameVertex";
    case ErrorCode::LoopAlreadyPresent: return "LoopAlreadyPresent";
    case ErrorCode::InvalidLaziness: return "InvalidLaziness";
    case ErrorCode::InvalidMeasure: return "InvalidMeasure";
    case ErrorCode::InfiniteDistance: return "InfiniteDistance";
    case ErrorCode::UnbalancedMeasures: return "UnbalancedMeasures";
    case ErrorCode::CertificateGapNonzero: return "CertificateGapNonzero";
    case ErrorCode::InvalidStep: return "InvalidStep";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::InvalidBoundInput: return "InvalidBoundInput";
    case ErrorCode::EigenSolverFailure: return "EigenSolverFailure";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace orc
