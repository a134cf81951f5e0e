// Copyright 2026 The terravor Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace terravor {

enum class ErrorCode {
  InvalidInput,
  DegenerateTriangle,
  NonManifoldEdge,
  DomainNotCovered,
  OutsideDomain,
  EmptyEdgeSet,
  DiskClipped,
  NoSites,
  TooManySitesForRidgeWidth,
  NegativeSegment,
  OffPlateau,
  CellTooLarge,
  GridTooCoarse,
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above. The
/// message names the offending simplex, point or parameter.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::NonManifoldEdge: return "NonManifoldEdge";
    case ErrorCode::DomainNotCovered: return "DomainNotCovered";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::EmptyEdgeSet: return "EmptyEdgeSet";
    case ErrorCode::DiskClipped: return "DiskClipped";
    case ErrorCode::NoSites: return "NoSites";
    case ErrorCode::TooManySitesForRidgeWidth: return "TooManySitesForRidgeWidth";
    case ErrorCode::NegativeSegment: return "NegativeSegment";
    case ErrorCode::OffPlateau: return "OffPlateau";
    case ErrorCode::CellTooLarge: return "CellTooLarge";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace terravor
