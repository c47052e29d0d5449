// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cuntz {

enum class ErrorKind {
  InvalidInput,
  PreconditionFailed,
  NotSubequivalent,
  UnsupportedSpace,
  MeshTooCoarse,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorKind::InvalidInput, w) {}
};

/// Raised when a documented precondition fails; `gap` holds the measured violation.
struct PreconditionFailed : Error {
  PreconditionFailed(const std::string& w, double gap_)
      : Error(ErrorKind::PreconditionFailed, w), gap(gap_) {}
  double gap;
};

struct NotSubequivalent : Error {
  explicit NotSubequivalent(const std::string& w) : Error(ErrorKind::NotSubequivalent, w) {}
};

struct UnsupportedSpace : Error {
  explicit UnsupportedSpace(const std::string& w) : Error(ErrorKind::UnsupportedSpace, w) {}
};

struct MeshTooCoarse : Error {
  explicit MeshTooCoarse(const std::string& w) : Error(ErrorKind::MeshTooCoarse, w) {}
};

}  // namespace cuntz
