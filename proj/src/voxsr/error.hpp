// Copyright (c) the voxsr project authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace voxsr {

// Stable error categories, mirrored one-to-one by the C API status codes.
enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kIo = 3,
  kEmptyCloud = 4,
  kOverflow = 5,
  kScaleMismatch = 6,
  kNoOverlap = 7,
  kTooFewPoints = 8,
  kConfig = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace voxsr
