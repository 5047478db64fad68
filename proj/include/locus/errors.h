/*
 * Copyright 2026 The Locus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef LOCUS_ERRORS_H_
#define LOCUS_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locus {

// Base class for every error raised by the library. The CLI maps these to
// exit code 2 ("data error").
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Raised by the grid container and CSV readers.
class ParseError : public Error {
 public:
  enum class Kind {
    kMalformedHeader,
    kValueOutOfRange,
    kTruncatedPayload,
    kMalformedRecord,
  };

  ParseError(Kind kind, std::size_t byte_offset, const std::string& detail);

  Kind kind() const { return kind_; }
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  Kind kind_;
  std::size_t byte_offset_;
};

// The observed space contains only one occupancy class, so no surface exists.
class DegenerateFieldError : public Error {
 public:
  using Error::Error;
};

// The grid has no observed cells at all.
class EmptyFieldError : public Error {
 public:
  using Error::Error;
};

// Descriptor window carries no gradient energy.
class ZeroGradientError : public Error {
 public:
  using Error::Error;
};

// Descriptor window reaches cells without defined values.
class WindowOutsideSupportError : public Error {
 public:
  using Error::Error;
};

// Minimal-sample solver received coincident points.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class EmptyDatasetError : public Error {
 public:
  using Error::Error;
};

}  // namespace locus

#endif  // LOCUS_ERRORS_H_
