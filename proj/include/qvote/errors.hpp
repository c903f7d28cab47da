// Copyright 2026 The qvote Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVOTE_ERRORS_HPP
#define QVOTE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qvote {

enum class ErrorKind {
    shape,
    capacity,
    validation,
    normalization,
    domain,
    arity,
    numeric_corruption,
    config,
    evaluation,
    unsupported_input,
    protocol,
    parse,
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::shape: return "shape";
        case ErrorKind::capacity: return "capacity";
        case ErrorKind::validation: return "validation";
        case ErrorKind::normalization: return "normalization";
        case ErrorKind::domain: return "domain";
        case ErrorKind::arity: return "arity";
        case ErrorKind::numeric_corruption: return "numeric-corruption";
        case ErrorKind::config: return "config";
        case ErrorKind::evaluation: return "evaluation";
        case ErrorKind::unsupported_input: return "unsupported-input";
        case ErrorKind::protocol: return "protocol";
        case ErrorKind::parse: return "parse";
    }
    return "unknown";
}

/// Base for every error raised by the library. The kind drives the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Rule formula syntax error. `offset` is a byte offset into the input and
/// may equal the input length when the input ended early.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::string expected, std::string found)
        : Error(ErrorKind::parse, "at offset " + std::to_string(offset) + ": expected " + expected +
                                      ", found " + found),
          offset_(offset),
          expected_(std::move(expected)),
          found_(std::move(found)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

}  // namespace qvote

#endif  // QVOTE_ERRORS_HPP
