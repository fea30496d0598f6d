/*
 * Copyright 2026 The Agroline Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef AGROLINE_ERROR_HPP
#define AGROLINE_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace agroline {

enum class ErrorKind {
  Format,
  EmptyInput,
  DegeneratePolygon,
  InvalidPolygon,
  TooManyPairs,
  Validation,
  DegenerateExtent,
  SingularFit,
  CollinearPoints,
  OffsetCollapse,
  DegenerateHull,
  NoLevelCrossing,
  InvalidChord,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Format: return "format error";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::DegeneratePolygon: return "degenerate polygon";
    case ErrorKind::InvalidPolygon: return "invalid polygon";
    case ErrorKind::TooManyPairs: return "too many pairs";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::DegenerateExtent: return "degenerate extent";
    case ErrorKind::SingularFit: return "singular fit";
    case ErrorKind::CollinearPoints: return "collinear points";
    case ErrorKind::OffsetCollapse: return "offset collapse";
    case ErrorKind::DegenerateHull: return "degenerate hull";
    case ErrorKind::NoLevelCrossing: return "no level crossing";
    case ErrorKind::InvalidChord: return "invalid chord";
  }
  return "error";
}

/// Every failure raised by the library. `line()` is the 1-based input line for
/// parse errors, 0 otherwise; `index()` names the offending arc or point when
/// one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::size_t line = 0,
        std::size_t index = npos)
      : std::runtime_error(compose(kind, message, line)),
        kind_(kind),
        line_(line),
        index_(index) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t index() const noexcept { return index_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  static std::string compose(ErrorKind kind, const std::string& message,
                             std::size_t line) {
    std::string out = to_string(kind);
    if (line > 0) out += " at line " + std::to_string(line);
    if (!message.empty()) out += ": " + message;
    return out;
  }

  ErrorKind kind_;
  std::size_t line_;
  std::size_t index_;
};

}  // namespace agroline

#endif  // AGROLINE_ERROR_HPP
