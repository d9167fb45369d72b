// Copyright 2026 The envassume Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENVASSUME_ERRORS_HPP
#define ENVASSUME_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace envassume {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(Format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string Format(const std::string& what, std::size_t line,
                            std::size_t column) {
    if (line == 0) return what;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + what;
  }

  std::size_t line_;
  std::size_t column_;
};

// A referenced name (signal, state, input) was never declared.
class UndeclaredNameError : public Error {
 public:
  explicit UndeclaredNameError(const std::string& name)
      : Error("undeclared name '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Same-step assignments depend on each other. `cycle` lists the names in order.
class CycleError : public Error {
 public:
  explicit CycleError(const std::string& cycle)
      : Error("cyclic same-step dependency: " + cycle), cycle_(cycle) {}
  const std::string& cycle() const { return cycle_; }

 private:
  std::string cycle_;
};

class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, std::string rule, std::size_t step)
      : Error(what + " (rule '" + rule + "', step " + std::to_string(step) +
              ")"),
        rule_(std::move(rule)),
        step_(step) {}

  const std::string& rule() const { return rule_; }
  std::size_t step() const { return step_; }

 private:
  std::string rule_;
  std::size_t step_;
};

// An assignment or bundle does not cover what an operation needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Requirement horizon extends past the end of a trace.
class HorizonError : public Error {
 public:
  using Error::Error;
};

// An assumption tree violates its grammar or structural limits.
class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace envassume

#endif  // ENVASSUME_ERRORS_HPP
