// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setcard/ast.hpp"
#include "setcard/model.hpp"

namespace setcard {

struct SourcePos {
  std::size_t line = 1;
  std::size_t col = 1;
};

class ParseError : public std::runtime_error {
 public:
  enum class Kind : std::uint8_t { Lex, Syntax, Sort, Undeclared, Arity };

  ParseError(Kind kind, SourcePos pos, const std::string& message);

  Kind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string detail_;
};

std::string_view to_string(ParseError::Kind kind);

struct Script {
  std::vector<std::pair<std::string, Sort>> declarations;
  /// In assertion order. Each `card(s)` term is followed, on first use, by
  /// its CardOf constraint.
  std::vector<Constraint> assertions;
  std::map<std::string, std::string> options;
  std::string logic;
  bool check_sat = false;
  bool get_model = false;

  const Sort* sort_of(const std::string& name) const;
};

Script parse(std::string_view text);

/// Renders a script that parses back to the same assertions.
std::string print_script(const Script& script);

/// One line per declared symbol in declaration order, then one per `card(S)`
/// term the model assigns, wrapped in parentheses.
std::string print_model(const Script& script, const Model& model);

}  // namespace setcard
