// Copyright 2026 The magmalab Authors
//
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
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace magmalab {

/// Raised by the term/identity/table parsers. `position()` is a 0-based
/// offset into the parsed text (a byte offset for single-line inputs, see
/// `line()` for multi-line table files).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position, std::size_t line = 0)
      : std::runtime_error(message), position_(position), line_(line) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

/// A term of the one-binary-operation signature: a variable leaf or an
/// application node.  Immutable; copies share structure and are cheap.
///
/// Concrete syntax: variables are lowercase identifiers, application is
/// infix `*` (left-associative), parentheses override.  `x*y*z` parses as
/// `(x*y)*z`; `x*(y*z)` needs the parentheses.
class Term {
 public:
  static Term variable(std::string name);
  static Term apply(Term left, Term right);

  bool is_variable() const noexcept { return node_->left == nullptr; }
  const std::string& variable_name() const;  // requires is_variable()
  Term left() const;                         // requires !is_variable()
  Term right() const;

  /// Distinct variable names in order of first occurrence.
  std::vector<std::string> vars() const;

  /// Mirror image: recursively swaps the children of every application.
  /// An involution.
  Term dual() const;

  /// Serialization with minimal parentheses; parse_term(str()) == *this.
  std::string str() const;

  std::size_t node_count() const noexcept;
  bool operator==(const Term& other) const noexcept;
  bool operator!=(const Term& other) const noexcept { return !(*this == other); }

 private:
  struct Node {
    std::string var;  // nonempty iff leaf
    std::shared_ptr<const Node> left, right;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// An equation between two terms, universally quantified over its variables.
struct Identity {
  Term lhs;
  Term rhs;

  /// Distinct variables of both sides, lhs first, in first-occurrence order.
  std::vector<std::string> vars() const;

  Identity dual() const { return Identity{lhs.dual(), rhs.dual()}; }

  /// Canonical text "LHS = RHS"; round-trips through parse_identity.
  std::string str() const { return lhs.str() + " = " + rhs.str(); }

  bool operator==(const Identity& other) const noexcept {
    return lhs == other.lhs && rhs == other.rhs;
  }
  bool operator!=(const Identity& other) const noexcept { return !(*this == other); }
};

/// A named, finite set of identities.  An empty identity list denotes the
/// variety of all magmas.
struct Variety {
  std::string name;
  std::vector<Identity> identities;
  std::string note;  // free-form catalog annotation, usually empty

  /// Identity-wise dual under the given name.
  Variety dualized(std::string new_name) const;

  /// Distinct variables across all identities, first-occurrence order.
  std::vector<std::string> vars() const;
};

Term parse_term(std::string_view text);
Identity parse_identity(std::string_view text);

/// Parses the variety file body: one identity per line, `#` comment lines
/// and blank lines ignored.
std::vector<Identity> parse_identity_lines(std::string_view text);

}  // namespace magmalab
