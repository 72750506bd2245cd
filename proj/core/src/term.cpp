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

#include "magmalab/term.hpp"

#include <cctype>
#include <utility>

namespace magmalab {

Term Term::variable(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
  auto node = std::make_shared<Node>();
  node->var = std::move(name);
  return Term(std::move(node));
}

Term Term::apply(Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->left = std::move(left.node_);
  node->right = std::move(right.node_);
  return Term(std::move(node));
}

const std::string& Term::variable_name() const {
  if (!is_variable()) throw std::logic_error("variable_name() on application term");
  return node_->var;
}

Term Term::left() const {
  if (is_variable()) throw std::logic_error("left() on variable term");
  return Term(node_->left);
}

Term Term::right() const {
  if (is_variable()) throw std::logic_error("right() on variable term");
  return Term(node_->right);
}

namespace {

void collect_vars(const Term& t, std::vector<std::string>& out) {
  if (t.is_variable()) {
    for (const auto& v : out)
      if (v == t.variable_name()) return;
    out.push_back(t.variable_name());
    return;
  }
  collect_vars(t.left(), out);
  collect_vars(t.right(), out);
}

}  // namespace

std::vector<std::string> Term::vars() const {
  std::vector<std::string> out;
  collect_vars(*this, out);
  return out;
}

Term Term::dual() const {
  if (is_variable()) return *this;
  return apply(right().dual(), left().dual());
}

std::string Term::str() const {
  if (is_variable()) return node_->var;
  // Left-associative `*`: the left child never needs parentheses, the right
  // child does iff it is itself an application.
  std::string out = left().str();
  out += '*';
  Term r = right();
  if (r.is_variable()) {
    out += r.str();
  } else {
    out += '(';
    out += r.str();
    out += ')';
  }
  return out;
}

std::size_t Term::node_count() const noexcept {
  if (is_variable()) return 1;
  return 1 + left().node_count() + right().node_count();
}

bool Term::operator==(const Term& other) const noexcept {
  if (node_ == other.node_) return true;
  if (is_variable() != other.is_variable()) return false;
  if (is_variable()) return node_->var == other.node_->var;
  return left() == other.left() && right() == other.right();
}

std::vector<std::string> Identity::vars() const {
  std::vector<std::string> out = lhs.vars();
  for (const auto& v : rhs.vars()) {
    bool seen = false;
    for (const auto& w : out)
      if (w == v) { seen = true; break; }
    if (!seen) out.push_back(v);
  }
  return out;
}

Variety Variety::dualized(std::string new_name) const {
  Variety out;
  out.name = std::move(new_name);
  out.identities.reserve(identities.size());
  for (const auto& i : identities) out.identities.push_back(i.dual());
  return out;
}

std::vector<std::string> Variety::vars() const {
  std::vector<std::string> out;
  for (const auto& i : identities)
    for (const auto& v : i.vars()) {
      bool seen = false;
      for (const auto& w : out)
        if (w == v) { seen = true; break; }
      if (!seen) out.push_back(v);
    }
  return out;
}

namespace {

// Recursive-descent parser for
//   term    := primary ('*' primary)*         (left-fold)
//   primary := variable | '(' term ')'
//   variable := [a-z][a-z0-9_]*
class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_whole() {
    Term t = parse_term();
    skip_spaces();
    if (pos_ != text_.size())
      throw ParseError("unexpected trailing input", pos_);
    return t;
  }

  Term parse_term() {
    Term t = parse_primary();
    for (;;) {
      skip_spaces();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        t = Term::apply(std::move(t), parse_primary());
      } else {
        return t;
      }
    }
  }

  std::size_t pos() const noexcept { return pos_; }

 private:
  void skip_spaces() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  Term parse_primary() {
    skip_spaces();
    if (pos_ >= text_.size())
      throw ParseError("expected a variable or '('", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = parse_term();
      skip_spaces();
      if (pos_ >= text_.size() || text_[pos_] != ')')
        throw ParseError("expected ')'", pos_);
      ++pos_;
      return t;
    }
    if (c >= 'a' && c <= 'z') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             ((text_[pos_] >= 'a' && text_[pos_] <= 'z') ||
              (text_[pos_] >= '0' && text_[pos_] <= '9') || text_[pos_] == '_'))
        ++pos_;
      return Term::variable(std::string(text_.substr(start, pos_ - start)));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) {
  TermParser p(text);
  return p.parse_whole();
}

Identity parse_identity(std::string_view text) {
  std::size_t eq = text.find('=');
  if (eq == std::string_view::npos)
    throw ParseError("missing '=' in identity", text.size());
  std::size_t second = text.find('=', eq + 1);
  if (second != std::string_view::npos)
    throw ParseError("more than one '=' in identity", second);
  Term lhs = parse_term(text.substr(0, eq));
  TermParser rhs_parser(text.substr(eq + 1));
  try {
    Term rhs = rhs_parser.parse_whole();
    return Identity{std::move(lhs), std::move(rhs)};
  } catch (const ParseError& e) {
    throw ParseError(e.what(), eq + 1 + e.position());
  }
}

std::vector<Identity> parse_identity_lines(std::string_view text) {
  std::vector<Identity> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      std::size_t last = line.find_last_not_of(" \t\r");
      try {
        out.push_back(parse_identity(line.substr(first, last - first + 1)));
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " (line " + std::to_string(line_no) + ")",
                         e.position(), line_no);
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace magmalab
