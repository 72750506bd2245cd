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

#include "magmalab/magma.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "compiled.hpp"

namespace magmalab {

Magma::Magma(int n, std::vector<int> table, std::string name)
    : n_(n), table_(std::move(table)), name_(std::move(name)) {
  if (n < 1) throw std::invalid_argument("magma size must be >= 1");
  if (table_.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("table must have n*n entries");
  for (int v : table_)
    if (v < 0 || v >= n)
      throw std::invalid_argument("table entry " + std::to_string(v) +
                                  " out of range 0.." + std::to_string(n - 1));
}

Magma Magma::dual() const {
  std::vector<int> t(table_.size());
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b) t[static_cast<std::size_t>(a) * n_ + b] = op(b, a);
  std::string dual_name;
  if (!name_.empty()) {
    if (name_.size() >= 2 && name_.compare(name_.size() - 2, 2, "^d") == 0)
      dual_name = name_.substr(0, name_.size() - 2);
    else
      dual_name = name_ + "^d";
  }
  return Magma(n_, std::move(t), std::move(dual_name));
}

// ---------------------------------------------------------------------------
// Evaluation and satisfaction

int eval_term(const Term& t, const Magma& m, const std::map<std::string, int>& env) {
  if (t.is_variable()) {
    auto it = env.find(t.variable_name());
    if (it == env.end())
      throw std::invalid_argument("unbound variable '" + t.variable_name() + "'");
    if (it->second < 0 || it->second >= m.size())
      throw std::invalid_argument("assignment of '" + t.variable_name() +
                                  "' out of range");
    return it->second;
  }
  return m.op(eval_term(t.left(), m, env), eval_term(t.right(), m, env));
}

namespace {

// Print order for assignments: the catalog's variable sequence first,
// anything else alphabetically after it.
int variable_rank(const std::string& v) {
  static constexpr std::string_view kOrder[] = {"x", "y", "z", "u", "v", "w"};
  for (std::size_t i = 0; i < std::size(kOrder); ++i)
    if (v == kOrder[i]) return static_cast<int>(i);
  return static_cast<int>(std::size(kOrder));
}

Violation make_violation(const Identity& ident, std::size_t index,
                         const internal::CompiledIdentity& ci,
                         const std::vector<int>& assignment, int lhs, int rhs) {
  Violation out{ident, index, {}, lhs, rhs};
  out.assignment.reserve(ci.vars.size());
  for (std::size_t i = 0; i < ci.vars.size(); ++i)
    out.assignment.emplace_back(ci.vars[i], assignment[i]);
  std::stable_sort(out.assignment.begin(), out.assignment.end(),
                   [](const auto& a, const auto& b) {
                     int ra = variable_rank(a.first), rb = variable_rank(b.first);
                     if (ra != rb) return ra < rb;
                     return a.first < b.first;
                   });
  return out;
}

}  // namespace

std::string Violation::str() const {
  std::ostringstream os;
  os << identity.str() << " fails at";
  for (const auto& [v, e] : assignment) os << ' ' << v << '=' << e;
  os << " (lhs=" << lhs_value << ", rhs=" << rhs_value << ")";
  return os.str();
}

std::optional<Violation> find_violation(const Magma& m, const Identity& i) {
  internal::CompiledIdentity ci = internal::compile_identity(i);
  std::vector<int> assignment;
  int lhs, rhs;
  if (internal::find_violation_raw(ci, m.table().data(), m.size(), assignment, lhs, rhs))
    return make_violation(i, 0, ci, assignment, lhs, rhs);
  return std::nullopt;
}

bool satisfies(const Magma& m, const Identity& i) { return !find_violation(m, i); }

std::optional<Violation> find_violation(const Magma& m, const Variety& v) {
  for (std::size_t idx = 0; idx < v.identities.size(); ++idx) {
    internal::CompiledIdentity ci = internal::compile_identity(v.identities[idx]);
    std::vector<int> assignment;
    int lhs, rhs;
    if (internal::find_violation_raw(ci, m.table().data(), m.size(), assignment, lhs, rhs))
      return make_violation(v.identities[idx], idx, ci, assignment, lhs, rhs);
  }
  return std::nullopt;
}

bool in_variety(const Magma& m, const Variety& v) { return !find_violation(m, v); }

// ---------------------------------------------------------------------------
// Submagmas

std::vector<int> generated_submagma(const Magma& m, std::span<const int> generators) {
  if (generators.empty())
    throw std::invalid_argument("generator set must be nonempty");
  std::vector<char> member(m.size(), 0);
  std::vector<int> work;
  for (int g : generators) {
    if (g < 0 || g >= m.size())
      throw std::invalid_argument("generator " + std::to_string(g) + " out of range");
    if (!member[g]) {
      member[g] = 1;
      work.push_back(g);
    }
  }
  std::vector<int> have = work;
  while (!work.empty()) {
    int a = work.back();
    work.pop_back();
    for (std::size_t i = 0; i < have.size(); ++i) {
      int b = have[i];
      for (int p : {m.op(a, b), m.op(b, a)}) {
        if (!member[p]) {
          member[p] = 1;
          work.push_back(p);
          have.push_back(p);
        }
      }
    }
  }
  std::sort(have.begin(), have.end());
  return have;
}

bool is_closed_subset(const Magma& m, std::span<const int> elements) {
  std::vector<char> member(m.size(), 0);
  for (int e : elements) {
    if (e < 0 || e >= m.size()) return false;
    member[e] = 1;
  }
  for (int a : elements)
    for (int b : elements)
      if (!member[m.op(a, b)]) return false;
  return true;
}

Magma restrict_to(const Magma& m, std::span<const int> elements) {
  if (elements.empty()) throw std::invalid_argument("subset must be nonempty");
  if (!is_closed_subset(m, elements))
    throw std::invalid_argument("subset is not closed under the operation");
  std::vector<int> sorted(elements.begin(), elements.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> index(m.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) index[sorted[i]] = static_cast<int>(i);
  const int k = static_cast<int>(sorted.size());
  std::vector<int> table(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      table[static_cast<std::size_t>(i) * k + j] = index[m.op(sorted[i], sorted[j])];
  return Magma(k, std::move(table));
}

// ---------------------------------------------------------------------------
// Embeddings and isomorphism

std::optional<EmbeddingWitness> find_embedding(const Magma& pattern, const Magma& host) {
  internal::EmbedProbe probe(pattern.table().data(), pattern.size());
  auto map = probe.find(host.table().data(), host.size());
  if (!map) return std::nullopt;
  return EmbeddingWitness{pattern, host, std::move(*map)};
}

bool EmbeddingWitness::valid() const {
  if (map.size() != static_cast<std::size_t>(source.size())) return false;
  std::vector<char> used(target.size(), 0);
  for (int h : map) {
    if (h < 0 || h >= target.size() || used[h]) return false;
    used[h] = 1;
  }
  for (int a = 0; a < source.size(); ++a)
    for (int b = 0; b < source.size(); ++b)
      if (map[source.op(a, b)] != target.op(map[a], map[b])) return false;
  return true;
}

std::optional<std::vector<int>> isomorphism(const Magma& a, const Magma& b) {
  if (a.size() != b.size()) return std::nullopt;
  // An injective operation-preserving map between equal finite sizes is a
  // bijection, and its inverse is automatically operation-preserving.
  auto witness = find_embedding(a, b);
  if (!witness) return std::nullopt;
  return std::move(witness->map);
}

Magma canonical_form(const Magma& m, int max_size) {
  if (m.size() > max_size)
    throw std::invalid_argument("size " + std::to_string(m.size()) +
                                " above canonicalization bound " +
                                std::to_string(max_size));
  std::vector<int> best;
  internal::canonicalize_raw(m.table().data(), m.size(), best);
  return Magma(m.size(), std::move(best), m.name());
}

bool avoids(const Magma& m, std::span<const Magma> family) {
  for (const Magma& f : family) {
    if (f.size() > m.size()) continue;  // cannot embed into something smaller
    if (embeds(f, m)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Text format

std::string to_text(const Magma& m) {
  std::ostringstream os;
  if (!m.name().empty()) os << "name " << m.name() << '\n';
  os << m.size() << '\n';
  for (int a = 0; a < m.size(); ++a) {
    for (int b = 0; b < m.size(); ++b) {
      if (b) os << ' ';
      os << m.op(a, b);
    }
    os << '\n';
  }
  return os.str();
}

std::string to_text(std::span<const Magma> ms) {
  std::string out;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    if (i) out += '\n';
    out += to_text(ms[i]);
  }
  return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

int parse_int(std::string_view field, std::size_t line_no) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError("expected an integer, got '" + std::string(field) + "'", 0, line_no);
  return value;
}

}  // namespace

std::vector<Magma> parse_magmas(std::string_view text) {
  std::vector<Magma> out;
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    if (end == text.size()) break;
    start = end + 1;
  }

  std::size_t i = 0;
  auto blank = [&](std::string_view l) {
    return l.find_first_not_of(" \t\r") == std::string_view::npos;
  };
  while (i < lines.size()) {
    if (blank(lines[i])) {
      ++i;
      continue;
    }
    std::string name;
    auto fields = split_fields(lines[i]);
    if (fields[0] == "name") {
      if (fields.size() != 2)
        throw ParseError("'name' line must be 'name <identifier>'", 0, i + 1);
      name = std::string(fields[1]);
      ++i;
      if (i >= lines.size() || blank(lines[i]))
        throw ParseError("expected a size line after the name line", 0, i + 1);
      fields = split_fields(lines[i]);
    }
    if (fields.size() != 1)
      throw ParseError("expected a single integer size line", 0, i + 1);
    int n = parse_int(fields[0], i + 1);
    if (n < 1) throw ParseError("magma size must be >= 1", 0, i + 1);
    ++i;
    std::vector<int> table;
    table.reserve(static_cast<std::size_t>(n) * n);
    for (int row = 0; row < n; ++row, ++i) {
      if (i >= lines.size() || blank(lines[i]))
        throw ParseError("expected " + std::to_string(n) + " table rows", 0, i + 1);
      auto row_fields = split_fields(lines[i]);
      if (row_fields.size() != static_cast<std::size_t>(n))
        throw ParseError("expected " + std::to_string(n) + " entries in table row", 0,
                         i + 1);
      for (auto f : row_fields) {
        int v = parse_int(f, i + 1);
        if (v < 0 || v >= n)
          throw ParseError("table entry " + std::to_string(v) + " out of range 0.." +
                               std::to_string(n - 1),
                           0, i + 1);
        table.push_back(v);
      }
    }
    out.emplace_back(n, std::move(table), std::move(name));
    if (i < lines.size() && !blank(lines[i]))
      throw ParseError("expected a blank line between magmas", 0, i + 1);
  }
  return out;
}

std::vector<Magma> load_magmas(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_magmas(buf.str());
}

}  // namespace magmalab
