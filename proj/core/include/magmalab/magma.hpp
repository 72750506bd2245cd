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

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "magmalab/term.hpp"

namespace magmalab {

/// A finite magma: elements 0..n-1 and an n*n Cayley table, stored row-major
/// (table[a*n+b] = a*b).  Immutable except for the name; safe to share
/// read-only across threads.
class Magma {
 public:
  /// Validates that n >= 1 and every entry lies in 0..n-1.
  Magma(int n, std::vector<int> table, std::string name = {});

  int size() const noexcept { return n_; }
  int op(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  const std::vector<int>& table() const noexcept { return table_; }

  const std::string& name() const noexcept { return name_; }
  void rename(std::string name) { name_ = std::move(name); }

  /// Transposed table; the name gains a "^d" suffix (a second application
  /// removes it again, so dual() is an involution including the name).
  Magma dual() const;

  /// Table equality, ignoring names.
  bool same_table(const Magma& other) const noexcept {
    return n_ == other.n_ && table_ == other.table_;
  }

 private:
  int n_;
  std::vector<int> table_;
  std::string name_;
};

// ---------------------------------------------------------------------------
// Term evaluation and identity satisfaction

/// Bottom-up evaluation of `t` in `m` under `env`.  Throws
/// std::invalid_argument on an unbound variable or out-of-range element.
int eval_term(const Term& t, const Magma& m, const std::map<std::string, int>& env);

/// A witnessed failure of an identity: the assignment (in x,y,z,u,... print
/// order) under which the two sides evaluate differently.
struct Violation {
  Identity identity;
  std::size_t identity_index = 0;  // index within the violated variety
  std::vector<std::pair<std::string, int>> assignment;
  int lhs_value = 0;
  int rhs_value = 0;

  std::string str() const;
};

/// True iff the identity holds under all |m|^k assignments.
bool satisfies(const Magma& m, const Identity& i);

/// First violating assignment in deterministic order (first-occurrence
/// variable enumerated most significant), or nullopt if the identity holds.
std::optional<Violation> find_violation(const Magma& m, const Identity& i);

bool in_variety(const Magma& m, const Variety& v);
std::optional<Violation> find_violation(const Magma& m, const Variety& v);

// ---------------------------------------------------------------------------
// Submagmas

/// Closure of `generators` under the operation, as a sorted element list.
/// Throws std::invalid_argument if `generators` is empty or out of range.
std::vector<int> generated_submagma(const Magma& m, std::span<const int> generators);

bool is_closed_subset(const Magma& m, std::span<const int> elements);

/// The submagma induced on the closed subset `elements`, relabeled to
/// 0..k-1 in increasing element order.  Throws if the subset is not closed.
Magma restrict_to(const Magma& m, std::span<const int> elements);

// ---------------------------------------------------------------------------
// Isomorphism, canonical forms, embeddings

/// An operation-preserving bijection a -> b, as a vector mapping each
/// element of `a` to its image; nullopt if none exists.
std::optional<std::vector<int>> isomorphism(const Magma& a, const Magma& b);

inline bool is_isomorphic(const Magma& a, const Magma& b) {
  return isomorphism(a, b).has_value();
}

inline constexpr int kDefaultCanonicalizationBound = 8;

/// The lexicographically least table among all n! relabelings of m; two
/// magmas are isomorphic iff their canonical forms have equal tables.
/// Throws std::invalid_argument above the size bound.
Magma canonical_form(const Magma& m, int max_size = kDefaultCanonicalizationBound);

/// Certificate that `source` embeds into `target`: an injective
/// operation-preserving map.
struct EmbeddingWitness {
  Magma source;
  Magma target;
  std::vector<int> map;  // map[p] = image of source element p in target

  /// Re-checks injectivity and the homomorphism equations.
  bool valid() const;
};

/// An embedding of `pattern` into `host`, or nullopt.  Deterministic: the
/// search assigns the most-constrained pattern elements first and tries host
/// elements in increasing order.
std::optional<EmbeddingWitness> find_embedding(const Magma& pattern, const Magma& host);

inline bool embeds(const Magma& pattern, const Magma& host) {
  return find_embedding(pattern, host).has_value();
}

/// True iff no member of `family` embeds into m (vacuously true for an
/// empty family).
bool avoids(const Magma& m, std::span<const Magma> family);

// ---------------------------------------------------------------------------
// Cayley-table text format
//
//   name Q        (optional)
//   4
//   0 0 0 0
//   0 0 3 0
//   0 3 0 0
//   0 0 0 0
//
// Multiple magmas in one file are separated by exactly one blank line.

std::string to_text(const Magma& m);
std::string to_text(std::span<const Magma> ms);

std::vector<Magma> parse_magmas(std::string_view text);
std::vector<Magma> load_magmas(const std::filesystem::path& path);

}  // namespace magmalab
