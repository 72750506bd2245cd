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

// Internal flat representation of identities for hot satisfaction loops over
// raw row-major tables.  Not installed.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "magmalab/term.hpp"

namespace magmalab::internal {

// Postfix code: entries >= 0 push assignment[entry], kApply pops two values
// a,b (a pushed first) and pushes table[a*n+b].
inline constexpr int kApply = -1;

struct CompiledIdentity {
  std::vector<std::string> vars;  // slot order: first occurrence, lhs first
  std::vector<int> lhs;
  std::vector<int> rhs;
};

CompiledIdentity compile_identity(const Identity& ident);

int eval_code(const std::vector<int>& code, const int* table, int n, const int* assignment);

// First violating assignment in odometer order (slot 0 most significant).
// Returns true and fills the outputs if the identity fails somewhere.
bool find_violation_raw(const CompiledIdentity& ci, const int* table, int n,
                        std::vector<int>& assignment_out, int& lhs_out, int& rhs_out);

bool satisfies_raw(const CompiledIdentity& ci, const int* table, int n);

// Lexicographically least relabeling of the table, written into `best`.
void canonicalize_raw(const int* table, int n, std::vector<int>& best);

// Reusable embedding test of one fixed pattern against raw host tables.
// The pattern elements are tried most-constrained first; host candidates in
// increasing order, so the first map found is deterministic.
class EmbedProbe {
 public:
  EmbedProbe(const int* pattern, int pn);

  // Injective operation-preserving map pattern -> host, or nullopt.
  std::optional<std::vector<int>> find(const int* host, int hn);
  bool test(const int* host, int hn) { return prepare(host, hn) && search(host, hn, 0); }

 private:
  bool prepare(const int* host, int hn);
  bool search(const int* host, int hn, std::size_t depth);
  bool consistent(const int* host, int hn) const;

  int pn_;
  std::vector<int> pt_;
  std::vector<int> order_;
  std::vector<int> map_;
  std::vector<int> inv_;
  std::vector<int> assigned_;
  // Embeddings preserve idempotency exactly (map(p*p) = h*h and the map is
  // injective), so candidates are restricted to matching status.
  std::vector<char> pattern_idem_;
  std::vector<char> host_idem_;
};

}  // namespace magmalab::internal
