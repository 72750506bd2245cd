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

#include "compiled.hpp"

#include <algorithm>
#include <numeric>

namespace magmalab::internal {

namespace {

int slot_of(std::vector<std::string>& vars, const std::string& name) {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  vars.push_back(name);
  return static_cast<int>(vars.size() - 1);
}

void compile_term(const Term& t, std::vector<std::string>& vars, std::vector<int>& code) {
  if (t.is_variable()) {
    code.push_back(slot_of(vars, t.variable_name()));
    return;
  }
  compile_term(t.left(), vars, code);
  compile_term(t.right(), vars, code);
  code.push_back(kApply);
}

}  // namespace

CompiledIdentity compile_identity(const Identity& ident) {
  CompiledIdentity ci;
  compile_term(ident.lhs, ci.vars, ci.lhs);
  compile_term(ident.rhs, ci.vars, ci.rhs);
  return ci;
}

int eval_code(const std::vector<int>& code, const int* table, int n, const int* assignment) {
  int stack[32];
  int sp = 0;
  for (int instr : code) {
    if (instr >= 0) {
      stack[sp++] = assignment[instr];
    } else {
      int b = stack[--sp];
      int a = stack[sp - 1];
      stack[sp - 1] = table[a * n + b];
    }
  }
  return stack[0];
}

bool find_violation_raw(const CompiledIdentity& ci, const int* table, int n,
                        std::vector<int>& assignment_out, int& lhs_out, int& rhs_out) {
  const int k = static_cast<int>(ci.vars.size());
  int a[16] = {0};
  for (;;) {
    int l = eval_code(ci.lhs, table, n, a);
    int r = eval_code(ci.rhs, table, n, a);
    if (l != r) {
      assignment_out.assign(a, a + k);
      lhs_out = l;
      rhs_out = r;
      return true;
    }
    int i = k - 1;
    while (i >= 0 && ++a[i] == n) a[i--] = 0;
    if (i < 0) return false;
  }
}

bool satisfies_raw(const CompiledIdentity& ci, const int* table, int n) {
  const int k = static_cast<int>(ci.vars.size());
  int a[16] = {0};
  for (;;) {
    if (eval_code(ci.lhs, table, n, a) != eval_code(ci.rhs, table, n, a)) return false;
    int i = k - 1;
    while (i >= 0 && ++a[i] == n) a[i--] = 0;
    if (i < 0) return true;
  }
}

EmbedProbe::EmbedProbe(const int* pattern, int pn)
    : pn_(pn), pt_(pattern, pattern + static_cast<std::size_t>(pn) * pn) {
  order_.resize(pn_);
  std::vector<int> constraint(pn_, 0);
  std::vector<char> seen(pn_);
  for (int p = 0; p < pn_; ++p) {
    std::fill(seen.begin(), seen.end(), 0);
    int distinct = 0;
    for (int q = 0; q < pn_; ++q) {
      for (int v : {pt_[p * pn_ + q], pt_[q * pn_ + p]}) {
        if (!seen[v]) {
          seen[v] = 1;
          ++distinct;
        }
      }
    }
    constraint[p] = distinct;
    order_[p] = p;
  }
  std::stable_sort(order_.begin(), order_.end(),
                   [&](int a, int b) { return constraint[a] > constraint[b]; });
  map_.assign(pn_, -1);
  assigned_.reserve(pn_);
  pattern_idem_.resize(pn_);
  for (int p = 0; p < pn_; ++p) pattern_idem_[p] = pt_[p * pn_ + p] == p;
}

bool EmbedProbe::prepare(const int* host, int hn) {
  if (pn_ > hn) return false;
  std::fill(map_.begin(), map_.end(), -1);
  inv_.assign(hn, -1);
  assigned_.clear();
  host_idem_.resize(hn);
  int host_idem_count = 0;
  for (int h = 0; h < hn; ++h) {
    host_idem_[h] = host[h * hn + h] == h;
    host_idem_count += host_idem_[h];
  }
  int pattern_idem_count = 0;
  for (char c : pattern_idem_) pattern_idem_count += c;
  return pattern_idem_count <= host_idem_count &&
         pn_ - pattern_idem_count <= hn - host_idem_count;
}

std::optional<std::vector<int>> EmbedProbe::find(const int* host, int hn) {
  if (!prepare(host, hn) || !search(host, hn, 0)) return std::nullopt;
  return map_;
}

// Rechecks every product among the assigned pattern elements; patterns are
// tiny, so the quadratic sweep is cheaper than tracking which products the
// latest assignment may have completed.
bool EmbedProbe::consistent(const int* host, int hn) const {
  for (int a : assigned_) {
    for (int b : assigned_) {
      int t = pt_[a * pn_ + b];
      int hv = host[map_[a] * hn + map_[b]];
      if (map_[t] != -1) {
        if (map_[t] != hv) return false;
      } else if (inv_[hv] != -1) {
        // The image of t is forced to hv, which is taken already.
        return false;
      }
    }
  }
  return true;
}

bool EmbedProbe::search(const int* host, int hn, std::size_t depth) {
  if (depth == static_cast<std::size_t>(pn_)) return true;
  int p = order_[depth];
  assigned_.push_back(p);
  for (int h = 0; h < hn; ++h) {
    if (inv_[h] != -1) continue;
    if (host_idem_[h] != pattern_idem_[p]) continue;
    map_[p] = h;
    inv_[h] = p;
    if (consistent(host, hn) && search(host, hn, depth + 1)) return true;
    map_[p] = -1;
    inv_[h] = -1;
  }
  assigned_.pop_back();
  return false;
}

void canonicalize_raw(const int* table, int n, std::vector<int>& best) {
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  best.assign(table, table + cells);
  std::vector<int> perm(n), inv(n), cand(cells);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) {
    for (int i = 0; i < n; ++i) inv[perm[i]] = i;
    // Build the relabeled table row-major, aborting as soon as it compares
    // greater than the best found so far.
    bool smaller = false;
    bool aborted = false;
    std::size_t idx = 0;
    for (int i = 0; i < n && !aborted; ++i) {
      const int* row = table + static_cast<std::size_t>(inv[i]) * n;
      for (int j = 0; j < n; ++j, ++idx) {
        int v = perm[row[inv[j]]];
        cand[idx] = v;
        if (!smaller) {
          if (v > best[idx]) { aborted = true; break; }
          if (v < best[idx]) smaller = true;
        }
      }
    }
    if (!aborted && smaller) best = cand;
  }
}

}  // namespace magmalab::internal
