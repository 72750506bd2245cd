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

#include "magmalab/modelgen.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "compiled.hpp"

namespace magmalab {

namespace {

using internal::CompiledIdentity;

// ---------------------------------------------------------------------------
// Backtracking table search with constraint propagation.
//
// Cells of the n*n table are decided in row-major order with values tried in
// increasing order, so complete tables come out in lexicographic order.  The
// identities of the variety are grounded into instances (one per assignment
// of elements to their variables); each pending instance watches one table
// cell and is re-examined when that cell gets a value.  Re-examination either
// checks the instance, forces the one cell that would complete a side, or
// moves the watch.  Watches are only a pruning device: every emitted table
// passes a final full satisfaction check, so search correctness does not
// depend on the watch bookkeeping.

class TableSearch {
 public:
  enum class Init { kUnsat, kComplete, kBranching };

  using Sink = std::function<bool(const int*)>;  // false stops the search

  TableSearch(const Variety& v, int n, bool lex_leader_pruning)
      : n_(n), cells_(static_cast<std::size_t>(n) * n), lex_leader_(lex_leader_pruning) {
    table_.assign(cells_, -1);
    level_.assign(cells_, 0);
    watch_.assign(cells_, {});
    for (const Identity& ident : v.identities) {
      compiled_.push_back(internal::compile_identity(ident));
      ground(compiled_.back());
    }
    if (lex_leader_) {
      std::vector<int> perm(n_);
      std::iota(perm.begin(), perm.end(), 0);
      while (std::next_permutation(perm.begin(), perm.end())) {
        perms_.insert(perms_.end(), perm.begin(), perm.end());
        for (int i = 0; i < n_; ++i) inv_perms_.push_back(0);
        int* inv = &inv_perms_[inv_perms_.size() - n_];
        for (int i = 0; i < n_; ++i) inv[perm[i]] = i;
      }
    }
  }

  Init prepare() {
    queue_.clear();
    for (std::size_t i = 0; i < instances_.size(); ++i) {
      if (!examine(static_cast<int>(i))) return Init::kUnsat;
      if (unsat_) return Init::kUnsat;
    }
    if (!flush_queue()) return Init::kUnsat;
    return next_unassigned(0) < 0 ? Init::kComplete : Init::kBranching;
  }

  // After prepare() == kBranching: explores the subtree where the first
  // decision cell takes `first_value` (all values if negative).  Returns
  // false iff the sink stopped the search (or the node budget ran out).
  bool search(int first_value, const Sink& sink) {
    int cell = next_unassigned(0);
    int lo = first_value < 0 ? 0 : first_value;
    int hi = first_value < 0 ? n_ - 1 : first_value;
    for (int v = lo; v <= hi; ++v) {
      std::size_t mark = trail_.size();
      bool keep_going = true;
      if (propagate(cell, v)) keep_going = dfs(cell + 1, sink);
      undo_to(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  // Rough search-tree size with a cap, for comparing orientations.
  long long measure_nodes(long long budget) {
    node_budget_ = budget;
    nodes_ = 0;
    switch (prepare()) {
      case Init::kUnsat:
      case Init::kComplete:
        return 0;
      case Init::kBranching:
        search(-1, [](const int*) { return true; });
        return nodes_;
    }
    return 0;
  }

  bool complete_table_ok() const {
    for (const auto& ci : compiled_)
      if (!internal::satisfies_raw(ci, table_.data(), n_)) return false;
    return true;
  }

  const int* table() const noexcept { return table_.data(); }

 private:
  struct GroundInstance {
    std::uint32_t lhs_begin, lhs_end, rhs_end;  // rhs is [lhs_end, rhs_end)
  };

  struct SideResult {
    int value;         // >= 0 iff fully evaluated
    int blocked_cell;  // >= 0 iff evaluation hit an unassigned cell
    bool at_top;       // the blocked read was the side's final operation
    int max_level;     // latest trail level among cells read (-1 if none)
  };

  void ground(const CompiledIdentity& ci) {
    const int k = static_cast<int>(ci.vars.size());
    int a[16] = {0};
    for (;;) {
      std::size_t begin = pool_.size();
      for (int instr : ci.lhs) pool_.push_back(instr >= 0 ? a[instr] : internal::kApply);
      std::size_t mid = pool_.size();
      for (int instr : ci.rhs) pool_.push_back(instr >= 0 ? a[instr] : internal::kApply);
      bool trivial = (mid - begin == pool_.size() - mid) &&
                     std::equal(pool_.begin() + begin, pool_.begin() + mid,
                                pool_.begin() + mid);
      if (trivial) {
        pool_.resize(begin);
      } else {
        instances_.push_back({static_cast<std::uint32_t>(begin),
                              static_cast<std::uint32_t>(mid),
                              static_cast<std::uint32_t>(pool_.size())});
      }
      int i = k - 1;
      while (i >= 0 && ++a[i] == n_) a[i--] = 0;
      if (i < 0) break;
    }
  }

  SideResult eval(std::uint32_t begin, std::uint32_t end) const {
    int stack[16];
    int sp = 0;
    int max_level = -1;
    for (std::uint32_t i = begin; i != end; ++i) {
      int c = pool_[i];
      if (c >= 0) {
        stack[sp++] = c;
      } else {
        int b = stack[--sp];
        int cell = stack[sp - 1] * n_ + b;
        int v = table_[cell];
        if (v < 0) return {-1, cell, i + 1 == end, max_level};
        if (level_[cell] > max_level) max_level = level_[cell];
        stack[sp - 1] = v;
      }
    }
    return {stack[0], -1, false, max_level};
  }

  // Re-evaluates one instance against the current table.  Returns false on a
  // definite conflict.  Otherwise re-registers the instance on a watch cell
  // and enqueues at most one forced assignment.
  bool examine(int idx) {
    const GroundInstance& gi = instances_[idx];
    SideResult l = eval(gi.lhs_begin, gi.lhs_end);
    SideResult r = eval(gi.lhs_end, gi.rhs_end);
    if (l.value >= 0 && r.value >= 0) {
      int lvl = std::max(l.max_level, r.max_level);
      if (l.value == r.value) {
        // Satisfied under the cells read; must be rechecked if the latest of
        // them is ever reassigned.  Constant instances drop out for good.
        if (lvl >= 0) watch_[trail_[lvl]].push_back(idx);
        return true;
      }
      if (lvl < 0) {
        unsat_ = true;  // ground equation between distinct constants
        return false;
      }
      watch_[trail_[lvl]].push_back(idx);
      return false;
    }
    if (l.value >= 0) {
      watch_[r.blocked_cell].push_back(idx);
      if (r.at_top) queue_.push_back({r.blocked_cell, l.value});
      return true;
    }
    if (r.value >= 0) {
      watch_[l.blocked_cell].push_back(idx);
      if (l.at_top) queue_.push_back({l.blocked_cell, r.value});
      return true;
    }
    watch_[l.blocked_cell].push_back(idx);
    return true;
  }

  bool flush_queue() {
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      auto [cell, value] = queue_[qi];
      if (table_[cell] != -1) {
        if (table_[cell] != value) return false;
        continue;
      }
      table_[cell] = value;
      level_[cell] = static_cast<int>(trail_.size());
      trail_.push_back(cell);
      pending_.clear();
      pending_.swap(watch_[cell]);
      for (std::size_t k = 0; k < pending_.size(); ++k) {
        if (!examine(pending_[k])) {
          // The conflicting instance re-registered itself; keep the rest
          // discoverable on this cell.
          for (std::size_t j = k + 1; j < pending_.size(); ++j)
            watch_[cell].push_back(pending_[j]);
          return false;
        }
      }
    }
    return true;
  }

  bool propagate(int cell, int value) {
    queue_.clear();
    queue_.push_back({cell, value});
    return flush_queue();
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      table_[trail_.back()] = -1;
      trail_.pop_back();
    }
  }

  // First unassigned cell in row-major order.  Along one search path
  // assignments only grow, so scanning can resume at `from`.
  int next_unassigned(int from) const {
    for (std::size_t i = from; i < cells_; ++i)
      if (table_[i] < 0) return static_cast<int>(i);
    return -1;
  }

  bool dfs(int from, const Sink& sink) {
    if (node_budget_ >= 0 && ++nodes_ > node_budget_) return false;
    int cell = next_unassigned(from);
    if (cell < 0) {
      if (!complete_table_ok()) return true;
      return sink(table_.data());
    }
    if (lex_leader_ && cell >= n_ && cell % n_ == 0 && lex_prunable()) return true;
    for (int v = 0; v < n_; ++v) {
      std::size_t mark = trail_.size();
      bool keep_going = true;
      if (propagate(cell, v)) keep_going = dfs(cell + 1, sink);
      undo_to(mark);
      if (!keep_going) return false;
    }
    return true;
  }

  // True if some relabeling of the partial table is already lexicographically
  // below it on the decided region, in which case no completion can be the
  // class representative.
  bool lex_prunable() const {
    const std::size_t nperms = perms_.size() / n_;
    for (std::size_t p = 0; p < nperms; ++p) {
      const int* perm = &perms_[p * n_];
      const int* inv = &inv_perms_[p * n_];
      for (int i = 0; i < n_; ++i) {
        const int* src_row = table_.data() + static_cast<std::size_t>(inv[i]) * n_;
        bool done = false;
        for (int j = 0; j < n_; ++j) {
          int mine = table_[static_cast<std::size_t>(i) * n_ + j];
          int src = src_row[inv[j]];
          if (mine < 0 || src < 0) {
            done = true;  // comparison undecided from here on
            break;
          }
          int theirs = perm[src];
          if (theirs != mine) {
            if (theirs < mine) return true;
            done = true;
            break;
          }
        }
        if (done) break;
      }
    }
    return false;
  }

  int n_;
  std::size_t cells_;
  bool lex_leader_;
  bool unsat_ = false;
  std::vector<int> table_;
  std::vector<int> level_;
  std::vector<int> trail_;
  std::vector<std::vector<int>> watch_;
  std::vector<int> pool_;
  std::vector<GroundInstance> instances_;
  std::vector<CompiledIdentity> compiled_;
  std::vector<std::pair<int, int>> queue_;
  std::vector<int> pending_;
  std::vector<int> perms_, inv_perms_;
  long long nodes_ = 0;
  long long node_budget_ = -1;
};

// Runs one branch of the search for `v` at size n.  branch < 0 runs the whole
// tree; otherwise only the subtree where the first decision cell equals
// `branch` (branch 0 also owns the propagation-complete case).
void run_branch(const Variety& v, int n, int branch, bool lex_leader,
                const TableSearch::Sink& sink) {
  TableSearch search(v, n, lex_leader);
  switch (search.prepare()) {
    case TableSearch::Init::kUnsat:
      return;
    case TableSearch::Init::kComplete:
      if (branch <= 0 && search.complete_table_ok()) sink(search.table());
      return;
    case TableSearch::Init::kBranching:
      search.search(branch, sink);
      return;
  }
}

// Runs branches 0..n-1 across `jobs` workers.  Every branch runs to
// completion; per-branch sinks must be independent.
void run_parallel(const Variety& v, int n, int jobs, bool lex_leader,
                  const std::function<TableSearch::Sink(int)>& sink_for_branch) {
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      int b = next.fetch_add(1);
      if (b >= n) return;
      run_branch(v, n, b, lex_leader, sink_for_branch(b));
    }
  };
  std::vector<std::thread> threads;
  int count = std::min(jobs, n);
  threads.reserve(count);
  for (int i = 0; i < count; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

bool use_lex_leader(SymmetryMode mode, int size) {
  switch (mode) {
    case SymmetryMode::kCanonicalReject: return false;
    case SymmetryMode::kLexLeader: return true;
    case SymmetryMode::kAuto: return size >= 6;
  }
  return false;
}

// Row-major decisions favor identities whose constraints land in early rows;
// a dualized identity set lands them in early columns instead and can search
// orders of magnitude worse (or better).  The models of the dual variety are
// exactly the transposes, so enumeration may run on whichever orientation
// probes cheaper and transpose the results back.
bool prefer_transposed(const Variety& v) {
  std::string key;
  for (const Identity& ident : v.identities) {
    key += ident.str();
    key += ';';
  }
  static std::mutex mutex;
  static std::map<std::string, bool> memo;
  {
    std::scoped_lock lock(mutex);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  constexpr int kProbeSize = 4;
  constexpr long long kProbeBudget = 300'000;
  long long primal = TableSearch(v, kProbeSize, false).measure_nodes(kProbeBudget);
  long long dualized =
      TableSearch(v.dualized(v.name), kProbeSize, false).measure_nodes(kProbeBudget);
  bool transposed = dualized < primal;
  std::scoped_lock lock(mutex);
  memo.emplace(std::move(key), transposed);
  return transposed;
}

void transpose_raw(const int* t, int n, std::vector<int>& out) {
  out.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) out[static_cast<std::size_t>(a) * n + b] = t[b * n + a];
}

}  // namespace

std::vector<Magma> enumerate_models(const Variety& v, int size,
                                    const EnumerationOptions& options) {
  if (size < 1) throw std::invalid_argument("size must be >= 1");
  if (size > options.canonicalization_bound)
    throw std::invalid_argument("size " + std::to_string(size) +
                                " above canonicalization bound " +
                                std::to_string(options.canonicalization_bound));
  const bool lex = use_lex_leader(options.symmetry, size);
  const bool transposed = prefer_transposed(v);
  const Variety oriented = transposed ? v.dualized(v.name) : v;
  // Canonicalizing the transposed table maps the dual orientation's models
  // back to v's; the final sorted set is identical either way.
  auto canonical_of = [size, transposed](const int* t, std::vector<int>& canon,
                                         std::vector<int>& scratch) {
    if (transposed) {
      transpose_raw(t, size, scratch);
      internal::canonicalize_raw(scratch.data(), size, canon);
    } else {
      internal::canonicalize_raw(t, size, canon);
    }
  };

  std::set<std::vector<int>> seen;
  if (options.jobs <= 1) {
    std::vector<int> canon, scratch;
    run_branch(oriented, size, -1, lex, [&](const int* t) {
      canonical_of(t, canon, scratch);
      seen.insert(canon);
      return true;
    });
  } else {
    std::vector<std::set<std::vector<int>>> parts(size);
    run_parallel(oriented, size, options.jobs, lex, [&](int b) -> TableSearch::Sink {
      auto* part = &parts[b];
      return [part, size, &canonical_of](const int* t) {
        std::vector<int> canon, scratch;
        canonical_of(t, canon, scratch);
        part->insert(std::move(canon));
        return true;
      };
    });
    for (auto& part : parts) seen.merge(part);
  }
  std::vector<Magma> out;
  out.reserve(seen.size());
  for (const auto& table : seen) out.emplace_back(size, table);
  return out;
}

long long count_models(const Variety& v, int size, const EnumerationOptions& options) {
  return static_cast<long long>(enumerate_models(v, size, options).size());
}

long long CounterexampleSearch::total_examined() const {
  long long total = 0;
  for (auto [size, count] : examined) total += count;
  return total;
}

CounterexampleSearch find_counterexample(const Variety& outer, const Variety& inner,
                                         std::span<const Magma> family, int max_size,
                                         const EnumerationOptions& options) {
  if (max_size < 1) throw std::invalid_argument("max_size must be >= 1");
  CounterexampleSearch out;

  // Membership and avoidance are isomorphism-invariant, so it suffices to
  // scan one canonical representative per class, in enumeration order.  The
  // scan itself is serial and identical for any worker count.
  std::vector<CompiledIdentity> inner_compiled;
  inner_compiled.reserve(inner.identities.size());
  for (const Identity& ident : inner.identities)
    inner_compiled.push_back(internal::compile_identity(ident));

  // Probes ordered smallest pattern first: small members embed (and get the
  // candidate skipped) cheapest.  `avoids` is a conjunction, so order does
  // not change any result.
  std::vector<const Magma*> by_size;
  by_size.reserve(family.size());
  for (const Magma& f : family) by_size.push_back(&f);
  std::stable_sort(by_size.begin(), by_size.end(),
                   [](const Magma* a, const Magma* b) { return a->size() < b->size(); });

  for (int n = 1; n <= max_size && !out.model; ++n) {
    // Family members larger than n cannot embed; skip their probes entirely.
    std::vector<internal::EmbedProbe> probes;
    for (const Magma* f : by_size)
      if (f->size() <= n) probes.emplace_back(f->table().data(), f->size());

    std::vector<Magma> models = enumerate_models(outer, n, options);
    long long examined = 0;
    for (const Magma& m : models) {
      ++examined;
      bool in_inner = true;
      for (const auto& ci : inner_compiled)
        if (!internal::satisfies_raw(ci, m.table().data(), n)) {
          in_inner = false;
          break;
        }
      if (in_inner) continue;
      bool contains_forbidden = false;
      for (auto& probe : probes)
        if (probe.test(m.table().data(), n)) {
          contains_forbidden = true;
          break;
        }
      if (contains_forbidden) continue;
      out.model = m;
      break;
    }
    out.examined.emplace_back(n, examined);
  }
  return out;
}

}  // namespace magmalab
