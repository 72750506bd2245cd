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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "magmalab/magma.hpp"
#include "magmalab/term.hpp"

namespace magmalab {

/// Isomorph-rejection strategy for enumeration.  kCanonicalReject
/// canonicalizes every complete table and deduplicates; kLexLeader
/// additionally prunes partial tables that already compare above some
/// relabeling of themselves.  kAuto picks kLexLeader from size 6 up.
enum class SymmetryMode { kAuto, kCanonicalReject, kLexLeader };

struct EnumerationOptions {
  int jobs = 1;  // worker threads; the search splits on the first decision cell
  SymmetryMode symmetry = SymmetryMode::kAuto;
  int canonicalization_bound = kDefaultCanonicalizationBound;
};

/// All models of `v` with exactly `size` elements, one canonical
/// representative per isomorphism class, in increasing table order.
/// Deterministic, including under jobs > 1.  Throws std::invalid_argument
/// if `size` exceeds the canonicalization bound.
std::vector<Magma> enumerate_models(const Variety& v, int size,
                                    const EnumerationOptions& options = {});

/// Number of isomorphism classes of `size`-element models of `v`.
long long count_models(const Variety& v, int size,
                       const EnumerationOptions& options = {});

struct CounterexampleSearch {
  /// Smallest-size model of the outer variety that avoids the family and
  /// violates the inner variety, or nullopt if none exists up to the bound.
  /// Returned in canonical form; ties are broken by the enumerator's
  /// deterministic (canonically sorted) order.  Membership and avoidance are
  /// isomorphism-invariant, so scanning one representative per class decides
  /// existence.
  std::optional<Magma> model;
  /// Class representatives examined per size, stopping at the first hit.
  /// Independent of the worker count.
  std::vector<std::pair<int, long long>> examined;

  long long total_examined() const;
};

/// Searches sizes 1..max_size in increasing order.
CounterexampleSearch find_counterexample(const Variety& outer, const Variety& inner,
                                         std::span<const Magma> family, int max_size,
                                         const EnumerationOptions& options = {});

}  // namespace magmalab
