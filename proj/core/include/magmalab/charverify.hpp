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
#include <string>
#include <vector>

#include "magmalab/catalog.hpp"
#include "magmalab/magma.hpp"
#include "magmalab/modelgen.hpp"

namespace magmalab {

enum class VerifyStatus { kVerifiedToBound, kRefuted };

/// How a characterization was refuted.
enum class FailureKind {
  kCounterexampleInOuter,    // a model of outer avoids the family, yet is not in inner
  kForbiddenModelInInner,    // a family member satisfies the inner variety
  kForbiddenModelNotInOuter  // a family member violates the outer variety
};

std::string to_string(VerifyStatus status);
std::string to_string(FailureKind kind);

/// Outcome of the bounded check of inner = [[outer | family]].  "Verified to
/// bound" is exhaustive evidence up to the bound, not a proof beyond it.
struct VerificationReport {
  std::string id;
  std::string display;
  int bound = 0;
  VerifyStatus status = VerifyStatus::kVerifiedToBound;
  std::optional<FailureKind> failure;
  std::optional<Magma> counterexample;
  std::vector<std::pair<int, long long>> examined;  // models tested per size

  bool verified() const noexcept { return status == VerifyStatus::kVerifiedToBound; }
  std::string summary_line() const;
  std::string text() const;  // summary plus the counterexample table, if any
  std::string json() const;  // one structured record
};

/// Checks, in order: (i) every family member is a model of the outer variety
/// and violates the inner one — since variety membership is inherited by
/// submagmas, this single check covers the "member of inner implies avoids
/// family" direction for all magmas, not just the ones enumerated; (ii) no
/// model of the outer variety up to `bound` avoids the family while escaping
/// the inner variety.  `bound` <= 0 uses the characterization's own bound.
VerificationReport verify_characterization(const Characterization& c, int bound = 0,
                                           const EnumerationOptions& options = {});

/// Redundancy analysis: a family member is necessary iff dropping it breaks
/// the characterization at the bound (the witness is the counterexample that
/// then appears).
struct MinimalityReport {
  struct Member {
    std::string name;
    bool necessary = false;
    std::optional<Magma> witness;
  };
  std::string id;
  int bound = 0;
  std::vector<Member> members;

  bool all_necessary() const noexcept;
  std::string text() const;
  std::string json() const;
};

MinimalityReport check_minimality(const Characterization& c, int bound = 0,
                                  const EnumerationOptions& options = {});

/// Iterated counterexample collection for the pair inner < outer: starting
/// from the empty family, repeatedly add the first counterexample (in
/// canonical form) until none remains below the bound (success) or the round
/// cap is hit (inconclusive).  Each round is one counterexample search, so a
/// successful run ends with the round that found nothing.
struct DiscoveryReport {
  std::string inner_name;
  std::string outer_name;
  std::vector<Magma> family;
  int rounds = 0;
  int bound = 0;
  bool success = false;

  std::string text() const;
  std::string json() const;
};

DiscoveryReport discover_family(const Variety& inner, const Variety& outer, int bound,
                                int round_cap = 64,
                                const EnumerationOptions& options = {});

}  // namespace magmalab
