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

#include "magmalab/charverify.hpp"

#include <sstream>

#include <json.hpp>

namespace magmalab {

namespace {

using nlohmann::json;

json magma_json(const Magma& m) {
  json rows = json::array();
  for (int a = 0; a < m.size(); ++a) {
    json row = json::array();
    for (int b = 0; b < m.size(); ++b) row.push_back(m.op(a, b));
    rows.push_back(std::move(row));
  }
  json out;
  if (!m.name().empty()) out["name"] = m.name();
  out["size"] = m.size();
  out["table"] = std::move(rows);
  return out;
}

json examined_json(const std::vector<std::pair<int, long long>>& examined) {
  json out = json::object();
  for (auto [size, count] : examined) out[std::to_string(size)] = count;
  return out;
}

}  // namespace

std::string to_string(VerifyStatus status) {
  return status == VerifyStatus::kVerifiedToBound ? "verified-to-bound" : "refuted";
}

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kCounterexampleInOuter:
      return "in-outer-avoids-family-not-in-inner";
    case FailureKind::kForbiddenModelInInner:
      return "forbidden-model-in-inner";
    case FailureKind::kForbiddenModelNotInOuter:
      return "forbidden-model-not-in-outer";
  }
  return "?";
}

std::string VerificationReport::summary_line() const {
  std::ostringstream os;
  os << display << " : " << to_string(status) << " (bound " << bound << ", examined "
     << [this] {
          long long total = 0;
          for (auto [s, c] : examined) total += c;
          return total;
        }()
     << " models)";
  return os.str();
}

std::string VerificationReport::text() const {
  std::string out = summary_line() + "\n";
  if (failure) out += "failure: " + to_string(*failure) + "\n";
  if (counterexample) out += to_text(*counterexample);
  return out;
}

std::string VerificationReport::json() const {
  nlohmann::json j;
  j["id"] = id;
  j["display"] = display;
  j["bound"] = bound;
  j["status"] = to_string(status);
  if (failure) j["failure"] = to_string(*failure);
  if (counterexample) j["counterexample"] = magma_json(*counterexample);
  j["examined"] = examined_json(examined);
  return j.dump();
}

VerificationReport verify_characterization(const Characterization& c, int bound,
                                           const EnumerationOptions& options) {
  VerificationReport report;
  report.id = c.id;
  report.display = c.display();
  report.bound = bound > 0 ? bound : c.bound;

  for (const Magma& f : c.forbidden) {
    if (!in_variety(f, c.outer)) {
      report.status = VerifyStatus::kRefuted;
      report.failure = FailureKind::kForbiddenModelNotInOuter;
      report.counterexample = f;
      return report;
    }
    if (in_variety(f, c.inner)) {
      report.status = VerifyStatus::kRefuted;
      report.failure = FailureKind::kForbiddenModelInInner;
      report.counterexample = f;
      return report;
    }
  }

  CounterexampleSearch search =
      find_counterexample(c.outer, c.inner, c.forbidden, report.bound, options);
  report.examined = std::move(search.examined);
  if (search.model) {
    report.status = VerifyStatus::kRefuted;
    report.failure = FailureKind::kCounterexampleInOuter;
    report.counterexample = std::move(search.model);
  }
  return report;
}

bool MinimalityReport::all_necessary() const noexcept {
  for (const Member& m : members)
    if (!m.necessary) return false;
  return true;
}

std::string MinimalityReport::text() const {
  std::ostringstream os;
  for (const Member& m : members) {
    os << id << " without " << m.name << ": "
       << (m.necessary ? "refuted (member necessary)" : "still verified (member redundant)");
    if (m.witness) {
      os << ", witness:\n" << to_text(*m.witness);
    } else {
      os << "\n";
    }
  }
  return os.str();
}

std::string MinimalityReport::json() const {
  nlohmann::json j;
  j["id"] = id;
  j["bound"] = bound;
  j["members"] = nlohmann::json::array();
  for (const Member& m : members) {
    nlohmann::json mj;
    mj["name"] = m.name;
    mj["necessary"] = m.necessary;
    if (m.witness) mj["witness"] = magma_json(*m.witness);
    j["members"].push_back(std::move(mj));
  }
  return j.dump();
}

MinimalityReport check_minimality(const Characterization& c, int bound,
                                  const EnumerationOptions& options) {
  MinimalityReport report;
  report.id = c.id;
  report.bound = bound > 0 ? bound : c.bound;
  for (std::size_t drop = 0; drop < c.forbidden.size(); ++drop) {
    std::vector<Magma> family;
    family.reserve(c.forbidden.size() - 1);
    for (std::size_t i = 0; i < c.forbidden.size(); ++i)
      if (i != drop) family.push_back(c.forbidden[i]);
    CounterexampleSearch search =
        find_counterexample(c.outer, c.inner, family, report.bound, options);
    MinimalityReport::Member member;
    member.name = c.forbidden[drop].name();
    member.necessary = search.model.has_value();
    member.witness = std::move(search.model);
    report.members.push_back(std::move(member));
  }
  return report;
}

std::string DiscoveryReport::text() const {
  std::ostringstream os;
  os << "discover " << inner_name << " inside " << outer_name << ": "
     << (success ? "success" : "inconclusive (round cap reached)") << ", " << rounds
     << " rounds, bound " << bound << ", family of " << family.size() << "\n";
  for (const Magma& m : family) os << "\n" << to_text(m);
  return os.str();
}

std::string DiscoveryReport::json() const {
  nlohmann::json j;
  j["inner"] = inner_name;
  j["outer"] = outer_name;
  j["rounds"] = rounds;
  j["bound"] = bound;
  j["success"] = success;
  j["family"] = nlohmann::json::array();
  for (const Magma& m : family) j["family"].push_back(magma_json(m));
  return j.dump();
}

DiscoveryReport discover_family(const Variety& inner, const Variety& outer, int bound,
                                int round_cap, const EnumerationOptions& options) {
  DiscoveryReport report;
  report.inner_name = inner.name;
  report.outer_name = outer.name;
  report.bound = bound;

  // Each round needs the first outer-variety model (smallest size, least
  // canonical table) that escapes the inner variety and avoids the family so
  // far.  Since the family only grows, the candidate pool only shrinks:
  // enumerate each size once up front and knock candidates out as family
  // members start embedding into them.
  std::vector<Magma> candidates;
  for (int n = 1; n <= bound; ++n)
    for (Magma& m : enumerate_models(outer, n, options))
      if (!in_variety(m, inner)) candidates.push_back(std::move(m));
  std::vector<char> alive(candidates.size(), 1);

  while (report.rounds < round_cap) {
    ++report.rounds;
    const Magma* found = nullptr;
    for (std::size_t i = 0; i < candidates.size() && !found; ++i) {
      if (!alive[i]) continue;
      if (avoids(candidates[i], report.family))
        found = &candidates[i];
      else
        alive[i] = 0;
    }
    if (!found) {
      report.success = true;
      break;
    }
    Magma member = *found;  // enumerate_models already returns canonical forms
    member.rename("c" + std::to_string(report.family.size() + 1));
    report.family.push_back(std::move(member));
  }
  return report;
}

}  // namespace magmalab
