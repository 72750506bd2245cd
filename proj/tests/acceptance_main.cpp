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

// End-to-end acceptance suite.  Runs six criteria over the toolkit and
// prints exactly one PASS/FAIL line per criterion; exits nonzero if any
// fail.  Criteria with runtime budgets are timed.

#include <chrono>
#include <cmath>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "magmalab/catalog.hpp"
#include "magmalab/charverify.hpp"
#include "magmalab/magma.hpp"
#include "magmalab/modelgen.hpp"

using namespace magmalab;

namespace {

int failures = 0;
std::vector<std::string> notes;

void note(const std::string& text) { notes.push_back(text); }

void report(int criterion, const char* title, bool ok, double seconds) {
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << title << " ("
       << seconds << "s)";
  std::cout << line.str() << "\n";
  for (const std::string& n : notes) std::cout << "    - " << n << "\n";
  notes.clear();
  if (!ok) ++failures;
}

template <typename F>
void criterion(int number, const char* title, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note(std::string("exception: ") + e.what());
  }
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  report(number, title, ok, seconds);
}

const Catalog& cat() { return Catalog::builtin(); }

// ---------------------------------------------------------------------------
// Criterion 1: catalog fidelity.  Every primal model byte-matches its frozen
// source table, and every forbidden model separates its outer variety from
// its inner one.

const std::map<std::string, std::string>& expected_tables() {
  static const std::map<std::string, std::string> tables = {
      {"2_LZ", "name 2_LZ\n2\n0 0\n1 1\n"},
      {"2_RZ", "name 2_RZ\n2\n0 1\n0 1\n"},
      {"2_N", "name 2_N\n2\n0 0\n0 0\n"},
      {"N", "name N\n2\n1 1\n0 0\n"},
      {"Q", "name Q\n4\n0 0 0 0\n0 0 3 0\n0 3 0 0\n0 0 0 0\n"},
      {"F", "name F\n4\n0 0 0 0\n0 0 3 0\n0 0 0 0\n0 0 0 0\n"},
      {"G", "name G\n5\n0 0 0 0 0\n0 0 3 0 0\n0 4 0 0 0\n0 0 0 0 0\n0 0 0 0 0\n"},
      {"E", "name E\n4\n2 3 2 2\n1 1 1 1\n2 2 2 2\n2 2 2 2\n"},
      {"D", "name D\n4\n0 2 0 0\n3 3 3 3\n0 2 0 0\n3 3 3 3\n"},
      {"P", "name P\n4\n2 3 2 2\n1 1 1 1\n2 2 2 2\n3 3 3 3\n"},
      {"M1", "name M1\n3\n0 2 0\n1 1 1\n0 2 0\n"},
      {"M2", "name M2\n4\n0 2 0 2\n1 3 1 3\n0 2 0 2\n1 3 1 3\n"},
      {"K1", "name K1\n4\n2 2 2 2\n3 2 2 2\n2 2 2 2\n2 2 2 2\n"},
      {"K2", "name K2\n4\n2 3 2 2\n3 2 2 2\n2 2 2 2\n2 2 2 2\n"},
      {"K3", "name K3\n5\n2 4 2 2 2\n3 2 2 2 2\n2 2 2 2 2\n2 2 2 2 2\n2 2 2 2 2\n"},
      {"K4", "name K4\n5\n4 4 4 4 4\n3 2 2 2 2\n2 2 2 2 2\n2 2 2 2 2\n4 4 4 4 4\n"},
      {"K5",
       "name K5\n6\n5 4 5 5 5 5\n3 2 2 2 2 2\n2 2 2 2 2 2\n2 2 2 2 2 2\n"
       "5 5 5 5 5 5\n5 5 5 5 5 5\n"},
      {"H1", "name H1\n4\n2 3 2 2\n2 2 2 2\n2 2 2 2\n3 3 3 3\n"},
      {"H2", "name H2\n4\n3 2 3 3\n3 2 2 2\n2 2 2 2\n3 3 3 3\n"},
      {"H3", "name H3\n4\n3 2 3 3\n2 3 3 3\n2 2 2 2\n3 3 3 3\n"},
      {"H4", "name H4\n4\n2 2 2 2\n2 3 3 3\n2 2 2 2\n3 3 3 3\n"},
      {"H5", "name H5\n5\n4 2 4 4 4\n3 2 2 2 2\n2 2 2 2 2\n3 3 3 3 3\n4 4 4 4 4\n"},
      {"H6", "name H6\n5\n3 2 3 3 3\n2 4 4 4 4\n2 2 2 2 2\n3 3 3 3 3\n4 4 4 4 4\n"},
      {"H7", "name H7\n5\n4 2 4 4 4\n3 4 4 4 4\n2 2 2 2 2\n3 3 3 3 3\n4 4 4 4 4\n"},
      {"H8", "name H8\n5\n2 2 2 2 2\n3 4 4 4 4\n2 2 2 2 2\n3 3 3 3 3\n4 4 4 4 4\n"},
      {"H9",
       "name H9\n6\n4 2 4 4 4 4\n3 5 5 5 5 5\n2 2 2 2 2 2\n3 3 3 3 3 3\n"
       "4 4 4 4 4 4\n5 5 5 5 5 5\n"},
  };
  return tables;
}

bool criterion1() {
  bool ok = true;
  const auto& expected = expected_tables();
  int matched = 0;
  for (const auto& [name, text] : expected) {
    const Magma* m = cat().model(name);
    if (m == nullptr) {
      note("missing model " + name);
      ok = false;
      continue;
    }
    if (to_text(*m) != text) {
      note("table mismatch for " + name);
      ok = false;
    } else {
      ++matched;
    }
  }
  note(std::to_string(matched) + "/" + std::to_string(expected.size()) +
       " primal tables byte-match");

  // The shipped data files carry exactly these tables.
  Catalog loaded = Catalog::load(MAGMALAB_DATA_DIR);
  for (const auto& [name, text] : expected) {
    const Magma* m = loaded.model(name);
    if (m == nullptr || to_text(*m) != text) {
      note("shipped data file disagrees for " + name);
      ok = false;
    }
  }

  int separations = 0;
  for (const Characterization& c : cat().characterizations()) {
    for (const Magma& f : c.forbidden) {
      if (!in_variety(f, c.outer)) {
        note(f.name() + " is not in " + c.outer.name);
        ok = false;
      }
      if (in_variety(f, c.inner)) {
        note(f.name() + " is in " + c.inner.name);
        ok = false;
      }
      ++separations;
    }
  }
  note(std::to_string(separations) + " outer/inner separations checked");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 2: the full characterization suite verifies at its bounds
// (6 for the K and H families, 5 otherwise), duals included.

bool criterion2() {
  bool ok = true;
  int verified = 0;
  for (const Characterization& c : cat().characterizations()) {
    VerificationReport r = verify_characterization(c);
    if (r.bound != (c.id == "U:L1" || c.id == "U:L3" || c.id == "U:L1^d" ||
                            c.id == "U:L3^d"
                        ? 6
                        : 5)) {
      note(c.id + " ran at unexpected bound " + std::to_string(r.bound));
      ok = false;
    }
    if (!r.verified()) {
      note(c.id + " " + r.summary_line());
      ok = false;
    } else {
      ++verified;
    }
  }
  note(std::to_string(verified) + "/34 characterizations verified to bound");
  return ok && verified == 34;
}

// ---------------------------------------------------------------------------
// Criterion 3: minimality at bound 6 for the four multi-member families.

bool criterion3() {
  bool ok = true;
  for (const char* id : {"U:L1", "U:L3", "U:L6", "L1C:L1D"}) {
    const Characterization* c = cat().characterization(id);
    if (c == nullptr) {
      note(std::string("missing entry ") + id);
      ok = false;
      continue;
    }
    MinimalityReport r = check_minimality(*c, 6);
    for (const auto& member : r.members) {
      if (!member.necessary || !member.witness) {
        note(std::string(id) + " member " + member.name +
             " reported redundant at bound 6");
        ok = false;
        continue;
      }
      // The witness is genuinely a counterexample for the reduced family.
      const Magma& w = *member.witness;
      bool witness_ok = in_variety(w, c->outer) && !in_variety(w, c->inner);
      for (const Magma& f : c->forbidden)
        if (f.name() != member.name && f.size() <= w.size() && embeds(f, w))
          witness_ok = false;
      if (!witness_ok) {
        note(std::string(id) + " witness for " + member.name + " is not valid");
        ok = false;
      }
      const Magma* removed = cat().model(member.name);
      if (removed && is_isomorphic(w, *removed))
        note(std::string(id) + " without " + member.name + ": witness is " +
             member.name + " itself (size " + std::to_string(w.size()) + ")");
      else
        note(std::string(id) + " without " + member.name + ": witness of size " +
             std::to_string(w.size()));
    }
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 4: the discovery loop rediscovers the catalog families.

bool criterion4() {
  bool ok = true;
  struct PairCase {
    const char* inner;
    const char* outer;
    int bound;
    const char* expected_model;  // single-member family, up to isomorphism
  };
  const PairCase cases[] = {
      {"T", "LZ", 5, "2_LZ"},  {"Z", "U", 5, "2_LZ"},  {"LZ", "U", 5, "2_N"},
      {"U", "L4", 6, "D"},     {"U", "L5", 5, "P"},    {"U", "L7", 5, "2_RZ"},
      {"RB", "L7", 5, "2_N"},
  };
  for (const PairCase& pc : cases) {
    DiscoveryReport r =
        discover_family(*cat().variety(pc.inner), *cat().variety(pc.outer), pc.bound);
    if (!r.success || r.family.size() != 1 ||
        !is_isomorphic(r.family[0], *cat().model(pc.expected_model))) {
      note(std::string("(") + pc.inner + "," + pc.outer + ") did not rediscover {" +
           pc.expected_model + "}");
      ok = false;
      continue;
    }
    note(std::string("(") + pc.inner + "," + pc.outer + ") -> {" + pc.expected_model +
         "} in " + std::to_string(r.rounds) + " rounds");
  }

  // For the two large families only bounded equivalence is required: the
  // discovered family must itself verify at bound 6.
  for (const char* outer : {"L3", "L1"}) {
    DiscoveryReport r = discover_family(*cat().variety("U"), *cat().variety(outer), 6);
    if (!r.success) {
      note(std::string("(U,") + outer + ") discovery hit the round cap");
      ok = false;
      continue;
    }
    Characterization c;
    c.id = std::string("U:") + outer + "(discovered)";
    c.inner = *cat().variety("U");
    c.outer = *cat().variety(outer);
    c.forbidden = r.family;
    c.bound = 6;
    VerificationReport v = verify_characterization(c, 6);
    if (!v.verified()) {
      note(c.id + " failed to verify at bound 6");
      ok = false;
    }
    note(std::string("(U,") + outer + ") -> family of " +
         std::to_string(r.family.size()) + " in " + std::to_string(r.rounds) +
         " rounds, verified at 6");
  }
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 5: enumeration agrees with brute force over all tables, n <= 3.

int brute_eval(const Term& t, const std::vector<int>& table, int n,
               const std::map<std::string, int>& env) {
  if (t.is_variable()) return env.at(t.variable_name());
  return table[brute_eval(t.left(), table, n, env) * n +
               brute_eval(t.right(), table, n, env)];
}

bool brute_satisfies(const std::vector<int>& table, int n, const Identity& ident) {
  std::vector<std::string> vars = ident.vars();
  std::vector<int> a(vars.size(), 0);
  for (;;) {
    std::map<std::string, int> env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = a[i];
    if (brute_eval(ident.lhs, table, n, env) != brute_eval(ident.rhs, table, n, env))
      return false;
    int i = static_cast<int>(a.size()) - 1;
    while (i >= 0 && ++a[i] == n) a[i--] = 0;
    if (i < 0) return true;
  }
}

bool criterion5() {
  bool ok = true;
  long long comparisons = 0;
  for (const Variety& v : cat().varieties()) {
    for (int n = 1; n <= 3; ++n) {
      std::set<std::vector<int>> classes;
      std::vector<int> table(static_cast<std::size_t>(n) * n, 0);
      for (;;) {
        bool sat = true;
        for (const Identity& ident : v.identities)
          if (!brute_satisfies(table, n, ident)) {
            sat = false;
            break;
          }
        if (sat) {
          std::vector<int> perm(n), best = table;
          for (int i = 0; i < n; ++i) perm[i] = i;
          do {
            std::vector<int> cand(table.size());
            for (int a = 0; a < n; ++a)
              for (int b = 0; b < n; ++b)
                cand[perm[a] * n + perm[b]] = perm[table[a * n + b]];
            if (cand < best) best = cand;
          } while (std::next_permutation(perm.begin(), perm.end()));
          classes.insert(best);
        }
        int i = static_cast<int>(table.size()) - 1;
        while (i >= 0 && ++table[i] == n) table[i--] = 0;
        if (i < 0) break;
      }
      long long fast = count_models(v, n);
      ++comparisons;
      if (fast != static_cast<long long>(classes.size())) {
        note(v.name + " size " + std::to_string(n) + ": enumerate " +
             std::to_string(fast) + " vs brute " + std::to_string(classes.size()));
        ok = false;
      }
    }
  }
  note(std::to_string(comparisons) + " (variety, size) counts compared");
  return ok;
}

// ---------------------------------------------------------------------------
// Criterion 6: property suites.

bool criterion6() {
  bool ok = true;

  // Dual involution on every catalog identity and model.
  for (const Variety& v : cat().varieties())
    for (const Identity& i : v.identities)
      if (!(i.dual().dual() == i)) {
        note("dual involution fails on " + i.str());
        ok = false;
      }
  for (const Magma& m : cat().models()) {
    if (!m.dual().dual().same_table(m) || m.dual().dual().name() != m.name()) {
      note("dual involution fails on " + m.name());
      ok = false;
    }
  }

  // Satisfaction commutes with duality for every (model, identity) pair.
  for (const Magma& m : cat().models())
    for (const Variety& v : cat().varieties())
      for (const Identity& i : v.identities)
        if (satisfies(m, i) != satisfies(m.dual(), i.dual())) {
          note("duality commutation fails: " + m.name() + " / " + i.str());
          ok = false;
        }

  // Closure minimality by brute force for models of size <= 5.
  for (const Magma& m : cat().models()) {
    if (m.size() > 5) continue;
    std::vector<std::vector<int>> closed;
    for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
      std::vector<int> subset;
      for (int e = 0; e < m.size(); ++e)
        if (mask & (1u << e)) subset.push_back(e);
      if (is_closed_subset(m, subset)) closed.push_back(std::move(subset));
    }
    for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
      std::vector<int> gens;
      for (int e = 0; e < m.size(); ++e)
        if (mask & (1u << e)) gens.push_back(e);
      std::vector<int> closure = generated_submagma(m, gens);
      if (!is_closed_subset(m, closure) ||
          !std::includes(closure.begin(), closure.end(), gens.begin(), gens.end())) {
        note("closure not closed/containing on " + m.name());
        ok = false;
      }
      for (const auto& s : closed)
        if (std::includes(s.begin(), s.end(), gens.begin(), gens.end()) &&
            !std::includes(s.begin(), s.end(), closure.begin(), closure.end())) {
          note("closure not minimal on " + m.name());
          ok = false;
        }
    }
  }

  // Submagma heredity of variety membership across the catalog.
  for (const Magma& m : cat().models()) {
    std::vector<const Variety*> memberships;
    for (const Variety& v : cat().varieties())
      if (in_variety(m, v)) memberships.push_back(&v);
    for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
      std::vector<int> subset;
      for (int e = 0; e < m.size(); ++e)
        if (mask & (1u << e)) subset.push_back(e);
      if (!is_closed_subset(m, subset)) continue;
      Magma sub = restrict_to(m, subset);
      for (const Variety* v : memberships)
        if (!in_variety(sub, *v)) {
          note("heredity fails: " + m.name() + " / " + v->name);
          ok = false;
        }
    }
  }

  // Isomorphism is an equivalence relation on the catalog.
  const auto& models = cat().models();
  for (const Magma& a : models) {
    if (!is_isomorphic(a, a)) {
      note("iso not reflexive on " + a.name());
      ok = false;
    }
    for (const Magma& b : models) {
      if (a.size() != b.size()) continue;
      bool ab = is_isomorphic(a, b);
      if (ab != is_isomorphic(b, a)) {
        note("iso not symmetric on " + a.name() + "," + b.name());
        ok = false;
      }
      if (!ab) continue;
      for (const Magma& c : models) {
        if (c.size() != a.size()) continue;
        if (is_isomorphic(b, c) && !is_isomorphic(a, c)) {
          note("iso not transitive on " + a.name() + "," + b.name() + "," + c.name());
          ok = false;
        }
      }
    }
  }

  // embeds(f, m) iff some closed subset of m restricts to a copy of f.
  long long embed_pairs = 0;
  for (const Magma& f : models) {
    for (const Magma& h : models) {
      if (h.size() > 6 || f.size() > h.size()) continue;
      bool direct = embeds(f, h);
      bool via_subset = false;
      for (unsigned mask = 1; mask < (1u << h.size()) && !via_subset; ++mask) {
        std::vector<int> subset;
        for (int e = 0; e < h.size(); ++e)
          if (mask & (1u << e)) subset.push_back(e);
        if (static_cast<int>(subset.size()) != f.size()) continue;
        if (!is_closed_subset(h, subset)) continue;
        if (is_isomorphic(restrict_to(h, subset), f)) via_subset = true;
      }
      ++embed_pairs;
      if (direct != via_subset) {
        note("embed cross-check fails: " + f.name() + " into " + h.name());
        ok = false;
      }
    }
  }
  note(std::to_string(embed_pairs) + " embed/subset cross-checks");
  return ok;
}

}  // namespace

int main() {
  std::cout << "magmalab acceptance suite\n";

  double t1 = 0;
  {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion1();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    t1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (t1 >= 1.0) {
      note("runtime budget of 1s exceeded");
      ok = false;
    }
    report(1, "catalog fidelity (byte-exact tables, outer/inner separation)", ok, t1);
  }

  {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion2();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > 600.0) {
      note("runtime budget of 600s exceeded");
      ok = false;
    }
    report(2, "all 17 primal + 17 dual characterizations verify to bound", ok, s);
  }

  criterion(3, "family minimality at bound 6 (K, H, M, F/G families)", criterion3);

  {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criterion4();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (s > 900.0) {
      note("runtime budget of 900s exceeded");
      ok = false;
    }
    report(4, "discovery loop rediscovers the catalog families", ok, s);
  }

  criterion(5, "enumeration matches brute force over all tables (n <= 3)", criterion5);
  criterion(6, "property suites (duality, closure, heredity, iso laws, embeddings)",
            criterion6);

  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria FAILED\n";
  return 1;
}
