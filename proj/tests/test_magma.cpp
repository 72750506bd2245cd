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

#include <doctest.h>

#include <algorithm>

#include "magmalab/catalog.hpp"
#include "magmalab/magma.hpp"

using namespace magmalab;

namespace {

const Magma& model(const char* name) {
  const Magma* m = Catalog::builtin().model(name);
  REQUIRE(m != nullptr);
  return *m;
}

const Variety& variety(const char* name) {
  const Variety* v = Catalog::builtin().variety(name);
  REQUIRE(v != nullptr);
  return *v;
}

// All closed subsets of m, as element lists.
std::vector<std::vector<int>> closed_subsets(const Magma& m) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
    std::vector<int> subset;
    for (int e = 0; e < m.size(); ++e)
      if (mask & (1u << e)) subset.push_back(e);
    if (is_closed_subset(m, subset)) out.push_back(std::move(subset));
  }
  return out;
}

}  // namespace

TEST_CASE("magma construction validates the table") {
  CHECK_THROWS_AS(Magma(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(Magma(2, {0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Magma(2, {0, 0, 0, 2}), std::invalid_argument);
  Magma one(1, {0});
  CHECK(one.op(0, 0) == 0);
}

TEST_CASE("satisfies") {
  CHECK(satisfies(model("2_LZ"), parse_identity("x*y = x")));
  CHECK_FALSE(satisfies(model("Q"), parse_identity("x*y = z*u")));
  CHECK(in_variety(model("Q"), variety("L1C")));

  auto violation = find_violation(model("Q"), parse_identity("x*y = z*u"));
  REQUIRE(violation.has_value());
  // First violation in enumeration order: x*y = 0*0 = 0 against z*u = 1*2 = 3.
  CHECK(violation->assignment ==
        std::vector<std::pair<std::string, int>>{{"x", 0}, {"y", 0}, {"z", 1}, {"u", 2}});
  CHECK(violation->lhs_value == 0);
  CHECK(violation->rhs_value == 3);
  CHECK(violation->str() == "x*y = z*u fails at x=0 y=0 z=1 u=2 (lhs=0, rhs=3)");
}

TEST_CASE("in_variety") {
  CHECK(in_variety(model("2_RZ"), variety("RB")));
  CHECK(in_variety(model("N"), variety("Utilde")));
  CHECK(in_variety(Magma(1, {0}), variety("T")));
  CHECK_FALSE(in_variety(model("2_LZ"), variety("T")));
}

TEST_CASE("dual transposes the table and toggles the name") {
  CHECK(model("2_LZ").dual().same_table(model("2_RZ")));
  CHECK(model("2_LZ").dual().name() == "2_LZ^d");
  CHECK(model("2_LZ").dual().dual().name() == "2_LZ");
  const Magma& p = model("P");
  CHECK(p.dual().dual().same_table(p));
  CHECK(in_variety(p.dual(), dual_variety(variety("L5"))));
  // satisfies(m, i) <=> satisfies(dual(m), dual(i))
  for (const char* name : {"Q", "K3", "H7", "N"})
    for (const char* ident : {"x*y = x*z", "(x*y)*z = x*x", "x*(y*z) = x*y"}) {
      Identity i = parse_identity(ident);
      CHECK(satisfies(model(name), i) == satisfies(model(name).dual(), i.dual()));
    }
}

TEST_CASE("generated_submagma") {
  const Magma& q = model("Q");
  CHECK(generated_submagma(q, std::vector<int>{1, 2}) == std::vector<int>{0, 1, 2, 3});
  CHECK(generated_submagma(q, std::vector<int>{0, 1, 2, 3}) ==
        std::vector<int>{0, 1, 2, 3});
  CHECK(generated_submagma(model("2_N"), std::vector<int>{1}) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(generated_submagma(q, std::vector<int>{}), std::invalid_argument);
  CHECK_THROWS_AS(generated_submagma(q, std::vector<int>{7}), std::invalid_argument);
}

TEST_CASE("closure is minimal among closed supersets") {
  for (const char* name : {"Q", "G", "M1", "K3", "H5", "N"}) {
    const Magma& m = model(name);
    auto closed = closed_subsets(m);
    for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
      std::vector<int> gens;
      for (int e = 0; e < m.size(); ++e)
        if (mask & (1u << e)) gens.push_back(e);
      std::vector<int> closure = generated_submagma(m, gens);
      CHECK(is_closed_subset(m, closure));
      CHECK(std::includes(closure.begin(), closure.end(), gens.begin(), gens.end()));
      for (const auto& s : closed) {
        if (std::includes(s.begin(), s.end(), gens.begin(), gens.end()))
          CHECK(std::includes(s.begin(), s.end(), closure.begin(), closure.end()));
      }
    }
  }
}

TEST_CASE("restrict_to") {
  CHECK(restrict_to(model("2_N"), std::vector<int>{0}).size() == 1);
  Magma sub = restrict_to(model("Q"), std::vector<int>{0, 1});
  CHECK(sub.same_table(model("2_N")));
  CHECK(restrict_to(model("Q"), std::vector<int>{0, 1, 2, 3}).same_table(model("Q")));
  // {1,2} is not closed in Q: 1*2 = 3.
  CHECK_THROWS_AS(restrict_to(model("Q"), std::vector<int>{1, 2}), std::invalid_argument);
}

TEST_CASE("isomorphism") {
  // One satisfies x*y = x, the other does not; no bijection can bridge that.
  CHECK_FALSE(isomorphism(model("2_LZ"), model("2_RZ")).has_value());
  // Swapping the elements of 2_LZ leaves its table unchanged.
  CHECK(isomorphism(model("2_LZ"), model("2_LZ")).has_value());

  auto relabel = [](const Magma& m, const std::vector<int>& p) {
    std::vector<int> t(static_cast<std::size_t>(m.size()) * m.size());
    for (int a = 0; a < m.size(); ++a)
      for (int b = 0; b < m.size(); ++b)
        t[static_cast<std::size_t>(p[a]) * m.size() + p[b]] = p[m.op(a, b)];
    return Magma(m.size(), std::move(t));
  };
  for (const char* name : {"K1", "E", "H3", "G"}) {
    const Magma& m = model(name);
    std::vector<int> perm(m.size());
    for (int i = 0; i < m.size(); ++i) perm[i] = (i + 1) % m.size();
    Magma shuffled = relabel(m, perm);
    auto map = isomorphism(m, shuffled);
    REQUIRE(map.has_value());
    // The witness must be operation-preserving (it may differ from `perm`
    // when the model has automorphisms).
    for (int a = 0; a < m.size(); ++a)
      for (int b = 0; b < m.size(); ++b)
        CHECK((*map)[m.op(a, b)] == shuffled.op((*map)[a], (*map)[b]));
  }

  CHECK(isomorphism(restrict_to(model("Q"), std::vector<int>{0, 1}), model("2_N"))
            .has_value());
  CHECK_FALSE(isomorphism(model("Q"), model("2_N")).has_value());
}

TEST_CASE("canonical_form") {
  CHECK(canonical_form(model("2_RZ")).same_table(canonical_form(model("2_LZ").dual())));
  const Magma& k1 = model("K1");
  Magma c = canonical_form(k1);
  CHECK(canonical_form(c).same_table(c));
  CHECK(is_isomorphic(c, k1));
  CHECK(c.table() <= k1.table());
  CHECK_THROWS_AS(canonical_form(Magma(9, std::vector<int>(81, 0))),
                  std::invalid_argument);
  CHECK_NOTHROW(canonical_form(Magma(9, std::vector<int>(81, 0)), 9));

  // canonical_form(a) == canonical_form(b) iff a and b are isomorphic, over a
  // mixed bag of same-size catalog models.
  const char* names[] = {"K1", "K2", "H1", "H2", "H3", "H4", "E", "D", "P", "M2", "Q", "F"};
  for (const char* a : names)
    for (const char* b : names) {
      bool iso = is_isomorphic(model(a), model(b));
      bool same = canonical_form(model(a)).same_table(canonical_form(model(b)));
      CHECK(iso == same);
    }
}

TEST_CASE("embeddings") {
  auto w = find_embedding(model("2_N"), model("Q"));
  REQUIRE(w.has_value());
  CHECK(w->map == std::vector<int>{0, 1});
  CHECK(w->valid());

  CHECK_FALSE(find_embedding(model("2_LZ"), model("Q")).has_value());
  for (const char* name : {"Q", "K5", "H9", "M1"}) {
    auto self = find_embedding(model(name), model(name));
    REQUIRE(self.has_value());
    CHECK(self->valid());
  }
  // Bigger patterns never embed into smaller hosts.
  CHECK_FALSE(find_embedding(model("Q"), model("2_N")).has_value());

  // {0 -> 0, 1 -> 2} happens to be another valid embedding of 2_N into Q;
  // {0 -> 1, 1 -> 2} is not (1*1 = 0 in Q, but the zero of 2_N maps to 1).
  EmbeddingWitness another{model("2_N"), model("Q"), {0, 2}};
  CHECK(another.valid());
  EmbeddingWitness bogus{model("2_N"), model("Q"), {1, 2}};
  CHECK_FALSE(bogus.valid());
  EmbeddingWitness short_map{model("2_N"), model("Q"), {0}};
  CHECK_FALSE(short_map.valid());
}

TEST_CASE("avoids") {
  std::vector<Magma> lz{model("2_LZ")};
  std::vector<Magma> nn{model("2_N")};
  CHECK(avoids(model("Q"), lz));
  CHECK_FALSE(avoids(model("Q"), nn));
  CHECK(avoids(model("Q"), std::vector<Magma>{}));
}

TEST_CASE("embeds agrees with closed-subset-plus-isomorphism") {
  const char* patterns[] = {"2_LZ", "2_RZ", "2_N", "N", "M1", "F", "Q"};
  const char* hosts[] = {"Q", "G", "E", "P", "M2", "K1", "H4", "N"};
  for (const char* pn : patterns) {
    const Magma& f = model(pn);
    for (const char* hn : hosts) {
      const Magma& h = model(hn);
      if (f.size() > h.size()) continue;
      bool via_subsets = false;
      for (const auto& s : closed_subsets(h))
        if (static_cast<int>(s.size()) == f.size() &&
            is_isomorphic(restrict_to(h, s), f)) {
          via_subsets = true;
          break;
        }
      CHECK(embeds(f, h) == via_subsets);
    }
  }
}

TEST_CASE("variety membership is inherited by submagmas") {
  for (const char* name : {"Q", "K2", "H6", "P", "M2"}) {
    const Magma& m = model(name);
    for (const auto& s : closed_subsets(m)) {
      Magma sub = restrict_to(m, s);
      for (const Variety& v : Catalog::builtin().varieties())
        if (in_variety(m, v)) CHECK(in_variety(sub, v));
    }
  }
}

TEST_CASE("table text format is exact") {
  CHECK(to_text(model("2_LZ")) == "name 2_LZ\n2\n0 0\n1 1\n");
  CHECK(to_text(Magma(2, {0, 0, 0, 0})) == "2\n0 0\n0 0\n");

  std::vector<Magma> pair{model("2_LZ"), model("2_N")};
  std::string text = to_text(pair);
  CHECK(text == "name 2_LZ\n2\n0 0\n1 1\n\nname 2_N\n2\n0 0\n0 0\n");

  std::vector<Magma> parsed = parse_magmas(text);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].same_table(model("2_LZ")));
  CHECK(parsed[0].name() == "2_LZ");
  CHECK(parsed[1].same_table(model("2_N")));
  CHECK(to_text(parsed) == text);
}

TEST_CASE("table parse errors carry line numbers") {
  try {
    parse_magmas("2\n0 0\n0 2\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_magmas("name Q\nx\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_magmas("2\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_magmas("2\n0 0 0\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_magmas("name\n2\n0 0\n0 0\n"), ParseError);
  CHECK_THROWS_AS(parse_magmas("0\n"), ParseError);
}
