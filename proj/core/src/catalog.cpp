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

#include "magmalab/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace magmalab {

namespace {

Variety make_variety(const char* name, std::initializer_list<const char*> identities,
                     const char* note = "") {
  Variety v;
  v.name = name;
  for (const char* text : identities) v.identities.push_back(parse_identity(text));
  v.note = note;
  return v;
}

Magma make_model(const char* name, int n, std::initializer_list<int> cells) {
  return Magma(n, std::vector<int>(cells), name);
}

std::vector<Variety> primal_varieties() {
  std::vector<Variety> vs;
  vs.push_back(make_variety("U", {"x*y = x*z", "(x*y)*z = x*y"}));
  vs.push_back(make_variety("Utilde", {"x*y = x*z", "(x*y)*z = x"}));
  vs.push_back(make_variety("L1", {"(x*y)*z = x*x", "x*(y*z) = x*x"}));
  vs.push_back(make_variety("L2", {"(x*y)*z = x*x", "x*(y*z) = x*y"}));
  vs.push_back(make_variety("L3", {"(x*y)*z = x*y", "x*(y*z) = x*x"}));
  vs.push_back(make_variety("L4", {"(x*y)*z = x*z", "x*(y*z) = x*x"}));
  vs.push_back(make_variety(
      "L5", {"(x*y)*z = x*y", "x*(y*z) = x*y"},
      "An alternative form of this axiom pair circulates as (x*y)*z = x*z, "
      "x*(y*z) = x*x, which would coincide with L4; this catalog keeps the "
      "variant under which L5 is distinct."));
  vs.push_back(make_variety("L6", {"(x*y)*z = x*z", "x*(y*z) = x*y"}));
  vs.push_back(make_variety("L7", {"(x*y)*z = x*z", "x*(y*z) = x*z"}));
  vs.push_back(make_variety("LZ", {"x*y = x"}));
  vs.push_back(make_variety("RZ", {"y*x = x"}));
  vs.push_back(make_variety("Z", {"x*y = z*u"}));
  vs.push_back(make_variety("T", {"x = y"}));
  vs.push_back(make_variety("I", {"x*x = x"}));
  vs.push_back(make_variety("D", {"x*x = y*y"}));
  vs.push_back(make_variety("C", {"x*y = y*x"}));
  vs.push_back(make_variety("RB", {"(x*y)*z = x*(y*z)", "x*(y*x) = x"}));
  vs.push_back(make_variety(
      "L1C", {"(x*y)*z = x*x", "x*(y*z) = x*x", "x*y = y*x"}));
  vs.push_back(make_variety(
      "L1D", {"(x*y)*z = x*x", "x*(y*z) = x*x", "x*x = y*y"}));
  return vs;
}

std::vector<Magma> primal_models() {
  std::vector<Magma> ms;
  ms.push_back(make_model("2_LZ", 2, {0, 0,  //
                                      1, 1}));
  ms.push_back(make_model("2_RZ", 2, {0, 1,  //
                                      0, 1}));
  ms.push_back(make_model("2_N", 2, {0, 0,  //
                                     0, 0}));
  ms.push_back(make_model("N", 2, {1, 1,  //
                                   0, 0}));
  ms.push_back(make_model("Q", 4, {0, 0, 0, 0,  //
                                   0, 0, 3, 0,  //
                                   0, 3, 0, 0,  //
                                   0, 0, 0, 0}));
  ms.push_back(make_model("F", 4, {0, 0, 0, 0,  //
                                   0, 0, 3, 0,  //
                                   0, 0, 0, 0,  //
                                   0, 0, 0, 0}));
  ms.push_back(make_model("G", 5, {0, 0, 0, 0, 0,  //
                                   0, 0, 3, 0, 0,  //
                                   0, 4, 0, 0, 0,  //
                                   0, 0, 0, 0, 0,  //
                                   0, 0, 0, 0, 0}));
  ms.push_back(make_model("E", 4, {2, 3, 2, 2,  //
                                   1, 1, 1, 1,  //
                                   2, 2, 2, 2,  //
                                   2, 2, 2, 2}));
  ms.push_back(make_model("D", 4, {0, 2, 0, 0,  //
                                   3, 3, 3, 3,  //
                                   0, 2, 0, 0,  //
                                   3, 3, 3, 3}));
  ms.push_back(make_model("P", 4, {2, 3, 2, 2,  //
                                   1, 1, 1, 1,  //
                                   2, 2, 2, 2,  //
                                   3, 3, 3, 3}));
  ms.push_back(make_model("M1", 3, {0, 2, 0,  //
                                    1, 1, 1,  //
                                    0, 2, 0}));
  ms.push_back(make_model("M2", 4, {0, 2, 0, 2,  //
                                    1, 3, 1, 3,  //
                                    0, 2, 0, 2,  //
                                    1, 3, 1, 3}));
  ms.push_back(make_model("K1", 4, {2, 2, 2, 2,  //
                                    3, 2, 2, 2,  //
                                    2, 2, 2, 2,  //
                                    2, 2, 2, 2}));
  ms.push_back(make_model("K2", 4, {2, 3, 2, 2,  //
                                    3, 2, 2, 2,  //
                                    2, 2, 2, 2,  //
                                    2, 2, 2, 2}));
  ms.push_back(make_model("K3", 5, {2, 4, 2, 2, 2,  //
                                    3, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2}));
  ms.push_back(make_model("K4", 5, {4, 4, 4, 4, 4,  //
                                    3, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2,  //
                                    4, 4, 4, 4, 4}));
  ms.push_back(make_model("K5", 6, {5, 4, 5, 5, 5, 5,  //
                                    3, 2, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2, 2,  //
                                    5, 5, 5, 5, 5, 5,  //
                                    5, 5, 5, 5, 5, 5}));
  ms.push_back(make_model("H1", 4, {2, 3, 2, 2,  //
                                    2, 2, 2, 2,  //
                                    2, 2, 2, 2,  //
                                    3, 3, 3, 3}));
  ms.push_back(make_model("H2", 4, {3, 2, 3, 3,  //
                                    3, 2, 2, 2,  //
                                    2, 2, 2, 2,  //
                                    3, 3, 3, 3}));
  ms.push_back(make_model("H3", 4, {3, 2, 3, 3,  //
                                    2, 3, 3, 3,  //
                                    2, 2, 2, 2,  //
                                    3, 3, 3, 3}));
  ms.push_back(make_model("H4", 4, {2, 2, 2, 2,  //
                                    2, 3, 3, 3,  //
                                    2, 2, 2, 2,  //
                                    3, 3, 3, 3}));
  ms.push_back(make_model("H5", 5, {4, 2, 4, 4, 4,  //
                                    3, 2, 2, 2, 2,  //
                                    2, 2, 2, 2, 2,  //
                                    3, 3, 3, 3, 3,  //
                                    4, 4, 4, 4, 4}));
  ms.push_back(make_model("H6", 5, {3, 2, 3, 3, 3,  //
                                    2, 4, 4, 4, 4,  //
                                    2, 2, 2, 2, 2,  //
                                    3, 3, 3, 3, 3,  //
                                    4, 4, 4, 4, 4}));
  ms.push_back(make_model("H7", 5, {4, 2, 4, 4, 4,  //
                                    3, 4, 4, 4, 4,  //
                                    2, 2, 2, 2, 2,  //
                                    3, 3, 3, 3, 3,  //
                                    4, 4, 4, 4, 4}));
  ms.push_back(make_model("H8", 5, {2, 2, 2, 2, 2,  //
                                    3, 4, 4, 4, 4,  //
                                    2, 2, 2, 2, 2,  //
                                    3, 3, 3, 3, 3,  //
                                    4, 4, 4, 4, 4}));
  ms.push_back(make_model("H9", 6, {4, 2, 4, 4, 4, 4,  //
                                    3, 5, 5, 5, 5, 5,  //
                                    2, 2, 2, 2, 2, 2,  //
                                    3, 3, 3, 3, 3, 3,  //
                                    4, 4, 4, 4, 4, 4,  //
                                    5, 5, 5, 5, 5, 5}));
  return ms;
}

struct PairSpec {
  const char* inner;
  const char* outer;
  std::initializer_list<const char*> forbidden;
};

// The covering pairs of the variety lattice with their forbidden families.
constexpr std::initializer_list<PairSpec> kPairs = {
    {"T", "LZ", {"2_LZ"}},
    {"T", "Z", {"2_N"}},
    {"LZ", "RB", {"2_RZ"}},
    {"LZ", "U", {"2_N"}},
    {"LZ", "Utilde", {"N"}},
    {"Z", "U", {"2_LZ"}},
    {"Z", "L1C", {"Q"}},
    {"RB", "L7", {"2_N"}},
    {"U", "L1", {"K1", "K2", "K3", "K4", "K5"}},
    {"U", "L2", {"E"}},
    {"U", "L3", {"H1", "H2", "H3", "H4", "H5", "H6", "H7", "H8", "H9"}},
    {"U", "L4", {"D"}},
    {"U", "L5", {"P"}},
    {"U", "L6", {"M1", "M2"}},
    {"U", "L7", {"2_RZ"}},
    {"L1C", "L1D", {"F", "G"}},
    {"L1D", "L1", {"2_LZ"}},
};

int default_bound(const std::vector<Magma>& family) {
  int bound = 5;
  for (const Magma& f : family) bound = std::max(bound, f.size());
  return bound;
}

}  // namespace

std::string dual_variety_name(std::string_view name) {
  if (name == "LZ") return "RZ";
  if (name == "RZ") return "LZ";
  static constexpr std::string_view kSelfDual[] = {"T",  "Z",  "I",   "D",  "C",
                                                   "L7", "RB", "L1C", "L1D"};
  for (auto s : kSelfDual)
    if (name == s) return std::string(name);
  if (name.size() >= 2 && name.substr(name.size() - 2) == "^d")
    return std::string(name.substr(0, name.size() - 2));
  return std::string(name) + "^d";
}

Variety dual_variety(const Variety& v) { return v.dualized(dual_variety_name(v.name)); }

std::string Characterization::display() const {
  std::string out = inner.name + " = [[" + outer.name + " | ";
  for (std::size_t i = 0; i < forbidden.size(); ++i) {
    if (i) out += ",";
    out += forbidden[i].name();
  }
  out += "]]";
  return out;
}

Characterization Characterization::dual() const {
  Characterization d;
  if (id.size() >= 2 && id.compare(id.size() - 2, 2, "^d") == 0)
    d.id = id.substr(0, id.size() - 2);
  else
    d.id = id + "^d";
  d.inner = dual_variety(inner);
  d.outer = dual_variety(outer);
  d.forbidden.reserve(forbidden.size());
  for (const Magma& f : forbidden) d.forbidden.push_back(f.dual());
  d.bound = bound;
  d.is_dual = !is_dual;
  return d;
}

void Catalog::build_derived() {
  primal_variety_count_ = varieties_.size();
  primal_model_count_ = models_.size();

  for (std::size_t i = 0; i < primal_variety_count_; ++i) {
    const Variety& v = varieties_[i];
    std::string dname = dual_variety_name(v.name);
    if (dname != v.name) {
      bool present = false;
      for (std::size_t j = 0; j < primal_variety_count_; ++j)
        if (varieties_[j].name == dname) { present = true; break; }
      if (!present) varieties_.push_back(v.dualized(dname));
    }
  }
  for (std::size_t i = 0; i < primal_model_count_; ++i)
    models_.push_back(models_[i].dual());

  // Entries whose varieties or models are absent (possible in a relocated
  // catalog) are skipped; the builtin data resolves all of them.
  for (const PairSpec& p : kPairs) {
    const Variety* inner = variety(p.inner);
    const Variety* outer = variety(p.outer);
    if (!inner || !outer) continue;
    Characterization c;
    c.id = std::string(p.inner) + ":" + p.outer;
    c.inner = *inner;
    c.outer = *outer;
    bool complete = true;
    for (const char* name : p.forbidden) {
      const Magma* f = model(name);
      if (!f) {
        complete = false;
        break;
      }
      c.forbidden.push_back(*f);
    }
    if (!complete) continue;
    c.bound = default_bound(c.forbidden);
    characterizations_.push_back(std::move(c));
  }
  const std::size_t primal = characterizations_.size();
  characterizations_.reserve(primal * 2);
  for (std::size_t i = 0; i < primal; ++i)
    characterizations_.push_back(characterizations_[i].dual());
}

const Catalog& Catalog::builtin() {
  static const Catalog instance = [] {
    Catalog c;
    c.varieties_ = primal_varieties();
    c.models_ = primal_models();
    c.build_derived();
    return c;
  }();
  return instance;
}

const Variety* Catalog::variety(std::string_view name) const noexcept {
  for (const Variety& v : varieties_)
    if (v.name == name) return &v;
  return nullptr;
}

const Magma* Catalog::model(std::string_view name) const noexcept {
  for (const Magma& m : models_)
    if (m.name() == name) return &m;
  return nullptr;
}

const Characterization* Catalog::characterization(std::string_view id) const noexcept {
  for (const Characterization& c : characterizations_)
    if (c.id == id) return &c;
  return nullptr;
}

void Catalog::write_files(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "varieties");
  {
    std::ofstream out(dir / "models.tbl", std::ios::binary);
    std::span<const Magma> primal(models_.data(), primal_model_count_);
    out << to_text(primal);
  }
  for (std::size_t i = 0; i < primal_variety_count_; ++i) {
    const Variety& v = varieties_[i];
    std::ofstream out(dir / "varieties" / (v.name + ".ids"), std::ios::binary);
    out << "# " << v.name << '\n';
    for (const Identity& ident : v.identities) out << ident.str() << '\n';
  }
}

Catalog Catalog::load(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  Catalog c;
  c.models_ = load_magmas(dir / "models.tbl");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir / "varieties"))
    if (entry.path().extension() == ".ids") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Variety v;
    v.name = path.stem().string();
    v.identities = parse_identity_lines(buf.str());
    c.varieties_.push_back(std::move(v));
  }
  c.build_derived();
  return c;
}

}  // namespace magmalab
