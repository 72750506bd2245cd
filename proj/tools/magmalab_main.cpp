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

// Command-line surface of the toolkit.  Batch-oriented: every command reads
// its inputs, writes deterministic text, and exits with 0 (success/verified),
// 1 (refuted/false/absent), or 2 (usage or input errors).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "magmalab/catalog.hpp"
#include "magmalab/charverify.hpp"
#include "magmalab/magma.hpp"
#include "magmalab/modelgen.hpp"
#include "magmalab/term.hpp"

namespace {

using namespace magmalab;

constexpr const char* kCatalogEnvVar = "MAGMALAB_CATALOG_DIR";

const Catalog& active_catalog() {
  static const Catalog* catalog = []() -> const Catalog* {
    const char* dir = std::getenv(kCatalogEnvVar);
    if (dir == nullptr || *dir == '\0') return &Catalog::builtin();
    static const Catalog loaded = Catalog::load(dir);
    return &loaded;
  }();
  return *catalog;
}

// Name in the active catalog, or a path to a table file.
std::vector<Magma> resolve_magmas(const std::string& arg) {
  if (const Magma* m = active_catalog().model(arg)) return {*m};
  if (std::filesystem::exists(arg)) return load_magmas(arg);
  throw std::runtime_error("'" + arg + "' is neither a catalog model nor a file");
}

Magma resolve_magma(const std::string& arg) {
  std::vector<Magma> ms = resolve_magmas(arg);
  if (ms.size() != 1)
    throw std::runtime_error("'" + arg + "' contains " + std::to_string(ms.size()) +
                             " magmas; expected exactly one");
  return std::move(ms.front());
}

Variety resolve_variety(const std::string& arg) {
  if (const Variety* v = active_catalog().variety(arg)) return *v;
  if (std::filesystem::exists(arg)) {
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    Variety v;
    v.name = std::filesystem::path(arg).stem().string();
    v.identities = parse_identity_lines(buf.str());
    return v;
  }
  throw std::runtime_error("'" + arg + "' is neither a catalog variety nor a file");
}

std::vector<std::string> split_list(const std::string& arg) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= arg.size()) {
    std::size_t comma = arg.find(',', start);
    if (comma == std::string::npos) comma = arg.size();
    if (comma > start) out.push_back(arg.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

struct CommonSearchFlags {
  int jobs = 1;
  std::string json_path;
};

EnumerationOptions options_for(const CommonSearchFlags& flags) {
  EnumerationOptions opts;
  opts.jobs = flags.jobs;
  return opts;
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& input, const std::string& variety_arg) {
  Variety v = resolve_variety(variety_arg);
  std::vector<Magma> ms = resolve_magmas(input);
  bool all_in = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string label = ms[i].name().empty() ? "#" + std::to_string(i + 1) : ms[i].name();
    auto violation = find_violation(ms[i], v);
    std::cout << label << " in " << v.name << ": " << (violation ? "false" : "true");
    if (violation) {
      all_in = false;
      std::cout << "  [" << violation->str() << "]";
    }
    std::cout << "\n";
  }
  return all_in ? 0 : 1;
}

// ---------------------------------------------------------------------------
// enumerate

int cmd_enumerate(const std::string& variety_arg, int size, int from, bool count_only,
                  const std::string& symmetry, const std::string& output,
                  const CommonSearchFlags& flags) {
  Variety v = resolve_variety(variety_arg);
  EnumerationOptions opts = options_for(flags);
  if (symmetry == "canonical-reject") opts.symmetry = SymmetryMode::kCanonicalReject;
  else if (symmetry == "lex-leader") opts.symmetry = SymmetryMode::kLexLeader;
  else if (symmetry != "auto") throw std::runtime_error("unknown symmetry mode '" + symmetry + "'");
  if (from <= 0) from = size;
  std::ostringstream out;
  bool first = true;
  for (int n = from; n <= size; ++n) {
    std::vector<Magma> models = enumerate_models(v, n, opts);
    if (count_only) {
      out << models.size() << "\n";
    } else {
      for (const Magma& m : models) {
        if (!first) out << "\n";
        out << to_text(m);
        first = false;
      }
    }
  }
  write_or_print(output, out.str());
  return 0;
}

// ---------------------------------------------------------------------------
// embed / iso

int cmd_embed(const std::string& pattern_arg, const std::string& host_arg) {
  Magma pattern = resolve_magma(pattern_arg);
  Magma host = resolve_magma(host_arg);
  auto witness = find_embedding(pattern, host);
  if (!witness) {
    std::cout << "no embedding\n";
    return 1;
  }
  for (std::size_t p = 0; p < witness->map.size(); ++p) {
    if (p) std::cout << ' ';
    std::cout << p << "->" << witness->map[p];
  }
  std::cout << "\n";
  return 0;
}

int cmd_iso(const std::string& first_arg, const std::string& second_arg) {
  Magma a = resolve_magma(first_arg);
  Magma b = resolve_magma(second_arg);
  auto map = isomorphism(a, b);
  if (!map) {
    std::cout << "not isomorphic\n";
    return 1;
  }
  for (std::size_t p = 0; p < map->size(); ++p) {
    if (p) std::cout << ' ';
    std::cout << p << "->" << (*map)[p];
  }
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// dual / closure

int cmd_dual(const std::string& model_arg, const std::string& variety_arg,
             const std::string& identity_arg) {
  int given = (!model_arg.empty()) + (!variety_arg.empty()) + (!identity_arg.empty());
  if (given != 1)
    throw CLI::ValidationError("dual", "give exactly one of --model/--variety/--identity");
  if (!model_arg.empty()) {
    std::cout << to_text(resolve_magma(model_arg).dual());
  } else if (!variety_arg.empty()) {
    Variety v = dual_variety(resolve_variety(variety_arg));
    std::cout << "# " << v.name << "\n";
    for (const Identity& i : v.identities) std::cout << i.str() << "\n";
  } else {
    std::cout << parse_identity(identity_arg).dual().str() << "\n";
  }
  return 0;
}

int cmd_closure(const std::string& model_arg, const std::string& generators,
                bool print_table) {
  Magma m = resolve_magma(model_arg);
  std::vector<int> gens;
  for (const std::string& g : split_list(generators)) gens.push_back(std::stoi(g));
  std::vector<int> closed = generated_submagma(m, gens);
  for (std::size_t i = 0; i < closed.size(); ++i) {
    if (i) std::cout << ' ';
    std::cout << closed[i];
  }
  std::cout << "\n";
  if (print_table) std::cout << to_text(restrict_to(m, closed));
  return 0;
}

// ---------------------------------------------------------------------------
// verify / minimality / discover

Characterization characterization_from_flags(const std::string& entry,
                                             const std::string& inner,
                                             const std::string& outer,
                                             const std::string& forbidden) {
  if (!entry.empty()) {
    const Characterization* c = active_catalog().characterization(entry);
    if (!c) throw std::runtime_error("unknown catalog entry '" + entry + "'");
    return *c;
  }
  if (inner.empty() || outer.empty())
    throw CLI::ValidationError("verify", "give --entry or --inner/--outer");
  Characterization c;
  c.inner = resolve_variety(inner);
  c.outer = resolve_variety(outer);
  c.id = c.inner.name + ":" + c.outer.name;
  for (const std::string& name : split_list(forbidden))
    for (Magma& m : resolve_magmas(name)) c.forbidden.push_back(std::move(m));
  c.bound = 5;
  for (const Magma& f : c.forbidden) c.bound = std::max(c.bound, f.size());
  return c;
}

int cmd_verify(const std::string& entry, const std::string& inner,
               const std::string& outer, const std::string& forbidden, int bound,
               const CommonSearchFlags& flags) {
  Characterization c = characterization_from_flags(entry, inner, outer, forbidden);
  VerificationReport report = verify_characterization(c, bound, options_for(flags));
  std::cout << report.text();
  if (!flags.json_path.empty()) write_or_print(flags.json_path, report.json() + "\n");
  return report.verified() ? 0 : 1;
}

int cmd_minimality(const std::string& entry, const std::string& inner,
                   const std::string& outer, const std::string& forbidden, int bound,
                   const CommonSearchFlags& flags) {
  Characterization c = characterization_from_flags(entry, inner, outer, forbidden);
  MinimalityReport report = check_minimality(c, bound, options_for(flags));
  std::cout << report.text();
  if (!flags.json_path.empty()) write_or_print(flags.json_path, report.json() + "\n");
  return report.all_necessary() ? 0 : 1;
}

int cmd_discover(const std::string& inner, const std::string& outer, int bound,
                 int rounds, const CommonSearchFlags& flags) {
  DiscoveryReport report = discover_family(resolve_variety(inner),
                                           resolve_variety(outer), bound, rounds,
                                           options_for(flags));
  std::cout << report.text();
  if (!flags.json_path.empty()) write_or_print(flags.json_path, report.json() + "\n");
  return report.success ? 0 : 1;
}

// ---------------------------------------------------------------------------
// theorem1

struct OverrideDirectives {
  // id -> bound override; id -> model names to drop from the family
  std::vector<std::pair<std::string, int>> bounds;
  std::vector<std::pair<std::string, std::string>> drops;
};

OverrideDirectives parse_overrides(const std::string& path) {
  OverrideDirectives out;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open override file '" + path + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string id, verb, value;
    if (!(fields >> id)) continue;
    if (id[0] == '#') continue;
    if (!(fields >> verb >> value))
      throw std::runtime_error("override line " + std::to_string(line_no) +
                               ": expected '<entry> bound <n>' or '<entry> drop <model>'");
    if (verb == "bound") {
      out.bounds.emplace_back(id, std::stoi(value));
    } else if (verb == "drop") {
      out.drops.emplace_back(id, value);
    } else {
      throw std::runtime_error("override line " + std::to_string(line_no) +
                               ": unknown directive '" + verb + "'");
    }
  }
  return out;
}

int cmd_theorem1(const std::string& override_path, int global_bound, bool minimality,
                 const CommonSearchFlags& flags) {
  OverrideDirectives overrides;
  if (!override_path.empty()) overrides = parse_overrides(override_path);

  std::vector<Characterization> entries = active_catalog().characterizations();
  for (auto& [id, names] : overrides.drops) {
    bool matched = false;
    for (Characterization& c : entries) {
      if (c.id != id) continue;
      matched = true;
      std::erase_if(c.forbidden, [&](const Magma& m) { return m.name() == names; });
    }
    if (!matched) throw std::runtime_error("override references unknown entry '" + id + "'");
  }
  auto bound_for = [&](const Characterization& c) {
    int bound = global_bound > 0 ? global_bound : c.bound;
    for (const auto& [id, b] : overrides.bounds)
      if (id == c.id) bound = b;
    return bound;
  };

  EnumerationOptions opts = options_for(flags);
  std::ostringstream json_records;
  json_records << "{\"verifications\":[";
  bool all_verified = true;
  const Characterization* first_failure = nullptr;
  std::vector<VerificationReport> reports;
  std::cout << "== characterizations ==\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Characterization& c = entries[i];
    VerificationReport report = verify_characterization(c, bound_for(c), opts);
    std::cout << report.summary_line() << "\n";
    if (!report.verified()) {
      all_verified = false;
      if (!first_failure) first_failure = &c;
      if (report.failure) std::cout << "  failure: " << to_string(*report.failure) << "\n";
      if (report.counterexample) std::cout << to_text(*report.counterexample);
    }
    if (i) json_records << ",";
    json_records << report.json();
    reports.push_back(std::move(report));
  }

  bool all_necessary = true;
  json_records << "],\"minimality\":[";
  if (minimality) {
    std::cout << "== minimality ==\n";
    bool first = true;
    for (const Characterization& c : entries) {
      MinimalityReport report = check_minimality(c, bound_for(c), opts);
      for (const auto& member : report.members) {
        std::cout << c.id << " without " << member.name << ": "
                  << (member.necessary ? "refuted (necessary" : "verified (redundant");
        if (member.witness)
          std::cout << ", witness size " << member.witness->size() << ")";
        else
          std::cout << ")";
        std::cout << "\n";
      }
      if (!report.all_necessary()) all_necessary = false;
      if (!first) json_records << ",";
      json_records << report.json();
      first = false;
    }
  }
  json_records << "]}";
  if (!flags.json_path.empty()) write_or_print(flags.json_path, json_records.str() + "\n");

  if (all_verified && all_necessary) {
    std::cout << "== all " << entries.size()
              << " characterizations verified to bound"
              << (minimality ? ", every family member necessary" : "") << " ==\n";
    return 0;
  }
  std::cout << "== FAILED";
  if (first_failure) std::cout << ": " << first_failure->display();
  std::cout << " ==\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite magma toolkit: variety membership, submagma closure, "
               "isomorphism and embedding search, bounded model enumeration, and "
               "forbidden-submagma characterization checking"};
  app.require_subcommand(1);

  CommonSearchFlags flags;

  // check
  auto* check = app.add_subcommand("check", "variety membership of magmas in a table file");
  std::string check_input, check_variety;
  check->add_option("--input", check_input, "table file or catalog model name")->required();
  check->add_option("--variety", check_variety, "catalog variety name or identity file")
      ->required();

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "models of a variety up to isomorphism");
  std::string enum_variety, enum_symmetry = "auto", enum_output;
  int enum_size = 0, enum_from = 0;
  bool enum_count_only = false;
  enumerate->add_option("--variety", enum_variety, "variety name or identity file")->required();
  enumerate->add_option("--size", enum_size, "number of elements")->required();
  enumerate->add_option("--from", enum_from, "also enumerate smaller sizes, starting here");
  enumerate->add_flag("--count-only", enum_count_only, "print one count per size");
  enumerate->add_option("--symmetry", enum_symmetry,
                        "auto | canonical-reject | lex-leader");
  enumerate->add_option("--output", enum_output, "write to file instead of stdout");
  enumerate->add_option("--jobs", flags.jobs, "worker threads");

  // embed / iso
  auto* embed = app.add_subcommand("embed", "find an embedding of one magma into another");
  std::string embed_pattern, embed_host;
  embed->add_option("--pattern", embed_pattern, "magma to embed")->required();
  embed->add_option("--host", embed_host, "magma to embed into")->required();

  auto* iso = app.add_subcommand("iso", "find an isomorphism between two magmas");
  std::string iso_first, iso_second;
  iso->add_option("--first", iso_first)->required();
  iso->add_option("--second", iso_second)->required();

  // dual / closure
  auto* dual = app.add_subcommand("dual", "dualize a magma, variety, or identity");
  std::string dual_model, dual_variety_arg, dual_identity;
  dual->add_option("--model", dual_model);
  dual->add_option("--variety", dual_variety_arg);
  dual->add_option("--identity", dual_identity);

  auto* closure = app.add_subcommand("closure", "submagma generated by a set of elements");
  std::string closure_model, closure_generators;
  bool closure_table = false;
  closure->add_option("--model", closure_model)->required();
  closure->add_option("--generators", closure_generators, "comma-separated elements")
      ->required();
  closure->add_flag("--table", closure_table, "also print the generated submagma's table");

  // verify / minimality / discover
  auto* verify = app.add_subcommand("verify", "bounded check of inner = [[outer | family]]");
  std::string v_entry, v_inner, v_outer, v_forbidden;
  int v_bound = 0;
  verify->add_option("--entry", v_entry, "catalog entry id, e.g. U:L3 or U:L3^d");
  verify->add_option("--inner", v_inner);
  verify->add_option("--outer", v_outer);
  verify->add_option("--forbidden", v_forbidden, "comma-separated models");
  verify->add_option("--bound", v_bound, "size bound (default: entry bound)");
  verify->add_option("--jobs", flags.jobs);
  verify->add_option("--json", flags.json_path, "also write a JSON record");

  auto* minimality = app.add_subcommand("minimality",
                                        "which family members are necessary at the bound");
  std::string m_entry, m_inner, m_outer, m_forbidden;
  int m_bound = 0;
  minimality->add_option("--entry", m_entry);
  minimality->add_option("--inner", m_inner);
  minimality->add_option("--outer", m_outer);
  minimality->add_option("--forbidden", m_forbidden);
  minimality->add_option("--bound", m_bound);
  minimality->add_option("--jobs", flags.jobs);
  minimality->add_option("--json", flags.json_path);

  auto* discover = app.add_subcommand("discover",
                                      "grow a forbidden family from counterexamples");
  std::string d_inner, d_outer;
  int d_bound = 5, d_rounds = 64;
  discover->add_option("--inner", d_inner)->required();
  discover->add_option("--outer", d_outer)->required();
  discover->add_option("--bound", d_bound, "size bound (default 5)");
  discover->add_option("--rounds", d_rounds, "round cap (default 64)");
  discover->add_option("--jobs", flags.jobs);
  discover->add_option("--json", flags.json_path);

  // theorem1
  auto* theorem1 = app.add_subcommand(
      "theorem1", "verify the whole built-in characterization catalog, with minimality");
  std::string t_override;
  int t_bound = 0;
  bool t_no_minimality = false;
  theorem1->add_option("--override", t_override,
                       "file of '<entry> bound <n>' / '<entry> drop <model>' lines");
  theorem1->add_option("--bound", t_bound, "global bound override");
  theorem1->add_flag("--no-minimality", t_no_minimality, "skip the minimality pass");
  theorem1->add_option("--jobs", flags.jobs);
  theorem1->add_option("--json", flags.json_path);

  try {
    app.parse(argc, argv);
    if (*check) return cmd_check(check_input, check_variety);
    if (*enumerate)
      return cmd_enumerate(enum_variety, enum_size, enum_from, enum_count_only,
                           enum_symmetry, enum_output, flags);
    if (*embed) return cmd_embed(embed_pattern, embed_host);
    if (*iso) return cmd_iso(iso_first, iso_second);
    if (*dual) return cmd_dual(dual_model, dual_variety_arg, dual_identity);
    if (*closure) return cmd_closure(closure_model, closure_generators, closure_table);
    if (*verify) return cmd_verify(v_entry, v_inner, v_outer, v_forbidden, v_bound, flags);
    if (*minimality)
      return cmd_minimality(m_entry, m_inner, m_outer, m_forbidden, m_bound, flags);
    if (*discover) return cmd_discover(d_inner, d_outer, d_bound, d_rounds, flags);
    if (*theorem1) return cmd_theorem1(t_override, t_bound, !t_no_minimality, flags);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
