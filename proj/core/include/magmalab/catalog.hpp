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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "magmalab/magma.hpp"
#include "magmalab/term.hpp"

namespace magmalab {

/// A forbidden-substructure claim: inner = [[outer | forbidden]], i.e. a
/// magma belongs to `inner` iff it belongs to `outer` and no member of
/// `forbidden` embeds into it.  `bound` is the default size limit for
/// exhaustive verification.
struct Characterization {
  std::string id;  // e.g. "T:LZ"; dual entries carry a "^d" suffix
  Variety inner;
  Variety outer;
  std::vector<Magma> forbidden;
  int bound = 0;
  bool is_dual = false;

  /// Rendered equation, e.g. "T = [[LZ | 2_LZ]]".
  std::string display() const;

  /// The identity-wise dual entry (id suffixed, varieties dualized under
  /// their dual names, forbidden tables transposed).
  Characterization dual() const;
};

/// The named varieties, models, and characterizations the toolkit ships
/// with, plus name resolution.  Also loadable from a directory of data
/// files with the same layout as write_files() produces, so users can edit
/// or relocate the data.
class Catalog {
 public:
  static const Catalog& builtin();

  /// Loads <dir>/models.tbl and <dir>/varieties/*.ids, then derives dual
  /// entries and the characterization list.  Throws if a referenced name is
  /// missing.
  static Catalog load(const std::filesystem::path& dir);

  const std::vector<Variety>& varieties() const noexcept { return varieties_; }
  const std::vector<Magma>& models() const noexcept { return models_; }
  const std::vector<Characterization>& characterizations() const noexcept {
    return characterizations_;
  }

  const Variety* variety(std::string_view name) const noexcept;
  const Magma* model(std::string_view name) const noexcept;
  const Characterization* characterization(std::string_view id) const noexcept;

  /// Writes models.tbl (primal models, in catalog order) and
  /// varieties/<name>.ids for each primal variety.
  void write_files(const std::filesystem::path& dir) const;

 private:
  Catalog() = default;
  void build_derived();  // duals + characterizations from primal entries

  std::vector<Variety> varieties_;  // primal entries first, then duals
  std::vector<Magma> models_;
  std::vector<Characterization> characterizations_;
  std::size_t primal_variety_count_ = 0;
  std::size_t primal_model_count_ = 0;
};

/// Dual name of a catalog variety: LZ <-> RZ, U <-> U^d, L1 <-> L1^d, ...;
/// self-dual varieties (T, Z, I, D, C, L7, RB, L1C, L1D) map to themselves.
/// Unknown names get a "^d" suffix toggled.
std::string dual_variety_name(std::string_view name);

/// Identity-wise dual with the mapped name.
Variety dual_variety(const Variety& v);

// Spec-style accessors over the builtin catalog.
inline const std::vector<Variety>& registry_varieties() {
  return Catalog::builtin().varieties();
}
inline const std::vector<Magma>& registry_models() { return Catalog::builtin().models(); }
inline const std::vector<Characterization>& registry_characterizations() {
  return Catalog::builtin().characterizations();
}

}  // namespace magmalab
