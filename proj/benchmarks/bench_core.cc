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

#include <benchmark/benchmark.h>

#include "magmalab/catalog.hpp"
#include "magmalab/charverify.hpp"
#include "magmalab/modelgen.hpp"

namespace {

using namespace magmalab;

const Magma& model(const char* name) { return *Catalog::builtin().model(name); }
const Variety& variety(const char* name) { return *Catalog::builtin().variety(name); }

void BM_Satisfies(benchmark::State& state) {
  const Magma& h9 = model("H9");
  Identity ident = parse_identity("x*(y*z) = x*x");
  for (auto _ : state) benchmark::DoNotOptimize(satisfies(h9, ident));
}
BENCHMARK(BM_Satisfies);

void BM_CanonicalForm(benchmark::State& state) {
  const Magma& m = model(state.range(0) == 0 ? "K5" : "Q");
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(m));
}
BENCHMARK(BM_CanonicalForm)->Arg(0)->Arg(1);

void BM_Embedding(benchmark::State& state) {
  const Magma& pattern = model("H1");
  const Magma& host = model("H9");
  for (auto _ : state) benchmark::DoNotOptimize(find_embedding(pattern, host));
}
BENCHMARK(BM_Embedding);

void BM_GeneratedSubmagma(benchmark::State& state) {
  const Magma& k5 = model("K5");
  std::vector<int> gens{0, 1};
  for (auto _ : state) benchmark::DoNotOptimize(generated_submagma(k5, gens));
}
BENCHMARK(BM_GeneratedSubmagma);

void BM_Enumerate(benchmark::State& state) {
  const Variety& v = variety("L3");
  const int size = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_models(v, size));
  state.SetLabel("L3");
}
BENCHMARK(BM_Enumerate)->Arg(3)->Arg(4);

void BM_VerifySmall(benchmark::State& state) {
  const Characterization& c = *Catalog::builtin().characterization("U:L4");
  for (auto _ : state) {
    VerificationReport r = verify_characterization(c, 4);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_VerifySmall);

}  // namespace

BENCHMARK_MAIN();
