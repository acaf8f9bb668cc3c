// Copyright 2026 The Restrictplan Authors.
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

// Serial references against the OpenMP kernels on synthetic inputs.

#include <random>
#include <string>
#include <vector>

#include <benchmark/benchmark.h>

#include "restrictplan/extraction.h"
#include "restrictplan/geometry.h"
#include "restrictplan/kernels.h"

namespace restrictplan {
namespace {

GeoPolygon Square(std::string id, double x, double y, double side) {
  return {std::move(id), "bench", {{x, y}, {x + side, y}, {x + side, y + side}, {x, y + side}}, {}};
}

struct OverlapInput {
  GeoPolygon subject;
  std::vector<GeoPolygon> polygons;
  std::vector<const GeoPolygon *> candidates;
};

OverlapInput MakeOverlapInput(int n) {
  OverlapInput in;
  in.subject = Square("s", 12.0, 51.0, 0.05);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-0.01, 0.05);
  for (int i = 0; i < n; ++i) {
    in.polygons.push_back(Square("c" + std::to_string(i), 12.0 + u(rng), 51.0 + u(rng), 0.01));
  }
  for (const auto &p : in.polygons) in.candidates.push_back(&p);
  return in;
}

void BM_OverlapAreasSerial(benchmark::State &state) {
  auto in = MakeOverlapInput(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::OverlapAreasSerial(in.subject, in.candidates));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OverlapAreas(benchmark::State &state) {
  auto in = MakeOverlapInput(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::OverlapAreas(in.subject, in.candidates));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

struct BucketInput {
  std::vector<kernels::DayRange> buckets;
  std::vector<std::vector<kernels::DayRange>> documents;
};

BucketInput MakeBucketInput(int docs) {
  BucketInput in;
  for (int d = 0; d < 3650; d += 30) in.buckets.push_back({d, d + 29});
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> start(0, 3600), len(0, 200), count(1, 6);
  for (int i = 0; i < docs; ++i) {
    std::vector<kernels::DayRange> ranges;
    for (int k = count(rng); k > 0; --k) {
      int s = start(rng);
      ranges.push_back({s, s + len(rng)});
    }
    in.documents.push_back(std::move(ranges));
  }
  return in;
}

void BM_CountDocumentsPerBucketSerial(benchmark::State &state) {
  auto in = MakeBucketInput(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::CountDocumentsPerBucketSerial(in.buckets, in.documents));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CountDocumentsPerBucket(benchmark::State &state) {
  auto in = MakeBucketInput(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::CountDocumentsPerBucket(in.buckets, in.documents));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<SourceText> MakeTexts(int n) {
  const std::vector<std::string> sentences = {
      "Während der Brutzeit vom 01.03. bis 30.09. ist das Betreten verboten.",
      "Die Lagerung von Abfällen ist am 04.03.2022 nicht zulässig.",
      "Im Jahr 2021 ist das Befahren des Ufers untersagt.",
      "Der Weg ist ganzjährig geöffnet.",
      "Tree felling is not permitted in February 2023.",
  };
  std::vector<SourceText> out;
  for (int i = 0; i < n; ++i) {
    std::string text;
    for (int k = 0; k < 40; ++k) text += sentences[(i + k) % sentences.size()] + " ";
    out.push_back({"doc-" + std::to_string(i), std::move(text)});
  }
  return out;
}

void BM_ExtractCorpusSerial(benchmark::State &state) {
  auto rules = RuleTable::LoadDefault();
  auto texts = MakeTexts(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ExtractCorpusSerial(texts, rules));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_ExtractCorpus(benchmark::State &state) {
  auto rules = RuleTable::LoadDefault();
  auto texts = MakeTexts(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ExtractCorpus(texts, rules));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_OverlapAreasSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_OverlapAreas)->Arg(64)->Arg(1024);
BENCHMARK(BM_CountDocumentsPerBucketSerial)->Arg(1000)->Arg(20000);
BENCHMARK(BM_CountDocumentsPerBucket)->Arg(1000)->Arg(20000);
BENCHMARK(BM_ExtractCorpusSerial)->Arg(100);
BENCHMARK(BM_ExtractCorpus)->Arg(100);

}  // namespace
}  // namespace restrictplan

BENCHMARK_MAIN();
