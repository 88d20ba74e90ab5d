// Copyright 2026 The ect Authors
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

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "core/image.hpp"
#include "core/ingest.hpp"

namespace ect {

// Default edge threshold: a "moderate" correlation in all three channels.
inline constexpr double kDefaultThreshold = 0.3 * 0.3 * 0.3;

// N×N product of per-channel Pearson correlations, symmetric, diagonal
// forced to zero.
struct TotalCorrelationMatrix {
  std::vector<int> ids;        // image ids, 1-based
  std::vector<double> values;  // n*n row-major

  int size() const { return static_cast<int>(ids.size()); }
  double at(int i, int j) const { return values[static_cast<size_t>(i) * ids.size() + j]; }
  double& at(int i, int j) { return values[static_cast<size_t>(i) * ids.size() + j]; }
};

// Undirected simple graph; vertex k carries image id vertex_ids[k].
struct CorrelationGraph {
  std::vector<int> vertex_ids;
  std::vector<uint8_t> adjacency;               // n*n symmetric, zero diagonal
  std::vector<std::pair<int, int>> edges;       // vertex index pairs, a < b
  std::vector<double> edge_weights;             // matching total correlations
  double threshold = kDefaultThreshold;

  int order() const { return static_cast<int>(vertex_ids.size()); }
  bool connected(int a, int b) const {
    return adjacency[static_cast<size_t>(a) * vertex_ids.size() + b] != 0;
  }
  int degree(int v) const;
};

struct CentralityRecord {
  int image_id = 0;
  int degree = 0;
  double betweenness = 0.0;
  double closeness = 0.0;
};

struct GraphStructure {
  std::vector<int> component_of;                // per vertex, labels 0..count-1
  int component_count = 0;
  std::vector<std::pair<int, int>> bridges;     // cut edges, as image id pairs
};

// totcor[i][j] = product over R,G,B of pearson(image i plane, image j plane),
// computed over all P pixels; diagonal zero. Throws ConstantChannel naming
// the image and channel when a Pearson denominator vanishes. Requires N >= 2.
TotalCorrelationMatrix total_correlation(const CorpusTensor& corpus, int threads = 0);

// Edge iff value >= threshold (inclusive, exact floating comparison).
CorrelationGraph threshold_graph(const TotalCorrelationMatrix& totcor, double threshold);

// Removes degree-zero vertices; returns the reduced graph and the removed ids.
std::pair<CorrelationGraph, std::vector<int>> remove_isolates(const CorrelationGraph& graph);

// Degree, Freeman shortest-path betweenness (undirected, each unordered pair
// once, fractional credit over tied paths), and within-component closeness
// (component order - 1 over summed distances; 0 for singletons).
std::vector<CentralityRecord> centralities(const CorrelationGraph& graph);

// Connected components (traversal order labels) and cut edges (lowpoint).
GraphStructure bridges_and_components(const CorrelationGraph& graph);

// Deterministic Fruchterman-Reingold layout: seeded initial placement, 500
// iterations, linear cooling. Coordinates are centered on the origin; no
// claim is made beyond determinism and graph structure.
std::vector<std::array<double, 2>> layout(const CorrelationGraph& graph, uint64_t seed);

}  // namespace ect
