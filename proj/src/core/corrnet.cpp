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

#include "core/corrnet.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace ect {

int CorrelationGraph::degree(int v) const {
  const int n = order();
  int d = 0;
  for (int u = 0; u < n; ++u) d += adjacency[static_cast<size_t>(v) * n + u];
  return d;
}

namespace {

double clamp_corr(double r) { return r < -1.0 ? -1.0 : (r > 1.0 ? 1.0 : r); }

// Mean and sum of squared deviations of one channel of one image.
struct ChannelMoments {
  double mean = 0.0;
  double sumsq = 0.0;
};

ChannelMoments channel_moments(const double* img, int64_t slots, int c) {
  ChannelMoments m;
  double sum = 0.0;
  for (int64_t s = 0; s < slots; ++s) sum += img[3 * s + c];
  m.mean = sum / static_cast<double>(slots);
  for (int64_t s = 0; s < slots; ++s) {
    const double d = img[3 * s + c] - m.mean;
    m.sumsq += d * d;
  }
  return m;
}

}  // namespace

TotalCorrelationMatrix total_correlation(const CorpusTensor& corpus, int threads) {
  const int n = corpus.count();
  if (n < 2) fail(ErrorCode::InsufficientImages, "correlation needs at least two images");
  const int64_t slots = static_cast<int64_t>(corpus.crop_size()) * corpus.crop_size();

  // Two-pass moments per image and channel; a vanishing sum of squares means
  // Pearson is undefined for that image.
  std::vector<std::array<ChannelMoments, 3>> moments(static_cast<size_t>(n));
  parallel_blocks(0, n, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      const double* img = corpus.image_data(static_cast<int>(i));
      for (int c = 0; c < 3; ++c) {
        moments[static_cast<size_t>(i)][static_cast<size_t>(c)] =
            channel_moments(img, slots, c);
      }
    }
  });
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      if (moments[static_cast<size_t>(i)][static_cast<size_t>(c)].sumsq == 0.0) {
        fail(ErrorCode::ConstantChannel,
             "image " + std::to_string(corpus.image_ids()[static_cast<size_t>(i)]) +
                 " has a constant " + channel_name(static_cast<Channel>(c)) +
                 " channel; Pearson correlation is undefined");
      }
    }
  }

  TotalCorrelationMatrix out;
  out.ids = corpus.image_ids();
  out.values.assign(static_cast<size_t>(n) * n, 0.0);

  const int64_t pairs = static_cast<int64_t>(n) * (n - 1) / 2;
  parallel_blocks(0, pairs, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t t = lo; t < hi; ++t) {
      // Unrank t into (i, j), i < j.
      int i = 0;
      int64_t rem = t;
      while (rem >= n - 1 - i) {
        rem -= n - 1 - i;
        ++i;
      }
      const int j = i + 1 + static_cast<int>(rem);
      const double* a = corpus.image_data(i);
      const double* b = corpus.image_data(j);
      double total = 1.0;
      for (int c = 0; c < 3; ++c) {
        const ChannelMoments& ma = moments[static_cast<size_t>(i)][static_cast<size_t>(c)];
        const ChannelMoments& mb = moments[static_cast<size_t>(j)][static_cast<size_t>(c)];
        double dot = 0.0;
        for (int64_t s = 0; s < slots; ++s) {
          dot += (a[3 * s + c] - ma.mean) * (b[3 * s + c] - mb.mean);
        }
        total *= clamp_corr(dot / std::sqrt(ma.sumsq * mb.sumsq));
      }
      out.at(i, j) = total;
      out.at(j, i) = total;
    }
  });
  return out;
}

CorrelationGraph threshold_graph(const TotalCorrelationMatrix& totcor, double threshold) {
  if (!std::isfinite(threshold)) {
    fail(ErrorCode::InvalidArgument, "threshold must be finite");
  }
  const int n = totcor.size();
  CorrelationGraph g;
  g.threshold = threshold;
  g.vertex_ids = totcor.ids;
  g.adjacency.assign(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (totcor.at(i, j) >= threshold) {
        g.adjacency[static_cast<size_t>(i) * n + j] = 1;
        g.adjacency[static_cast<size_t>(j) * n + i] = 1;
        g.edges.emplace_back(i, j);
        g.edge_weights.push_back(totcor.at(i, j));
      }
    }
  }
  return g;
}

std::pair<CorrelationGraph, std::vector<int>> remove_isolates(const CorrelationGraph& graph) {
  const int n = graph.order();
  std::vector<int> keep;
  std::vector<int> isolates;
  std::vector<int> new_index(static_cast<size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (graph.degree(v) > 0) {
      new_index[static_cast<size_t>(v)] = static_cast<int>(keep.size());
      keep.push_back(v);
    } else {
      isolates.push_back(graph.vertex_ids[static_cast<size_t>(v)]);
    }
  }

  CorrelationGraph out;
  out.threshold = graph.threshold;
  const int m = static_cast<int>(keep.size());
  out.vertex_ids.resize(static_cast<size_t>(m));
  out.adjacency.assign(static_cast<size_t>(m) * m, 0);
  for (int a = 0; a < m; ++a) {
    out.vertex_ids[static_cast<size_t>(a)] = graph.vertex_ids[static_cast<size_t>(keep[a])];
    for (int b = 0; b < m; ++b) {
      out.adjacency[static_cast<size_t>(a) * m + b] =
          graph.adjacency[static_cast<size_t>(keep[a]) * n + keep[b]];
    }
  }
  for (size_t e = 0; e < graph.edges.size(); ++e) {
    const auto [a, b] = graph.edges[e];
    out.edges.emplace_back(new_index[static_cast<size_t>(a)], new_index[static_cast<size_t>(b)]);
    out.edge_weights.push_back(graph.edge_weights[e]);
  }
  return {std::move(out), std::move(isolates)};
}

namespace {

// BFS distances and shortest-path counts from one source.
struct BfsResult {
  std::vector<int> dist;
  std::vector<uint64_t> sigma;
};

BfsResult bfs_paths(const CorrelationGraph& g, int source) {
  const int n = g.order();
  BfsResult r{std::vector<int>(static_cast<size_t>(n), -1),
              std::vector<uint64_t>(static_cast<size_t>(n), 0)};
  r.dist[static_cast<size_t>(source)] = 0;
  r.sigma[static_cast<size_t>(source)] = 1;
  std::queue<int> q;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int u = 0; u < n; ++u) {
      if (!g.connected(v, u)) continue;
      if (r.dist[static_cast<size_t>(u)] < 0) {
        r.dist[static_cast<size_t>(u)] = r.dist[static_cast<size_t>(v)] + 1;
        q.push(u);
      }
      if (r.dist[static_cast<size_t>(u)] == r.dist[static_cast<size_t>(v)] + 1) {
        r.sigma[static_cast<size_t>(u)] += r.sigma[static_cast<size_t>(v)];
      }
    }
  }
  return r;
}

std::vector<int> component_labels(const CorrelationGraph& g) {
  const int n = g.order();
  std::vector<int> comp(static_cast<size_t>(n), -1);
  int label = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[static_cast<size_t>(s)] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    comp[static_cast<size_t>(s)] = label;
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int u = 0; u < n; ++u) {
        if (g.connected(v, u) && comp[static_cast<size_t>(u)] < 0) {
          comp[static_cast<size_t>(u)] = label;
          q.push(u);
        }
      }
    }
    ++label;
  }
  return comp;
}

}  // namespace

std::vector<CentralityRecord> centralities(const CorrelationGraph& graph) {
  const int n = graph.order();
  if (n < 1) fail(ErrorCode::InvalidArgument, "centralities need at least one vertex");

  std::vector<BfsResult> bfs(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s) bfs[static_cast<size_t>(s)] = bfs_paths(graph, s);
  const std::vector<int> comp = component_labels(graph);

  std::vector<CentralityRecord> records(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& rec = records[static_cast<size_t>(v)];
    rec.image_id = graph.vertex_ids[static_cast<size_t>(v)];
    rec.degree = graph.degree(v);

    int reachable = 0;
    int64_t dist_sum = 0;
    for (int u = 0; u < n; ++u) {
      if (u == v || comp[static_cast<size_t>(u)] != comp[static_cast<size_t>(v)]) continue;
      ++reachable;
      dist_sum += bfs[static_cast<size_t>(v)].dist[static_cast<size_t>(u)];
    }
    rec.closeness = reachable == 0 ? 0.0
                                   : static_cast<double>(reachable) /
                                         static_cast<double>(dist_sum);
  }

  // Pair-sum betweenness: for each unordered pair (s,t) the vertices on
  // shortest s-t paths collect sigma_sv * sigma_vt / sigma_st. Path counts
  // are exact integers, and the s,t,v loop order fixes the accumulation.
  for (int s = 0; s < n; ++s) {
    const BfsResult& from_s = bfs[static_cast<size_t>(s)];
    for (int t = s + 1; t < n; ++t) {
      if (comp[static_cast<size_t>(t)] != comp[static_cast<size_t>(s)]) continue;
      const BfsResult& from_t = bfs[static_cast<size_t>(t)];
      const int d_st = from_s.dist[static_cast<size_t>(t)];
      const double sigma_st = static_cast<double>(from_s.sigma[static_cast<size_t>(t)]);
      for (int v = 0; v < n; ++v) {
        if (v == s || v == t) continue;
        if (from_s.dist[static_cast<size_t>(v)] < 0) continue;
        if (from_s.dist[static_cast<size_t>(v)] + from_t.dist[static_cast<size_t>(v)] != d_st)
          continue;
        const uint64_t through = from_s.sigma[static_cast<size_t>(v)] *
                                 from_t.sigma[static_cast<size_t>(v)];
        records[static_cast<size_t>(v)].betweenness +=
            static_cast<double>(through) / sigma_st;
      }
    }
  }
  return records;
}

GraphStructure bridges_and_components(const CorrelationGraph& graph) {
  const int n = graph.order();
  GraphStructure out;
  out.component_of = component_labels(graph);
  out.component_count = n == 0 ? 0 : 1 + *std::max_element(out.component_of.begin(),
                                                           out.component_of.end());

  // Iterative lowpoint DFS over the adjacency matrix.
  std::vector<int> disc(static_cast<size_t>(n), -1);
  std::vector<int> low(static_cast<size_t>(n), 0);
  std::vector<int> parent(static_cast<size_t>(n), -1);
  std::vector<int> next_neighbor(static_cast<size_t>(n), 0);
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<size_t>(root)] >= 0) continue;
    std::vector<int> stack{root};
    disc[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = timer++;
    while (!stack.empty()) {
      const int v = stack.back();
      int& u = next_neighbor[static_cast<size_t>(v)];
      for (; u < n; ++u) {
        if (!graph.connected(v, u) || u == parent[static_cast<size_t>(v)]) continue;
        if (disc[static_cast<size_t>(u)] < 0) break;
        low[static_cast<size_t>(v)] =
            std::min(low[static_cast<size_t>(v)], disc[static_cast<size_t>(u)]);
      }
      if (u < n) {
        parent[static_cast<size_t>(u)] = v;
        disc[static_cast<size_t>(u)] = low[static_cast<size_t>(u)] = timer++;
        stack.push_back(u);
        ++u;
      } else {
        stack.pop_back();
        if (!stack.empty()) {
          const int p = stack.back();
          low[static_cast<size_t>(p)] =
              std::min(low[static_cast<size_t>(p)], low[static_cast<size_t>(v)]);
          if (low[static_cast<size_t>(v)] > disc[static_cast<size_t>(p)]) {
            out.bridges.emplace_back(graph.vertex_ids[static_cast<size_t>(p)],
                                     graph.vertex_ids[static_cast<size_t>(v)]);
          }
        }
      }
    }
  }
  return out;
}

std::vector<std::array<double, 2>> layout(const CorrelationGraph& graph, uint64_t seed) {
  const int n = graph.order();
  if (n < 1) fail(ErrorCode::InvalidArgument, "layout needs at least one vertex");
  if (n == 1) return {{0.0, 0.0}};

  constexpr int kIterations = 500;
  Rng rng(seed);
  std::vector<std::array<double, 2>> pos(static_cast<size_t>(n));
  for (auto& p : pos) {
    p[0] = rng.uniform();
    p[1] = rng.uniform();
  }

  const double k = std::sqrt(1.0 / n);
  std::vector<std::array<double, 2>> disp(static_cast<size_t>(n));
  for (int iter = 0; iter < kIterations; ++iter) {
    const double temp = 0.1 * (1.0 - static_cast<double>(iter) / kIterations);
    for (auto& d : disp) d = {0.0, 0.0};

    for (int v = 0; v < n; ++v) {
      for (int u = v + 1; u < n; ++u) {
        double dx = pos[static_cast<size_t>(v)][0] - pos[static_cast<size_t>(u)][0];
        double dy = pos[static_cast<size_t>(v)][1] - pos[static_cast<size_t>(u)][1];
        double dist = std::sqrt(dx * dx + dy * dy);
        if (dist < 1e-9) {
          // Coincident points get a fixed index-derived push direction.
          const double angle = 2.0 * 3.14159265358979323846 *
                               static_cast<double>((v * 31 + u) % 97) / 97.0;
          dx = std::cos(angle) * 1e-9;
          dy = std::sin(angle) * 1e-9;
          dist = 1e-9;
        }
        const double repulse = k * k / dist;
        disp[static_cast<size_t>(v)][0] += dx / dist * repulse;
        disp[static_cast<size_t>(v)][1] += dy / dist * repulse;
        disp[static_cast<size_t>(u)][0] -= dx / dist * repulse;
        disp[static_cast<size_t>(u)][1] -= dy / dist * repulse;
      }
    }
    for (const auto& [a, b] : graph.edges) {
      double dx = pos[static_cast<size_t>(a)][0] - pos[static_cast<size_t>(b)][0];
      double dy = pos[static_cast<size_t>(a)][1] - pos[static_cast<size_t>(b)][1];
      double dist = std::sqrt(dx * dx + dy * dy);
      if (dist < 1e-9) dist = 1e-9;
      const double attract = dist * dist / k;
      disp[static_cast<size_t>(a)][0] -= dx / dist * attract;
      disp[static_cast<size_t>(a)][1] -= dy / dist * attract;
      disp[static_cast<size_t>(b)][0] += dx / dist * attract;
      disp[static_cast<size_t>(b)][1] += dy / dist * attract;
    }
    for (int v = 0; v < n; ++v) {
      const double dx = disp[static_cast<size_t>(v)][0];
      const double dy = disp[static_cast<size_t>(v)][1];
      const double len = std::sqrt(dx * dx + dy * dy);
      if (len > 0.0) {
        const double step = std::min(len, temp);
        pos[static_cast<size_t>(v)][0] += dx / len * step;
        pos[static_cast<size_t>(v)][1] += dy / len * step;
      }
    }
  }

  double cx = 0.0, cy = 0.0;
  for (const auto& p : pos) {
    cx += p[0];
    cy += p[1];
  }
  cx /= n;
  cy /= n;
  for (auto& p : pos) {
    p[0] -= cx;
    p[1] -= cy;
  }
  return pos;
}

}  // namespace ect
