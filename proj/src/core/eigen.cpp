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

#include "core/eigen.hpp"

#include <cmath>
#include <string>

#include "core/parallel.hpp"
#include "core/pixstats.hpp"

namespace ect {

namespace {

constexpr double kNegativeEigenvalueTolerance = -1e-12;

}  // namespace

Eigen::MatrixXd build_channel_matrix(const CorpusTensor& corpus, Channel channel,
                                     int threads) {
  const int side = corpus.crop_size();
  const int n = corpus.count();
  const int64_t p = static_cast<int64_t>(side) * side;
  Eigen::MatrixXd m(p, n);

  if (channel == Channel::Gray) {
    std::vector<Plane> gray = flatten_gray(corpus, threads);
    parallel_blocks(0, n, threads, [&](int64_t lo, int64_t hi) {
      for (int64_t k = lo; k < hi; ++k) {
        const Plane& plane = gray[static_cast<size_t>(k)];
        double* col = m.col(k).data();
        for (int x = 0; x < side; ++x) {
          for (int y = 0; y < side; ++y) *col++ = plane.at(y, x);
        }
      }
    });
    return m;
  }

  const int c = static_cast<int>(channel);
  parallel_blocks(0, n, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t k = lo; k < hi; ++k) {
      const double* img = corpus.image_data(static_cast<int>(k));
      double* col = m.col(k).data();
      for (int x = 0; x < side; ++x) {
        for (int y = 0; y < side; ++y) {
          *col++ = img[(static_cast<size_t>(y) * side + x) * 3 + c];
        }
      }
    }
  });
  return m;
}

EigenDecomposition decompose(Eigen::MatrixXd matrix, Channel channel, int height,
                             int width, int threads) {
  const int64_t p = matrix.rows();
  const int n = static_cast<int>(matrix.cols());
  if (n < 2) fail(ErrorCode::InsufficientImages, "decomposition needs at least two images");
  if (p < n) fail(ErrorCode::InvalidArgument, "decomposition needs at least as many pixels as images");
  if (static_cast<int64_t>(height) * width != p) {
    fail(ErrorCode::DimensionMismatch, "plane shape does not match matrix rows");
  }

  // Center each image column by its own mean over pixels.
  const Eigen::RowVectorXd col_means = matrix.colwise().mean();
  matrix.rowwise() -= col_means;

  // N×N between-image covariance, divisor P-1. Each entry is one sequential
  // dot product, so the matrix is identical for every thread count.
  Eigen::MatrixXd cov(n, n);
  const double inv = 1.0 / static_cast<double>(p - 1);
  const int64_t pairs = static_cast<int64_t>(n) * (n + 1) / 2;
  parallel_blocks(0, pairs, threads, [&](int64_t lo, int64_t hi) {
    for (int64_t t = lo; t < hi; ++t) {
      // Unrank t into (i, j), i <= j, row-major over the upper triangle.
      int i = 0;
      int64_t rem = t;
      while (rem >= n - i) {
        rem -= n - i;
        ++i;
      }
      const int j = i + static_cast<int>(rem);
      const double v = matrix.col(i).dot(matrix.col(j)) * inv;
      cov(i, j) = v;
      cov(j, i) = v;
    }
  });

  if (cov.trace() == 0.0) {
    fail(ErrorCode::DegenerateCorpus,
         std::string("all ") + channel_name(channel) +
             " planes are constant; no variance to decompose");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::Internal, "symmetric eigensolver did not converge");
  }

  EigenDecomposition out;
  out.channel = channel;
  out.height = height;
  out.width = width;
  out.eigenvalues.resize(static_cast<size_t>(n));
  out.loadings.resize(n, n);

  // Solver returns ascending order; store descending and clamp the tiny
  // negatives that symmetric solvers produce on rank-deficient input.
  for (int k = 0; k < n; ++k) {
    double ev = solver.eigenvalues()(n - 1 - k);
    if (ev < 0.0) {
      if (ev < kNegativeEigenvalueTolerance) {
        fail(ErrorCode::Internal,
             "covariance eigenvalue " + std::to_string(ev) + " below tolerance");
      }
      ev = 0.0;
    }
    out.eigenvalues[static_cast<size_t>(k)] = ev;
    out.loadings.col(k) = solver.eigenvectors().col(n - 1 - k);
  }

  // scores = centered * loadings, row blocks in parallel.
  out.scores.resize(p, n);
  parallel_blocks(0, p, threads, [&](int64_t lo, int64_t hi) {
    out.scores.middleRows(lo, hi - lo).noalias() =
        matrix.middleRows(lo, hi - lo) * out.loadings;
  });

  // Canonical signs: anchor each column at its largest-|value| score entry
  // (highest index on ties) and make that entry positive.
  for (int k = 0; k < n; ++k) {
    auto col = out.scores.col(k);
    int64_t anchor = 0;
    for (int64_t s = 1; s < p; ++s) {
      if (std::abs(col(s)) >= std::abs(col(anchor))) anchor = s;
    }
    if (col(anchor) < 0.0) {
      out.scores.col(k) = -col;
      out.loadings.col(k) = -out.loadings.col(k);
    }
  }

  double total = 0.0;
  for (double ev : out.eigenvalues) total += ev;
  out.proportions.resize(static_cast<size_t>(n));
  out.cumulative.resize(static_cast<size_t>(n));
  double running = 0.0;
  for (int k = 0; k < n; ++k) {
    running += out.eigenvalues[static_cast<size_t>(k)];
    out.proportions[static_cast<size_t>(k)] = out.eigenvalues[static_cast<size_t>(k)] / total;
    out.cumulative[static_cast<size_t>(k)] = running / total;
  }
  return out;
}

EigenDecomposition decompose_channel(const CorpusTensor& corpus, Channel channel,
                                     int threads) {
  return decompose(build_channel_matrix(corpus, channel, threads), channel,
                   corpus.crop_size(), corpus.crop_size(), threads);
}

std::vector<double> cumulative_variance(const EigenDecomposition& decomp) {
  return decomp.cumulative;
}

Plane eigenimage(const EigenDecomposition& decomp, int k) {
  if (k < 1 || k > decomp.components()) {
    fail(ErrorCode::IndexOutOfRange,
         "component " + std::to_string(k) + " out of range 1.." +
             std::to_string(decomp.components()));
  }
  Plane plane(decomp.height, decomp.width);
  const double* col = decomp.scores.col(k - 1).data();
  for (int x = 0; x < decomp.width; ++x) {
    for (int y = 0; y < decomp.height; ++y) plane.at(y, x) = *col++;
  }
  return plane;
}

}  // namespace ect
