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

#include <Eigen/Dense>
#include <vector>

#include "core/image.hpp"
#include "core/ingest.hpp"

namespace ect {

// Principal components of the corpus, one channel at a time, with pixels as
// observations and images as variables: the P×N channel matrix is column
// centered, the N×N between-image covariance (divisor P-1) is
// eigen-decomposed, and scores project the pixels onto each component.
// Reshaped score columns are the "eigenimages".
struct EigenDecomposition {
  Channel channel = Channel::Red;
  int height = 0;
  int width = 0;
  std::vector<double> eigenvalues;   // descending, >= 0
  std::vector<double> proportions;   // eigenvalues / total, sums to 1
  std::vector<double> cumulative;    // running sum of proportions, ends at 1
  Eigen::MatrixXd scores;            // P×N, column j = component j over pixels
  Eigen::MatrixXd loadings;          // N×N, orthonormal columns

  int components() const { return static_cast<int>(eigenvalues.size()); }
};

// P×N matrix of flattened channel planes; column k is image k, rows follow
// column-major flattening of the H×W plane (row index varies fastest). The
// gray channel uses the (R+G+B)/3 planes.
Eigen::MatrixXd build_channel_matrix(const CorpusTensor& corpus, Channel channel,
                                     int threads = 0);

// Core decomposition. Takes the data matrix by value and centers it in
// place. Requires N >= 2 and P >= N; throws DegenerateCorpus when every
// image is constant (zero total variance).
//
// Sign convention: each component is flipped, together with its loading
// column, so the score entry of largest absolute value is positive; when
// several entries tie in magnitude the highest pixel index anchors. This
// makes the output independent of the eigensolver's sign choices.
EigenDecomposition decompose(Eigen::MatrixXd matrix, Channel channel, int height,
                             int width, int threads = 0);

// Convenience: channel matrix + decomposition in one step.
EigenDecomposition decompose_channel(const CorpusTensor& corpus, Channel channel,
                                     int threads = 0);

// Running sum of variance proportions (also stored on the decomposition).
std::vector<double> cumulative_variance(const EigenDecomposition& decomp);

// Score column k (1-based) reshaped back to an H×W plane, inverting the
// channel-matrix flattening.
Plane eigenimage(const EigenDecomposition& decomp, int k);

}  // namespace ect
