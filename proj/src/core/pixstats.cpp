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

#include "core/pixstats.hpp"

#include <cmath>

#include "core/parallel.hpp"

namespace ect {

namespace {

// Runs fn over a block of interleaved pixel slots [lo, hi) for each image in
// ascending order. Slot s covers channels 3s..3s+2 of every image.
template <typename Fn>
void for_images_over_slots(const CorpusTensor& corpus, int threads, Fn&& fn) {
  const int64_t slots = static_cast<int64_t>(corpus.crop_size()) * corpus.crop_size();
  parallel_blocks(0, slots, threads, [&](int64_t lo, int64_t hi) {
    for (int i = 0; i < corpus.count(); ++i) {
      const double* img = corpus.image_data(i);
      fn(i, img, lo, hi);
    }
  });
}

}  // namespace

Image3 mean_image(const CorpusTensor& corpus, int threads) {
  const int side = corpus.crop_size();
  const double inv_n = 1.0 / corpus.count();
  Image3 mean(side, side);
  for_images_over_slots(corpus, threads,
                        [&](int, const double* img, int64_t lo, int64_t hi) {
                          for (int64_t s = lo; s < hi; ++s) {
                            const double* px = img + 3 * s;
                            mean[0].values[s] += px[0];
                            mean[1].values[s] += px[1];
                            mean[2].values[s] += px[2];
                          }
                        });
  for (int c = 0; c < 3; ++c) {
    for (double& v : mean[c].values) v *= inv_n;
  }
  return mean;
}

Image3 variance_image(const CorpusTensor& corpus, const Image3& mean, int threads) {
  if (corpus.count() < 2) {
    fail(ErrorCode::InsufficientImages, "variance needs at least two images");
  }
  if (mean.height() != corpus.crop_size() || mean.width() != corpus.crop_size()) {
    fail(ErrorCode::DimensionMismatch, "mean image does not match corpus dimensions");
  }
  const int side = corpus.crop_size();
  const double inv_n = 1.0 / corpus.count();
  Image3 var(side, side);
  for_images_over_slots(corpus, threads,
                        [&](int, const double* img, int64_t lo, int64_t hi) {
                          for (int64_t s = lo; s < hi; ++s) {
                            const double* px = img + 3 * s;
                            for (int c = 0; c < 3; ++c) {
                              const double d = px[c] - mean[c].values[s];
                              var[c].values[s] += d * d;
                            }
                          }
                        });
  for (int c = 0; c < 3; ++c) {
    for (double& v : var[c].values) v *= inv_n;
  }
  return var;
}

std::pair<BoundImage, BoundImage> bound_images(const Image3& mean,
                                               const Image3& variance,
                                               double scale, SpreadMode mode) {
  if (!(scale >= 0.0)) fail(ErrorCode::InvalidArgument, "scale must be >= 0");
  if (mean.height() != variance.height() || mean.width() != variance.width()) {
    fail(ErrorCode::DimensionMismatch, "mean and variance dimensions differ");
  }
  BoundImage lower{Image3(mean.height(), mean.width()), BoundSide::Lower, scale, mode};
  BoundImage upper{Image3(mean.height(), mean.width()), BoundSide::Upper, scale, mode};
  for (int c = 0; c < 3; ++c) {
    const size_t n = mean[c].size();
    for (size_t s = 0; s < n; ++s) {
      const double v = variance[c].values[s];
      const double spread = mode == SpreadMode::Variance ? v : std::sqrt(v);
      lower.planes[c].values[s] = mean[c].values[s] - scale * spread;
      upper.planes[c].values[s] = mean[c].values[s] + scale * spread;
    }
  }
  return {std::move(lower), std::move(upper)};
}

std::vector<Plane> flatten_gray(const CorpusTensor& corpus, int threads) {
  const int side = corpus.crop_size();
  std::vector<Plane> gray(static_cast<size_t>(corpus.count()), Plane(side, side));
  parallel_blocks(0, corpus.count(), threads, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      const double* src = corpus.image_data(static_cast<int>(i));
      Plane& plane = gray[static_cast<size_t>(i)];
      const size_t slots = plane.size();
      for (size_t s = 0; s < slots; ++s) {
        const double* px = src + 3 * s;
        plane.values[s] = (px[0] + px[1] + px[2]) / 3.0;
      }
    }
  });
  return gray;
}

}  // namespace ect
