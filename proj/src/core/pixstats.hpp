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

#include <utility>
#include <vector>

#include "core/image.hpp"
#include "core/ingest.hpp"

namespace ect {

// Pixel-by-pixel corpus statistics. All reductions run over ascending image
// index per pixel, so results do not depend on the worker count.

// out[c](y,x) = mean over images of corpus[i](y,x,c). Requires N >= 1.
Image3 mean_image(const CorpusTensor& corpus, int threads = 0);

// Population variance (divide by N): var[c](y,x) = mean of squared
// deviations from the given mean. Requires N >= 2.
Image3 variance_image(const CorpusTensor& corpus, const Image3& mean,
                      int threads = 0);

// lower/upper = mean -/+ scale * spread, where spread is the variance plane
// itself or its square root. Values are left unclamped; clamping is a
// render-time concern.
std::pair<BoundImage, BoundImage> bound_images(const Image3& mean,
                                               const Image3& variance,
                                               double scale, SpreadMode mode);

// Per-image grayscale planes, (R+G+B)/3 at each pixel.
std::vector<Plane> flatten_gray(const CorpusTensor& corpus, int threads = 0);

}  // namespace ect
