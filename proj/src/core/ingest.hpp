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

#include <cstdint>
#include <string>
#include <vector>

#include "core/image.hpp"

namespace ect {

// N center-cropped images held as one contiguous tensor: image-major,
// row-major, channel-last doubles in [0,1]. This is also the layout of the
// ECT1 dump format, so file IO is a straight copy.
//
// Image ids are the 1-based input positions and stay attached to the images
// through the whole pipeline.
class CorpusTensor {
 public:
  CorpusTensor() = default;
  CorpusTensor(int count, int crop_size);

  int count() const { return count_; }
  int crop_size() const { return crop_; }
  const std::vector<int>& image_ids() const { return ids_; }

  double at(int image, int y, int x, int c) const {
    return data_[index(image, y, x, c)];
  }
  double& at(int image, int y, int x, int c) { return data_[index(image, y, x, c)]; }

  // Pointer to the first value of an image (crop*crop*3 values).
  const double* image_data(int image) const {
    return data_.data() + static_cast<size_t>(image) * crop_ * crop_ * 3;
  }
  double* image_data(int image) {
    return data_.data() + static_cast<size_t>(image) * crop_ * crop_ * 3;
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  // Copies a crop into slot `image`.
  void set_image(int image, const Image3& crop);
  Image3 image(int index) const;

  // Checks the [0,1] range invariant; throws InvalidArgument on violation.
  void validate() const;

 private:
  size_t index(int image, int y, int x, int c) const {
    return ((static_cast<size_t>(image) * crop_ + y) * crop_ + x) * 3 + c;
  }

  int count_ = 0;
  int crop_ = 0;
  std::vector<int> ids_;
  std::vector<double> data_;
};

// The crop_size×crop_size window about the image center. The top-left corner
// sits at (floor((width-crop)/2), floor((height-crop)/2)); for odd margins
// the extra pixel falls on the right/bottom. Throws ImageTooSmall naming the
// short dimension.
Image3 center_crop(const SourceImage& image, int crop_size);

// Decodes every file (JPEG or PNG), center-crops, and assembles the tensor
// in input order. Decode failures name the offending path; nothing partial
// is returned.
CorpusTensor load_corpus(const std::vector<std::string>& paths, int crop_size,
                         int threads = 0);

// Deterministic test corpus: vertical two-band landscape gradients
// (blue-dominant sky over green-dominant ground) with per-image seeded
// variation and low-amplitude pixel noise. Pure function of (n, crop_size,
// seed).
CorpusTensor synthetic_corpus(int n, int crop_size, uint64_t seed);

// ECT1 dump: magic "ECT1", then N, H, W as u32 little-endian, then
// N*H*W*3 little-endian doubles, image-major, row-major, channel-last.
void write_corpus(const CorpusTensor& corpus, const std::string& path);
CorpusTensor read_corpus(const std::string& path);

// Same container with N=1 and arbitrary (possibly out-of-range) values;
// used for raw statistic dumps.
void write_planes_ect(const Image3& image, const std::string& path);

}  // namespace ect
