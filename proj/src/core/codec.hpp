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

// Interleaved 8-bit RGB raster.
struct RgbRaster {
  int height = 0;
  int width = 0;
  std::vector<uint8_t> bytes;  // height * width * 3, row-major

  RgbRaster() = default;
  RgbRaster(int h, int w, uint8_t fill = 0)
      : height(h), width(w), bytes(static_cast<size_t>(h) * w * 3, fill) {}

  uint8_t* pixel(int y, int x) {
    return bytes.data() + (static_cast<size_t>(y) * width + x) * 3;
  }
  const uint8_t* pixel(int y, int x) const {
    return bytes.data() + (static_cast<size_t>(y) * width + x) * 3;
  }
};

// Decodes a JPEG or PNG file (sniffed by magic bytes, not extension) into
// [0,1] doubles. Only three-channel color input is accepted: grayscale and
// CMYK sources are rejected, PNG palette images are expanded to RGB and an
// alpha channel, when present, is dropped.
SourceImage decode_image(const std::string& path);

// Lossless 8-bit RGB PNG. Compression settings are pinned so identical
// rasters produce identical files.
void write_png_rgb(const RgbRaster& raster, const std::string& path);

// Baseline JPEG at the given quality (1..100).
void write_jpeg_rgb(const RgbRaster& raster, const std::string& path, int quality);

// Decode an in-memory PNG (used by tests for round-trips).
RgbRaster read_png_rgb(const std::string& path);

}  // namespace ect
