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

#include "core/ingest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <numeric>

#include "core/codec.hpp"
#include "core/fsutil.hpp"
#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace ect {

CorpusTensor::CorpusTensor(int count, int crop_size)
    : count_(count), crop_(crop_size) {
  if (count < 1) fail(ErrorCode::InsufficientImages, "corpus needs at least one image");
  if (crop_size < 1) fail(ErrorCode::InvalidArgument, "crop size must be positive");
  ids_.resize(static_cast<size_t>(count));
  std::iota(ids_.begin(), ids_.end(), 1);
  data_.assign(static_cast<size_t>(count) * crop_size * crop_size * 3, 0.0);
}

void CorpusTensor::set_image(int image, const Image3& crop) {
  if (crop.height() != crop_ || crop.width() != crop_) {
    fail(ErrorCode::DimensionMismatch, "crop does not match corpus dimensions");
  }
  double* dst = image_data(image);
  for (int y = 0; y < crop_; ++y) {
    for (int x = 0; x < crop_; ++x) {
      for (int c = 0; c < 3; ++c) *dst++ = crop[c].at(y, x);
    }
  }
}

Image3 CorpusTensor::image(int index) const {
  if (index < 0 || index >= count_) {
    fail(ErrorCode::IndexOutOfRange, "image index out of range");
  }
  Image3 out(crop_, crop_);
  const double* src = image_data(index);
  for (int y = 0; y < crop_; ++y) {
    for (int x = 0; x < crop_; ++x) {
      for (int c = 0; c < 3; ++c) out[c].at(y, x) = *src++;
    }
  }
  return out;
}

void CorpusTensor::validate() const {
  for (double v : data_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      fail(ErrorCode::InvalidArgument, "corpus intensity outside [0,1]");
    }
  }
}

Image3 center_crop(const SourceImage& image, int crop_size) {
  if (crop_size < 1) fail(ErrorCode::InvalidArgument, "crop size must be positive");
  const int w = image.width();
  const int h = image.height();
  if (w < crop_size) {
    fail(ErrorCode::ImageTooSmall,
         "'" + image.source_path + "': width " + std::to_string(w) +
             " is smaller than crop size " + std::to_string(crop_size));
  }
  if (h < crop_size) {
    fail(ErrorCode::ImageTooSmall,
         "'" + image.source_path + "': height " + std::to_string(h) +
             " is smaller than crop size " + std::to_string(crop_size));
  }
  const int off_x = (w - crop_size) / 2;
  const int off_y = (h - crop_size) / 2;
  Image3 out(crop_size, crop_size);
  for (int c = 0; c < 3; ++c) {
    for (int y = 0; y < crop_size; ++y) {
      const double* src = &image.pixels[c].at(y + off_y, off_x);
      std::copy(src, src + crop_size, &out[c].at(y, 0));
    }
  }
  return out;
}

CorpusTensor load_corpus(const std::vector<std::string>& paths, int crop_size,
                         int threads) {
  if (paths.empty()) fail(ErrorCode::InvalidArgument, "no input files given");
  CorpusTensor corpus(static_cast<int>(paths.size()), crop_size);
  // Decode+crop per file in parallel; slots keep input order and errors
  // surface for the lowest-index failing file.
  parallel_blocks(0, static_cast<int64_t>(paths.size()), threads,
                  [&](int64_t lo, int64_t hi) {
                    for (int64_t i = lo; i < hi; ++i) {
                      SourceImage src = decode_image(paths[static_cast<size_t>(i)]);
                      corpus.set_image(static_cast<int>(i), center_crop(src, crop_size));
                    }
                  });
  return corpus;
}

namespace {

struct BandColor {
  double r, g, b;
};

BandColor lerp(const BandColor& a, const BandColor& b, double t) {
  return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t};
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

void fill_synthetic_image(CorpusTensor& corpus, int i, int crop, uint64_t seed) {
  Rng rng(seed, static_cast<uint64_t>(i));
  const int horizon =
      std::max(1, std::min(crop - 1, static_cast<int>(std::lround(
                                         crop * rng.uniform(0.42, 0.58)))));
  // Sky: blue-dominant, brightening toward the horizon.
  const BandColor sky_top = {rng.uniform(0.25, 0.40), rng.uniform(0.35, 0.50),
                             rng.uniform(0.68, 0.88)};
  const BandColor sky_bot = {clamp01(sky_top.r + 0.25), clamp01(sky_top.g + 0.22),
                             clamp01(sky_top.b + 0.10)};
  // Ground: green-dominant, darkening toward the bottom edge.
  const BandColor gnd_top = {rng.uniform(0.15, 0.30), rng.uniform(0.42, 0.62),
                             rng.uniform(0.12, 0.25)};
  const BandColor gnd_bot = {gnd_top.r * 0.45, gnd_top.g * 0.55, gnd_top.b * 0.50};
  const double noise = rng.uniform(0.01, 0.03);

  double* dst = corpus.image_data(i);
  for (int y = 0; y < crop; ++y) {
    BandColor base;
    if (y < horizon) {
      base = lerp(sky_top, sky_bot, horizon > 1 ? double(y) / (horizon - 1) : 0.0);
    } else {
      const int span = crop - horizon;
      base = lerp(gnd_top, gnd_bot, span > 1 ? double(y - horizon) / (span - 1) : 0.0);
    }
    for (int x = 0; x < crop; ++x) {
      *dst++ = clamp01(base.r + noise * (2.0 * rng.uniform() - 1.0));
      *dst++ = clamp01(base.g + noise * (2.0 * rng.uniform() - 1.0));
      *dst++ = clamp01(base.b + noise * (2.0 * rng.uniform() - 1.0));
    }
  }
}

}  // namespace

CorpusTensor synthetic_corpus(int n, int crop_size, uint64_t seed) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "synthetic corpus needs n >= 2");
  if (crop_size < 2) fail(ErrorCode::InvalidArgument, "synthetic corpus needs crop size >= 2");
  CorpusTensor corpus(n, crop_size);
  // Each image draws from its own stream, so generation order is free.
  parallel_blocks(0, n, 0, [&](int64_t lo, int64_t hi) {
    for (int64_t i = lo; i < hi; ++i) {
      fill_synthetic_image(corpus, static_cast<int>(i), crop_size, seed);
    }
  });
  return corpus;
}

namespace {

constexpr char kMagic[4] = {'E', 'C', 'T', '1'};

void put_u32le(std::FILE* f, uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  if (std::fwrite(b, 1, 4, f) != 4) fail(ErrorCode::Io, "short write");
}

uint32_t get_u32le(std::FILE* f, const std::string& path) {
  unsigned char b[4];
  if (std::fread(b, 1, 4, f) != 4) fail(ErrorCode::Io, "'" + path + "': truncated header");
  return static_cast<uint32_t>(b[0]) | (static_cast<uint32_t>(b[1]) << 8) |
         (static_cast<uint32_t>(b[2]) << 16) | (static_cast<uint32_t>(b[3]) << 24);
}

void write_doubles_le(std::FILE* f, const double* src, size_t n) {
  if constexpr (std::endian::native == std::endian::little) {
    if (std::fwrite(src, sizeof(double), n, f) != n) fail(ErrorCode::Io, "short write");
    return;
  }
  std::vector<unsigned char> buf(n * 8);
  for (size_t i = 0; i < n; ++i) {
    uint64_t bits = std::bit_cast<uint64_t>(src[i]);
    for (int k = 0; k < 8; ++k) buf[i * 8 + k] = static_cast<unsigned char>(bits >> (8 * k));
  }
  if (std::fwrite(buf.data(), 1, buf.size(), f) != buf.size()) {
    fail(ErrorCode::Io, "short write");
  }
}

void read_doubles_le(std::FILE* f, double* dst, size_t n, const std::string& path) {
  if constexpr (std::endian::native == std::endian::little) {
    if (std::fread(dst, sizeof(double), n, f) != n) {
      fail(ErrorCode::Io, "'" + path + "': truncated data");
    }
    return;
  }
  std::vector<unsigned char> buf(n * 8);
  if (std::fread(buf.data(), 1, buf.size(), f) != buf.size()) {
    fail(ErrorCode::Io, "'" + path + "': truncated data");
  }
  for (size_t i = 0; i < n; ++i) {
    uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<uint64_t>(buf[i * 8 + k]) << (8 * k);
    dst[i] = std::bit_cast<double>(bits);
  }
}

void write_ect_file(const std::string& path, uint32_t n, uint32_t h, uint32_t w,
                    const double* values) {
  atomic_file_write(path, [&](std::FILE* f, const std::string& tmp) {
    if (std::fwrite(kMagic, 1, 4, f) != 4) fail(ErrorCode::Io, "cannot write '" + tmp + "'");
    put_u32le(f, n);
    put_u32le(f, h);
    put_u32le(f, w);
    write_doubles_le(f, values, static_cast<size_t>(n) * h * w * 3);
  });
}

}  // namespace

void write_corpus(const CorpusTensor& corpus, const std::string& path) {
  write_ect_file(path, static_cast<uint32_t>(corpus.count()),
                 static_cast<uint32_t>(corpus.crop_size()),
                 static_cast<uint32_t>(corpus.crop_size()), corpus.data().data());
}

void write_planes_ect(const Image3& image, const std::string& path) {
  const int h = image.height();
  const int w = image.width();
  std::vector<double> interleaved(static_cast<size_t>(h) * w * 3);
  double* dst = interleaved.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) *dst++ = image[c].at(y, x);
    }
  }
  write_ect_file(path, 1, static_cast<uint32_t>(h), static_cast<uint32_t>(w),
                 interleaved.data());
}

CorpusTensor read_corpus(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) fail(ErrorCode::Io, "cannot open '" + path + "'");
  struct Closer {
    std::FILE* f;
    ~Closer() { std::fclose(f); }
  } closer{f};

  char magic[4];
  if (std::fread(magic, 1, 4, f) != 4 || std::memcmp(magic, kMagic, 4) != 0) {
    fail(ErrorCode::Decode, "'" + path + "': not an ECT1 file");
  }
  const uint32_t n = get_u32le(f, path);
  const uint32_t h = get_u32le(f, path);
  const uint32_t w = get_u32le(f, path);
  if (n < 1 || h < 1 || w < 1 || h != w) {
    fail(ErrorCode::Decode, "'" + path + "': invalid corpus dimensions");
  }
  const uint64_t values = static_cast<uint64_t>(n) * h * w * 3;
  if (values > (1ull << 33)) {
    fail(ErrorCode::Decode, "'" + path + "': implausibly large corpus header");
  }
  CorpusTensor corpus(static_cast<int>(n), static_cast<int>(h));
  read_doubles_le(f, corpus.data().data(), static_cast<size_t>(values), path);
  corpus.validate();
  return corpus;
}

}  // namespace ect
