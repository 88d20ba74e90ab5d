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
#include <cstddef>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace ect {

enum class Channel { Red = 0, Green = 1, Blue = 2, Gray = 3 };

inline const char* channel_name(Channel c) {
  switch (c) {
    case Channel::Red: return "red";
    case Channel::Green: return "green";
    case Channel::Blue: return "blue";
    case Channel::Gray: return "gray";
  }
  return "?";
}

enum class SpreadMode { Variance = 0, StdDev = 1 };
enum class BoundSide { Lower = 0, Upper = 1 };

// One H×W plane of real values, row-major.
struct Plane {
  int height = 0;
  int width = 0;
  std::vector<double> values;

  Plane() = default;
  Plane(int h, int w, double fill = 0.0)
      : height(h), width(w), values(static_cast<size_t>(h) * w, fill) {}

  double& at(int y, int x) { return values[static_cast<size_t>(y) * width + x]; }
  double at(int y, int x) const { return values[static_cast<size_t>(y) * width + x]; }
  size_t size() const { return values.size(); }
};

// Three aligned planes, red/green/blue.
struct Image3 {
  std::array<Plane, 3> planes;

  Image3() = default;
  Image3(int h, int w) : planes{Plane(h, w), Plane(h, w), Plane(h, w)} {}

  int height() const { return planes[0].height; }
  int width() const { return planes[0].width; }
  Plane& operator[](int c) { return planes[static_cast<size_t>(c)]; }
  const Plane& operator[](int c) const { return planes[static_cast<size_t>(c)]; }
};

// A decoded source file, before cropping. Intensities in [0,1].
struct SourceImage {
  Image3 pixels;
  std::string source_path;

  int width() const { return pixels.width(); }
  int height() const { return pixels.height(); }
};

// Per-channel mean ± scale * spread, unclamped. Clamping to displayable
// range happens at render time only.
struct BoundImage {
  Image3 planes;
  BoundSide side = BoundSide::Lower;
  double scale = 1.96;
  SpreadMode spread_mode = SpreadMode::Variance;
};

}  // namespace ect
