// Copyright 2026 The PropForge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROPFORGE_CAPTURE_RASTER_H_
#define PROPFORGE_CAPTURE_RASTER_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "propforge/capture/widget.h"

namespace propforge::capture {

using Rgba = std::array<std::uint8_t, 4>;

// Row-major 8-bit RGBA image.
class RasterImage {
 public:
  RasterImage() = default;
  // Filled with `fill`. Throws Error(kOutOfRange) on negative dimensions.
  RasterImage(int width, int height, Rgba fill = {0, 0, 0, 255});
  // Takes ownership of a pixel buffer; its size must be width*height*4.
  RasterImage(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const { return width_; }
  int height() const { return height_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  Rgba at(int x, int y) const;
  void set(int x, int y, Rgba color);

  bool operator==(const RasterImage&) const = default;

 private:
  std::size_t Offset(int x, int y) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> pixels_;
};

inline constexpr Rgba kHighlightRed = {255, 0, 0, 255};

// Copies the pixels inside `bounds`. Throws Error(kOutOfRange) when bounds
// extend past the image.
RasterImage CropWidgetImage(const RasterImage& screenshot, const Bounds& bounds);

// Draws a pure-red stroke `stroke_px` wide along the inside edge of `bounds`.
// Pixels further than stroke_px from the edge are untouched.
RasterImage HighlightWidget(const RasterImage& screenshot, const Bounds& bounds,
                            int stroke_px);

bool FitsInside(const RasterImage& image, const Bounds& bounds);

// PNG codec boundary (libpng).
RasterImage DecodePng(std::span<const std::uint8_t> png);
RasterImage LoadPng(const std::filesystem::path& path);
std::vector<std::uint8_t> EncodePng(const RasterImage& image);

}  // namespace propforge::capture

#endif  // PROPFORGE_CAPTURE_RASTER_H_
