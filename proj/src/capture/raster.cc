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

#include "propforge/capture/raster.h"

#include <png.h>

#include <algorithm>
#include <cstring>

#include "propforge/common/error.h"
#include "propforge/common/file_io.h"

namespace propforge::capture {

RasterImage::RasterImage(int width, int height, Rgba fill)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) {
    throw Error(ErrorCode::kOutOfRange, "negative image dimensions");
  }
  pixels_.resize(static_cast<std::size_t>(width) * height * 4);
  for (std::size_t i = 0; i < pixels_.size(); i += 4) {
    std::copy(fill.begin(), fill.end(), pixels_.begin() + i);
  }
}

RasterImage::RasterImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width < 0 || height < 0 ||
      pixels_.size() != static_cast<std::size_t>(width) * height * 4) {
    throw Error(ErrorCode::kOutOfRange,
                "pixel buffer does not match width*height*4");
  }
}

std::size_t RasterImage::Offset(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) {
    throw Error(ErrorCode::kOutOfRange, "pixel (" + std::to_string(x) + "," +
                                            std::to_string(y) + ") outside image");
  }
  return (static_cast<std::size_t>(y) * width_ + x) * 4;
}

Rgba RasterImage::at(int x, int y) const {
  const std::size_t o = Offset(x, y);
  return {pixels_[o], pixels_[o + 1], pixels_[o + 2], pixels_[o + 3]};
}

void RasterImage::set(int x, int y, Rgba color) {
  const std::size_t o = Offset(x, y);
  std::copy(color.begin(), color.end(), pixels_.begin() + o);
}

bool FitsInside(const RasterImage& image, const Bounds& b) {
  return b.left >= 0 && b.top >= 0 && b.left <= b.right && b.top <= b.bottom &&
         b.right <= image.width() && b.bottom <= image.height();
}

namespace {

void RequireInside(const RasterImage& image, const Bounds& b) {
  if (!FitsInside(image, b)) {
    throw Error(ErrorCode::kOutOfRange,
                "bounds exceed " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " image");
  }
}

}  // namespace

RasterImage CropWidgetImage(const RasterImage& screenshot, const Bounds& b) {
  RequireInside(screenshot, b);
  std::vector<std::uint8_t> out(static_cast<std::size_t>(b.width()) *
                                b.height() * 4);
  const auto src = screenshot.pixels();
  const std::size_t row_bytes = static_cast<std::size_t>(b.width()) * 4;
  for (int y = 0; y < b.height(); ++y) {
    const std::size_t from =
        (static_cast<std::size_t>(b.top + y) * screenshot.width() + b.left) * 4;
    std::memcpy(out.data() + y * row_bytes, src.data() + from, row_bytes);
  }
  return RasterImage(b.width(), b.height(), std::move(out));
}

RasterImage HighlightWidget(const RasterImage& screenshot, const Bounds& b,
                            int stroke_px) {
  RequireInside(screenshot, b);
  RasterImage out = screenshot;
  if (stroke_px <= 0) return out;
  for (int y = b.top; y < b.bottom; ++y) {
    for (int x = b.left; x < b.right; ++x) {
      const bool on_edge = x < b.left + stroke_px || x >= b.right - stroke_px ||
                           y < b.top + stroke_px || y >= b.bottom - stroke_px;
      if (on_edge) out.set(x, y, kHighlightRed);
    }
  }
  return out;
}

RasterImage DecodePng(std::span<const std::uint8_t> png) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, png.data(), png.size())) {
    throw Error(ErrorCode::kMalformedDocument,
                std::string("png decode failed: ") + image.message);
  }
  image.format = PNG_FORMAT_RGBA;
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, pixels.data(), 0, nullptr)) {
    png_image_free(&image);
    throw Error(ErrorCode::kMalformedDocument,
                std::string("png decode failed: ") + image.message);
  }
  return RasterImage(static_cast<int>(image.width),
                     static_cast<int>(image.height), std::move(pixels));
}

RasterImage LoadPng(const std::filesystem::path& path) {
  const std::string bytes = ReadFile(path);
  return DecodePng(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

std::vector<std::uint8_t> EncodePng(const RasterImage& img) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_RGBA;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, img.pixels().data(),
                                 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0,
                                 img.pixels().data(), 0, nullptr)) {
    throw Error(ErrorCode::kIo, std::string("png encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace propforge::capture
