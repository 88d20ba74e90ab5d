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

#include "core/codec.hpp"

#include <jpeglib.h>
#include <png.h>

#include <csetjmp>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <memory>

#include "core/error.hpp"
#include "core/fsutil.hpp"

namespace ect {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode, ErrorCode code) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) fail(code, "cannot open '" + path + "'");
  return f;
}

enum class FileKind { Png, Jpeg, Unknown };

FileKind sniff(std::FILE* f) {
  unsigned char magic[8] = {0};
  size_t got = std::fread(magic, 1, sizeof(magic), f);
  std::rewind(f);
  if (got >= 8 && png_sig_cmp(magic, 0, 8) == 0) return FileKind::Png;
  if (got >= 3 && magic[0] == 0xff && magic[1] == 0xd8 && magic[2] == 0xff)
    return FileKind::Jpeg;
  return FileKind::Unknown;
}

SourceImage from_rgb8(const std::vector<uint8_t>& rgb, int h, int w,
                      const std::string& path) {
  SourceImage out;
  out.source_path = path;
  out.pixels = Image3(h, w);
  const uint8_t* p = rgb.data();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) {
        out.pixels[c].at(y, x) = static_cast<double>(*p++) / 255.0;
      }
    }
  }
  return out;
}

// ---- PNG ----

struct PngReadGuard {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReadGuard() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

[[noreturn]] void png_error_fn(png_structp png, png_const_charp msg) {
  auto* err = static_cast<std::string*>(png_get_error_ptr(png));
  if (err) *err = msg ? msg : "png error";
  longjmp(png_jmpbuf(png), 1);
}

void png_warn_fn(png_structp, png_const_charp) {}

std::vector<uint8_t> decode_png_rgb(std::FILE* f, const std::string& path,
                                    int* height, int* width) {
  std::string errmsg;
  PngReadGuard g;
  g.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &errmsg, png_error_fn,
                                 png_warn_fn);
  if (!g.png) fail(ErrorCode::Internal, "png_create_read_struct failed");
  g.info = png_create_info_struct(g.png);
  if (!g.info) fail(ErrorCode::Internal, "png_create_info_struct failed");

  std::vector<uint8_t> data;
  std::vector<png_bytep> rows;
  if (setjmp(png_jmpbuf(g.png))) {
    fail(ErrorCode::Decode, "cannot decode '" + path + "': " + errmsg);
  }
  png_init_io(g.png, f);
  png_read_info(g.png, g.info);

  const png_uint_32 w = png_get_image_width(g.png, g.info);
  const png_uint_32 h = png_get_image_height(g.png, g.info);
  const int color = png_get_color_type(g.png, g.info);
  const int depth = png_get_bit_depth(g.png, g.info);

  if (color == PNG_COLOR_TYPE_GRAY || color == PNG_COLOR_TYPE_GRAY_ALPHA) {
    fail(ErrorCode::Decode,
         "cannot decode '" + path + "': grayscale input is not supported");
  }
  if (color == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(g.png);
  if (depth == 16) png_set_strip_16(g.png);
  if (png_get_valid(g.png, g.info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(g.png);
  png_set_strip_alpha(g.png);
  png_read_update_info(g.png, g.info);

  if (png_get_channels(g.png, g.info) != 3) {
    fail(ErrorCode::Decode,
         "cannot decode '" + path + "': expected three color channels");
  }

  data.resize(static_cast<size_t>(h) * w * 3);
  rows.resize(h);
  for (png_uint_32 y = 0; y < h; ++y) {
    rows[y] = data.data() + static_cast<size_t>(y) * w * 3;
  }
  png_read_image(g.png, rows.data());
  png_read_end(g.png, nullptr);

  *height = static_cast<int>(h);
  *width = static_cast<int>(w);
  return data;
}

// ---- JPEG ----

struct JpegErrorMgr {
  jpeg_error_mgr mgr;
  jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {0};
};

void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  longjmp(err->jump, 1);
}

std::vector<uint8_t> decode_jpeg_rgb(std::FILE* f, const std::string& path,
                                     int* height, int* width) {
  jpeg_decompress_struct cinfo;
  JpegErrorMgr jerr;
  cinfo.err = jpeg_std_error(&jerr.mgr);
  jerr.mgr.error_exit = jpeg_error_exit;

  std::vector<uint8_t> data;
  if (setjmp(jerr.jump)) {
    jpeg_destroy_decompress(&cinfo);
    fail(ErrorCode::Decode,
         "cannot decode '" + path + "': " + std::string(jerr.message));
  }
  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, f);
  jpeg_read_header(&cinfo, TRUE);

  if (cinfo.jpeg_color_space == JCS_GRAYSCALE) {
    jpeg_destroy_decompress(&cinfo);
    fail(ErrorCode::Decode,
         "cannot decode '" + path + "': grayscale input is not supported");
  }
  if (cinfo.jpeg_color_space == JCS_CMYK || cinfo.jpeg_color_space == JCS_YCCK) {
    jpeg_destroy_decompress(&cinfo);
    fail(ErrorCode::Decode,
         "cannot decode '" + path + "': CMYK input is not supported");
  }
  cinfo.out_color_space = JCS_RGB;
  jpeg_start_decompress(&cinfo);

  const int w = static_cast<int>(cinfo.output_width);
  const int h = static_cast<int>(cinfo.output_height);
  data.resize(static_cast<size_t>(h) * w * 3);
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = data.data() + static_cast<size_t>(cinfo.output_scanline) * w * 3;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);

  *height = h;
  *width = w;
  return data;
}

}  // namespace

SourceImage decode_image(const std::string& path) {
  FilePtr f = open_file(path, "rb", ErrorCode::Io);
  int h = 0, w = 0;
  std::vector<uint8_t> rgb;
  switch (sniff(f.get())) {
    case FileKind::Png:
      rgb = decode_png_rgb(f.get(), path, &h, &w);
      break;
    case FileKind::Jpeg:
      rgb = decode_jpeg_rgb(f.get(), path, &h, &w);
      break;
    default:
      fail(ErrorCode::Decode, "cannot decode '" + path + "': not a JPEG or PNG file");
  }
  if (h < 1 || w < 1) {
    fail(ErrorCode::Decode, "cannot decode '" + path + "': empty image");
  }
  return from_rgb8(rgb, h, w, path);
}

void write_png_rgb(const RgbRaster& raster, const std::string& path) {
  atomic_file_write(path, [&](std::FILE* f, const std::string& tmp) {
    std::string errmsg;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &errmsg,
                                              png_error_fn, png_warn_fn);
    if (!png) fail(ErrorCode::Internal, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
      png_destroy_write_struct(&png, nullptr);
      fail(ErrorCode::Internal, "png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
      png_destroy_write_struct(&png, &info);
      fail(ErrorCode::Io, "cannot write '" + tmp + "': " + errmsg);
    }
    png_init_io(png, f);
    // Pinned encoder settings: output must be byte-stable run to run.
    png_set_compression_level(png, 6);
    png_set_filter(png, 0, PNG_FILTER_NONE);
    png_set_IHDR(png, info, static_cast<png_uint_32>(raster.width),
                 static_cast<png_uint_32>(raster.height), 8, PNG_COLOR_TYPE_RGB,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < raster.height; ++y) {
      png_write_row(png, const_cast<png_bytep>(raster.pixel(y, 0)));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
  });
}

void write_jpeg_rgb(const RgbRaster& raster, const std::string& path, int quality) {
  if (quality < 1 || quality > 100) {
    fail(ErrorCode::InvalidArgument, "jpeg quality must be in 1..100");
  }
  atomic_file_write(path, [&](std::FILE* f, const std::string& tmp) {
    jpeg_compress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.mgr);
    jerr.mgr.error_exit = jpeg_error_exit;
    if (setjmp(jerr.jump)) {
      jpeg_destroy_compress(&cinfo);
      fail(ErrorCode::Io, "cannot write '" + tmp + "': " + std::string(jerr.message));
    }
    jpeg_create_compress(&cinfo);
    jpeg_stdio_dest(&cinfo, f);
    cinfo.image_width = static_cast<JDIMENSION>(raster.width);
    cinfo.image_height = static_cast<JDIMENSION>(raster.height);
    cinfo.input_components = 3;
    cinfo.in_color_space = JCS_RGB;
    jpeg_set_defaults(&cinfo);
    jpeg_set_quality(&cinfo, quality, TRUE);
    jpeg_start_compress(&cinfo, TRUE);
    while (cinfo.next_scanline < cinfo.image_height) {
      JSAMPROW row = const_cast<JSAMPROW>(
          raster.pixel(static_cast<int>(cinfo.next_scanline), 0));
      jpeg_write_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_compress(&cinfo);
    jpeg_destroy_compress(&cinfo);
  });
}

RgbRaster read_png_rgb(const std::string& path) {
  FilePtr f = open_file(path, "rb", ErrorCode::Io);
  if (sniff(f.get()) != FileKind::Png) {
    fail(ErrorCode::Decode, "cannot decode '" + path + "': not a PNG file");
  }
  int h = 0, w = 0;
  std::vector<uint8_t> rgb = decode_png_rgb(f.get(), path, &h, &w);
  RgbRaster out(h, w);
  out.bytes = std::move(rgb);
  return out;
}

}  // namespace ect
