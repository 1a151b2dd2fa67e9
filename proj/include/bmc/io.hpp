//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bmc/errors.hpp"
#include "bmc/linalg.hpp"

namespace bmc {

/// Flattened image set loaded from a pair of IDX files: one row per image,
/// pixel intensities scaled to [0, 1].
struct IdxImageSet {
  Matrix images;            ///< n x (rows*cols)
  std::vector<int> labels;  ///< length n
  int rows = 0;
  int cols = 0;

  Index count() const { return images.rows(); }
};

namespace detail {

inline std::uint32_t read_be_u32(std::istream& in, const std::string& path) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw data_error(path + ": truncated header");
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) |
         (std::uint32_t(b[2]) << 8) | std::uint32_t(b[3]);
}

}  // namespace detail

/// Loads an IDX image/label pair (big-endian headers, magic 0x00000803 for
/// images and 0x00000801 for labels). Bad magic, truncated payloads, and
/// image/label count mismatches are each rejected with a distinct message.
inline IdxImageSet load_idx(const std::string& images_path,
                            const std::string& labels_path) {
  std::ifstream img(images_path, std::ios::binary);
  if (!img) throw data_error(images_path + ": cannot open");
  if (detail::read_be_u32(img, images_path) != 0x00000803u) {
    throw data_error(images_path + ": bad magic (expected 0x00000803)");
  }
  const std::uint32_t count = detail::read_be_u32(img, images_path);
  const std::uint32_t rows = detail::read_be_u32(img, images_path);
  const std::uint32_t cols = detail::read_be_u32(img, images_path);

  std::ifstream lab(labels_path, std::ios::binary);
  if (!lab) throw data_error(labels_path + ": cannot open");
  if (detail::read_be_u32(lab, labels_path) != 0x00000801u) {
    throw data_error(labels_path + ": bad magic (expected 0x00000801)");
  }
  const std::uint32_t label_count = detail::read_be_u32(lab, labels_path);
  if (label_count != count) {
    throw data_error("image/label count mismatch: " + std::to_string(count) +
                     " images vs " + std::to_string(label_count) + " labels");
  }

  IdxImageSet set;
  set.rows = static_cast<int>(rows);
  set.cols = static_cast<int>(cols);
  const std::size_t pixels = std::size_t(rows) * cols;
  set.images.resize(count, static_cast<Index>(pixels));
  std::vector<unsigned char> buf(pixels);
  for (std::uint32_t i = 0; i < count; ++i) {
    img.read(reinterpret_cast<char*>(buf.data()),
             static_cast<std::streamsize>(pixels));
    if (img.gcount() != static_cast<std::streamsize>(pixels)) {
      throw data_error(images_path + ": truncated image payload");
    }
    for (std::size_t p = 0; p < pixels; ++p) {
      set.images(i, static_cast<Index>(p)) = buf[p] / 255.0;
    }
  }
  set.labels.resize(count);
  std::vector<unsigned char> lbuf(count);
  lab.read(reinterpret_cast<char*>(lbuf.data()),
           static_cast<std::streamsize>(count));
  if (lab.gcount() != static_cast<std::streamsize>(count)) {
    throw data_error(labels_path + ": truncated label payload");
  }
  for (std::uint32_t i = 0; i < count; ++i) set.labels[i] = lbuf[i];
  return set;
}

/// Parses a rectangular numeric CSV (no header, LF or CRLF). An empty file
/// yields a 0x0 matrix; ragged rows and non-numeric tokens are rejected with
/// the offending line number.
inline Matrix load_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw data_error(path + ": cannot open");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      const std::string tok = line.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      char* end = nullptr;
      const double v = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size()) {
        throw data_error(path + ": line " + std::to_string(lineno) +
                         ": bad numeric token '" + tok + "'");
      }
      row.push_back(v);
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw data_error(path + ": line " + std::to_string(lineno) +
                       ": expected " + std::to_string(rows.front().size()) +
                       " fields, got " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

/// Writes a matrix as comma-separated values with 17 significant digits
/// (lossless for doubles), LF line endings.
inline void save_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error(path + ": cannot open for writing");
  char buf[64];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      if (j > 0) out.put(',');
      out << buf;
    }
    out.put('\n');
  }
  if (!out) throw data_error(path + ": write failed");
}

}  // namespace bmc
