//
// Project BMC - Copyright 2026 BMC Contributors.
// SPDX-License-Identifier: Apache-2.0
//
#include <catch2/catch_amalgamated.hpp>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "bmc/datasets.hpp"
#include "bmc/io.hpp"
#include "helpers.hpp"

using namespace bmc;
using namespace bmc::test;

namespace {

void write_bytes(const std::filesystem::path& path,
                 const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> be32(std::uint32_t v) {
  return {static_cast<unsigned char>(v >> 24),
          static_cast<unsigned char>(v >> 16),
          static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
}

void append(std::vector<unsigned char>& dst,
            const std::vector<unsigned char>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

/// Two 2x2 images with known pixel bytes plus matching labels.
struct IdxFixture {
  std::filesystem::path images;
  std::filesystem::path labels;
};

IdxFixture make_idx_fixture(const std::filesystem::path& dir) {
  std::vector<unsigned char> img;
  append(img, be32(0x00000803u));
  append(img, be32(2));  // count
  append(img, be32(2));  // rows
  append(img, be32(2));  // cols
  append(img, {0, 51, 102, 255});   // image 0
  append(img, {255, 204, 153, 0});  // image 1
  std::vector<unsigned char> lab;
  append(lab, be32(0x00000801u));
  append(lab, be32(2));
  append(lab, {7, 3});
  IdxFixture f{dir / "images.idx", dir / "labels.idx"};
  write_bytes(f.images, img);
  write_bytes(f.labels, lab);
  return f;
}

}  // namespace

TEST_CASE("semi-cylinder samples sit on the surface and avoid the hollow "
          "band",
          "[datasets]") {
  SemiCylinderSpec spec;
  spec.n = 500;
  spec.seed = 7;
  const PointCloud cloud = sample_semi_cylinder(spec);
  REQUIRE(cloud.n() == 500);
  for (Index i = 0; i < cloud.n(); ++i) {
    const double r2 = cloud.coords(i, 0) * cloud.coords(i, 0) +
                      cloud.coords(i, 1) * cloud.coords(i, 1);
    REQUIRE(std::abs(r2 - 16.0) <= 1e-12 * 16.0);
    const double z = cloud.coords(i, 2);
    REQUIRE((z <= 3.0 || z >= 7.0));
    REQUIRE(z >= 0.0);
    REQUIRE(z <= 10.0);
  }
}

TEST_CASE("semi-cylinder respects the angular union", "[datasets]") {
  SemiCylinderSpec spec;
  spec.n = 300;
  spec.seed = 3;
  const PointCloud cloud = sample_semi_cylinder(spec);
  const double pi = std::numbers::pi;
  for (Index i = 0; i < cloud.n(); ++i) {
    const double theta = std::atan2(cloud.coords(i, 1), cloud.coords(i, 0));
    const bool in_first = theta >= -1e-12 && theta <= pi / 3.0 + 1e-12;
    const bool in_second =
        theta >= 2.0 * pi / 3.0 - 1e-12 && theta <= pi + 1e-12;
    REQUIRE((in_first || in_second));
  }
}

TEST_CASE("degenerate ranges collapse to a single point", "[datasets]") {
  SemiCylinderSpec spec;
  spec.n = 10;
  spec.theta_ranges = {{0.5, 0.5}};
  spec.z_ranges = {{2.0, 2.0}};
  const PointCloud cloud = sample_semi_cylinder(spec);
  for (Index i = 1; i < 10; ++i) {
    REQUIRE(cloud.coords.row(i) == cloud.coords.row(0));
  }
}

TEST_CASE("semi-cylinder sampling is deterministic per seed", "[datasets]") {
  SemiCylinderSpec spec;
  spec.n = 50;
  spec.seed = 99;
  const PointCloud a = sample_semi_cylinder(spec);
  const PointCloud b = sample_semi_cylinder(spec);
  REQUIRE(a.coords == b.coords);
}

TEST_CASE("empty range unions are rejected", "[datasets]") {
  SemiCylinderSpec spec;
  spec.theta_ranges.clear();
  REQUIRE_THROWS_AS(sample_semi_cylinder(spec), std::invalid_argument);
}

TEST_CASE("gaussian clusters have the promised geometry", "[datasets]") {
  SECTION("sigma = 0 puts every point on its center") {
    const PointCloud c = sample_gaussian_clusters(3, 4, 5, 10.0, 0.0, 1);
    for (int blob = 0; blob < 3; ++blob) {
      for (Index i = 1; i < 4; ++i) {
        REQUIRE(c.coords.row(blob * 4 + i) == c.coords.row(blob * 4));
      }
    }
  }
  SECTION("labels and separation") {
    const PointCloud c = sample_gaussian_clusters(4, 30, 20, 10.0, 0.5, 5);
    REQUIRE(c.labels->size() == 120);
    // Nearest-center classification is perfect for this separation.
    Matrix centers = Matrix::Zero(4, 20);
    std::vector<int> counts(4, 0);
    for (Index i = 0; i < 120; ++i) {
      centers.row((*c.labels)[static_cast<std::size_t>(i)]) +=
          c.coords.row(i);
      counts[static_cast<std::size_t>((*c.labels)[i])]++;
    }
    for (int b = 0; b < 4; ++b) centers.row(b) /= counts[b];
    for (Index a = 0; a < 4; ++a) {
      for (Index b = a + 1; b < 4; ++b) {
        REQUIRE((centers.row(a) - centers.row(b)).norm() >= 10.0 * 0.9);
      }
    }
    for (Index i = 0; i < 120; ++i) {
      int best = 0;
      double best_d = (c.coords.row(i) - centers.row(0)).squaredNorm();
      for (int b = 1; b < 4; ++b) {
        const double d = (c.coords.row(i) - centers.row(b)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = b;
        }
      }
      REQUIRE(best == (*c.labels)[static_cast<std::size_t>(i)]);
    }
  }
  SECTION("impossible placement throws after bounded retries") {
    REQUIRE_THROWS_AS(sample_gaussian_clusters(50, 1, 1, 10.0, 0.0, 1),
                      data_error);
  }
}

TEST_CASE("IDX fixture round trip", "[datasets]") {
  const auto dir = scratch_dir("idx");
  const IdxFixture f = make_idx_fixture(dir);
  const IdxImageSet set = load_idx(f.images.string(), f.labels.string());
  REQUIRE(set.count() == 2);
  REQUIRE(set.rows == 2);
  REQUIRE(set.cols == 2);
  Matrix expected(2, 4);
  expected << 0.0, 51 / 255.0, 102 / 255.0, 1.0,
              1.0, 204 / 255.0, 153 / 255.0, 0.0;
  REQUIRE(max_abs_diff(set.images, expected) < 1e-15);
  REQUIRE(set.labels == std::vector<int>{7, 3});
}

TEST_CASE("IDX corruption modes are rejected distinctly", "[datasets]") {
  const auto dir = scratch_dir("idx_bad");
  const IdxFixture good = make_idx_fixture(dir);

  SECTION("wrong magic") {
    std::vector<unsigned char> img;
    append(img, be32(0x00000802u));
    append(img, be32(0));
    append(img, be32(2));
    append(img, be32(2));
    write_bytes(dir / "bad.idx", img);
    REQUIRE_THROWS_WITH(
        load_idx((dir / "bad.idx").string(), good.labels.string()),
        Catch::Matchers::ContainsSubstring("magic"));
  }
  SECTION("truncated payload") {
    std::vector<unsigned char> img;
    append(img, be32(0x00000803u));
    append(img, be32(2));
    append(img, be32(2));
    append(img, be32(2));
    append(img, {0, 51, 102});  // one byte short of even one image
    write_bytes(dir / "trunc.idx", img);
    REQUIRE_THROWS_WITH(
        load_idx((dir / "trunc.idx").string(), good.labels.string()),
        Catch::Matchers::ContainsSubstring("truncated"));
  }
  SECTION("count mismatch") {
    std::vector<unsigned char> lab;
    append(lab, be32(0x00000801u));
    append(lab, be32(3));
    append(lab, {1, 2, 3});
    write_bytes(dir / "mismatch.idx", lab);
    REQUIRE_THROWS_WITH(
        load_idx(good.images.string(), (dir / "mismatch.idx").string()),
        Catch::Matchers::ContainsSubstring("mismatch"));
  }
  SECTION("empty file with zero images is fine") {
    std::vector<unsigned char> img;
    append(img, be32(0x00000803u));
    append(img, be32(0));
    append(img, be32(2));
    append(img, be32(2));
    write_bytes(dir / "empty_img.idx", img);
    std::vector<unsigned char> lab;
    append(lab, be32(0x00000801u));
    append(lab, be32(0));
    write_bytes(dir / "empty_lab.idx", lab);
    const IdxImageSet set = load_idx((dir / "empty_img.idx").string(),
                                     (dir / "empty_lab.idx").string());
    REQUIRE(set.count() == 0);
  }
}

TEST_CASE("subsample_by_digit draws the requested strata", "[datasets]") {
  IdxImageSet set;
  set.rows = 1;
  set.cols = 2;
  set.images = random_matrix(40, 2, 15);
  set.labels.resize(40);
  for (int i = 0; i < 40; ++i) set.labels[i] = i % 4;  // digits 0..3, 10 each

  const PointCloud cloud = subsample_by_digit(set, {0, 1, 3}, 5, 8);
  REQUIRE(cloud.n() == 15);
  REQUIRE(cloud.labels->size() == 15);
  for (int i = 0; i < 5; ++i) REQUIRE((*cloud.labels)[i] == 0);
  for (int i = 5; i < 10; ++i) REQUIRE((*cloud.labels)[i] == 1);
  for (int i = 10; i < 15; ++i) REQUIRE((*cloud.labels)[i] == 3);

  const PointCloud again = subsample_by_digit(set, {0, 1, 3}, 5, 8);
  REQUIRE(cloud.coords == again.coords);

  REQUIRE(subsample_by_digit(set, {0, 1}, 0, 8).n() == 0);
  REQUIRE_THROWS_AS(subsample_by_digit(set, {2}, 11, 8), data_error);
}

TEST_CASE("CSV round trip is bitwise stable", "[datasets]") {
  const auto dir = scratch_dir("csv");
  const Matrix m = random_matrix(5, 7, 33, 1e3);
  const auto path = (dir / "m.csv").string();
  save_csv_matrix(path, m);
  const Matrix back = load_csv_matrix(path);
  REQUIRE(back.rows() == 5);
  REQUIRE(back.cols() == 7);
  REQUIRE(back == m);
}

TEST_CASE("CSV parser rejects malformed files", "[datasets]") {
  const auto dir = scratch_dir("csv_bad");

  SECTION("ragged rows name the line") {
    std::ofstream out(dir / "ragged.csv");
    out << "1,2,3\n4,5\n";
    out.close();
    REQUIRE_THROWS_WITH(load_csv_matrix((dir / "ragged.csv").string()),
                        Catch::Matchers::ContainsSubstring("line 2"));
  }
  SECTION("non-numeric tokens") {
    std::ofstream out(dir / "alpha.csv");
    out << "1,foo\n";
    out.close();
    REQUIRE_THROWS_AS(load_csv_matrix((dir / "alpha.csv").string()),
                      data_error);
  }
  SECTION("empty file gives a 0x0 matrix") {
    std::ofstream(dir / "empty.csv").close();
    const Matrix m = load_csv_matrix((dir / "empty.csv").string());
    REQUIRE(m.rows() == 0);
    REQUIRE(m.cols() == 0);
  }
  SECTION("CRLF input is accepted") {
    std::ofstream out(dir / "crlf.csv", std::ios::binary);
    out << "1,2\r\n3,4\r\n";
    out.close();
    const Matrix m = load_csv_matrix((dir / "crlf.csv").string());
    REQUIRE(m(1, 1) == 4.0);
  }
}

TEST_CASE("gaussian noise is seeded and unclipped", "[datasets]") {
  const Matrix base = Matrix::Zero(50, 20);
  const Matrix noisy = add_gaussian_noise(base, 1.0, 4);
  REQUIRE(add_gaussian_noise(base, 1.0, 4) == noisy);
  const double mean = noisy.mean();
  const double var = (noisy.array() - mean).square().mean();
  REQUIRE(std::abs(mean) < 0.1);
  REQUIRE(var == Catch::Approx(1.0).margin(0.15));
  REQUIRE(noisy.minCoeff() < 0.0);  // nothing clips at zero
}
