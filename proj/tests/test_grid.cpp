#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>

#include "fracpow/errors.hpp"
#include "fracpow/grid.hpp"

using namespace fracpow;

namespace {
std::filesystem::path temp_file(const char* stem) {
  static std::mt19937 rng(std::random_device{}());
  return std::filesystem::temp_directory_path() /
         (std::string(stem) + "-" + std::to_string(rng()) + ".dat");
}
}  // namespace

TEST_SUITE_BEGIN("grid");

TEST_CASE("grid spec geometry") {
  GridSpec g{2.0, 1.0, 8, 4};
  CHECK(g.h1() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.h2() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.n1() == 7);
  CHECK(g.n2() == 3);
  CHECK(g.size() == 21);
  CHECK(g.x1(4) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.x2(2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_NOTHROW(validate(g));
  CHECK_THROWS_AS(validate(GridSpec{0.0, 1.0, 4, 4}), ConfigError);
  CHECK_THROWS_AS(validate(GridSpec{1.0, 1.0, 1, 4}), ConfigError);
}

TEST_CASE("storage is row-major in (i2,i1) with i1 fastest") {
  GridSpec g{1.0, 1.0, 4, 3};  // interior 3 x 2
  GridFunction u(g);
  REQUIRE(u.size() == 6);
  int v = 0;
  for (int i2 = 1; i2 <= g.n2(); ++i2) {
    for (int i1 = 1; i1 <= g.n1(); ++i1) {
      u.at(i1, i2) = ++v;
    }
  }
  for (std::size_t k = 0; k < u.size(); ++k) {
    CHECK(u.data()[k] == static_cast<double>(k + 1));
  }
  CHECK(u.at(2, 2) == 5.0);  // linear index (2-1)*3 + (2-1) = 4
}

TEST_CASE("sample evaluates node coordinates") {
  GridSpec g{1.0, 2.0, 4, 4};
  const auto u = GridFunction::sample(
      g, [](double x1, double x2) { return 10.0 * x1 + x2; });
  CHECK(u.at(1, 1) == doctest::Approx(10.0 * 0.25 + 0.5).epsilon(1e-15));
  CHECK(u.at(3, 2) == doctest::Approx(10.0 * 0.75 + 1.0).epsilon(1e-15));
}

TEST_CASE("inner product carries the cell area") {
  GridSpec g{1.0, 1.0, 2, 2};  // single interior node, h1*h2 = 1/4
  GridFunction u(g), v(g);
  u.at(1, 1) = 3.0;
  v.at(1, 1) = 5.0;
  CHECK(inner(u, v) == doctest::Approx(0.25 * 15.0).epsilon(1e-15));
  CHECK(norm2(u) == doctest::Approx(std::sqrt(0.25 * 9.0)).epsilon(1e-15));
  CHECK(norm_inf(u) == 3.0);

  GridFunction w(GridSpec{1.0, 1.0, 3, 3});
  CHECK_THROWS_AS(inner(u, w), ConfigError);
}

TEST_CASE("construction validates value count") {
  GridSpec g{1.0, 1.0, 3, 3};
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(3, 0.0)), ConfigError);
  CHECK_NOTHROW(GridFunction(g, std::vector<double>(4, 0.0)));
}

TEST_CASE("save/load round trip") {
  GridSpec g{1.5, 1.0, 5, 4};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridFunction u(g);
  for (std::size_t k = 0; k < u.size(); ++k) u.data()[k] = dist(rng);

  for (DumpFormat format : {DumpFormat::csv, DumpFormat::binary}) {
    const auto path = temp_file("gridfn");
    save(u, path, format);
    const GridFunction v = load(path);
    CHECK(v.grid() == g);
    REQUIRE(v.size() == u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
      CHECK(v.data()[k] == u.data()[k]);  // bit-exact round trip
    }
    std::filesystem::remove(path);
    std::filesystem::remove(path.string() + ".json");
  }
}

TEST_CASE("load failures raise IoError") {
  CHECK_THROWS_AS(load("/nonexistent/fracpow-missing.dat"), IoError);

  // Header present but data truncated.
  GridSpec g{1.0, 1.0, 4, 4};
  GridFunction u(g);
  const auto path = temp_file("gridfn-trunc");
  save(u, path, DumpFormat::binary);
  std::filesystem::resize_file(path, 8);
  CHECK_THROWS_AS(load(path), IoError);
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".json");
}

TEST_SUITE_END();
