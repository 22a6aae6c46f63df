#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "ccstego/errors.hpp"
#include "ccstego/imagery.hpp"
#include "support/fixtures.hpp"

using namespace ccstego;

namespace {

Bytes bytes_of(const std::string& header, std::initializer_list<int> raster = {}) {
  Bytes out(header.begin(), header.end());
  for (int b : raster) out.push_back(static_cast<std::uint8_t>(b));
  return out;
}

}  // namespace

TEST_CASE("load_pnm") {
  SUBCASE("smallest grayscale") {
    const RasterImage img = load_pnm(bytes_of("P5\n2 2\n255\n", {0, 1, 2, 3}));
    CHECK(img.dims() == ImageDims{2, 2});
    CHECK(img.channels() == 1);
    CHECK(img.at(1, 0) == 2);
    CHECK(img.at(1, 1) == 3);
  }
  SUBCASE("single RGB pixel") {
    const RasterImage img = load_pnm(bytes_of("P6\n1 1\n255\n", {9, 8, 7}));
    CHECK(img.channels() == 3);
    CHECK(img.flat_dims() == ImageDims{1, 3});
    CHECK(img.at(0, 2) == 7);
  }
  SUBCASE("comments and odd whitespace in the header") {
    const RasterImage img = load_pnm(bytes_of("P5 # gray\n# another\n 3\t1\r\n255\n", {5, 6, 7}));
    CHECK(img.dims() == ImageDims{1, 3});
    CHECK(img.at(0, 2) == 7);
  }
  SUBCASE("malformed input") {
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n2 2\n65535\n", {0, 0, 0, 0, 0, 0, 0, 0})), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P2\n1 1\n255\n", {0})), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n2 2\n255\n", {0, 1, 2})), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n2 2\n255\n", {0, 1, 2, 3, 4})), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n0 2\n255\n")), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n65536 65536\n255\n")), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\nx 2\n255\n")), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5")), ParseError);
    CHECK_THROWS_AS((void)load_pnm(bytes_of("P5\n1 1\n255")), ParseError);
  }
}

TEST_CASE("save_pnm canonical form") {
  const RasterImage one({1, 1}, 1, {255});
  CHECK(save_pnm(one) == bytes_of("P5\n1 1\n255\n", {255}));

  RasterImage rgb({2, 3}, 3);
  const Bytes encoded = save_pnm(rgb);
  CHECK(std::string(encoded.begin(), encoded.begin() + 11) == "P6\n3 2\n255\n");
  CHECK(encoded.size() == 11 + 18);
}

TEST_CASE("pnm round trip over random images") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> side(1, 40);
  for (int i = 0; i < 300; ++i) {
    const RasterImage img = testing::random_image(rng, {side(rng), side(rng)}, i % 2 ? 3 : 1);
    REQUIRE(load_pnm(save_pnm(img)) == img);
  }
}

TEST_CASE("pbm bit order and padding") {
  const BitMatrix row = load_pbm(bytes_of("P4\n8 1\n", {0b10110000}));
  const std::uint8_t expected[] = {1, 0, 1, 1, 0, 0, 0, 0};
  for (std::size_t c = 0; c < 8; ++c) CHECK(row.at(0, c) == expected[c]);

  // Five columns fit in one byte; the three padding bits are written as
  // zero and ignored when read back.
  const BitMatrix five({1, 5}, std::vector<std::uint8_t>{1, 1, 1, 1, 1});
  CHECK(save_pbm(five) == bytes_of("P4\n5 1\n", {0b11111000}));
  CHECK(load_pbm(bytes_of("P4\n5 1\n", {0b11111111})) == five);

  CHECK_THROWS_AS((void)load_pbm(bytes_of("P4\n9 1\n", {0})), ParseError);
  CHECK_THROWS_AS((void)load_pbm(bytes_of("P5\n1 1\n", {0})), ParseError);
}

TEST_CASE("pbm round trip over random matrices") {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> side(1, 37);
  for (int i = 0; i < 300; ++i) {
    const ImageDims dims{side(rng), side(rng)};
    const BitMatrix m(dims, testing::random_bits(rng, dims.cells()));
    REQUIRE(load_pbm(save_pbm(m)) == m);
  }
}

TEST_CASE("lsb access") {
  RasterImage img({1, 2}, 1, {200, 201});
  CHECK(set_lsb(img, 0, 0, 1).at(0, 0) == 201);
  CHECK(set_lsb(img, 0, 1, 1).at(0, 1) == 201);
  CHECK(set_lsb(img, 0, 1, 0).at(0, 1) == 200);
  CHECK(get_lsb(img, 0, 1) == 1);
  CHECK_THROWS_AS((void)get_lsb(img, 1, 0), IndexError);
  CHECK_THROWS_AS((void)set_lsb(img, 0, 2, 1), IndexError);

  std::mt19937_64 rng(8);
  const RasterImage rgb = testing::random_image(rng, {6, 5}, 3);
  for (std::size_t r = 0; r < 6; ++r) {
    for (std::size_t c = 0; c < 15; ++c) {
      for (std::uint8_t b : {0, 1}) {
        const RasterImage out = set_lsb(rgb, r, c, b);
        REQUIRE(get_lsb(out, r, c) == b);
        const FlipAudit audit = flip_count(rgb, out);
        REQUIRE(audit.flips <= 1);
        REQUIRE(audit.lsb_only());
      }
    }
  }
}

TEST_CASE("flip_count") {
  const RasterImage a({2, 2}, 1, {200, 10, 20, 30});
  CHECK(flip_count(a, a).flips == 0);
  const RasterImage b({2, 2}, 1, {201, 10, 20, 30});
  CHECK(flip_count(a, b).flips == 1);
  CHECK(flip_count(b, a).flips == 1);
  const RasterImage c({2, 2}, 1, {201, 10, 25, 30});
  const FlipAudit audit = flip_count(a, c);
  CHECK(audit.flips == 2);
  CHECK(audit.non_lsb_changes == std::vector<std::size_t>{2});
  CHECK_THROWS_AS((void)flip_count(a, RasterImage({2, 2}, 3)), DimensionMismatch);
  CHECK_THROWS_AS((void)flip_count(a, RasterImage({2, 3}, 1)), DimensionMismatch);
}

TEST_CASE("constructors validate shape") {
  CHECK_THROWS_AS(RasterImage({0, 1}, 1), DomainError);
  CHECK_THROWS_AS(RasterImage({1, 1}, 2), DomainError);
  CHECK_THROWS_AS(RasterImage({1, 2}, 1, {1}), DimensionMismatch);
  CHECK_THROWS_AS(BitMatrix({1, 2}, std::vector<std::uint8_t>{0, 2}), DomainError);
  CHECK_THROWS_AS(BitMatrix({1, 1}, std::uint8_t{3}), DomainError);
}
