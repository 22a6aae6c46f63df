#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>

#include "ccstego/chaos.hpp"
#include "ccstego/errors.hpp"
#include "ccstego/keymat.hpp"
#include "support/fixtures.hpp"

using namespace ccstego;

namespace {

const SecretKeySet kKeys{3.0, 2.5, 0.31, 0.72};

bool has_field(const ValidationResult& v, const std::string& field) {
  for (const auto& item : v.violations) {
    if (item.field == field) return true;
  }
  return false;
}

// Every textual and binary rendering of `value` we can think of.
std::vector<std::string> renderings(double value) {
  std::vector<std::string> out{format_hex_double(value)};
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  out.emplace_back(buf);
  std::snprintf(buf, sizeof buf, "%.15g", value);
  out.emplace_back(buf);
  std::snprintf(buf, sizeof buf, "%a", value);
  out.emplace_back(buf);
  std::string raw(sizeof value, '\0');
  std::memcpy(raw.data(), &value, sizeof value);
  out.push_back(raw);
  return out;
}

}  // namespace

TEST_CASE("validate_keys") {
  CHECK(validate_keys(kKeys).ok());
  CHECK(has_field(validate_keys({0.5, 2.5, 0.31, 0.72}), "alpha1"));
  CHECK(has_field(validate_keys({3.0, 0.2, 0.31, 0.72}), "alpha2"));
  CHECK(has_field(validate_keys({3.0, 2.5, 0.5, 0.72}), "x0"));
  CHECK(has_field(validate_keys({3.0, 2.5, 0.31, 1.0}), "y0"));
  CHECK(has_field(validate_keys({INFINITY, 2.5, 0.31, 0.72}), "alpha1"));
  const auto all = validate_keys({0.1, 0.1, 0.0, 2.0});
  CHECK(all.violations.size() == 4);
  // Summaries name fields, never values.
  CHECK(all.summary().find("0.1") == std::string::npos);
}

TEST_CASE("validate_coupling") {
  CHECK(validate_coupling({1.0}).ok());
  CHECK(validate_coupling({0.9}).ok());
  CHECK_FALSE(validate_coupling({0.0}).ok());
  CHECK_FALSE(validate_coupling({1.0000001}).ok());
  CHECK_FALSE(validate_coupling({-0.3}).ok());
  CHECK_FALSE(validate_coupling({NAN}).ok());
}

TEST_CASE("hex literals") {
  CHECK(format_hex_double(2.5) == "0x1.4p+1");
  CHECK(parse_hex_double("0x1.4p+1") == 2.5);
  CHECK(parse_hex_double("-0x1p-2") == -0.25);
  CHECK_THROWS_AS((void)parse_hex_double("2.5"), ParseError);
  CHECK_THROWS_AS((void)parse_hex_double("0x1.4p+1junk"), ParseError);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double v = testing::uniform(rng, -1e6, 1e6);
    REQUIRE(parse_hex_double(format_hex_double(v)) == v);
  }
}

TEST_CASE("secret key file") {
  const std::string text = format_secret_file(kKeys);
  CHECK(text == "alpha1=0x1.8p+1\nalpha2=0x1.4p+1\nx0=" + format_hex_double(0.31) + "\ny0=" +
                    format_hex_double(0.72) + "\n");
  CHECK(parse_secret_file(text) == kKeys);
  CHECK_THROWS_AS((void)parse_secret_file("alpha1=0x1.8p+1\nalpha2=0x1.4p+1\nx0=0x1p-2\ny0=0x1p-2"),
                  ParseError);  // no trailing newline
  CHECK_THROWS_AS((void)parse_secret_file(text + "R=0x1p-1\n"), ParseError);
  CHECK_THROWS_AS((void)parse_secret_file("alpha1=0x1.8p+1\nalpha2=0x1.4p+1\nx0=0x1p-2\n"),
                  ParseError);
  CHECK_THROWS_AS((void)parse_secret_file(text + "x0=0x1p-2\n"), ParseError);
  CHECK_THROWS_AS((void)parse_secret_file("alpha1=3.0\nalpha2=0x1.4p+1\nx0=0x1p-2\ny0=0x1p-2\n"),
                  ParseError);
}

TEST_CASE("public key file") {
  const PublicKeyFile file{{0.9}, std::nullopt};
  CHECK(format_public_file(file) == "R=" + format_hex_double(0.9) + "\n");
  const auto parsed = parse_public_file(format_public_file({{0.9}, "utf16"}));
  CHECK(parsed.coupling.r == 0.9);
  REQUIRE(parsed.mode.has_value());
  CHECK(*parsed.mode == "utf16");
  CHECK_FALSE(parse_public_file("R=0x1p-1\n").mode.has_value());
  CHECK_THROWS_AS((void)parse_public_file("R=0x1p-1\nalpha1=0x1p+1\n"), ParseError);
}

TEST_CASE("simulate_exchange") {
  const ImageDims dims{128, 128};
  const PublicCoupling r{0.9};

  SUBCASE("shared secrets agree") {
    const auto t = simulate_exchange(kKeys, kKeys, r, dims, 500);
    CHECK(t.agreement);
    CHECK_FALSE(t.first_divergence.has_value());
    REQUIRE(t.events.size() == 3);
    CHECK(t.events[0].sender == Party::Bob);
    CHECK(t.events[0].kind == MessageKind::CouplingFactor);
    CHECK(t.events[0].payload_digest == fnv1a64(format_hex_double(0.9)));
    CHECK(t.events[1].kind == MessageKind::OnesMatrix);
    CHECK(t.events[2].kind == MessageKind::ZerosMatrix);
  }

  SUBCASE("a 1e-10 change in x0 breaks agreement within 500 positions") {
    SecretKeySet bob = kKeys;
    bob.x0 += 1e-10;
    const auto t = simulate_exchange(kKeys, bob, r, dims, 500);
    CHECK_FALSE(t.agreement);
    REQUIRE(t.first_divergence.has_value());
    CHECK(*t.first_divergence < 500);
    // Independent re-derivation of the divergence point.
    const auto a = select_positions(kKeys, r, dims, 500).positions;
    const auto b = select_positions(bob, r, dims, 500).positions;
    const auto mismatch = std::mismatch(a.begin(), a.end(), b.begin());
    CHECK(static_cast<std::size_t>(mismatch.first - a.begin()) == *t.first_divergence);
  }

  SUBCASE("invalid inputs") {
    CHECK_THROWS_AS((void)simulate_exchange({0.4, 2, 0.3, 0.3}, kKeys, r, dims), DomainError);
    CHECK_THROWS_AS((void)simulate_exchange(kKeys, kKeys, PublicCoupling{1.5}, dims), DomainError);
    CHECK_THROWS_AS((void)simulate_exchange(kKeys, kKeys, r, {0, 0}), DomainError);
  }
}

TEST_CASE("transcripts never carry secret key material") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const SecretKeySet keys = testing::random_keys(rng);
    const PublicCoupling r = testing::random_coupling(rng);
    const auto transcript = simulate_exchange(keys, keys, r, {64, 64}, 200);
    const std::string text = serialize_transcript(transcript);
    for (double secret : {keys.alpha1, keys.alpha2, keys.x0, keys.y0}) {
      for (const auto& form : renderings(secret)) {
        REQUIRE(text.find(form) == std::string::npos);
      }
    }
    CHECK(transcript.agreement);
    // Agreement soundness, re-checked independently.
    CHECK(select_positions(keys, r, {64, 64}, 200).positions ==
          select_positions(keys, r, {64, 64}, 200).positions);
  }
}

TEST_CASE("tiny key perturbations diverge in at least 49 of 50 cases") {
  std::mt19937_64 rng(99);
  int diverged = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const SecretKeySet keys = testing::random_keys(rng);
    const PublicCoupling r = testing::random_coupling(rng, 0.5);
    SecretKeySet other = keys;
    switch (trial % 4) {
      case 0: other.alpha1 += 1e-10; break;
      case 1: other.alpha2 += 1e-10; break;
      case 2: other.x0 += 1e-10; break;
      default: other.y0 += 1e-10; break;
    }
    const auto t = simulate_exchange(keys, other, r, {128, 128}, 500);
    diverged += t.agreement ? 0 : 1;
  }
  CHECK(diverged >= 49);
}
