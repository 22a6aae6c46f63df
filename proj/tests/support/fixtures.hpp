#pragma once

// Deterministic fixtures shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ccstego/codec.hpp"
#include "ccstego/imagery.hpp"
#include "ccstego/keymat.hpp"

namespace ccstego::testing {

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline SecretKeySet random_keys(std::mt19937_64& rng) {
  auto seed_value = [&] {
    for (;;) {
      const double v = uniform(rng, 0.01, 0.99);
      if (v < 0.499 || v > 0.501) return v;
    }
  };
  SecretKeySet keys;
  keys.alpha1 = uniform(rng, 0.6, 6.0);
  keys.alpha2 = uniform(rng, 0.6, 6.0);
  keys.x0 = seed_value();
  keys.y0 = seed_value();
  return keys;
}

inline PublicCoupling random_coupling(std::mt19937_64& rng, double lo = 0.1) {
  return {1.0 - uniform(rng, 0.0, 1.0 - lo)};
}

inline RasterImage random_image(std::mt19937_64& rng, ImageDims dims, int channels) {
  std::vector<std::uint8_t> samples(dims.cells() * static_cast<std::size_t>(channels));
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& s : samples) s = static_cast<std::uint8_t>(byte(rng));
  return {dims, channels, std::move(samples)};
}

inline std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  std::bernoulli_distribution coin(0.5);
  for (auto& b : bits) b = coin(rng) ? 1 : 0;
  return bits;
}

/// Raw-mode payload of exactly `payload_bits` random bits (multiple of 8).
inline MessagePayload random_raw_payload(std::mt19937_64& rng, std::size_t payload_bits) {
  std::string bytes(payload_bits / 8, '\0');
  std::uniform_int_distribution<int> byte(0, 255);
  for (auto& c : bytes) c = static_cast<char>(byte(rng));
  return encode_message(bytes, EncodingMode::Raw);
}

enum class Texture { VerticalGradient, Plasma, BlurredNoise, Blocks, Radial };

inline constexpr Texture kTextures[] = {Texture::VerticalGradient, Texture::Plasma,
                                        Texture::BlurredNoise, Texture::Blocks, Texture::Radial};

inline const char* texture_name(Texture t) {
  switch (t) {
    case Texture::VerticalGradient:
      return "gradient";
    case Texture::Plasma:
      return "plasma";
    case Texture::BlurredNoise:
      return "blurred-noise";
    case Texture::Blocks:
      return "blocks";
    case Texture::Radial:
      return "radial";
  }
  return "?";
}

/// Stand-in for a natural photograph: a smooth texture plus sensor-like
/// Gaussian noise, with an even/odd imbalance of `pair_bias` in the sample
/// values (odd samples are pulled down to even with that probability).
/// Natural covers show such pair imbalances; uniform noise does not.
inline RasterImage natural_cover(Texture texture, ImageDims dims, std::uint64_t seed,
                                 double pair_bias = 0.15) {
  std::mt19937_64 rng(seed);
  const auto rows = static_cast<double>(dims.rows);
  const auto cols = static_cast<double>(dims.cols);
  std::vector<double> base(dims.cells());

  if (texture == Texture::BlurredNoise) {
    std::vector<double> noise(dims.cells());
    for (auto& v : noise) v = uniform(rng, 0.0, 1.0);
    // Two passes of a 9x9 box blur, then stretch to the full range.
    constexpr int radius = 4;
    for (int pass = 0; pass < 2; ++pass) {
      std::vector<double> out(noise.size());
      for (std::size_t r = 0; r < dims.rows; ++r) {
        for (std::size_t c = 0; c < dims.cols; ++c) {
          double sum = 0.0;
          int n = 0;
          for (int dr = -radius; dr <= radius; ++dr) {
            for (int dc = -radius; dc <= radius; ++dc) {
              const auto rr = static_cast<long>(r) + dr;
              const auto cc = static_cast<long>(c) + dc;
              if (rr < 0 || cc < 0 || rr >= static_cast<long>(dims.rows) ||
                  cc >= static_cast<long>(dims.cols)) {
                continue;
              }
              sum += noise[static_cast<std::size_t>(rr) * dims.cols + static_cast<std::size_t>(cc)];
              ++n;
            }
          }
          out[r * dims.cols + c] = sum / n;
        }
      }
      noise = std::move(out);
    }
    const auto [lo, hi] = std::minmax_element(noise.begin(), noise.end());
    for (std::size_t i = 0; i < noise.size(); ++i) base[i] = 20.0 + 215.0 * (noise[i] - *lo) / (*hi - *lo);
  } else {
    const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    for (std::size_t r = 0; r < dims.rows; ++r) {
      for (std::size_t c = 0; c < dims.cols; ++c) {
        const double u = static_cast<double>(c) / cols;
        const double v = static_cast<double>(r) / rows;
        double value = 0.0;
        switch (texture) {
          case Texture::VerticalGradient:
            value = 30.0 + 190.0 * v + 10.0 * std::sin(6.0 * u + phase);
            break;
          case Texture::Plasma:
            value = 128.0 + 45.0 * std::sin(9.0 * u + phase) + 40.0 * std::sin(7.0 * v - 2.0 * phase) +
                    25.0 * std::sin(13.0 * (u + v));
            break;
          case Texture::Blocks: {
            const auto block = (r / 32) * 131 + (c / 32) * 71;
            value = 40.0 + static_cast<double>((block * 37) % 170) + 8.0 * std::sin(20.0 * u);
            break;
          }
          case Texture::Radial: {
            const double d = std::hypot(u - 0.5, v - 0.5);
            value = 128.0 + 100.0 * std::cos(18.0 * d + phase) * std::exp(-1.5 * d);
            break;
          }
          case Texture::BlurredNoise:
            break;
        }
        base[r * dims.cols + c] = value;
      }
    }
  }

  std::normal_distribution<double> noise(0.0, 3.0);
  std::bernoulli_distribution pull(pair_bias);
  std::vector<std::uint8_t> samples(dims.cells());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    auto v = static_cast<int>(std::lround(base[i] + noise(rng)));
    v = std::clamp(v, 0, 255);
    if ((v & 1) && pull(rng)) v -= 1;
    samples[i] = static_cast<std::uint8_t>(v);
  }
  return {dims, 1, std::move(samples)};
}

}  // namespace ccstego::testing
