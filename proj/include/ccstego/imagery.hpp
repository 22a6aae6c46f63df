#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "ccstego/geometry.hpp"

namespace ccstego {

using Bytes = std::vector<std::uint8_t>;

/// 8-bit grayscale (1 channel) or RGB (3 channels) raster, samples stored
/// row-major with interleaved channels.
///
/// Embedding addresses samples through a flattened grid of M rows by
/// N*channels columns: flat_col = col * channels + channel. Grayscale is
/// the channels == 1 case.
class RasterImage {
 public:
  RasterImage() = default;
  /// Zero-filled image. Throws DomainError on empty dims or channels not
  /// in {1, 3}.
  RasterImage(ImageDims dims, int channels);
  /// Throws DimensionMismatch if samples.size() != M*N*channels.
  RasterImage(ImageDims dims, int channels, std::vector<std::uint8_t> samples);

  [[nodiscard]] ImageDims dims() const noexcept { return dims_; }
  [[nodiscard]] int channels() const noexcept { return channels_; }
  [[nodiscard]] ImageDims flat_dims() const noexcept {
    return {dims_.rows, dims_.cols * static_cast<std::size_t>(channels_)};
  }
  [[nodiscard]] std::size_t sample_count() const noexcept { return samples_.size(); }

  [[nodiscard]] std::span<const std::uint8_t> samples() const noexcept { return samples_; }
  [[nodiscard]] std::span<std::uint8_t> samples() noexcept { return samples_; }

  /// Unchecked access on the flattened grid.
  [[nodiscard]] std::uint8_t at(std::size_t row, std::size_t flat_col) const noexcept {
    return samples_[row * flat_stride() + flat_col];
  }
  [[nodiscard]] std::uint8_t& at(std::size_t row, std::size_t flat_col) noexcept {
    return samples_[row * flat_stride() + flat_col];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;

 private:
  [[nodiscard]] std::size_t flat_stride() const noexcept {
    return dims_.cols * static_cast<std::size_t>(channels_);
  }

  ImageDims dims_{};
  int channels_ = 1;
  std::vector<std::uint8_t> samples_;
};

/// Row-major {0,1} grid.
class BitMatrix {
 public:
  BitMatrix() = default;
  /// Every cell set to `fill` (0 or 1). Throws DomainError on empty dims.
  BitMatrix(ImageDims dims, std::uint8_t fill);
  /// Throws DimensionMismatch on length mismatch, DomainError on a value
  /// other than 0 or 1.
  BitMatrix(ImageDims dims, std::vector<std::uint8_t> bits);

  [[nodiscard]] ImageDims dims() const noexcept { return dims_; }
  [[nodiscard]] std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  [[nodiscard]] std::uint8_t at(std::size_t row, std::size_t col) const noexcept {
    return bits_[row * dims_.cols + col];
  }
  void set(std::size_t row, std::size_t col, std::uint8_t bit) noexcept {
    bits_[row * dims_.cols + col] = bit & 1U;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  ImageDims dims_{};
  std::vector<std::uint8_t> bits_;
};

// ---------------------------------------------------------------------------
// netpbm I/O. Binary variants only: P5 (gray), P6 (RGB), P4 (bitmap).
// Headers accept any whitespace and `#` comments; output is canonical
// (`P5\n<N> <M>\n255\n`), never commented.

/// Throws ParseError.
[[nodiscard]] RasterImage load_pnm(std::span<const std::uint8_t> bytes);
[[nodiscard]] Bytes save_pnm(const RasterImage& image);

/// Throws ParseError.
[[nodiscard]] BitMatrix load_pbm(std::span<const std::uint8_t> bytes);
[[nodiscard]] Bytes save_pbm(const BitMatrix& matrix);

/// Whole-file helpers; throw ParseError when the file cannot be read or
/// written.
[[nodiscard]] Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

// ---------------------------------------------------------------------------
// LSB access on the flattened grid. Throw IndexError when out of range.

[[nodiscard]] std::uint8_t get_lsb(const RasterImage& image, std::size_t row,
                                   std::size_t flat_col);
/// Copy of `image` whose addressed sample has its LSB equal to `bit`.
[[nodiscard]] RasterImage set_lsb(RasterImage image, std::size_t row, std::size_t flat_col,
                                  std::uint8_t bit);

struct FlipAudit {
  std::size_t flips = 0;
  /// Sample indices whose difference has magnitude greater than 1.
  std::vector<std::size_t> non_lsb_changes;

  [[nodiscard]] bool lsb_only() const noexcept { return non_lsb_changes.empty(); }
};

/// Counts samples where the two images differ. Throws DimensionMismatch
/// when dims or channel counts disagree.
[[nodiscard]] FlipAudit flip_count(const RasterImage& cover, const RasterImage& stego);

}  // namespace ccstego
