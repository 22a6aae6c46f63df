#pragma once

#include <compare>
#include <cstddef>

namespace ccstego {

/// Image grid size: M rows by N columns.
struct ImageDims {
  std::size_t rows = 0;
  std::size_t cols = 0;

  [[nodiscard]] constexpr std::size_t cells() const noexcept { return rows * cols; }
  [[nodiscard]] constexpr bool valid() const noexcept { return rows >= 1 && cols >= 1; }

  friend constexpr bool operator==(const ImageDims&, const ImageDims&) = default;
};

/// 1-based pixel coordinate as produced by the generator. `col` (X) lies in
/// [1, N] and `row` (Y) in [1, M]; convert with zero_row()/zero_col() at the
/// image boundary.
struct PixelPosition {
  std::size_t col = 1;
  std::size_t row = 1;

  [[nodiscard]] constexpr std::size_t zero_row() const noexcept { return row - 1; }
  [[nodiscard]] constexpr std::size_t zero_col() const noexcept { return col - 1; }

  friend constexpr auto operator<=>(const PixelPosition&, const PixelPosition&) = default;
};

}  // namespace ccstego
