#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccstego/imagery.hpp"
#include "ccstego/keymat.hpp"

namespace ccstego {

/// Character grouping of the message bits: 7-bit ASCII, one UTF-16 code
/// unit per character, or raw bytes.
enum class EncodingMode { Ascii7, Utf16, Raw };

[[nodiscard]] std::string_view to_string(EncodingMode mode) noexcept;
[[nodiscard]] std::optional<EncodingMode> parse_mode(std::string_view text) noexcept;
[[nodiscard]] std::size_t group_bits(EncodingMode mode) noexcept;

/// Width of the big-endian payload-length header that precedes the payload.
inline constexpr std::size_t kHeaderBits = 32;

/// Framed bit sequence: 32-bit big-endian payload bit count, then payload.
struct MessagePayload {
  EncodingMode mode = EncodingMode::Raw;
  std::vector<std::uint8_t> bits;

  /// Count stored in the header (the first 32 bits).
  [[nodiscard]] std::uint32_t declared_length() const;

  friend bool operator==(const MessagePayload&, const MessagePayload&) = default;
};

/// ascii7 and utf16 read `text` as UTF-8; raw takes the bytes verbatim.
/// Throws EncodingError for characters the mode cannot represent.
[[nodiscard]] MessagePayload encode_message(std::string_view text, EncodingMode mode);

/// Inverse of encode_message (utf16 output is re-encoded as UTF-8).
/// Throws DecodeError on a header that disagrees with the bit count, a
/// length not divisible by the group size, or an unpaired surrogate.
[[nodiscard]] std::string decode_message(const MessagePayload& payload);

/// Marks of changed samples. Untouched cells read ones=1, zeros=0; a
/// touched cell has ones = zeros = the embedded bit.
struct SideMatrices {
  BitMatrix ones;
  BitMatrix zeros;

  [[nodiscard]] static SideMatrices fresh(ImageDims flat_dims);
  [[nodiscard]] bool touched(std::size_t row, std::size_t col) const noexcept {
    return ones.at(row, col) == zeros.at(row, col);
  }
  /// True iff every cell is either untouched (1,0) or touched (b,b).
  [[nodiscard]] bool consistent() const noexcept;

  friend bool operator==(const SideMatrices&, const SideMatrices&) = default;
};

struct StegoBundle {
  RasterImage stego;
  SideMatrices side;
  PublicCoupling coupling;
  EncodingMode mode = EncodingMode::Raw;
};

/// Hides the framed payload in the LSBs of the keyed positions, header
/// first. Only positions whose LSB differs from the bit are written, and
/// each write is mirrored into both side matrices.
/// Throws CapacityError (including InsufficientCapacity) or DomainError.
[[nodiscard]] StegoBundle embed(const RasterImage& cover, const MessagePayload& payload,
                                const SecretKeySet& keys, PublicCoupling coupling);

/// Reads `count` framed bits (header included) in generation order without
/// interpreting the header. Where the side matrices agree the bit comes from
/// them, otherwise from the stego LSB.
[[nodiscard]] std::vector<std::uint8_t> extract_bits(const StegoBundle& bundle,
                                                     const SecretKeySet& keys, std::size_t count);

/// Recovers the framed payload. Throws ExtractError when the header claims
/// more bits than the grid holds or positions cannot be regenerated.
[[nodiscard]] MessagePayload extract(const StegoBundle& bundle, const SecretKeySet& keys);

/// Fraction of differing bits. Throws DimensionMismatch on unequal lengths.
/// Two empty sequences give 0.
[[nodiscard]] double bit_error_rate(const MessagePayload& sent, const MessagePayload& received);
[[nodiscard]] double bit_error_rate(const std::vector<std::uint8_t>& sent,
                                    const std::vector<std::uint8_t>& received);

}  // namespace ccstego
