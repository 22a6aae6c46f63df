#include "ccstego/codec.hpp"

#include <limits>
#include <string>

#include "ccstego/chaos.hpp"
#include "ccstego/errors.hpp"

namespace ccstego {

std::string_view to_string(EncodingMode mode) noexcept {
  switch (mode) {
    case EncodingMode::Ascii7:
      return "ascii7";
    case EncodingMode::Utf16:
      return "utf16";
    case EncodingMode::Raw:
      return "raw";
  }
  return "raw";
}

std::optional<EncodingMode> parse_mode(std::string_view text) noexcept {
  if (text == "ascii7") return EncodingMode::Ascii7;
  if (text == "utf16") return EncodingMode::Utf16;
  if (text == "raw") return EncodingMode::Raw;
  return std::nullopt;
}

std::size_t group_bits(EncodingMode mode) noexcept {
  switch (mode) {
    case EncodingMode::Ascii7:
      return 7;
    case EncodingMode::Utf16:
      return 16;
    case EncodingMode::Raw:
      return 8;
  }
  return 8;
}

std::uint32_t MessagePayload::declared_length() const {
  if (bits.size() < kHeaderBits) throw DecodeError("payload shorter than its 32-bit header");
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < kHeaderBits; ++i) value = (value << 1) | (bits[i] & 1U);
  return value;
}

namespace {

void push_bits(std::vector<std::uint8_t>& out, std::uint32_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) out.push_back((value >> i) & 1U);
}

std::uint32_t read_bits(const std::vector<std::uint8_t>& bits, std::size_t offset,
                        std::size_t width) {
  std::uint32_t value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | (bits[offset + i] & 1U);
  return value;
}

// Strict UTF-8 decoding into code points.
std::vector<char32_t> utf8_code_points(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1, cp = lead & 0x1F, min = 0x80;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2, cp = lead & 0x0F, min = 0x800;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3, cp = lead & 0x07, min = 0x10000;
    } else {
      throw EncodingError("invalid UTF-8 lead byte at offset " + std::to_string(i));
    }
    if (i + extra >= text.size()) {
      throw EncodingError("truncated UTF-8 sequence at offset " + std::to_string(i));
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + k]);
      if ((cont & 0xC0) != 0x80) {
        throw EncodingError("invalid UTF-8 continuation at offset " + std::to_string(i + k));
      }
      cp = (cp << 6) | (cont & 0x3F);
    }
    if (extra > 0 && cp < min) throw EncodingError("overlong UTF-8 sequence");
    if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) {
      throw EncodingError("UTF-8 encodes an invalid code point");
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

}  // namespace

MessagePayload encode_message(std::string_view text, EncodingMode mode) {
  MessagePayload payload{mode, {}};
  std::vector<std::uint8_t> body;
  switch (mode) {
    case EncodingMode::Ascii7:
      for (std::size_t i = 0; i < text.size(); ++i) {
        const auto c = static_cast<unsigned char>(text[i]);
        if (c > 0x7F) {
          throw EncodingError("character at byte " + std::to_string(i) + " is not 7-bit ASCII");
        }
        push_bits(body, c, 7);
      }
      break;
    case EncodingMode::Utf16:
      for (char32_t cp : utf8_code_points(text)) {
        if (cp > 0xFFFF) {
          throw EncodingError("character outside the Basic Multilingual Plane needs two UTF-16 units");
        }
        push_bits(body, static_cast<std::uint32_t>(cp), 16);
      }
      break;
    case EncodingMode::Raw:
      for (char c : text) push_bits(body, static_cast<unsigned char>(c), 8);
      break;
  }
  if (body.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw EncodingError("message longer than the 32-bit length header allows");
  }
  payload.bits.reserve(kHeaderBits + body.size());
  push_bits(payload.bits, static_cast<std::uint32_t>(body.size()), kHeaderBits);
  payload.bits.insert(payload.bits.end(), body.begin(), body.end());
  return payload;
}

std::string decode_message(const MessagePayload& payload) {
  const std::size_t length = payload.declared_length();
  if (payload.bits.size() != kHeaderBits + length) {
    throw DecodeError("header declares " + std::to_string(length) + " bits but " +
                      std::to_string(payload.bits.size() - kHeaderBits) + " follow");
  }
  const std::size_t group = group_bits(payload.mode);
  if (length % group != 0) {
    throw DecodeError("payload length " + std::to_string(length) + " is not a multiple of " +
                      std::to_string(group));
  }
  std::string out;
  for (std::size_t off = kHeaderBits; off < payload.bits.size(); off += group) {
    const std::uint32_t unit = read_bits(payload.bits, off, group);
    switch (payload.mode) {
      case EncodingMode::Ascii7:
      case EncodingMode::Raw:
        out.push_back(static_cast<char>(unit));
        break;
      case EncodingMode::Utf16:
        if (unit >= 0xD800 && unit <= 0xDFFF) throw DecodeError("unpaired UTF-16 surrogate");
        append_utf8(out, unit);
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SideMatrices SideMatrices::fresh(ImageDims flat_dims) {
  return {BitMatrix(flat_dims, 1), BitMatrix(flat_dims, 0)};
}

bool SideMatrices::consistent() const noexcept {
  if (ones.dims() != zeros.dims()) return false;
  const auto o = ones.bits();
  const auto z = zeros.bits();
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (o[i] != z[i]) {
      if (o[i] != 1 || z[i] != 0) return false;
    }
  }
  return true;
}

StegoBundle embed(const RasterImage& cover, const MessagePayload& payload,
                  const SecretKeySet& keys, PublicCoupling coupling) {
  const ImageDims flat = cover.flat_dims();
  if (payload.bits.size() > flat.cells()) {
    throw CapacityError("payload of " + std::to_string(payload.bits.size()) +
                        " bits exceeds the " + std::to_string(flat.cells()) + "-sample cover");
  }
  const PositionStream stream = select_positions(keys, coupling, flat, payload.bits.size());

  StegoBundle bundle{cover, SideMatrices::fresh(flat), coupling, payload.mode};
  for (std::size_t i = 0; i < stream.positions.size(); ++i) {
    const std::size_t row = stream.positions[i].zero_row();
    const std::size_t col = stream.positions[i].zero_col();
    const std::uint8_t bit = payload.bits[i] & 1U;
    auto& sample = bundle.stego.at(row, col);
    if ((sample & 1U) == bit) continue;
    sample = static_cast<std::uint8_t>((sample & 0xFEU) | bit);
    bundle.side.ones.set(row, col, bit);
    bundle.side.zeros.set(row, col, bit);
  }
  return bundle;
}

namespace {

void check_bundle(const StegoBundle& bundle) {
  const ImageDims flat = bundle.stego.flat_dims();
  if (bundle.side.ones.dims() != flat || bundle.side.zeros.dims() != flat) {
    throw DimensionMismatch("side matrices must be " + std::to_string(flat.rows) + "x" +
                            std::to_string(flat.cols));
  }
}

std::uint8_t read_bit(const StegoBundle& bundle, PixelPosition p) {
  const std::size_t row = p.zero_row();
  const std::size_t col = p.zero_col();
  if (bundle.side.touched(row, col)) return bundle.side.ones.at(row, col);
  return bundle.stego.at(row, col) & 1U;
}

}  // namespace

std::vector<std::uint8_t> extract_bits(const StegoBundle& bundle, const SecretKeySet& keys,
                                       std::size_t count) {
  check_bundle(bundle);
  const ImageDims flat = bundle.stego.flat_dims();
  if (count > flat.cells()) throw ExtractError("requested more bits than the grid holds");
  std::vector<std::uint8_t> bits;
  bits.reserve(count);
  try {
    PositionSelector selector(keys, bundle.coupling, flat);
    while (bits.size() < count) bits.push_back(read_bit(bundle, selector.next()));
  } catch (const InsufficientCapacity& e) {
    throw ExtractError(std::string("cannot regenerate positions: ") + e.what());
  }
  return bits;
}

MessagePayload extract(const StegoBundle& bundle, const SecretKeySet& keys) {
  check_bundle(bundle);
  const ImageDims flat = bundle.stego.flat_dims();
  if (flat.cells() < kHeaderBits) throw ExtractError("grid too small to hold a header");

  MessagePayload payload{bundle.mode, {}};
  try {
    PositionSelector selector(keys, bundle.coupling, flat);
    payload.bits.reserve(kHeaderBits);
    while (payload.bits.size() < kHeaderBits) payload.bits.push_back(read_bit(bundle, selector.next()));
    const std::size_t total = kHeaderBits + payload.declared_length();
    if (total > flat.cells()) {
      throw ExtractError("header declares " + std::to_string(total - kHeaderBits) +
                         " payload bits, more than the grid holds");
    }
    payload.bits.reserve(total);
    while (payload.bits.size() < total) payload.bits.push_back(read_bit(bundle, selector.next()));
  } catch (const InsufficientCapacity& e) {
    throw ExtractError(std::string("cannot regenerate positions: ") + e.what());
  }
  return payload;
}

double bit_error_rate(const std::vector<std::uint8_t>& sent,
                      const std::vector<std::uint8_t>& received) {
  if (sent.size() != received.size()) {
    throw DimensionMismatch("bit sequences differ in length");
  }
  if (sent.empty()) return 0.0;
  std::size_t errors = 0;
  for (std::size_t i = 0; i < sent.size(); ++i) errors += (sent[i] & 1U) != (received[i] & 1U);
  return static_cast<double>(errors) / static_cast<double>(sent.size());
}

double bit_error_rate(const MessagePayload& sent, const MessagePayload& received) {
  return bit_error_rate(sent.bits, received.bits);
}

}  // namespace ccstego
