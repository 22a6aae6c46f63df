#include "ccstego/imagery.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>

#include "ccstego/errors.hpp"

namespace ccstego {

RasterImage::RasterImage(ImageDims dims, int channels) : dims_(dims), channels_(channels) {
  if (!dims.valid()) throw DomainError("image dimensions must be at least 1x1");
  if (channels != 1 && channels != 3) throw DomainError("images have 1 or 3 channels");
  samples_.assign(dims.cells() * static_cast<std::size_t>(channels), 0);
}

RasterImage::RasterImage(ImageDims dims, int channels, std::vector<std::uint8_t> samples)
    : RasterImage(dims, channels) {
  if (samples.size() != samples_.size()) {
    throw DimensionMismatch("sample count " + std::to_string(samples.size()) +
                            " does not match " + std::to_string(samples_.size()));
  }
  samples_ = std::move(samples);
}

BitMatrix::BitMatrix(ImageDims dims, std::uint8_t fill) : dims_(dims) {
  if (!dims.valid()) throw DomainError("matrix dimensions must be at least 1x1");
  if (fill > 1) throw DomainError("bit matrix cells hold 0 or 1");
  bits_.assign(dims.cells(), fill);
}

BitMatrix::BitMatrix(ImageDims dims, std::vector<std::uint8_t> bits) : BitMatrix(dims, 0) {
  if (bits.size() != bits_.size()) throw DimensionMismatch("bit count does not match dims");
  for (auto b : bits) {
    if (b > 1) throw DomainError("bit matrix cells hold 0 or 1");
  }
  bits_ = std::move(bits);
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kMaxCells = 0x7FFFFFFF;

bool is_space(std::uint8_t c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::string magic() {
    if (bytes_.size() < 2) throw ParseError("truncated netpbm header");
    pos_ = 2;
    return {static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > kMaxCells) throw ParseError(std::string(what) + " is too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw ParseError(std::string("expected ") + what + " in netpbm header");
    return value;
  }

  // Exactly one whitespace byte separates the header from the raster.
  std::size_t raster_start() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw ParseError("missing whitespace before raster data");
    }
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

ImageDims read_dims(HeaderReader& header) {
  const std::size_t cols = header.number("width");
  const std::size_t rows = header.number("height");
  if (cols == 0 || rows == 0) throw ParseError("netpbm dimensions must be positive");
  if (cols * rows > kMaxCells) throw ParseError("declared image exceeds 2^31-1 cells");
  return {rows, cols};
}

void append(Bytes& out, const std::string& text) { out.insert(out.end(), text.begin(), text.end()); }

}  // namespace

RasterImage load_pnm(std::span<const std::uint8_t> bytes) {
  HeaderReader header(bytes);
  const std::string magic = header.magic();
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw ParseError("unsupported magic '" + magic + "' (expected P5 or P6)");
  }
  const ImageDims dims = read_dims(header);
  if (header.number("maxval") != 255) throw ParseError("only maxval 255 is supported");
  const std::size_t start = header.raster_start();
  const std::size_t expected = dims.cells() * static_cast<std::size_t>(channels);
  if (bytes.size() - start < expected) throw ParseError("truncated raster data");
  if (bytes.size() - start > expected) throw ParseError("trailing bytes after raster data");
  return {dims, channels, {bytes.begin() + static_cast<std::ptrdiff_t>(start), bytes.end()}};
}

Bytes save_pnm(const RasterImage& image) {
  Bytes out;
  append(out, std::string(image.channels() == 1 ? "P5" : "P6") + "\n" +
                  std::to_string(image.dims().cols) + " " + std::to_string(image.dims().rows) +
                  "\n255\n");
  out.insert(out.end(), image.samples().begin(), image.samples().end());
  return out;
}

BitMatrix load_pbm(std::span<const std::uint8_t> bytes) {
  HeaderReader header(bytes);
  if (header.magic() != "P4") throw ParseError("unsupported magic (expected P4)");
  const ImageDims dims = read_dims(header);
  const std::size_t start = header.raster_start();
  const std::size_t stride = (dims.cols + 7) / 8;
  const std::size_t expected = stride * dims.rows;
  if (bytes.size() - start < expected) throw ParseError("truncated bitmap data");
  if (bytes.size() - start > expected) throw ParseError("trailing bytes after bitmap data");
  std::vector<std::uint8_t> bits(dims.cells());
  for (std::size_t r = 0; r < dims.rows; ++r) {
    const std::uint8_t* row = bytes.data() + start + r * stride;
    for (std::size_t c = 0; c < dims.cols; ++c) {
      bits[r * dims.cols + c] = (row[c / 8] >> (7 - c % 8)) & 1U;
    }
  }
  return {dims, std::move(bits)};
}

Bytes save_pbm(const BitMatrix& matrix) {
  const ImageDims dims = matrix.dims();
  Bytes out;
  append(out, "P4\n" + std::to_string(dims.cols) + " " + std::to_string(dims.rows) + "\n");
  const std::size_t stride = (dims.cols + 7) / 8;
  const std::size_t start = out.size();
  out.resize(start + stride * dims.rows, 0);
  for (std::size_t r = 0; r < dims.rows; ++r) {
    for (std::size_t c = 0; c < dims.cols; ++c) {
      if (matrix.at(r, c)) out[start + r * stride + c / 8] |= 0x80U >> (c % 8);
    }
  }
  return out;
}

Bytes read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ParseError("failed writing " + path.string());
}

// ---------------------------------------------------------------------------

namespace {

void check_index(const RasterImage& image, std::size_t row, std::size_t flat_col) {
  const ImageDims flat = image.flat_dims();
  if (row >= flat.rows || flat_col >= flat.cols) {
    throw IndexError("sample (" + std::to_string(row) + ", " + std::to_string(flat_col) +
                     ") outside " + std::to_string(flat.rows) + "x" + std::to_string(flat.cols));
  }
}

}  // namespace

std::uint8_t get_lsb(const RasterImage& image, std::size_t row, std::size_t flat_col) {
  check_index(image, row, flat_col);
  return image.at(row, flat_col) & 1U;
}

RasterImage set_lsb(RasterImage image, std::size_t row, std::size_t flat_col, std::uint8_t bit) {
  check_index(image, row, flat_col);
  auto& sample = image.at(row, flat_col);
  sample = static_cast<std::uint8_t>((sample & 0xFEU) | (bit & 1U));
  return image;
}

FlipAudit flip_count(const RasterImage& cover, const RasterImage& stego) {
  if (cover.dims() != stego.dims() || cover.channels() != stego.channels()) {
    throw DimensionMismatch("cover and stego differ in dimensions or channels");
  }
  FlipAudit audit;
  const auto a = cover.samples();
  const auto b = stego.samples();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    ++audit.flips;
    if (std::abs(int{a[i]} - int{b[i]}) != 1) audit.non_lsb_changes.push_back(i);
  }
  return audit;
}

}  // namespace ccstego
