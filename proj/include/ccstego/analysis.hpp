#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ccstego/geometry.hpp"
#include "ccstego/imagery.hpp"

namespace ccstego {

/// Peak sample value of an 8-bit image.
inline constexpr double kMaxSample = 255.0;

struct QualityReport {
  double psnr_db = std::numeric_limits<double>::infinity();  // +inf iff mse == 0
  double mse = 0.0;
  std::size_t flips = 0;
  double hiding_capacity_bpp = 0.0;
};

/// mse = mean squared sample difference over M*N*channels samples and
/// psnr = 10 log10(255^2 / mse). `payload_bits` only feeds the bpp field.
/// Throws DimensionMismatch.
[[nodiscard]] QualityReport psnr(const RasterImage& cover, const RasterImage& stego,
                                 std::size_t payload_bits = 0);

struct EntropyReport {
  double histogram_entropy_bits = 0.0;
  double diff_entropy_bits = 0.0;
};

/// Shannon entropy (bits) of the 256-bin sample histogram.
[[nodiscard]] double histogram_entropy(const RasterImage& image);

/// Shannon entropy of horizontal neighbour differences (511 bins), taken
/// between adjacent pixels of the same channel. Throws DomainError for a
/// single-column image.
[[nodiscard]] double neighbor_diff_entropy(const RasterImage& image);

[[nodiscard]] EntropyReport entropy_report(const RasterImage& image);

/// Regularized upper incomplete gamma Q(a, x): series below x = a + 1,
/// Lentz continued fraction above. Absolute error <= 1e-10.
/// Throws DomainError unless a > 0 and x >= 0.
[[nodiscard]] double gamma_q(double a, double x);

struct AttackPoint {
  double fraction = 0.0;  // of samples scanned, in (0, 1]
  double chi_square = 0.0;
  std::size_t dof = 0;
  double p_embedding = 0.0;
};

using AttackCurve = std::vector<AttackPoint>;

/// Pairs-of-values chi-square attack over growing row-major prefixes of
/// the samples (step, 2*step, ... percent, always ending at 100). Pairs
/// (2k, 2k+1) with fewer than 5 samples are skipped. p_embedding is
/// Q(dof/2, chi^2/2); 0 when fewer than two pairs qualify.
/// Throws DomainError unless 1 <= step_percent <= 100.
[[nodiscard]] AttackCurve chi_square_attack(const RasterImage& image, int step_percent);

struct CapacityReport {
  std::size_t max_bits = 0;
  std::size_t payload_bits = 0;
  double hc_bpp = 0.0;
  double expected_flip_fraction = 0.0;
};

/// One LSB per sample. Half of the embedded bits are expected to flip.
/// Throws CapacityError when payload_bits exceeds M*N*channels.
[[nodiscard]] CapacityReport capacity_report(ImageDims dims, int channels,
                                             std::size_t payload_bits);

// Text serializations consumed by the CLI.
[[nodiscard]] std::string format_attack_csv(const AttackCurve& curve);
[[nodiscard]] std::string format_quality(const QualityReport& report);
[[nodiscard]] std::string format_entropy(const EntropyReport& report, const std::string& prefix);

}  // namespace ccstego
