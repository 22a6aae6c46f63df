#include "ccstego/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "ccstego/errors.hpp"

namespace ccstego {

QualityReport psnr(const RasterImage& cover, const RasterImage& stego, std::size_t payload_bits) {
  const FlipAudit audit = flip_count(cover, stego);  // validates shapes
  const auto a = cover.samples();
  const auto b = stego.samples();
  std::uint64_t sum_sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = std::int64_t{a[i]} - std::int64_t{b[i]};
    sum_sq += static_cast<std::uint64_t>(d * d);
  }
  QualityReport report;
  report.flips = audit.flips;
  report.mse = static_cast<double>(sum_sq) / static_cast<double>(a.size());
  if (sum_sq != 0) report.psnr_db = 10.0 * std::log10(kMaxSample * kMaxSample / report.mse);
  report.hiding_capacity_bpp =
      static_cast<double>(payload_bits) / static_cast<double>(cover.dims().cells());
  return report;
}

namespace {

template <typename Counts>
double shannon_bits(const Counts& counts, std::uint64_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (auto c : counts) {
    if (c == 0) continue;
    const double p = static_cast<double>(c) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace

double histogram_entropy(const RasterImage& image) {
  std::array<std::uint64_t, 256> hist{};
  for (auto s : image.samples()) ++hist[s];
  return shannon_bits(hist, image.sample_count());
}

double neighbor_diff_entropy(const RasterImage& image) {
  const ImageDims dims = image.dims();
  if (dims.cols < 2) throw DomainError("neighbor_diff_entropy needs at least two columns");
  const auto ch = static_cast<std::size_t>(image.channels());
  std::array<std::uint64_t, 511> hist{};
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < dims.rows; ++r) {
    for (std::size_t c = 0; c + 1 < dims.cols; ++c) {
      for (std::size_t k = 0; k < ch; ++k) {
        const int diff = int{image.at(r, (c + 1) * ch + k)} - int{image.at(r, c * ch + k)};
        ++hist[static_cast<std::size_t>(diff + 255)];
        ++total;
      }
    }
  }
  return shannon_bits(hist, total);
}

EntropyReport entropy_report(const RasterImage& image) {
  EntropyReport report;
  report.histogram_entropy_bits = histogram_entropy(image);
  if (image.dims().cols >= 2) report.diff_entropy_bits = neighbor_diff_entropy(image);
  return report;
}

// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxIterations = 10000;
constexpr double kRelTolerance = 1e-16;
constexpr double kTiny = 1e-300;

// P(a, x) by its power series; converges quickly for x < a + 1.
double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double denom = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kRelTolerance) break;
  }
  return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Q(a, x) by the Legendre continued fraction, modified Lentz evaluation.
double upper_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelTolerance) break;
  }
  return std::exp(a * std::log(x) - x - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (!std::isfinite(a) || !(a > 0.0)) throw DomainError("gamma_q: a must be positive");
  if (std::isnan(x) || x < 0.0) throw DomainError("gamma_q: x must be non-negative");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return std::clamp(1.0 - lower_series(a, x), 0.0, 1.0);
  return std::clamp(upper_fraction(a, x), 0.0, 1.0);
}

AttackCurve chi_square_attack(const RasterImage& image, int step_percent) {
  if (step_percent < 1 || step_percent > 100) {
    throw DomainError("step_percent must lie in [1, 100]");
  }
  const auto samples = image.samples();
  std::vector<int> percents;
  for (int t = step_percent; t <= 100; t += step_percent) percents.push_back(t);
  if (percents.back() != 100) percents.push_back(100);

  AttackCurve curve;
  std::array<std::uint64_t, 256> hist{};
  std::size_t scanned = 0;
  for (int t : percents) {
    const std::size_t prefix = samples.size() * static_cast<std::size_t>(t) / 100;
    for (; scanned < prefix; ++scanned) ++hist[samples[scanned]];

    AttackPoint point;
    point.fraction = static_cast<double>(t) / 100.0;
    std::size_t pairs = 0;
    for (std::size_t k = 0; k < 128; ++k) {
      const auto even = hist[2 * k];
      const auto odd = hist[2 * k + 1];
      if (even + odd <= 4) continue;
      const double expected = static_cast<double>(even + odd) / 2.0;
      const double dev = static_cast<double>(even) - expected;
      point.chi_square += dev * dev / expected;
      ++pairs;
    }
    if (pairs >= 2) {
      point.dof = pairs - 1;
      point.p_embedding = gamma_q(static_cast<double>(point.dof) / 2.0, point.chi_square / 2.0);
    }
    curve.push_back(point);
  }
  return curve;
}

CapacityReport capacity_report(ImageDims dims, int channels, std::size_t payload_bits) {
  if (!dims.valid() || (channels != 1 && channels != 3)) {
    throw DomainError("capacity_report: invalid image shape");
  }
  CapacityReport report;
  const double pixels = static_cast<double>(dims.cells());
  report.max_bits = dims.cells() * static_cast<std::size_t>(channels);
  if (payload_bits > report.max_bits) {
    throw CapacityError("payload of " + std::to_string(payload_bits) + " bits exceeds " +
                        std::to_string(report.max_bits) + " available LSBs");
  }
  report.payload_bits = payload_bits;
  report.hc_bpp = static_cast<double>(payload_bits) / pixels;
  report.expected_flip_fraction =
      static_cast<double>(payload_bits) / (2.0 * static_cast<double>(report.max_bits));
  return report;
}

// ---------------------------------------------------------------------------

std::string format_attack_csv(const AttackCurve& curve) {
  std::ostringstream os;
  os << std::setprecision(17) << "fraction,chi_square,dof,p_embedding\n";
  for (const auto& p : curve) {
    os << p.fraction << ',' << p.chi_square << ',' << p.dof << ',' << p.p_embedding << '\n';
  }
  return os.str();
}

std::string format_quality(const QualityReport& report) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "psnr_db=";
  if (std::isinf(report.psnr_db)) {
    os << "inf";
  } else {
    os << report.psnr_db;
  }
  os << "\nmse=" << report.mse << "\nflips=" << report.flips
     << "\nhiding_capacity_bpp=" << report.hiding_capacity_bpp << '\n';
  return os.str();
}

std::string format_entropy(const EntropyReport& report, const std::string& prefix) {
  std::ostringstream os;
  os << std::setprecision(17) << prefix << "histogram_entropy_bits="
     << report.histogram_entropy_bits << '\n'
     << prefix << "diff_entropy_bits=" << report.diff_entropy_bits << '\n';
  return os.str();
}

}  // namespace ccstego
