#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ccstego/geometry.hpp"
#include "ccstego/keymat.hpp"

namespace ccstego {

/// Offset used to push an iterate off the absorbing set {0, 0.5, 1}.
inline constexpr double kSanitizeEpsilon = 0x1p-40;

/// One step of the one-parameter chaotic map
///
///     f(x) = a^2 (2x-1)^2 / (4x(1-x) + a^2 (2x-1)^2)
///
/// evaluated in binary64 with a fixed operation order so that every
/// conforming build reproduces the same bits. Throws DomainError unless
/// 0 < x < 1 and alpha > 0.5 (both finite).
[[nodiscard]] double map_step(double x, double alpha);

/// Wraps u into [0,1] (fractional part when u > 1 or u < 0) and then nudges
/// the degenerate values: 0 -> eps, 1 -> 1-eps, 0.5 -> 0.5+eps.
[[nodiscard]] double sanitize(double u) noexcept;

struct ChaosState {
  double x = 0.0;
  double y = 0.0;
  std::uint64_t n = 0;

  friend bool operator==(const ChaosState&, const ChaosState&) = default;
};

/// First state: x1 = f1(x0), y1 = f2(y0), n = 1. No coupling yet.
[[nodiscard]] ChaosState bootstrap_state(const SecretKeySet& keys);

/// Cross-coupled step. Each map is fed its partner scaled by R and the
/// result is added onto its own coordinate modulo 1:
///
///     x' = frac(x + f1(R y))
///     y' = frac(y + f2(R x'))
///
/// The shear form keeps the pair dynamics area preserving on the unit
/// torus, so the orbit neither collapses for R < 1 nor freezes on the
/// attracting point x = 1 that f has for alpha > 2.
[[nodiscard]] ChaosState coupled_step(const ChaosState& state, double alpha1, double alpha2,
                                      PublicCoupling coupling);

/// X = floor(x N) + 1, Y = floor(y M) + 1, each clamped into the grid.
[[nodiscard]] PixelPosition to_pixel(double x, double y, ImageDims dims) noexcept;

struct PositionStream {
  ImageDims dims;
  std::vector<PixelPosition> positions;
};

/// Incremental, duplicate-free position generator. Not thread safe: every
/// call advances shared state.
class PositionSelector {
 public:
  /// Throws DomainError on invalid keys, R or dims.
  PositionSelector(const SecretKeySet& keys, PublicCoupling coupling, ImageDims dims);

  /// Next unseen position. Throws InsufficientCapacity once the iteration
  /// cap is exhausted.
  PixelPosition next();

  [[nodiscard]] std::size_t emitted() const noexcept { return emitted_; }
  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }
  [[nodiscard]] std::uint64_t step_cap() const noexcept { return cap_; }
  [[nodiscard]] ImageDims dims() const noexcept { return dims_; }

 private:
  SecretKeySet keys_;
  PublicCoupling coupling_;
  ImageDims dims_;
  ChaosState state_;
  std::vector<bool> seen_;
  std::size_t emitted_ = 0;
  std::uint64_t steps_ = 0;
  std::uint64_t cap_ = 0;
};

/// 20 * cells * max(1, ln(cells)) generator steps.
[[nodiscard]] std::uint64_t iteration_cap(ImageDims dims) noexcept;

/// The first `count` distinct positions of the keyed stream. Streams for
/// different counts share their common prefix. Throws CapacityError when
/// count > M*N and InsufficientCapacity when the cap is hit.
[[nodiscard]] PositionStream select_positions(const SecretKeySet& keys, PublicCoupling coupling,
                                              ImageDims dims, std::size_t count);

// ---------------------------------------------------------------------------
// Diagnostics

struct BifurcationColumn {
  double alpha = 0.0;
  std::vector<double> samples;
};

/// Uniform alpha grid (alpha_steps points; a single point sits at
/// alpha_min). Each point iterates `transient` discarded steps and records
/// `samples` sanitized iterates. Grid points are computed in parallel.
[[nodiscard]] std::vector<BifurcationColumn> bifurcation_scan(double alpha_min, double alpha_max,
                                                              std::size_t alpha_steps, double x0,
                                                              std::size_t transient,
                                                              std::size_t samples);

/// Mean of ln|f'(x_i)| along the sanitized orbit after 1000 transient
/// steps, f' by central difference with h = 1e-7 (one-sided at the
/// interval ends). Requires n_iters >= 10^4.
[[nodiscard]] double lyapunov_estimate(double alpha, double x0, std::size_t n_iters);

}  // namespace ccstego
