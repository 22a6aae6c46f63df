#include "ccstego/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <string>
#include <thread>

#include "ccstego/errors.hpp"

namespace ccstego {

double map_step(double x, double alpha) {
  if (!std::isfinite(x) || !(x > 0.0 && x < 1.0)) {
    throw DomainError("map_step: iterate outside (0, 1)");
  }
  if (!std::isfinite(alpha) || !(alpha > 0.5)) {
    throw DomainError("map_step: alpha must be a finite value > 0.5");
  }
  const double alpha_sq = alpha * alpha;
  const double centred = 2.0 * x - 1.0;
  const double numerator = alpha_sq * (centred * centred);
  const double denominator = (4.0 * x) * (1.0 - x) + numerator;
  return numerator / denominator;
}

double sanitize(double u) noexcept {
  if (u > 1.0 || u < 0.0) u -= std::floor(u);
  if (u == 0.0) return kSanitizeEpsilon;
  if (u == 1.0) return 1.0 - kSanitizeEpsilon;
  if (u == 0.5) return 0.5 + kSanitizeEpsilon;
  return u;
}

ChaosState bootstrap_state(const SecretKeySet& keys) {
  return {sanitize(map_step(sanitize(keys.x0), keys.alpha1)),
          sanitize(map_step(sanitize(keys.y0), keys.alpha2)), 1};
}

namespace {

// frac() of a sum of two values in [0, 1].
double wrap_unit(double u) noexcept { return u >= 1.0 ? u - 1.0 : u; }

}  // namespace

ChaosState coupled_step(const ChaosState& state, double alpha1, double alpha2,
                        PublicCoupling coupling) {
  const double x = sanitize(wrap_unit(state.x + map_step(sanitize(coupling.r * state.y), alpha1)));
  const double y = sanitize(wrap_unit(state.y + map_step(sanitize(coupling.r * x), alpha2)));
  return {x, y, state.n + 1};
}

PixelPosition to_pixel(double x, double y, ImageDims dims) noexcept {
  auto index = [](double u, std::size_t extent) {
    const double scaled = std::floor(u * static_cast<double>(extent));
    if (!(scaled >= 0.0)) return std::size_t{1};
    const auto idx = static_cast<std::size_t>(std::min(scaled, static_cast<double>(extent - 1)));
    return idx + 1;
  };
  return {index(x, dims.cols), index(y, dims.rows)};
}

std::uint64_t iteration_cap(ImageDims dims) noexcept {
  const double cells = static_cast<double>(dims.cells());
  const double factor = std::max(1.0, std::log(cells));
  return static_cast<std::uint64_t>(std::ceil(20.0 * cells * factor));
}

namespace {

void require_valid(const SecretKeySet& keys, PublicCoupling coupling, ImageDims dims) {
  if (auto v = validate_keys(keys); !v.ok()) {
    throw DomainError("invalid secret keys: " + v.summary());
  }
  if (auto v = validate_coupling(coupling); !v.ok()) {
    throw DomainError("invalid coupling factor R");
  }
  if (!dims.valid()) throw DomainError("image dimensions must be at least 1x1");
}

}  // namespace

PositionSelector::PositionSelector(const SecretKeySet& keys, PublicCoupling coupling,
                                   ImageDims dims)
    : keys_(keys), coupling_(coupling), dims_(dims) {
  require_valid(keys, coupling, dims);
  seen_.assign(dims.cells(), false);
  cap_ = iteration_cap(dims);
  state_ = bootstrap_state(keys);
}

PixelPosition PositionSelector::next() {
  for (;;) {
    if (steps_ >= cap_) {
      throw InsufficientCapacity("position generator exhausted its iteration cap after " +
                                 std::to_string(emitted_) + " distinct positions");
    }
    const PixelPosition p = to_pixel(state_.x, state_.y, dims_);
    state_ = coupled_step(state_, keys_.alpha1, keys_.alpha2, coupling_);
    ++steps_;
    const std::size_t cell = p.zero_row() * dims_.cols + p.zero_col();
    if (!seen_[cell]) {
      seen_[cell] = true;
      ++emitted_;
      return p;
    }
  }
}

PositionStream select_positions(const SecretKeySet& keys, PublicCoupling coupling, ImageDims dims,
                                std::size_t count) {
  PositionStream stream{dims, {}};
  if (count == 0) {
    require_valid(keys, coupling, dims);
    return stream;
  }
  if (dims.valid() && count > dims.cells()) {
    throw CapacityError("requested " + std::to_string(count) + " positions but the grid has " +
                        std::to_string(dims.cells()) + " cells");
  }
  PositionSelector selector(keys, coupling, dims);
  stream.positions.reserve(count);
  while (stream.positions.size() < count) stream.positions.push_back(selector.next());
  return stream;
}

std::vector<BifurcationColumn> bifurcation_scan(double alpha_min, double alpha_max,
                                                std::size_t alpha_steps, double x0,
                                                std::size_t transient, std::size_t samples) {
  if (!std::isfinite(alpha_min) || !std::isfinite(alpha_max) || !(alpha_min > 0.5) ||
      !(alpha_min < alpha_max)) {
    throw DomainError("bifurcation_scan: need 0.5 < alpha_min < alpha_max");
  }
  if (alpha_steps < 1) throw DomainError("bifurcation_scan: alpha_steps must be >= 1");
  if (!(x0 > 0.0 && x0 < 1.0) || x0 == 0.5) {
    throw DomainError("bifurcation_scan: x0 must lie in (0,1) and differ from 0.5");
  }

  auto column = [=](std::size_t i) {
    const double alpha =
        alpha_steps == 1 ? alpha_min
                         : alpha_min + (alpha_max - alpha_min) * static_cast<double>(i) /
                                           static_cast<double>(alpha_steps - 1);
    BifurcationColumn col{alpha, {}};
    col.samples.reserve(samples);
    double x = sanitize(x0);
    for (std::size_t t = 0; t < transient; ++t) x = sanitize(map_step(x, alpha));
    for (std::size_t s = 0; s < samples; ++s) {
      x = sanitize(map_step(x, alpha));
      col.samples.push_back(x);
    }
    return col;
  };

  std::vector<BifurcationColumn> out(alpha_steps);
  const std::size_t workers = std::max(1U, std::thread::hardware_concurrency());
  for (std::size_t begin = 0; begin < alpha_steps; begin += workers) {
    const std::size_t end = std::min(alpha_steps, begin + workers);
    std::vector<std::future<BifurcationColumn>> batch;
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, column, i));
    }
    for (std::size_t i = begin; i < end; ++i) out[i] = batch[i - begin].get();
  }
  return out;
}

double lyapunov_estimate(double alpha, double x0, std::size_t n_iters) {
  constexpr std::size_t kTransient = 1000;
  constexpr double kStep = 1e-7;
  if (n_iters < 10000) throw DomainError("lyapunov_estimate: n_iters must be >= 10^4");
  if (!(x0 > 0.0 && x0 < 1.0) || x0 == 0.5) {
    throw DomainError("lyapunov_estimate: x0 must lie in (0,1) and differ from 0.5");
  }
  if (!std::isfinite(alpha) || !(alpha > 0.5)) {
    throw DomainError("lyapunov_estimate: alpha must be > 0.5");
  }

  double x = sanitize(x0);
  for (std::size_t i = 0; i < kTransient; ++i) x = sanitize(map_step(x, alpha));

  double sum = 0.0;
  for (std::size_t i = 0; i < n_iters; ++i) {
    double derivative = 0.0;
    if (x - kStep <= 0.0) {
      derivative = (map_step(x + kStep, alpha) - map_step(x, alpha)) / kStep;
    } else if (x + kStep >= 1.0) {
      derivative = (map_step(x, alpha) - map_step(x - kStep, alpha)) / kStep;
    } else {
      derivative = (map_step(x + kStep, alpha) - map_step(x - kStep, alpha)) / (2.0 * kStep);
    }
    sum += std::log(std::max(std::abs(derivative), std::numeric_limits<double>::min()));
    x = sanitize(map_step(x, alpha));
  }
  return sum / static_cast<double>(n_iters);
}

}  // namespace ccstego
