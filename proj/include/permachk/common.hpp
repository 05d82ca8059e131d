#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace permachk {

inline constexpr const char* kVersion = "0.1.0";

/// Which coordinate axis a boundary orbit lives on.
enum class Axis { X, Y };

inline const char* axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an orbit iterate becomes non-finite. Carries the step index.
struct OrbitOverflow : std::runtime_error {
  std::size_t step;
  explicit OrbitOverflow(std::size_t step_)
      : std::runtime_error("non-finite orbit value at step " + std::to_string(step_)),
        step(step_) {}
};

/// The expansion point has zero resident slope, so the slope-ratio terms
/// of the curvature decomposition are undefined.
struct DegenerateSlope : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The lower-bound form of the decomposition was requested in a regime
/// where its sign conditions do not hold.
struct InapplicableCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  for (std::size_t i = 0; i < n; ++i)
    v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  v.back() = hi;
  return v;
}

inline std::vector<double> geomspace(double lo, double hi, std::size_t n) {
  if (lo <= 0 || hi <= 0) throw InvalidParameter("geomspace requires positive endpoints");
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = lo;
    return v;
  }
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
  v.back() = hi;
  return v;
}

}  // namespace permachk
