#pragma once

#include <complex>

namespace loewner {

using Complex = std::complex<double>;

/// A finite point of the closed upper half-plane {Im z >= 0}.
///
/// Construction validates the invariant; an imaginary part of -0.0 is
/// normalised to +0.0 so boundary points print and compare uniformly.
class HalfPlanePoint {
 public:
  constexpr HalfPlanePoint() = default;

  /// Throws InvalidInput for non-finite coordinates or im < 0.
  HalfPlanePoint(double re, double im);

  /// Same validation as the two-argument constructor.
  explicit HalfPlanePoint(Complex z) : HalfPlanePoint(z.real(), z.imag()) {}

  [[nodiscard]] constexpr double re() const noexcept { return re_; }
  [[nodiscard]] constexpr double im() const noexcept { return im_; }
  [[nodiscard]] Complex value() const noexcept { return {re_, im_}; }
  [[nodiscard]] constexpr bool on_boundary() const noexcept { return im_ == 0.0; }

  /// Reflection across the imaginary axis, z -> -conj(z).
  [[nodiscard]] HalfPlanePoint mirrored() const noexcept;

  friend constexpr bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

 private:
  double re_ = 0.0;
  double im_ = 0.0;
};

[[nodiscard]] double distance(const HalfPlanePoint& a, const HalfPlanePoint& b) noexcept;

}  // namespace loewner
