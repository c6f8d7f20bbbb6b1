#pragma once

// Unchecked arithmetic kernels shared by the public maps and the zipper loop.

#include <cmath>
#include <complex>

namespace loewner::detail {

using Complex = std::complex<double>;

inline Complex sqrt_upper(double a, double b) noexcept {
  if (a == 0.0 && b == 0.0) return {0.0, 0.0};
  double m = std::sqrt(a * a + b * b);
  if (!std::isfinite(m) || m == 0.0) m = std::hypot(a, b);
  if (a >= 0.0) {
    const double x = std::sqrt(0.5 * (m + a));
    const double y = b / (2.0 * x);
    if (y < 0.0) return {-x, -y};
    return {x, y == 0.0 ? 0.0 : y};
  }
  const double y = std::sqrt(0.5 * (m - a));
  return {b / (2.0 * y), y};
}

/// z in the open upper half-plane, four_dt = 4 * dt.
inline Complex up_interior(double zr, double zi, double c, double four_dt) noexcept {
  const double a = zr - c;
  const Complex s = sqrt_upper(a * a - zi * zi - four_dt, 2.0 * a * zi);
  return {c + s.real(), s.imag()};
}

/// Boundary extension of the upward map for a real input x.
inline Complex up_real(double x, double c, double four_dt) noexcept {
  const double d = x - c;
  const double disc = d * d - four_dt;
  if (disc > 0.0) return {c + std::copysign(std::sqrt(disc), d), 0.0};
  return {c, std::sqrt(-disc)};
}

inline Complex up(Complex z, double c, double four_dt) noexcept {
  return z.imag() == 0.0 ? up_real(z.real(), c, four_dt)
                         : up_interior(z.real(), z.imag(), c, four_dt);
}

/// Downward map for z not on the slit (caller checks).
inline Complex down_unchecked(Complex z, double c, double four_dt) noexcept {
  const double a = z.real() - c;
  const double b = z.imag();
  if (b == 0.0) return {c + std::copysign(std::sqrt(a * a + four_dt), a), 0.0};
  const Complex s = sqrt_upper(a * a - b * b + four_dt, 2.0 * a * b);
  return {c + s.real(), s.imag()};
}

/// True when z lies on the closed-at-base, open-at-tip slit {c + iy : 0 <= y < 2 sqrt(dt)}.
inline bool on_open_slit(Complex z, double c, double four_dt) noexcept {
  return four_dt > 0.0 && z.real() == c && z.imag() * z.imag() < four_dt;
}

/// g(u) - u for the downward slit map, evaluated without cancellation.
inline Complex down_displacement(Complex u, double c, double four_dt) noexcept {
  const Complex d{u.real() - c, u.imag()};
  const Complex s = sqrt_upper(d.real() * d.real() - d.imag() * d.imag() + four_dt,
                               2.0 * d.real() * d.imag());
  return four_dt / (s + d);
}

}  // namespace loewner::detail
