#include "loewner/conformal_maps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "loewner/errors.hpp"
#include "slit_kernels.hpp"

namespace loewner {

void SlitStep::validate() const {
  if (!std::isfinite(c)) throw InvalidInput("slit step driver value must be finite");
  if (!std::isfinite(dt) || dt < 0.0) {
    throw InvalidInput("slit step duration must be finite and non-negative");
  }
}

Complex sqrt_upper(Complex w) noexcept { return detail::sqrt_upper(w.real(), w.imag()); }

HalfPlanePoint slit_map_up(const HalfPlanePoint& z, const SlitStep& step) {
  step.validate();
  if (step.dt == 0.0) return z;
  return HalfPlanePoint(detail::up(z.value(), step.c, 4.0 * step.dt));
}

HalfPlanePoint slit_map_down(const HalfPlanePoint& z, const SlitStep& step) {
  step.validate();
  if (step.dt == 0.0) return z;
  const double four_dt = 4.0 * step.dt;
  if (detail::on_open_slit(z.value(), step.c, four_dt)) {
    std::ostringstream msg;
    msg << "point (" << z.re() << ", " << z.im() << ") lies on the slit above c = " << step.c;
    throw SwallowedPoint(msg.str());
  }
  return HalfPlanePoint(detail::down_unchecked(z.value(), step.c, four_dt));
}

HalfPlanePoint compose_up(const HalfPlanePoint& z, std::span<const SlitStep> steps) {
  HalfPlanePoint w = z;
  for (const SlitStep& s : steps) w = slit_map_up(w, s);
  return w;
}

HalfPlanePoint compose_down(const HalfPlanePoint& z, std::span<const SlitStep> steps) {
  HalfPlanePoint w = z;
  for (const SlitStep& s : steps) w = slit_map_down(w, s);
  return w;
}

double minimum_probe_radius(std::span<const SlitStep> steps) {
  double total = 0.0;
  double sup_c = 0.0;
  for (const SlitStep& s : steps) {
    s.validate();
    total += s.dt;
    sup_c = std::max(sup_c, std::abs(s.c));
  }
  return 100.0 * std::max(std::sqrt(total), sup_c);
}

double hcap_estimate(std::span<const SlitStep> steps, double probe_radius) {
  if (!std::isfinite(probe_radius) || probe_radius <= 0.0) {
    throw InvalidInput("probe radius must be positive and finite");
  }
  const double bound = minimum_probe_radius(steps);
  if (probe_radius < bound) {
    std::ostringstream msg;
    msg << "probe radius " << probe_radius << " is below the recommended bound " << bound;
    throw ProbeTooClose(msg.str());
  }
  const Complex z{0.0, probe_radius};
  Complex u = z;
  Complex displacement{0.0, 0.0};
  for (const SlitStep& s : steps) {
    if (s.dt == 0.0) continue;
    const Complex d = detail::down_displacement(u, s.c, 4.0 * s.dt);
    displacement += d;
    u = z + displacement;
  }
  return (z * displacement).real();
}

}  // namespace loewner
