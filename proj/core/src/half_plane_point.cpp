#include "loewner/half_plane_point.hpp"

#include <cmath>
#include <string>

#include "loewner/errors.hpp"

namespace loewner {

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw InvalidInput("half-plane point must have finite coordinates");
  }
  if (im < 0.0) {
    throw InvalidInput("half-plane point has negative imaginary part " + std::to_string(im));
  }
  if (im_ == 0.0) im_ = 0.0;  // drop the sign of -0.0
}

HalfPlanePoint HalfPlanePoint::mirrored() const noexcept {
  HalfPlanePoint p;
  p.re_ = re_ == 0.0 ? 0.0 : -re_;
  p.im_ = im_;
  return p;
}

double distance(const HalfPlanePoint& a, const HalfPlanePoint& b) noexcept {
  return std::hypot(a.re() - b.re(), a.im() - b.im());
}

}  // namespace loewner
