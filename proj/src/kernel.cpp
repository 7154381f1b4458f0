#include "hawkes/kernel.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hawkes {

Kernel Kernel::exponential(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("exponential kernel needs a > 0 and b > 0");
  return Kernel(Shape::Exponential, a, b);
}

Kernel Kernel::box(double c, double w) {
  if (!(c > 0.0) || !(w > 0.0))
    throw std::invalid_argument("box kernel needs c > 0 and w > 0");
  return Kernel(Shape::Box, c, w);
}

double Kernel::evaluate(double s) const {
  if (!(s >= 0.0)) throw std::invalid_argument("kernel argument must be >= 0");
  switch (shape_) {
    case Shape::Exponential:
      return p1_ * std::exp(-p2_ * s);
    case Shape::Box:
      return s <= p2_ ? p1_ : 0.0;
  }
  return 0.0;
}

double Kernel::total_mass() const {
  switch (shape_) {
    case Shape::Exponential:
      return p1_ / p2_;
    case Shape::Box:
      return p1_ * p2_;
  }
  return 0.0;
}

double Kernel::laplace(double alpha) const {
  if (!(alpha >= 0.0)) throw std::invalid_argument("laplace needs alpha >= 0");
  switch (shape_) {
    case Shape::Exponential:
      return p1_ / (p2_ + alpha);
    case Shape::Box:
      // (c/alpha)(1 - exp(-alpha w)); expm1 keeps small alpha exact, the
      // alpha = 0 limit is the total mass.
      if (alpha == 0.0) return p1_ * p2_;
      return p1_ * (-std::expm1(-alpha * p2_)) / alpha;
  }
  return 0.0;
}

double Kernel::integral(double u) const {
  if (!(u >= 0.0)) throw std::invalid_argument("integral needs u >= 0");
  switch (shape_) {
    case Shape::Exponential:
      return p1_ / p2_ * (-std::expm1(-p2_ * u));
    case Shape::Box:
      return p1_ * std::min(u, p2_);
  }
  return 0.0;
}

double Kernel::growth_exponent(double p) const {
  if (!(p > 0.0) || !(p <= 1.0))
    throw std::invalid_argument("growth_exponent needs p in (0,1]");
  if (!(p * total_mass() > 1.0))
    throw std::domain_error(
        "growth exponent undefined: p * total_mass <= 1 (not supercritical)");
  if (shape_ == Shape::Exponential) {
    // p * a / (b + alpha) = 1
    return p * p1_ - p2_;
  }
  // Box: g(alpha) = p * laplace(alpha) is continuous and strictly decreasing
  // on (0, inf) with g(0+) = p c w > 1 and g -> 0, so one root. Bracket by
  // doubling, then bisect to relative tolerance 1e-12.
  double lo = 0.0;  // g(lo) > 1 by the precondition
  double hi = 1.0;
  while (p * laplace(hi) >= 1.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("growth exponent bracket failed");
  }
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (p * laplace(mid) >= 1.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, lo)) break;
  }
  return 0.5 * (lo + hi);
}

std::string Kernel::describe() const {
  std::ostringstream os;
  if (shape_ == Shape::Exponential)
    os << "exponential(a=" << p1_ << ", b=" << p2_ << ")";
  else
    os << "box(c=" << p1_ << ", w=" << p2_ << ")";
  return os.str();
}

}  // namespace hawkes
