#ifndef HAWKES_KERNEL_HPP
#define HAWKES_KERNEL_HPP

#include <cstdint>
#include <string>

namespace hawkes {

// Excitation kernel phi: [0, inf) -> [0, inf). Two shapes are supported,
// both non-increasing, which the simulator's thinning bound relies on:
//
//   exponential(a, b):  phi(s) = a * exp(-b s)          total mass a/b
//   box(c, w):          phi(s) = c on [0, w], else 0    total mass c*w
//
// total_mass() is the branching ratio contribution per edge; together with
// the edge probability p it decides the regime (subcritical when
// total_mass * p < 1). growth_exponent(p) solves
//
//   p * integral_0^inf exp(-alpha s) phi(s) ds = 1
//
// for alpha > 0, which exists exactly when total_mass * p > 1.
class Kernel {
 public:
  enum class Shape { Exponential, Box };

  static Kernel exponential(double a, double b);
  static Kernel box(double c, double w);

  Shape shape() const { return shape_; }

  // phi(s); s < 0 is a caller bug and throws.
  double evaluate(double s) const;

  // integral of phi over [0, inf)
  double total_mass() const;

  // integral of exp(-alpha s) phi(s) ds over [0, inf), alpha >= 0
  double laplace(double alpha) const;

  // integral of phi over [0, u], u >= 0 (compensator building block)
  double integral(double u) const;

  // the root alpha0 of p * laplace(alpha) = 1; requires p * total_mass > 1.
  // Closed form for the exponential shape, bisection (relative tolerance
  // 1e-12) for the box shape.
  double growth_exponent(double p) const;

  // parameters, meaning depends on shape: exponential -> (a, b),
  // box -> (c, w)
  double param1() const { return p1_; }
  double param2() const { return p2_; }

  std::string describe() const;

 private:
  Kernel(Shape s, double p1, double p2) : shape_(s), p1_(p1), p2_(p2) {}

  Shape shape_;
  double p1_;
  double p2_;
};

}  // namespace hawkes

#endif
