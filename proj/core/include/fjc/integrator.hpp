#pragma once

#include <functional>
#include <limits>
#include <span>
#include <stdexcept>

#include "fjc/types.hpp"

namespace fjc {

/// y' = f(t, y), written into the third argument.
using ComplexRhs = std::function<void(double, const ComplexVector&, ComplexVector&)>;
/// Called once per requested output time, in order.
using OutputObserver = std::function<void(std::size_t, double, const ComplexVector&)>;

struct IntegratorOptions {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 50'000'000;
};

struct IntegratorStats {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

class IntegratorError : public std::runtime_error {
 public:
  IntegratorError(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Adaptive Dormand–Prince 5(4) with 4th-order continuous extension.
/// `times` must be strictly increasing; integration starts at times.front().
IntegratorStats integrate_dopri5(const ComplexRhs& rhs, const ComplexVector& y0, std::span<const double> times,
                                 const IntegratorOptions& options, const OutputObserver& observer);

/// One classical RK4 step of size h, in place.
void rk4_step(const ComplexRhs& rhs, double t, double h, ComplexVector& y);

}  // namespace fjc
