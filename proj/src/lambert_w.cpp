#include "jeffreys/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "jeffreys/errors.hpp"

namespace jeffreys {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kIterationCap = 10;

// x * exp(-w) split in two halves so neither factor under/overflows.
double scaled_by_exp_neg(double x, double w) {
  const double half = std::exp(-0.5 * w);
  return (x * half) * half;
}

double relative_residual(double w, double x) {
  if (x == 0.0) return std::abs(w);
  // (w e^w - x) / x == w e^w / x - 1 ; e^w / x computed as 1 / (x e^-w)
  const double xe = scaled_by_exp_neg(x, w);
  return std::abs(w / xe - 1.0);
}

LambertEval halley(double x, double w) {
  LambertEval out;
  for (int it = 1; it <= kIterationCap; ++it) {
    // f(w)/e^w with f(w) = w e^w - x
    const double t = w - scaled_by_exp_neg(x, w);
    const double wp1 = w + 1.0;
    const double step = t / (wp1 - 0.5 * (w + 2.0) * t / wp1);
    w -= step;
    out.iterations = it;
    if (std::abs(step) <= kEps * (1.0 + std::abs(w))) {
      out.value = w;
      out.residual = relative_residual(w, x);
      return out;
    }
  }
  throw NumericError("lambert_w0: Halley iteration cap reached for x = " + std::to_string(x));
}

// Solves g(w) = w + log(w) - L = 0 for very large L.
LambertEval halley_log(double log_x) {
  double w = log_x - std::log(log_x);
  LambertEval out;
  for (int it = 1; it <= kIterationCap; ++it) {
    const double g = w + std::log(w) - log_x;
    const double g1 = 1.0 + 1.0 / w;
    const double g2 = -1.0 / (w * w);
    const double step = 2.0 * g * g1 / (2.0 * g1 * g1 - g * g2);
    w -= step;
    out.iterations = it;
    if (std::abs(step) <= kEps * (1.0 + std::abs(w))) {
      out.value = w;
      out.residual = std::abs(std::expm1(w + std::log(w) - log_x));
      return out;
    }
  }
  throw NumericError("lambert_w0: log-domain Halley iteration cap reached");
}

}  // namespace

LambertEval lambert_w0(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw std::domain_error("lambert_w0: argument must be finite and non-negative");
  }
  if (x == 0.0) return {};
  const double w0 = x < std::numbers::e ? std::log1p(x) : std::log(x) - std::log(std::log(x));
  return halley(x, w0);
}

LambertEval lambert_w0_exp(double log_x) {
  if (std::isnan(log_x) || log_x == std::numeric_limits<double>::infinity()) {
    throw std::domain_error("lambert_w0_exp: argument must be finite");
  }
  // W(e) = 1 exactly; exp(1) would round below e
  if (log_x == 1.0) return {1.0, 0, 0.0};
  if (log_x < 700.0) return lambert_w0(std::exp(log_x));
  return halley_log(log_x);
}

}  // namespace jeffreys
