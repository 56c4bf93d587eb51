#pragma once

namespace jeffreys {

struct LambertEval {
  double value = 0.0;
  int iterations = 0;
  // |w e^w - x| / x, evaluated without overflow (0 for x == 0)
  double residual = 0.0;
};

/// Principal branch W0 of the Lambert W function for x >= 0, by Halley iteration.
/// Throws std::domain_error for negative or non-finite x.
LambertEval lambert_w0(double x);

/// W0(exp(log_x)) for any finite log_x. Arguments above the exp overflow limit
/// are solved in log form, w + log(w) = log_x.
LambertEval lambert_w0_exp(double log_x);

}  // namespace jeffreys
