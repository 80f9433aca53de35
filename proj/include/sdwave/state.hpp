#ifndef SDWAVE_STATE_HPP
#define SDWAVE_STATE_HPP

#include "sdwave/grid.hpp"

namespace sdw {

/// (û, v̂ = ∂_t û) at time t.
struct State {
  double t = 0;
  Spectrum u_hat;
  Spectrum v_hat;
};

} // namespace sdw

#endif
