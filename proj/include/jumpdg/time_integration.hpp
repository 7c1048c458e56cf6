#pragma once

#include <functional>

#include "jumpdg/field.hpp"
#include "jumpdg/jump_filter.hpp"

namespace jumpdg {

/// Time stepping controls. cfl < 0 selects the degree-scaled default
/// 0.9 / (2k + 1). fixed_dt_c > 0 caps the step at C * h^((k+1)/3) (useful
/// for accuracy studies where the temporal order must not pollute the
/// spatial one); the CFL bound still applies. forward_euler switches to
/// first-order stepping with tau = tau_factor * h^2, the regime in which
/// the filtered scheme admits its optimal-order error bound.
struct TimeControls {
  double cfl = -1.0;
  double fixed_dt_c = 0.0;
  bool forward_euler = false;
  double tau_factor = 0.5;
  FilterParams::DtMode filter_dt = FilterParams::DtMode::full;
};

/// Dimension-agnostic hooks the stepper drives. `post` is the post-stage
/// processing stack (jump filter or hybrid limiter, then positivity
/// limiter) and runs after every stage update with the stage's filter dt.
struct StageOps {
  std::function<void(const ModalField&, double t, ModalField& out)> residual;
  std::function<void(ModalField&, double dt, double t)> post;
  std::function<double(const ModalField&, double cfl)> max_dt;
};

struct StepInfo {
  int step = 0;
  double t = 0.0, dt = 0.0;
};

/// One SSP-RK3 step from time t with step dt. u0 and res are caller-owned
/// scratch fields (same shape as u), so repeated stepping allocates nothing.
void ssp_rk3_step(ModalField& u, double t, double dt, const StageOps& ops,
                  ModalField& u0, ModalField& res,
                  FilterParams::DtMode dt_mode);

/// One forward-Euler step (first-order reference mode).
void forward_euler_step(ModalField& u, double t, double tau,
                        const StageOps& ops, ModalField& res);

/// Advances u from its current time stamp to exactly time T; the final step
/// is clipped so the dt sequence sums to T. Returns the number of steps.
int advance_to(ModalField& u, double T, const StageOps& ops,
               const TimeControls& tc, int degree, double h_min,
               const std::function<void(const StepInfo&)>& callback = {});

}  // namespace jumpdg
