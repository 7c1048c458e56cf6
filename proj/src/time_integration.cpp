#include "jumpdg/time_integration.hpp"

#include <cmath>
#include <stdexcept>

#include "jumpdg/util.hpp"

namespace jumpdg {

namespace {

/// u = a*u + b*(w + dt*res), the SSP-RK3 convex combination kernel.
void combine(ModalField& u, double a, const ModalField& w, double b,
             double dt, const ModalField& res) {
  const size_t n = u.c.size();
  const double* wp = w.c.data();
  const double* rp = res.c.data();
  double* up = u.c.data();
  for (size_t i = 0; i < n; ++i) up[i] = a * wp[i] + b * (up[i] + dt * rp[i]);
}

/// Rethrows admissibility failures with the RK stage attached so a blown-up
/// run reports where inside the step the state went bad.
[[noreturn]] void rethrow_with_stage(const AdmissibilityError& e, int stage) {
  throw AdmissibilityError(std::string(e.what()) + " [RK stage " +
                               std::to_string(stage) + "]",
                           e.cell);
}

}  // namespace

void ssp_rk3_step(ModalField& u, double t, double dt, const StageOps& ops,
                  ModalField& u0, ModalField& res,
                  FilterParams::DtMode dt_mode) {
  bool weighted = dt_mode == FilterParams::DtMode::stage_weighted;
  u0.c = u.c;

  try {
    ops.residual(u, t, res);
    combine(u, 0.0, u0, 1.0, dt, res);  // u1 = u0 + dt L(u0)
    if (ops.post) ops.post(u, dt, t + dt);  // first stage weight is 1
  } catch (const AdmissibilityError& e) {
    rethrow_with_stage(e, 1);
  }

  try {
    ops.residual(u, t + dt, res);
    combine(u, 0.75, u0, 0.25, dt, res);  // u2 = 3/4 u0 + 1/4 (u1 + dt L(u1))
    if (ops.post) ops.post(u, weighted ? 0.25 * dt : dt, t + 0.5 * dt);
  } catch (const AdmissibilityError& e) {
    rethrow_with_stage(e, 2);
  }

  try {
    ops.residual(u, t + 0.5 * dt, res);
    combine(u, 1.0 / 3.0, u0, 2.0 / 3.0, dt, res);
    if (ops.post) ops.post(u, weighted ? 2.0 / 3.0 * dt : dt, t + dt);
  } catch (const AdmissibilityError& e) {
    rethrow_with_stage(e, 3);
  }

  u.time = t + dt;
}

void forward_euler_step(ModalField& u, double t, double tau,
                        const StageOps& ops, ModalField& res) {
  ops.residual(u, t, res);
  combine(u, 0.0, u, 1.0, tau, res);
  if (ops.post) ops.post(u, tau, t + tau);
  u.time = t + tau;
}

int advance_to(ModalField& u, double T, const StageOps& ops,
               const TimeControls& tc, int degree, double h_min,
               const std::function<void(const StepInfo&)>& callback) {
  double cfl = tc.cfl > 0 ? tc.cfl : 0.9 / (2.0 * degree + 1.0);
  ModalField u0 = u, res = u;
  int step = 0;
  double t = u.time;
  while (t < T) {
    double dt;
    if (tc.forward_euler) {
      dt = tc.tau_factor * h_min * h_min;
    } else {
      dt = ops.max_dt(u, cfl);
      if (tc.fixed_dt_c > 0.0)
        dt = std::min(dt, tc.fixed_dt_c *
                              std::pow(h_min, (degree + 1) / 3.0));
    }
    if (!(dt > 0.0) || std::isnan(dt))
      throw std::runtime_error("time step collapsed (unstable or zero wave "
                               "speed without a fixed dt)");
    bool last = t + dt >= T - 1e-14 * std::abs(T);
    if (last) dt = T - t;
    if (tc.forward_euler)
      forward_euler_step(u, t, dt, ops, res);
    else
      ssp_rk3_step(u, t, dt, ops, u0, res, tc.filter_dt);
    t = last ? T : t + dt;
    u.time = t;
    ++step;
    if (callback) callback({step, t, dt});
    if (step > 200'000'000)
      throw std::runtime_error("step limit exceeded");
  }
  u.time = T;
  return step;
}

}  // namespace jumpdg
