#include "jumpdg/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "jumpdg/limiters.hpp"
#include "jumpdg/time_integration.hpp"
#include "jumpdg/util.hpp"

#ifndef JUMPDG_DATA_DEFAULT
#define JUMPDG_DATA_DEFAULT "data"
#endif

namespace jumpdg {

namespace {

namespace fs = std::filesystem;

/// Columnar frame rows: x y rho u v p sigma troubled. Scalar equations put
/// the value in the rho column; absent quantities are written as 0.
void frame_row(std::ostream& os, const Equation& eq, double x, double y,
               const double* s, double sigma, int trouble) {
  double rho = s[0], u = 0.0, v = 0.0, p = 0.0;
  if (eq.is_euler()) {
    u = s[1] / s[0];
    v = eq.dim == 2 ? s[2] / s[0] : 0.0;
    p = eq.pressure(s);
  }
  os << x << " " << y << " " << rho << " " << u << " " << v << " " << p << " "
     << sigma << " " << trouble << "\n";
}

void write_frame(std::ostream& os, const DGOperator1D* o1,
                 const DGOperator2D* o2, const ModalField& u,
                 const std::vector<double>& sigma,
                 const std::vector<std::uint8_t>& troubled, double t) {
  os << std::setprecision(12);
  os << "# t = " << t << "\n";
  os << "# x y rho u v p sigma troubled\n";
  std::vector<double> vals;
  if (o1) {
    const LegendreBasis& b = o1->basis();
    const Equation& eq = o1->equation();
    vals.resize(static_cast<size_t>(b.n_quad) * eq.n_vars);
    for (int j = 0; j < o1->mesh().n_cells; ++j) {
      o1->eval_cell(u, j, vals.data());
      double sg = sigma.empty() ? 0.0 : sigma[j];
      int tr = troubled.empty() ? 0 : troubled[j];
      for (int q = 0; q < b.n_quad; ++q) {
        double x = o1->mesh().cell_center(j) + 0.5 * b.nodes[q] * o1->mesh().h;
        frame_row(os, eq, x, 0.0, &vals[static_cast<size_t>(q) * eq.n_vars],
                  sg, tr);
      }
    }
  } else {
    const LegendreBasis& b = o2->basis();
    const Equation& eq = o2->equation();
    const Mesh2D& m = o2->mesh();
    int nq = b.n_quad;
    vals.resize(static_cast<size_t>(nq) * nq * eq.n_vars);
    for (int cell = 0; cell < m.nx * m.ny; ++cell) {
      if (!m.active[cell]) continue;
      o2->eval_cell(u, cell, vals.data());
      double sg = sigma.empty() ? 0.0 : sigma[cell];
      int tr = troubled.empty() ? 0 : troubled[cell];
      double cx = m.cell_x(cell % m.nx), cy = m.cell_y(cell / m.nx);
      for (int a = 0; a < nq; ++a) {
        for (int bq = 0; bq < nq; ++bq) {
          double x = cx + 0.5 * b.nodes[a] * m.hx;
          double y = cy + 0.5 * b.nodes[bq] * m.hy;
          frame_row(os, eq, x, y,
                    &vals[(static_cast<size_t>(a) * nq + bq) * eq.n_vars], sg,
                    tr);
        }
      }
    }
  }
}

const char* kPlotStub = R"(#!/usr/bin/env python3
"""Minimal viewer for solver output frames.

Usage: plot.py FRAME_FILE [--var N]
Columns: x y rho u v p sigma troubled. 1D frames plot var against x;
2D frames draw a tricontour of var.
"""
import sys

import matplotlib.pyplot as plt
import numpy as np

path = sys.argv[1]
var = 2
if "--var" in sys.argv:
    var = int(sys.argv[sys.argv.index("--var") + 1])
d = np.loadtxt(path)
if np.ptp(d[:, 1]) == 0.0:
    order = np.argsort(d[:, 0])
    plt.plot(d[order, 0], d[order, var], lw=0.8)
    plt.xlabel("x")
else:
    plt.tricontour(d[:, 0], d[:, 1], d[:, var], levels=30, linewidths=0.5)
    plt.gca().set_aspect("equal")
plt.title(path)
plt.tight_layout()
plt.show()
)";

std::string frame_name(const std::string& prefix, int i) {
  std::ostringstream ss;
  ss << prefix << "_frame_" << std::setw(3) << std::setfill('0') << i << ".txt";
  return ss.str();
}

void write_summary_json(const fs::path& path, const RunSummary& s) {
  nlohmann::json j;
  j["problem"] = s.problem;
  j["nx"] = s.nx;
  j["ny"] = s.ny;
  j["k"] = s.k;
  j["t_end"] = s.t_end;
  j["steps"] = s.steps;
  j["wall_seconds"] = s.wall_seconds;
  j["l2_error"] = s.l2_error;
  j["linf_error"] = s.linf_error;
  j["error_var"] = s.error_var;
  j["mass_drift_rel"] = s.mass_drift_rel;
  j["min_density"] =
      std::isfinite(s.min_density) ? nlohmann::json(s.min_density) : nullptr;
  j["min_pressure"] =
      std::isfinite(s.min_pressure) ? nlohmann::json(s.min_pressure) : nullptr;
  j["pp_density_cells"] = s.pp_density_cells;
  j["pp_pressure_cells"] = s.pp_pressure_cells;
  j["completed"] = s.completed;
  j["error"] = s.error;
  std::ofstream f(path);
  f << j.dump(2) << "\n";
}

}  // namespace

std::string data_dir() { return env_or("JUMPDG_DATA_DIR", JUMPDG_DATA_DEFAULT); }

RunResult run(const RunConfig& cfg) {
  const ProblemSpec& spec = lookup(cfg.problem);
  const bool twod = spec.two_dim();

  int k = cfg.k >= 0 ? cfg.k : spec.default_k;
  if (k < 0 || k > kMaxDegree) throw ConfigError("k must be in [0, 4]");
  int nx = cfg.nx > 0 ? cfg.nx : spec.default_nx;
  int ny = twod ? (cfg.ny > 0 ? cfg.ny : spec.default_ny) : 0;
  double t_end = cfg.t_end >= 0.0 ? cfg.t_end : spec.t_end;
  bool pp = spec.eq.is_euler() &&
            (cfg.pp >= 0 ? cfg.pp != 0 : spec.default_pp);
  bool hybrid = cfg.hybrid >= 0 ? cfg.hybrid != 0 : spec.default_hybrid;

  FilterParams fp;
  fp.enabled = cfg.filter_enabled;
  fp.mode = cfg.filter_mode;
  fp.dt_mode = cfg.filter_dt;
  if (cfg.filter_policy.empty()) {
    fp.policy = default_policy(spec.eq);
  } else if (cfg.filter_policy == "scalar") {
    fp.policy = FilterParams::Policy::scalar_default;
  } else if (cfg.filter_policy == "euler") {
    fp.policy = twod ? FilterParams::Policy::euler_2d
                     : FilterParams::Policy::euler_1d;
  } else if (cfg.filter_policy == "custom") {
    fp.policy = FilterParams::Policy::custom;
    fp.c_custom_x = cfg.c_custom_x;
    fp.c_custom_y = cfg.c_custom_y;
  } else {
    throw ConfigError("unknown filter policy '" + cfg.filter_policy + "'");
  }

  HybridParams hp;
  hp.threshold = cfg.hybrid_threshold;

  TimeControls tc;
  tc.cfl = cfg.cfl > 0.0 ? cfg.cfl
                         : (spec.default_cfl > 0.0 ? spec.default_cfl : -1.0);
  tc.fixed_dt_c = cfg.fixed_dt_c;
  tc.forward_euler = cfg.forward_euler;
  tc.tau_factor = cfg.tau_factor;
  tc.filter_dt = cfg.filter_dt;

  RunResult res;
  RunSummary& sum = res.summary;
  sum.problem = spec.id;
  sum.nx = nx;
  sum.ny = ny;
  sum.k = k;
  sum.t_end = t_end;
  sum.error_var = cfg.error_var >= 0 ? cfg.error_var : spec.error_var;

  double h_min = 0.0;
  if (twod) {
    Mesh2D mesh = Mesh2D::uniform(spec.x0, spec.x1, spec.y0, spec.y1, nx, ny,
                                  spec.bc[0], spec.bc[1], spec.bc[2],
                                  spec.bc[3]);
    for (const ProblemSpec::Box& b : spec.masked)
      mesh.deactivate_box(b.x0, b.x1, b.y0, b.y1);
    mesh.validate();
    res.op2 = std::make_shared<DGOperator2D>(mesh, spec.eq, k);
    res.u = res.op2->make_field();
    res.op2->project(
        [&](double x, double y, double* s) { spec.initial(x, y, s); }, res.u);
    h_min = std::min(mesh.hx, mesh.hy);
  } else {
    Mesh1D mesh =
        Mesh1D::uniform(spec.x0, spec.x1, nx, spec.bc[0], spec.bc[1]);
    res.op1 = std::make_shared<DGOperator1D>(mesh, spec.eq, k);
    res.u = res.op1->make_field();
    res.op1->project(
        [&](double x, double* s) { spec.initial(x, 0.0, s); }, res.u);
    h_min = mesh.h;
  }
  res.u.time = 0.0;

  // Sanitize the projected data once. The L2 projection of a mid-cell jump
  // rings: deep undershoots get flattened to the cell average (the fit is
  // garbage there anyway, and merely rescaling it would park a near-vacuum
  // trace value under O(1) pressure whose velocity ruins the first energy
  // fluxes), then the positivity scaling handles what is left. Both passes
  // are no-ops for smooth positive data.
  if (spec.eq.is_euler()) {
    if (res.op1) {
      flatten_undershoots(*res.op1, res.u);
      pp_limiter(*res.op1, res.u);
    } else {
      flatten_undershoots(*res.op2, res.u);
      pp_limiter(*res.op2, res.u);
    }
  }

  Workspace ws;
  StageOps ops;
  double min_rho = std::numeric_limits<double>::infinity();
  double min_p = std::numeric_limits<double>::infinity();
  if (res.op1) {
    DGOperator1D& op = *res.op1;
    ops.residual = [&op, &ws](const ModalField& uu, double t,
                              ModalField& out) {
      op.residual(uu, t, out, &ws);
    };
    ops.max_dt = [&op](const ModalField& uu, double cfl) {
      return op.max_dt(uu, cfl);
    };
    ops.post = [&, pp, hybrid](ModalField& uu, double dt, double t) {
      if (hybrid)
        hybrid_limit(op, uu, dt, fp, hp, t, &res.troubled, &res.sigma);
      else
        apply_filter(op, uu, dt, fp, t, &res.sigma);
      if (pp) {
        PPStats st = pp_limiter(op, uu);
        min_rho = std::min(min_rho, st.min_rho);
        min_p = std::min(min_p, st.min_p);
        sum.pp_density_cells += st.n_rho_limited;
        sum.pp_pressure_cells += st.n_p_limited;
      }
    };
  } else {
    DGOperator2D& op = *res.op2;
    ops.residual = [&op, &ws](const ModalField& uu, double t,
                              ModalField& out) {
      op.residual(uu, t, out, &ws);
    };
    ops.max_dt = [&op](const ModalField& uu, double cfl) {
      return op.max_dt(uu, cfl);
    };
    ops.post = [&, pp, hybrid](ModalField& uu, double dt, double t) {
      if (hybrid)
        hybrid_limit(op, uu, dt, fp, hp, t, &res.troubled, &res.sigma);
      else
        apply_filter(op, uu, dt, fp, t, &res.sigma);
      if (pp) {
        PPStats st = pp_limiter(op, uu);
        min_rho = std::min(min_rho, st.min_rho);
        min_p = std::min(min_p, st.min_p);
        sum.pp_density_cells += st.n_rho_limited;
        sum.pp_pressure_cells += st.n_p_limited;
      }
    };
  }

  fs::path dir;
  std::string prefix = cfg.prefix.empty() ? spec.id : cfg.prefix;
  if (cfg.write_outputs) {
    dir = env_or("JUMPDG_OUTPUT_DIR", "out");
    if (!cfg.out_dir.empty()) dir = cfg.out_dir;
    fs::create_directories(dir);
    std::ofstream stub(dir / "plot.py");
    stub << kPlotStub;
  }

  State mass0 = res.op1 ? res.op1->total_integral(res.u)
                        : res.op2->total_integral(res.u);

  ModalField u_good = res.u;  // abort flush snapshot
  double t_good = 0.0;
  int next_frame = 1;
  if (cfg.write_outputs && cfg.frames > 0) {
    std::ofstream f(dir / frame_name(prefix, 0));
    write_frame(f, res.op1.get(), res.op2.get(), res.u, res.sigma,
                res.troubled, 0.0);
  }
  auto on_step = [&](const StepInfo& info) {
    if (cfg.write_outputs && cfg.frames > 0) {
      while (next_frame <= cfg.frames &&
             info.t >= t_end * next_frame / cfg.frames - 1e-12) {
        std::ofstream f(dir / frame_name(prefix, next_frame));
        write_frame(f, res.op1.get(), res.op2.get(), res.u, res.sigma,
                    res.troubled, info.t);
        ++next_frame;
      }
    }
    if (info.step % 100 == 0) {
      u_good = res.u;
      t_good = info.t;
    }
  };

  auto t0 = std::chrono::steady_clock::now();
  try {
    sum.steps = advance_to(res.u, t_end, ops, tc, k, h_min, on_step);
  } catch (const std::exception& e) {
    sum.completed = false;
    sum.error = e.what();
    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    sum.min_density = min_rho;
    sum.min_pressure = min_p;
    if (cfg.write_outputs) {
      std::ofstream f(dir / (prefix + "_abort.txt"));
      write_frame(f, res.op1.get(), res.op2.get(), u_good, {}, {}, t_good);
      write_summary_json(dir / (prefix + "_summary.json"), sum);
    }
    throw;
  }
  sum.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  sum.completed = true;

  State mass1 = res.op1 ? res.op1->total_integral(res.u)
                        : res.op2->total_integral(res.u);
  sum.mass_drift_rel =
      std::abs(mass1[0] - mass0[0]) / std::max(std::abs(mass0[0]), 1.0);

  if (!pp && spec.eq.is_euler()) {
    std::array<double, 2> mm = res.op1 ? admissibility_scan(*res.op1, res.u)
                                       : admissibility_scan(*res.op2, res.u);
    min_rho = mm[0];
    min_p = mm[1];
  }
  sum.min_density = min_rho;
  sum.min_pressure = min_p;

  if (spec.exact && t_end < spec.exact_until) {
    std::array<double, 2> e{};
    if (res.op1) {
      e = res.op1->error_norms(
          res.u,
          [&](double x, double* s) { spec.exact(x, 0.0, t_end, s); },
          sum.error_var);
    } else {
      e = res.op2->error_norms(
          res.u,
          [&](double x, double y, double* s) { spec.exact(x, y, t_end, s); },
          sum.error_var);
    }
    sum.l2_error = e[0];
    sum.linf_error = e[1];
  }

  if (cfg.write_outputs) {
    if (cfg.frames > 0) {
      std::ofstream f(dir / frame_name(prefix, cfg.frames));
      write_frame(f, res.op1.get(), res.op2.get(), res.u, res.sigma,
                  res.troubled, t_end);
    }
    if (cfg.averages) {
      std::string p = (dir / (prefix + "_avg.txt")).string();
      if (res.op1)
        write_averages(p, *res.op1, res.u);
      else
        write_averages(p, *res.op2, res.u);
    }
    write_summary_json(dir / (prefix + "_summary.json"), sum);
  }
  return res;
}

std::vector<StudyRow> convergence_study(const std::string& problem, int k,
                                        const std::vector<int>& meshes,
                                        bool filter_on, std::ostream* txt,
                                        const std::string& csv_path) {
  const ProblemSpec& spec = lookup(problem);
  if (!spec.exact || spec.t_end >= spec.exact_until)
    throw ConfigError("problem '" + problem +
                      "' has no analytic reference for a convergence study");
  std::vector<StudyRow> rows;
  for (int n : meshes) {
    RunConfig c;
    c.problem = problem;
    c.k = k;
    c.nx = n;
    c.ny = spec.two_dim() ? n : 0;
    c.filter_enabled = filter_on;
    c.write_outputs = false;
    RunResult r = run(c);
    StudyRow row;
    row.n = n;
    row.l2 = r.summary.l2_error;
    row.linf = r.summary.linf_error;
    if (!rows.empty()) {
      double ratio = std::log(static_cast<double>(n) / rows.back().n);
      row.order_l2 = std::log(rows.back().l2 / row.l2) / ratio;
      row.order_linf = std::log(rows.back().linf / row.linf) / ratio;
    }
    rows.push_back(row);
  }
  if (txt) {
    std::ostream& os = *txt;
    os << std::left << std::setw(8) << "N" << std::setw(14) << "L2"
       << std::setw(10) << "order" << std::setw(14) << "Linf" << std::setw(10)
       << "order" << "\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      const StudyRow& r = rows[i];
      std::ostringstream o2, oi;
      o2 << std::fixed << std::setprecision(2) << r.order_l2;
      oi << std::fixed << std::setprecision(2) << r.order_linf;
      os << std::left << std::setw(8) << r.n << std::setw(14)
         << std::scientific << std::setprecision(3) << r.l2 << std::setw(10)
         << (i == 0 ? "--" : o2.str()) << std::setw(14) << r.linf
         << std::setw(10) << (i == 0 ? "--" : oi.str());
      if (i > 0 && r.l2 > rows[i - 1].l2) os << " ! error grew";
      os << "\n";
    }
  }
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "n,l2,order_l2,linf,order_linf\n" << std::setprecision(12);
    for (const StudyRow& r : rows)
      csv << r.n << "," << r.l2 << "," << r.order_l2 << "," << r.linf << ","
          << r.order_linf << "\n";
  }
  return rows;
}

void write_averages(const std::string& path, const DGOperator1D& op,
                    const ModalField& u) {
  std::ofstream f(path);
  f << std::setprecision(17);
  f << "# 1d cell averages: x then " << op.equation().n_vars
    << " conserved variables\n";
  for (int j = 0; j < op.mesh().n_cells; ++j) {
    f << op.mesh().cell_center(j);
    for (int v = 0; v < op.equation().n_vars; ++v)
      f << " " << u.cell_average(j, v);
    f << "\n";
  }
}

void write_averages(const std::string& path, const DGOperator2D& op,
                    const ModalField& u) {
  std::ofstream f(path);
  f << std::setprecision(17);
  f << "# 2d cell averages: x y then " << op.equation().n_vars
    << " conserved variables\n";
  const Mesh2D& m = op.mesh();
  for (int cell = 0; cell < m.nx * m.ny; ++cell) {
    if (!m.active[cell]) continue;
    f << m.cell_x(cell % m.nx) << " " << m.cell_y(cell / m.nx);
    for (int v = 0; v < op.equation().n_vars; ++v)
      f << " " << u.cell_average(cell, v);
    f << "\n";
  }
}

AverageTable load_averages(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open reference file '" + path + "'");
  AverageTable t;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') {
      if (line.find("2d") != std::string::npos) t.two_dim = true;
      continue;
    }
    std::istringstream ss(line);
    std::vector<double> row;
    double v;
    while (ss >> v) row.push_back(v);
    if (row.empty()) continue;
    int coord = t.two_dim ? 2 : 1;
    int nv = static_cast<int>(row.size()) - coord;
    if (nv < 1 || nv > 4)
      throw ConfigError("malformed reference row in '" + path + "'");
    if (t.n_vars == 0) t.n_vars = nv;
    if (nv != t.n_vars)
      throw ConfigError("ragged reference table in '" + path + "'");
    t.x.push_back(row[0]);
    t.y.push_back(t.two_dim ? row[1] : 0.0);
    State s{};
    for (int i = 0; i < nv; ++i) s[i] = row[coord + i];
    t.avg.push_back(s);
  }
  if (t.avg.empty()) throw ConfigError("empty reference file '" + path + "'");
  return t;
}

}  // namespace jumpdg
