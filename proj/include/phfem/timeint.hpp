#pragma once

#include <functional>

#include "phfem/phcore.hpp"

namespace phfem {

using InputFn = std::function<Vec(double)>; // time -> boundary coefficient vector

/// Factorizations of (M - dt/2 J) for a fixed step size, plus the matching
/// (M + dt/2 J) products. Invalid for any other dt.
struct SolverCache {
    double dt = 0.0;
    CsrMatrix Aplus1, Aplus2; // M + dt/2 J
    LuFactorization Aminus1, Aminus2;
    SolverCache(const CoupledSystem& c, double dt);
};

enum class BootstrapMode {
    HalfStep, // explicit Euler over dt/2, second-order start
    Printed   // explicit Euler over a full dt, as printed in the step display
};

/// Staggered trajectory: e1 at integer times, e2 at half-integer times.
struct Trajectory {
    double dt = 0.0;
    int nsteps = 0;
    std::vector<Vec> e1;      // size nsteps+1, e1[n] at t_n
    std::vector<Vec> e2_half; // size nsteps, e2_half[n] at t_{n+1/2}
    Vec e2_initial;           // at t_0
    Vec h1;                   // Hamiltonian of subsystem 1 at t_n
    Vec h2;                   // Hamiltonian of subsystem 2 at t_0, then t_{n+1/2}
    Vec power_residual1;      // per step n = 0..nsteps-1
    Vec power_residual2;      // per step n = 1..nsteps-1 (bootstrap step excluded)
    std::vector<Vec> y1_ext;  // T_ext e1 at integer times
    std::vector<Vec> y2_ext;  // T_ext e2 at t_0 then half times
};

/// Explicit Euler start producing e2 at t_{1/2}:
///   M2 e2half = (M2 + delta J2) e2 + delta (G^T applied e1 term + B2 u2(0)).
/// delta = dt for the printed variant, dt/2 for the half-step start.
Vec bootstrap(const CoupledSystem& c, const Vec& e2, const Vec& e1, const Vec& u2_at_0, double delta);

/// One macro step: the half-step solve for e2 (consuming e1 at t_n) followed
/// by the integer-step solve for e1 (consuming the fresh e2 at t_{n+1/2}).
void staggered_step(const CoupledSystem& c, const SolverCache& cache, Vec& e1, Vec& e2_half,
                    const Vec& u1_mid, const Vec& u2_n);

Trajectory simulate_staggered(const CoupledSystem& c, double t_end, double dt, const InputFn& u1,
                              const InputFn& u2, const Vec& e1_0, const Vec& e2_0,
                              BootstrapMode mode = BootstrapMode::HalfStep);

/// Reference integrator: implicit midpoint on the full monolithic block system.
struct MonolithicTrajectory {
    double dt = 0.0;
    int nsteps = 0;
    std::vector<Vec> e; // at integer times
    Vec h;              // total Hamiltonian
};

MonolithicTrajectory simulate_monolithic_midpoint(const CoupledSystem& c, double t_end, double dt,
                                                  const InputFn& u1, const InputFn& u2, const Vec& e0);

} // namespace phfem
