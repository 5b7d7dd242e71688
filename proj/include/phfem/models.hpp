#pragma once

#include <memory>

#include "phfem/assembly.hpp"
#include "phfem/phcore.hpp"
#include "phfem/timeint.hpp"

namespace phfem {

struct BeamConfig {
    double EI = 1.0;
    double rhoA = 1.0;
    double L = 1.0;
    double omega = 4.0; // forcing frequency of the exact solution
    int n1 = 3;         // elements on the Dirichlet side [L/2, L]
    int n2 = 3;         // elements on the Neumann side [0, L/2]
    double dt = 1e-3;
    double t_end = 1.0;
    void validate() const;
};

struct WaveConfig {
    int n = 10; // elements per side
    int k = 1;  // polynomial order (1 or 2)
    double dt = 1e-3;
    double t_end = 1.0;
    void validate() const;
};

/// w(x,t) = 1/2 [cosh(sqrt(w) x) + cos(sqrt(w) x)] sin(w t) and the traces
/// needed for boundary data. Solves rhoA w_tt + EI w_xxxx = 0 for unit
/// coefficients.
struct BeamExactValues {
    double w;         // displacement
    double e_alpha;   // velocity dw/dt
    double e_alpha_x; // rotation rate d2w/dxdt
    double e_beta;    // bending moment EI d2w/dx2
    double e_beta_x;  // shear EI d3w/dx3
};
BeamExactValues beam_exact(double x, double t, double omega, double EI = 1.0);

/// Four boundary signals: u1 = (velocity, rotation rate) at x = L,
/// u2 = (d e_beta/dx, -e_beta) at x = 0, ordered per the endpoint trace
/// conventions (outward normal -1 at x = 0).
void beam_boundary_inputs(double t, const BeamConfig& cfg, Vec& u1, Vec& u2);

/// f(t) = 2 sin(sqrt2 t) + 3 cos(sqrt2 t), g = cos(x) sin(y);
/// e_alpha = g f', e_beta = f grad g.
double wave_f(double t);
double wave_fprime(double t);
double wave_g(double x, double y);
std::array<double, 2> wave_grad_g(double x, double y);
double wave_exact_alpha(double x, double y, double t);
std::array<double, 2> wave_exact_beta(double x, double y, double t);

struct BeamProblem {
    BeamConfig cfg;
    std::shared_ptr<Mesh1D> mesh;
    FunctionSpace a1, b1, a2, b2; // DG1, Hermite on Omega_1; Hermite, DG1 on Omega_2
    CoupledSystem sys;
    Vec e1_0, e2_0;
    InputFn u1, u2;
};
BeamProblem build_beam_problem(const BeamConfig& cfg, double sigma = 1.0);

struct WaveProblem {
    WaveConfig cfg;
    std::shared_ptr<Mesh2D> mesh;
    FunctionSpace a1, b1, a2, b2; // DG_{k-1}, RT_k on Omega_1; CG_k, NED_k on Omega_2
    LineSpace line1, line2;
    CoupledSystem sys;
    Vec e1_0, e2_0;
    InputFn u1, u2;
};
WaveProblem build_wave_problem(const WaveConfig& cfg, double sigma = 1.0);

} // namespace phfem
