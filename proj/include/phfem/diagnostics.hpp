#pragma once

#include "phfem/models.hpp"

namespace phfem {

/// H = 1/2 e^T M e.
double hamiltonian(const Vec& e, const CsrMatrix& M);

/// Per-step discrete power balance residuals of a staggered run, as recorded
/// by the integrator (subsystem 1: steps 0..N-1, subsystem 2: steps 1..N-1,
/// integer-time input sampling).
Vec power_residual(const Trajectory& tr, int subsystem);

/// Printed-index variant of the Omega_2 balance pairing y and u at t_{n+1}
/// instead of t_n, kept for comparison with the integer-time sampling above.
Vec power_residual2_printed(const CoupledSystem& c, const Trajectory& tr, const InputFn& u2);

/// L2 norm of the scalar curl over a NED space's subdomain, integrated
/// pointwise so that curl-free fields measure at roundoff level.
struct CurlNorm {
    const FunctionSpace* ned;
    explicit CurlNorm(const FunctionSpace& s) : ned(&s) {}
    double operator()(const Vec& coeff) const;
};

double l2_error_scalar(const FunctionSpace& s, const Vec& coeff, const ScalarFn& exact);
double l2_error_vector(const FunctionSpace& s, const Vec& coeff, const VectorFn& exact);
double l2_error_1d(const FunctionSpace& s, const Vec& coeff, const std::function<double(double)>& exact);

/// Least-squares slope of log(error) against log(h).
double fit_rate(const Vec& h, const Vec& err);

struct ConvergenceRecord {
    Vec h;
    Vec err_alpha_1, err_beta_1, err_alpha_2, err_beta_2;
    double rate_alpha_1() const { return fit_rate(h, err_alpha_1); }
    double rate_beta_1() const { return fit_rate(h, err_beta_1); }
    double rate_alpha_2() const { return fit_rate(h, err_alpha_2); }
    double rate_beta_2() const { return fit_rate(h, err_beta_2); }
};

/// Staggered wave runs over the mesh sizes in `ns` (h = 1/n, dt = h/10),
/// final-time L2 errors per variable per subdomain.
ConvergenceRecord wave_convergence_study(int k, const std::vector<int>& ns, double t_end);

/// Same for the beam, n elements per subdomain each (h = L/(2n)).
ConvergenceRecord beam_convergence_study(const BeamConfig& base, const std::vector<int>& ns);

/// Final-time L2 errors of one wave run at t_end against the exact solution.
std::array<double, 4> wave_final_errors(const WaveProblem& p, const Trajectory& tr);
std::array<double, 4> beam_final_errors(const BeamProblem& p, const Trajectory& tr);
std::array<double, 4> beam_final_errors_monolithic(const BeamProblem& p, const Vec& e, double t);

} // namespace phfem
