#include "phfem/models.hpp"

#include <cmath>

namespace phfem {

void BeamConfig::validate() const {
    if (!(EI > 0) || !(rhoA > 0) || !(L > 0) || !(omega > 0) || n1 < 1 || n2 < 1 || !(dt > 0) ||
        !(t_end >= 0))
        throw ConfigError("beam config: all parameters must be positive");
}

void WaveConfig::validate() const {
    if (n < 1 || (k != 1 && k != 2) || !(dt > 0) || !(t_end >= 0))
        throw ConfigError("wave config: need n >= 1, k in {1,2}, dt > 0");
}

BeamExactValues beam_exact(double x, double t, double omega, double EI) {
    const double r = std::sqrt(omega);
    const double ch = std::cosh(r * x), co = std::cos(r * x);
    const double sh = std::sinh(r * x), si = std::sin(r * x);
    const double st = std::sin(omega * t), ct = std::cos(omega * t);
    BeamExactValues v;
    v.w = 0.5 * (ch + co) * st;
    v.e_alpha = 0.5 * (ch + co) * omega * ct;
    v.e_alpha_x = 0.5 * r * (sh - si) * omega * ct;
    v.e_beta = EI * 0.5 * omega * (ch - co) * st;
    v.e_beta_x = EI * 0.5 * omega * r * (sh + si) * st;
    return v;
}

void beam_boundary_inputs(double t, const BeamConfig& cfg, Vec& u1, Vec& u2) {
    const BeamExactValues at_l = beam_exact(cfg.L, t, cfg.omega, cfg.EI);
    const BeamExactValues at_0 = beam_exact(0.0, t, cfg.omega, cfg.EI);
    u1 = {at_l.e_alpha, at_l.e_alpha_x};
    u2 = {at_0.e_beta_x, -at_0.e_beta};
}

double wave_f(double t) { return 2.0 * std::sin(std::sqrt(2.0) * t) + 3.0 * std::cos(std::sqrt(2.0) * t); }

double wave_fprime(double t) {
    const double s2 = std::sqrt(2.0);
    return 2.0 * s2 * std::cos(s2 * t) - 3.0 * s2 * std::sin(s2 * t);
}

double wave_g(double x, double y) { return std::cos(x) * std::sin(y); }

std::array<double, 2> wave_grad_g(double x, double y) {
    return {-std::sin(x) * std::sin(y), std::cos(x) * std::cos(y)};
}

double wave_exact_alpha(double x, double y, double t) { return wave_g(x, y) * wave_fprime(t); }

std::array<double, 2> wave_exact_beta(double x, double y, double t) {
    const auto gg = wave_grad_g(x, y);
    const double f = wave_f(t);
    return {f * gg[0], f * gg[1]};
}

BeamProblem build_beam_problem(const BeamConfig& cfg, double sigma) {
    cfg.validate();
    BeamProblem p;
    p.cfg = cfg;
    p.mesh = std::make_shared<Mesh1D>(build_interval_decomposed(cfg.L, cfg.n1, cfg.n2, cfg.L / 2.0));
    p.a1 = build_space(*p.mesh, 1, Family::DG1D, 1);
    p.b1 = build_space(*p.mesh, 1, Family::Hermite, 3);
    p.a2 = build_space(*p.mesh, 2, Family::Hermite, 3);
    p.b2 = build_space(*p.mesh, 2, Family::DG1D, 1);

    const CsrMatrix Ma1 = assemble_mass(p.a1, cfg.rhoA);
    const CsrMatrix Mb1 = assemble_mass(p.b1, 1.0 / cfg.EI);
    const CsrMatrix Ma2 = assemble_mass(p.a2, cfg.rhoA);
    const CsrMatrix Mb2 = assemble_mass(p.b2, 1.0 / cfg.EI);
    const CsrMatrix D1 = assemble_d(p.a1, p.b1, DiffOp::Dxx);
    const CsrMatrix D2 = assemble_d(p.b2, p.a2, DiffOp::Dxx);

    const BoundarySpace bs_b1_g1 = make_boundary_space(p.b1, kGamma1, TraceKind::Beta);
    const BoundarySpace bs_b1_gi = make_boundary_space(p.b1, kInterface, TraceKind::Beta);
    const BoundarySpace bs_a2_g2 = make_boundary_space(p.a2, kGamma2, TraceKind::Alpha);
    const BoundarySpace bs_a2_gi = make_boundary_space(p.a2, kInterface, TraceKind::Alpha);

    const CsrMatrix psi = psi_interface(bs_a2_gi, bs_b1_gi);
    PHSubsystem s1 = build_subsystem(1, Ma1, Mb1, D1, assemble_B_point(bs_b1_g1),
                                     assemble_B(bs_b1_gi, bs_a2_gi), trace_matrix(bs_b1_g1),
                                     trace_matrix(bs_b1_gi));
    PHSubsystem s2 = build_subsystem(2, Ma2, Mb2, D2, assemble_B_point(bs_a2_g2),
                                     assemble_B(bs_a2_gi, bs_b1_gi), trace_matrix(bs_a2_g2),
                                     trace_matrix(bs_a2_gi));
    p.sys = couple(std::move(s1), std::move(s2), psi, sigma);

    const double om = cfg.omega, ei = cfg.EI;
    const auto ic_alpha = [om, ei](double x) { return beam_exact(x, 0.0, om, ei).e_alpha; };
    const auto ic_alpha_x = [om, ei](double x) { return beam_exact(x, 0.0, om, ei).e_alpha_x; };
    const auto ic_beta = [om, ei](double x) { return beam_exact(x, 0.0, om, ei).e_beta; };
    const auto ic_beta_x = [om, ei](double x) { return beam_exact(x, 0.0, om, ei).e_beta_x; };
    const Vec ea1 = interpolate_1d(p.a1, ic_alpha, ic_alpha_x);
    const Vec eb1 = interpolate_1d(p.b1, ic_beta, ic_beta_x);
    const Vec ea2 = interpolate_1d(p.a2, ic_alpha, ic_alpha_x);
    const Vec eb2 = interpolate_1d(p.b2, ic_beta, ic_beta_x);
    p.e1_0.assign(p.sys.n1, 0.0);
    std::copy(ea1.begin(), ea1.end(), p.e1_0.begin());
    std::copy(eb1.begin(), eb1.end(), p.e1_0.begin() + p.a1.ndof);
    p.e2_0.assign(p.sys.n2, 0.0);
    std::copy(ea2.begin(), ea2.end(), p.e2_0.begin());
    std::copy(eb2.begin(), eb2.end(), p.e2_0.begin() + p.a2.ndof);

    const BeamConfig c = cfg;
    p.u1 = [c](double t) {
        Vec u1, u2;
        beam_boundary_inputs(t, c, u1, u2);
        return u1;
    };
    p.u2 = [c](double t) {
        Vec u1, u2;
        beam_boundary_inputs(t, c, u1, u2);
        return u2;
    };
    return p;
}

WaveProblem build_wave_problem(const WaveConfig& cfg, double sigma) {
    cfg.validate();
    WaveProblem p;
    p.cfg = cfg;
    p.mesh = std::make_shared<Mesh2D>(build_square_decomposed(cfg.n));
    const int k = cfg.k;
    p.a1 = build_space(*p.mesh, 1, Family::DG, k - 1);
    p.b1 = build_space(*p.mesh, 1, Family::RT, k);
    p.a2 = build_space(*p.mesh, 2, Family::CG, k);
    p.b2 = build_space(*p.mesh, 2, Family::NED, k);
    p.line1 = make_line_space(*p.mesh, kGamma1, true, k);
    p.line2 = make_line_space(*p.mesh, kGamma2, false, k - 1);

    const CsrMatrix Ma1 = assemble_mass(p.a1, 1.0);
    const CsrMatrix Mb1 = assemble_mass(p.b1, 1.0);
    const CsrMatrix Ma2 = assemble_mass(p.a2, 1.0);
    const CsrMatrix Mb2 = assemble_mass(p.b2, 1.0);
    // L* = -div for the wave system
    const CsrMatrix D1 = csr_scaled(assemble_d(p.a1, p.b1, DiffOp::Div), -1.0);
    const CsrMatrix D2 = assemble_d(p.b2, p.a2, DiffOp::Grad);

    const BoundarySpace bs_b1_g1 = make_boundary_space(p.b1, kGamma1, TraceKind::Beta);
    const BoundarySpace bs_b1_gi = make_boundary_space(p.b1, kInterface, TraceKind::Beta);
    const BoundarySpace bs_a2_g2 = make_boundary_space(p.a2, kGamma2, TraceKind::Alpha);
    const BoundarySpace bs_a2_gi = make_boundary_space(p.a2, kInterface, TraceKind::Alpha);

    const CsrMatrix psi = psi_interface(bs_a2_gi, bs_b1_gi);
    PHSubsystem s1 = build_subsystem(1, Ma1, Mb1, D1, assemble_B(bs_b1_g1, p.line1),
                                     assemble_B(bs_b1_gi, bs_a2_gi), trace_matrix(bs_b1_g1),
                                     trace_matrix(bs_b1_gi));
    PHSubsystem s2 = build_subsystem(2, Ma2, Mb2, D2, assemble_B(bs_a2_g2, p.line2),
                                     assemble_B(bs_a2_gi, bs_b1_gi), trace_matrix(bs_a2_g2),
                                     trace_matrix(bs_a2_gi));
    p.sys = couple(std::move(s1), std::move(s2), psi, sigma);

    const Vec ea1 = interpolate_scalar(p.a1, [](double x, double y) { return wave_exact_alpha(x, y, 0.0); });
    const Vec eb1 = interpolate_vector(p.b1, [](double x, double y) { return wave_exact_beta(x, y, 0.0); });
    const Vec ea2 = interpolate_scalar(p.a2, [](double x, double y) { return wave_exact_alpha(x, y, 0.0); });
    const Vec eb2 = interpolate_vector(p.b2, [](double x, double y) { return wave_exact_beta(x, y, 0.0); });
    p.e1_0.assign(p.sys.n1, 0.0);
    std::copy(ea1.begin(), ea1.end(), p.e1_0.begin());
    std::copy(eb1.begin(), eb1.end(), p.e1_0.begin() + p.a1.ndof);
    p.e2_0.assign(p.sys.n2, 0.0);
    std::copy(ea2.begin(), ea2.end(), p.e2_0.begin());
    std::copy(eb2.begin(), eb2.end(), p.e2_0.begin() + p.a2.ndof);

    // boundary data expanded by L2 projection onto the trace spaces
    auto m1lu = std::make_shared<LuFactorization>(line_mass(p.line1));
    auto m2lu = std::make_shared<LuFactorization>(line_mass(p.line2));
    p.u1 = [m1lu, ls1 = p.line1](double t) {
        const Vec b = line_load(ls1, [t](double x, double y) { return wave_g(x, y) * wave_fprime(t); });
        return m1lu->solve(b);
    };
    p.u2 = [m2lu, ls2 = p.line2](double t) {
        const Vec b = line_load(ls2, [t](double x, double y) {
            // outward normal of the square on Gamma_2: left edge or top edge
            const double nx = x < 1e-12 ? -1.0 : 0.0;
            const double ny = x < 1e-12 ? 0.0 : 1.0;
            const auto eb = wave_exact_beta(x, y, t);
            return eb[0] * nx + eb[1] * ny;
        });
        return m2lu->solve(b);
    };
    return p;
}

} // namespace phfem
