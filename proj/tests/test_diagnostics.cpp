#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phfem/diagnostics.hpp"

using namespace phfem;

TEST_SUITE_BEGIN("diagnostics");

TEST_CASE("hamiltonian: zero state, unit mass, dimension checks") {
    const CsrMatrix I2 = CsrMatrix::identity(2);
    CHECK(hamiltonian({0.0, 0.0}, I2) == 0.0);
    CHECK(hamiltonian({3.0, 4.0}, I2) == doctest::Approx(12.5));
    CHECK_THROWS_AS(hamiltonian({1.0}, I2), std::invalid_argument);
}

TEST_CASE("beam initial energy: discrete quadratic form vs direct quadrature") {
    const BeamProblem p = build_beam_problem({});
    const double h_disc =
        hamiltonian(p.e1_0, p.sys.sub1.M) + hamiltonian(p.e2_0, p.sys.sub2.M);
    // independent route: integrate the interpolated fields with Gauss points
    const QuadRule1D qr = gauss_legendre(8);
    double h_quad = 0.0;
    const Vec ea1(p.e1_0.begin(), p.e1_0.begin() + p.a1.ndof);
    const Vec eb1(p.e1_0.begin() + p.a1.ndof, p.e1_0.end());
    const Vec ea2(p.e2_0.begin(), p.e2_0.begin() + p.a2.ndof);
    const Vec eb2(p.e2_0.begin() + p.a2.ndof, p.e2_0.end());
    const auto add = [&](const FunctionSpace& s, const Vec& c, double coeff) {
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            const double x0 = s.cell_x0(lc), h = s.cell_h(lc);
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double v = eval_1d(s, c, lc, x0 + h * qr.pts[q], 0);
                h_quad += 0.5 * coeff * qr.wts[q] * h * v * v;
            }
        }
    };
    add(p.a1, ea1, p.cfg.rhoA);
    add(p.b1, eb1, 1.0 / p.cfg.EI);
    add(p.a2, ea2, p.cfg.rhoA);
    add(p.b2, eb2, 1.0 / p.cfg.EI);
    CHECK(h_disc == doctest::Approx(h_quad).epsilon(1e-12));
    // and the closed-form energy of the exact fields at t = 0 (e_beta = 0):
    // (omega^2/8) int (cosh(2x) + cos(2x))^2 dx, the loose interpolation check
    const double s4 = std::sinh(4.0), c2 = std::cosh(2.0), s2 = std::sinh(2.0);
    const double exact = (16.0 / 8.0) * ((0.5 + s4 / 8.0) + (0.5 + std::sin(4.0) / 8.0) +
                                         2.0 * 0.25 * (c2 * std::sin(2.0) + s2 * std::cos(2.0)));
    CHECK(h_disc == doctest::Approx(exact).epsilon(2e-2));
}

TEST_CASE("power residuals of a zero run are identically zero") {
    WaveConfig cfg;
    cfg.n = 2;
    const WaveProblem p = build_wave_problem(cfg);
    const InputFn z1 = [&](double) { return Vec(p.line1.ndof, 0.0); };
    const InputFn z2 = [&](double) { return Vec(p.line2.ndof, 0.0); };
    const Trajectory tr = simulate_staggered(p.sys, 0.05, 1e-2, z1, z2, Vec(p.sys.n1, 0.0),
                                             Vec(p.sys.n2, 0.0));
    CHECK(norm_inf(power_residual(tr, 1)) == 0.0);
    CHECK(norm_inf(power_residual(tr, 2)) == 0.0);
    CHECK_THROWS_AS(power_residual(tr, 3), std::invalid_argument);
}

TEST_CASE("curl norm: gradient interpolant, rigid rotation, zero field") {
    WaveConfig cfg;
    cfg.n = 6;
    const WaveProblem p = build_wave_problem(cfg);
    const CurlNorm curl(p.b2);
    const Vec grad_c = interpolate_vector(p.b2, [](double x, double y) { return wave_grad_g(x, y); });
    CHECK(curl(grad_c) <= 1e-12);
    // curl(-y, x) = 2 everywhere: norm = 2 sqrt(|Omega_2|) = 2 sqrt(1/2)
    const Vec rot_c = interpolate_vector(p.b2, [](double, double) { return std::array<double, 2>{0, 0}; });
    CHECK(curl(rot_c) == 0.0);
    const Vec rr = interpolate_vector(p.b2, [](double x, double y) { return std::array<double, 2>{-y, x}; });
    CHECK(curl(rr) == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("weak curl-free residual on Omega_1 during a forced wave run") {
    WaveConfig cfg;
    cfg.n = 4;
    cfg.dt = 1e-2;
    cfg.t_end = 0.2;
    const WaveProblem p = build_wave_problem(cfg);
    const Trajectory tr = simulate_staggered(p.sys, cfg.t_end, cfg.dt, p.u1, p.u2, p.e1_0, p.e2_0);
    // rotations of H1 hats are divergence-free RT test fields; those whose
    // support avoids the subdomain boundary see no port terms, so the tested
    // rows of <rot v, d/dt e_beta> vanish for every step
    const FunctionSpace cg1 = build_space(*p.mesh, 1, Family::CG, cfg.k);
    const CsrMatrix C = assemble_rot_pairing(cg1, p.b1);
    std::vector<char> interior(cg1.ndof, 1);
    for (int btag : {kGamma1, kInterface}) {
        const BoundarySpace bs = make_boundary_space(cg1, btag, TraceKind::Alpha);
        for (int pd : bs.parent_dof) interior[pd] = 0;
    }
    for (int n = 0; n < tr.nsteps; ++n) {
        Vec de1 = tr.e1[n + 1];
        axpy(-1.0, tr.e1[n], de1);
        const Vec deb(de1.begin() + p.a1.ndof, de1.end());
        Vec r = C.apply(deb);
        for (int i = 0; i < cg1.ndof; ++i)
            if (interior[i]) CHECK(std::fabs(r[i] / tr.dt) <= 1e-10);
    }
}

TEST_CASE("l2 errors: constants reproduced, interpolation rate near 2") {
    const Mesh2D sq2 = build_square_decomposed(2);
    const Mesh2D sq4 = build_square_decomposed(4);
    const FunctionSpace cg2 = build_space(sq2, 2, Family::CG, 1);
    const Vec c(cg2.ndof, 3.25);
    CHECK(l2_error_scalar(cg2, c, [](double, double) { return 3.25; }) <= 1e-13);
    const auto quad = [](double x, double y) { return x * x + 0.5 * x * y - y * y + 0.2; };
    const FunctionSpace cg4 = build_space(sq4, 2, Family::CG, 1);
    const double e2 = l2_error_scalar(cg2, interpolate_scalar(cg2, quad), quad);
    const double e4 = l2_error_scalar(cg4, interpolate_scalar(cg4, quad), quad);
    CHECK(e2 / e4 > 3.0);
    CHECK(e2 / e4 < 5.0);
}

TEST_CASE("fit_rate recovers exact power laws") {
    const Vec h = {0.25, 0.125, 0.0625, 0.03125};
    Vec e2, e1;
    for (double x : h) {
        e2.push_back(3.0 * x * x);
        e1.push_back(0.7 * x);
    }
    CHECK(fit_rate(h, e2) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit_rate(h, e1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_rate({0.1}, {0.1}), std::invalid_argument);
}

TEST_CASE("interface power contributions cancel in the monolithic balance") {
    WaveConfig cfg;
    cfg.n = 3;
    const WaveProblem p = build_wave_problem(cfg);
    const MonolithicTrajectory tr = simulate_monolithic_midpoint(
        p.sys, 0.05, 1e-2, p.u1, p.u2, p.sys.stack(p.e1_0, p.e2_0));
    for (int n = 0; n < tr.nsteps; ++n) {
        Vec mid = tr.e[n + 1];
        axpy(1.0, tr.e[n], mid);
        for (double& v : mid) v *= 0.5;
        Vec m1, m2;
        p.sys.split(mid, m1, m2);
        Vec gt(p.sys.n2, 0.0);
        p.sys.G.apply_transpose_add(-1.0, m1, gt);
        const double pint = dot(m1, p.sys.G.apply(m2)) + dot(m2, gt);
        CHECK(std::fabs(pint) <= 1e-10);
    }
}

TEST_CASE("printed-index power pairing differs from the scheme's sampling") {
    WaveConfig cfg;
    cfg.n = 4;
    cfg.dt = 5e-3;
    cfg.t_end = 0.1;
    const WaveProblem p = build_wave_problem(cfg);
    const Trajectory tr = simulate_staggered(p.sys, cfg.t_end, cfg.dt, p.u1, p.u2, p.e1_0, p.e2_0);
    const Vec native = power_residual(tr, 2);
    const Vec printed = power_residual2_printed(p.sys, tr, p.u2);
    CHECK(norm_inf(native) <= 1e-10);
    CHECK(norm_inf(printed) > 100.0 * std::max(1e-12, norm_inf(native)));
}

TEST_SUITE_END();
