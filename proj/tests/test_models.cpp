#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phfem/diagnostics.hpp"
#include "phfem/models.hpp"

using namespace phfem;

TEST_SUITE_BEGIN("models");

TEST_CASE("beam exact solution: endpoint values and derivatives") {
    const double om = 4.0;
    for (double t : {0.0, 0.3, 0.7}) {
        const auto v = beam_exact(0.0, t, om);
        CHECK(v.w == doctest::Approx(std::sin(om * t)).epsilon(1e-14)); // cosh0 = cos0 = 1
        CHECK(v.e_alpha == doctest::Approx(om * std::cos(om * t)).epsilon(1e-14));
        CHECK(v.e_alpha_x == doctest::Approx(0.0)); // sinh and sin both vanish at 0
        CHECK(v.e_beta == doctest::Approx(0.0));    // cosh'' - cos'' cancel at 0
        CHECK(v.e_beta_x == doctest::Approx(0.0));
    }
}

TEST_CASE("beam exact solution solves the Euler-Bernoulli equation") {
    // symbolic: w_tt = -om^2 w and EI w_xxxx = om^2 w for unit coefficients,
    // assembled here from independently evaluated cosh/cos factors
    const double om = 4.0, r = std::sqrt(om);
    for (int trial = 0; trial < 100; ++trial) {
        const double x = oracle::uniform(0.0, 1.0), t = oracle::uniform(0.0, 2.0);
        const auto v = beam_exact(x, t, om);
        const double w_tt = -om * om * 0.5 * (std::cosh(r * x) + std::cos(r * x)) * std::sin(om * t);
        const double w_4x = om * om * 0.5 * (std::cosh(r * x) + std::cos(r * x)) * std::sin(om * t);
        CHECK(std::fabs(w_tt + w_4x) <= 1e-12 * std::max(1.0, std::fabs(w_4x)));
        CHECK(v.w == doctest::Approx(0.5 * (std::cosh(r * x) + std::cos(r * x)) * std::sin(om * t))
                         .epsilon(1e-14));
    }
    // finite-difference cross-check of the derivative fields at one point
    const double x = 0.3, t = 0.7, h = 1e-6;
    const auto c = beam_exact(x, t, om);
    const double fd_beta_x = (beam_exact(x + h, t, om).e_beta - beam_exact(x - h, t, om).e_beta) / (2 * h);
    CHECK(fd_beta_x == doctest::Approx(c.e_beta_x).epsilon(1e-7));
    const double fd_alpha_x =
        (beam_exact(x + h, t, om).e_alpha - beam_exact(x - h, t, om).e_alpha) / (2 * h);
    CHECK(fd_alpha_x == doctest::Approx(c.e_alpha_x).epsilon(1e-7));
}

TEST_CASE("beam boundary inputs carry the trace-convention components") {
    BeamConfig cfg;
    Vec u1, u2;
    beam_boundary_inputs(0.7, cfg, u1, u2);
    const double om = cfg.omega, r = std::sqrt(om);
    CHECK(u1[0] == doctest::Approx(0.5 * (std::cosh(r) + std::cos(r)) * om * std::cos(om * 0.7)));
    CHECK(u1[1] == doctest::Approx(0.5 * r * (std::sinh(r) - std::sin(r)) * om * std::cos(om * 0.7)));
    // the exact solution is force- and moment-free at x = 0
    CHECK(u2[0] == doctest::Approx(0.0));
    CHECK(u2[1] == doctest::Approx(0.0));
    beam_boundary_inputs(0.0, cfg, u1, u2);
    CHECK(std::fabs(u1[0]) > 1.0); // rate data alive at t = 0
    CHECK(u2[0] == doctest::Approx(0.0));
}

TEST_CASE("wave exact solution: point values and the first-order system") {
    CHECK(wave_exact_alpha(0.0, 0.0, 0.0) == doctest::Approx(0.0)); // sin(0) factor in g
    const auto b0 = wave_exact_beta(0.0, M_PI / 2, 0.0);
    CHECK(b0[0] == doctest::Approx(0.0));
    CHECK(b0[1] == doctest::Approx(0.0)); // grad g vanishes at (0, pi/2)
    // d/dt e_alpha = div e_beta and d/dt e_beta = grad e_alpha, using the
    // independently derived identities f'' = -2 f and lap g = -2 g
    for (int trial = 0; trial < 100; ++trial) {
        const double x = oracle::uniform(0, 1), y = oracle::uniform(0, 1), t = oracle::uniform(0, 2);
        const double dt_alpha = wave_g(x, y) * (-2.0 * wave_f(t));
        const double div_beta = wave_f(t) * (-2.0 * wave_g(x, y));
        CHECK(std::fabs(dt_alpha - div_beta) <= 1e-12 * std::max(1.0, std::fabs(div_beta)));
    }
    // finite-difference verification that the implemented fields realize them
    const double x = 0.37, y = 0.61, t = 0.83, h = 1e-6;
    const double fd_dt_alpha = (wave_exact_alpha(x, y, t + h) - wave_exact_alpha(x, y, t - h)) / (2 * h);
    const double fd_div = (wave_exact_beta(x + h, y, t)[0] - wave_exact_beta(x - h, y, t)[0]) / (2 * h) +
                          (wave_exact_beta(x, y + h, t)[1] - wave_exact_beta(x, y - h, t)[1]) / (2 * h);
    CHECK(fd_dt_alpha == doctest::Approx(fd_div).epsilon(1e-7));
    // f and f' are never jointly small: |f|^2 + |f'|^2/2 = 13 is constant
    for (double tt : {0.0, 0.4, 1.1, 2.2, 3.0})
        CHECK(wave_f(tt) * wave_f(tt) + wave_fprime(tt) * wave_fprime(tt) / 2.0 ==
              doctest::Approx(13.0).epsilon(1e-12));
}

TEST_CASE("beam problem: space dimensions, skewness, zero-step identity") {
    const BeamProblem p = build_beam_problem({});
    CHECK(p.a1.ndof == 6);
    CHECK(p.b1.ndof == 8);
    CHECK(p.a2.ndof == 8);
    CHECK(p.b2.ndof == 6);
    CHECK(skew_defect_max(p.sys.J) == 0.0);
    const Trajectory tr = simulate_staggered(p.sys, 0.0, 1e-3, p.u1, p.u2, p.e1_0, p.e2_0);
    CHECK(tr.e1.back() == p.e1_0);
    CHECK(tr.e2_initial == p.e2_0);
}

TEST_CASE("beam initial condition interpolates the exact fields") {
    BeamConfig cfg;
    cfg.n1 = cfg.n2 = 8;
    const BeamProblem p = build_beam_problem(cfg);
    const Vec ea2(p.e2_0.begin(), p.e2_0.begin() + p.a2.ndof);
    const double om = cfg.omega;
    const double err =
        l2_error_1d(p.a2, ea2, [om](double x) { return beam_exact(x, 0.0, om).e_alpha; });
    CHECK(err <= 1e-4); // Hermite interpolation of a smooth field at h = 1/16
    // e_beta(x, 0) = 0, so the beta blocks start at zero exactly
    for (int i = p.a1.ndof; i < p.sys.n1; ++i) CHECK(p.e1_0[i] == 0.0);
}

TEST_CASE("wave problem: space dimensions and curl-free initial condition") {
    WaveConfig cfg;
    cfg.n = 1;
    const WaveProblem p = build_wave_problem(cfg);
    CHECK(p.a1.ndof == 1);
    CHECK(p.b1.ndof == 3);
    CHECK(p.a2.ndof == 3);
    CHECK(p.b2.ndof == 3);
    CHECK(skew_defect_max(p.sys.J) == 0.0);
    WaveConfig cfg2;
    cfg2.n = 5;
    for (int k : {1, 2}) {
        cfg2.k = k;
        const WaveProblem w = build_wave_problem(cfg2);
        const CurlNorm curl(w.b2);
        const Vec eb2(w.e2_0.begin() + w.a2.ndof, w.e2_0.end());
        CHECK(curl(eb2) <= 1e-12); // interpolant of a gradient field
    }
}

TEST_CASE("wave Neumann data vanishes on the left edge") {
    WaveConfig cfg;
    cfg.n = 4;
    const WaveProblem p = build_wave_problem(cfg);
    const Vec u2 = p.u2(0.9);
    // e_beta . n = sin(x) sin(y) f(t) on x = 0, identically zero there; the
    // facets of Gamma_2 are midpoint-sorted so the left-edge ones come first
    for (size_t fi = 0; fi < p.line2.facets.size(); ++fi) {
        const auto& f = p.line2.facets[fi];
        if (f.p0[0] < 1e-12 && f.p1[0] < 1e-12)
            for (int d : f.active) CHECK(std::fabs(u2[d]) <= 1e-12);
    }
    // and matches f(t) cos(x) cos(1) on the top edge
    const Vec u2b = p.u2(0.0);
    for (size_t fi = 0; fi < p.line2.facets.size(); ++fi) {
        const auto& f = p.line2.facets[fi];
        if (f.p0[1] > 1.0 - 1e-12 && f.p1[1] > 1.0 - 1e-12) {
            const double xm = 0.5 * (f.p0[0] + f.p1[0]);
            CHECK(u2b[f.active[0]] ==
                  doctest::Approx(wave_f(0.0) * std::cos(xm) * std::cos(1.0)).epsilon(2e-3));
        }
    }
}

TEST_CASE("wave initial condition matches the exact fields to interpolation accuracy") {
    WaveConfig cfg;
    cfg.n = 8;
    const WaveProblem p = build_wave_problem(cfg);
    const Trajectory tr = simulate_staggered(p.sys, 0.0, 1e-3, p.u1, p.u2, p.e1_0, p.e2_0);
    const auto errs = wave_final_errors(p, tr);
    CHECK(errs[0] <= 0.08); // DG0 interpolant of e_alpha (scale ~3), O(h)
    CHECK(errs[1] <= 0.10); // RT1 interpolant of e_beta (scale ~3), O(h)
    CHECK(errs[2] <= 0.01); // CG1, O(h^2)
    CHECK(errs[3] <= 0.10);
}

TEST_CASE("config validation rejects bad parameters") {
    BeamConfig bc;
    bc.n1 = 0;
    CHECK_THROWS_AS(build_beam_problem(bc), ConfigError);
    WaveConfig wc;
    wc.k = 3;
    CHECK_THROWS_AS(build_wave_problem(wc), ConfigError);
}

TEST_SUITE_END();
