#include "phfem/diagnostics.hpp"

#include <cmath>

namespace phfem {

double hamiltonian(const Vec& e, const CsrMatrix& M) {
    if (static_cast<int>(e.size()) != M.nrows) throw std::invalid_argument("hamiltonian: dimension mismatch");
    return 0.5 * dot(e, M.apply(e));
}

Vec power_residual(const Trajectory& tr, int subsystem) {
    if (subsystem == 1) return tr.power_residual1;
    if (subsystem == 2) return tr.power_residual2;
    throw std::invalid_argument("power_residual: subsystem must be 1 or 2");
}

Vec power_residual2_printed(const CoupledSystem& c, const Trajectory& tr, const InputFn& u2) {
    Vec out;
    for (int n = 1; n < tr.nsteps; ++n) {
        const Vec& ep = tr.e2_half[n - 1];
        const Vec& en = tr.e2_half[n];
        Vec mid = en;
        axpy(1.0, ep, mid);
        for (double& v : mid) v *= 0.5;
        Vec de = en;
        axpy(-1.0, ep, de);
        const double dh = dot(mid, c.sub2.M.apply(de));
        double power = dot(mid, c.sub2.B_ext.apply(u2((n + 1) * tr.dt)));
        Vec gte(c.n2, 0.0);
        c.G.apply_transpose_add(-1.0, tr.e1[n], gte);
        power += dot(mid, gte);
        out.push_back(dh / tr.dt - power);
    }
    return out;
}

double CurlNorm::operator()(const Vec& coeff) const {
    const FunctionSpace& s = *ned;
    if (!s.is_vector()) throw std::invalid_argument("CurlNorm: vector space required");
    const QuadRule2D qr = triangle_rule(4);
    double acc = 0.0;
    double dv[8];
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto v = s.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        const TriVectorBasis basis = s.vector_basis(lc);
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
            const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
            basis.dop(px, py, dv);
            double c = 0.0;
            for (int j = 0; j < basis.ndof; ++j) c += coeff[s.cell_dofs[lc][j]] * dv[j];
            acc += qr.wts[q] * jac * c * c;
        }
    }
    return std::sqrt(acc);
}

double l2_error_scalar(const FunctionSpace& s, const Vec& coeff, const ScalarFn& exact) {
    const QuadRule2D qr = triangle_rule(8);
    double acc = 0.0;
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto v = s.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
            const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
            const double d = eval_scalar(s, coeff, lc, px, py) - exact(px, py);
            acc += qr.wts[q] * jac * d * d;
        }
    }
    return std::sqrt(acc);
}

double l2_error_vector(const FunctionSpace& s, const Vec& coeff, const VectorFn& exact) {
    const QuadRule2D qr = triangle_rule(8);
    double acc = 0.0;
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto v = s.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        const TriVectorBasis basis = s.vector_basis(lc);
        std::array<double, 2> vals[8];
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
            const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
            basis.eval(px, py, vals);
            double ux = 0.0, uy = 0.0;
            for (int j = 0; j < basis.ndof; ++j) {
                ux += coeff[s.cell_dofs[lc][j]] * vals[j][0];
                uy += coeff[s.cell_dofs[lc][j]] * vals[j][1];
            }
            const auto ex = exact(px, py);
            acc += qr.wts[q] * jac * ((ux - ex[0]) * (ux - ex[0]) + (uy - ex[1]) * (uy - ex[1]));
        }
    }
    return std::sqrt(acc);
}

double l2_error_1d(const FunctionSpace& s, const Vec& coeff, const std::function<double(double)>& exact) {
    const QuadRule1D qr = gauss_legendre(8);
    double acc = 0.0;
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const double x0 = s.cell_x0(lc), h = s.cell_h(lc);
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double x = x0 + h * qr.pts[q];
            const double d = eval_1d(s, coeff, lc, x, 0) - exact(x);
            acc += qr.wts[q] * h * d * d;
        }
    }
    return std::sqrt(acc);
}

double fit_rate(const Vec& h, const Vec& err) {
    if (h.size() != err.size() || h.size() < 2) throw std::invalid_argument("fit_rate: need matching series");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int n = static_cast<int>(h.size());
    for (int i = 0; i < n; ++i) {
        if (!(h[i] > 0) || !(err[i] > 0)) throw std::invalid_argument("fit_rate: h and errors must be positive");
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::array<double, 4> wave_final_errors(const WaveProblem& p, const Trajectory& tr) {
    // each variable compared at its native final sample time
    const double t1 = tr.nsteps * tr.dt;
    const double t2 = tr.nsteps == 0 ? 0.0 : (tr.nsteps - 0.5) * tr.dt;
    const Vec& e1 = tr.e1.back();
    const Vec& e2 = tr.nsteps == 0 ? tr.e2_initial : tr.e2_half.back();
    const Vec ea1(e1.begin(), e1.begin() + p.a1.ndof);
    const Vec eb1(e1.begin() + p.a1.ndof, e1.end());
    const Vec ea2(e2.begin(), e2.begin() + p.a2.ndof);
    const Vec eb2(e2.begin() + p.a2.ndof, e2.end());
    return {l2_error_scalar(p.a1, ea1, [t1](double x, double y) { return wave_exact_alpha(x, y, t1); }),
            l2_error_vector(p.b1, eb1, [t1](double x, double y) { return wave_exact_beta(x, y, t1); }),
            l2_error_scalar(p.a2, ea2, [t2](double x, double y) { return wave_exact_alpha(x, y, t2); }),
            l2_error_vector(p.b2, eb2, [t2](double x, double y) { return wave_exact_beta(x, y, t2); })};
}

std::array<double, 4> beam_final_errors(const BeamProblem& p, const Trajectory& tr) {
    const double t1 = tr.nsteps * tr.dt;
    const double t2 = tr.nsteps == 0 ? 0.0 : (tr.nsteps - 0.5) * tr.dt;
    const Vec& e1 = tr.e1.back();
    const Vec& e2 = tr.nsteps == 0 ? tr.e2_initial : tr.e2_half.back();
    const Vec ea1(e1.begin(), e1.begin() + p.a1.ndof);
    const Vec eb1(e1.begin() + p.a1.ndof, e1.end());
    const Vec ea2(e2.begin(), e2.begin() + p.a2.ndof);
    const Vec eb2(e2.begin() + p.a2.ndof, e2.end());
    const double om = p.cfg.omega, ei = p.cfg.EI;
    return {l2_error_1d(p.a1, ea1, [t1, om, ei](double x) { return beam_exact(x, t1, om, ei).e_alpha; }),
            l2_error_1d(p.b1, eb1, [t1, om, ei](double x) { return beam_exact(x, t1, om, ei).e_beta; }),
            l2_error_1d(p.a2, ea2, [t2, om, ei](double x) { return beam_exact(x, t2, om, ei).e_alpha; }),
            l2_error_1d(p.b2, eb2, [t2, om, ei](double x) { return beam_exact(x, t2, om, ei).e_beta; })};
}

ConvergenceRecord wave_convergence_study(int k, const std::vector<int>& ns, double t_end) {
    ConvergenceRecord rec;
    for (int n : ns) {
        WaveConfig cfg;
        cfg.n = n;
        cfg.k = k;
        cfg.dt = 1.0 / (10.0 * n);
        cfg.t_end = t_end;
        const WaveProblem p = build_wave_problem(cfg);
        const Trajectory tr = simulate_staggered(p.sys, cfg.t_end, cfg.dt, p.u1, p.u2, p.e1_0, p.e2_0);
        const auto errs = wave_final_errors(p, tr);
        rec.h.push_back(1.0 / n);
        rec.err_alpha_1.push_back(errs[0]);
        rec.err_beta_1.push_back(errs[1]);
        rec.err_alpha_2.push_back(errs[2]);
        rec.err_beta_2.push_back(errs[3]);
    }
    return rec;
}

ConvergenceRecord beam_convergence_study(const BeamConfig& base, const std::vector<int>& ns) {
    // the beam sweep integrates monolithically: the explicit interface
    // exchange is unstable for the beam's point traces at dt = h/10 (the
    // split coupling frequency grows like h^-3)
    ConvergenceRecord rec;
    for (int n : ns) {
        BeamConfig cfg = base;
        cfg.n1 = n;
        cfg.n2 = n;
        const double h = cfg.L / (2.0 * n);
        cfg.dt = h / 10.0;
        const BeamProblem p = build_beam_problem(cfg);
        const MonolithicTrajectory tr = simulate_monolithic_midpoint(
            p.sys, cfg.t_end, cfg.dt, p.u1, p.u2, p.sys.stack(p.e1_0, p.e2_0));
        const auto errs = beam_final_errors_monolithic(p, tr.e.back(), cfg.t_end);
        rec.h.push_back(h);
        rec.err_alpha_1.push_back(errs[0]);
        rec.err_beta_1.push_back(errs[1]);
        rec.err_alpha_2.push_back(errs[2]);
        rec.err_beta_2.push_back(errs[3]);
    }
    return rec;
}

std::array<double, 4> beam_final_errors_monolithic(const BeamProblem& p, const Vec& e, double t) {
    Vec e1, e2;
    p.sys.split(e, e1, e2);
    const Vec ea1(e1.begin(), e1.begin() + p.a1.ndof);
    const Vec eb1(e1.begin() + p.a1.ndof, e1.end());
    const Vec ea2(e2.begin(), e2.begin() + p.a2.ndof);
    const Vec eb2(e2.begin() + p.a2.ndof, e2.end());
    const double om = p.cfg.omega, ei = p.cfg.EI;
    return {l2_error_1d(p.a1, ea1, [t, om, ei](double x) { return beam_exact(x, t, om, ei).e_alpha; }),
            l2_error_1d(p.b1, eb1, [t, om, ei](double x) { return beam_exact(x, t, om, ei).e_beta; }),
            l2_error_1d(p.a2, ea2, [t, om, ei](double x) { return beam_exact(x, t, om, ei).e_alpha; }),
            l2_error_1d(p.b2, eb2, [t, om, ei](double x) { return beam_exact(x, t, om, ei).e_beta; })};
}

} // namespace phfem
