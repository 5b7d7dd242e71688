#include "phfem/elements.hpp"

#include <cmath>
#include <stdexcept>

namespace phfem {

std::array<double, 4> hermite_eval(double t, int deriv) {
    switch (deriv) {
        case 0:
            return {2 * t * t * t - 3 * t * t + 1, t * t * t - 2 * t * t + t,
                    -2 * t * t * t + 3 * t * t, t * t * t - t * t};
        case 1:
            return {6 * t * t - 6 * t, 3 * t * t - 4 * t + 1, -6 * t * t + 6 * t, 3 * t * t - 2 * t};
        case 2:
            return {12 * t - 6, 6 * t - 4, -12 * t + 6, 6 * t - 2};
        default:
            throw std::invalid_argument("hermite_eval: deriv must be 0, 1 or 2");
    }
}

void lagrange1d_eval(int k, double t, int deriv, double* out) {
    if (deriv < 0 || deriv > 1) throw std::invalid_argument("lagrange1d_eval: deriv must be 0 or 1");
    switch (k) {
        case 0:
            out[0] = deriv == 0 ? 1.0 : 0.0;
            return;
        case 1:
            if (deriv == 0) {
                out[0] = 1.0 - t;
                out[1] = t;
            } else {
                out[0] = -1.0;
                out[1] = 1.0;
            }
            return;
        case 2:
            // nodes 0, 1/2, 1
            if (deriv == 0) {
                out[0] = (1 - t) * (1 - 2 * t);
                out[1] = 4 * t * (1 - t);
                out[2] = t * (2 * t - 1);
            } else {
                out[0] = 4 * t - 3;
                out[1] = 4 - 8 * t;
                out[2] = 4 * t - 1;
            }
            return;
        default:
            throw std::invalid_argument("lagrange1d_eval: unsupported degree");
    }
}

TriScalarBasis::TriScalarBasis(const std::array<std::array<double, 2>, 3>& verts, int degree)
    : v(verts), k(degree) {
    if (k < 0 || k > 2) throw std::invalid_argument("TriScalarBasis: unsupported degree");
    ndof = k == 0 ? 1 : (k == 1 ? 3 : 6);
    const double x0 = v[0][0], y0 = v[0][1];
    const double ax = v[1][0] - x0, ay = v[1][1] - y0;
    const double bx = v[2][0] - x0, by = v[2][1] - y0;
    const double det = ax * by - ay * bx;
    area = 0.5 * det;
    if (!(area > 0.0)) throw std::invalid_argument("TriScalarBasis: triangle not CCW / degenerate");
    // lambda_1 = ( by*(x-x0) - bx*(y-y0)) / det, lambda_2 = (-ay*(x-x0) + ax*(y-y0)) / det
    glam[1] = {by / det, -bx / det};
    glam[2] = {-ay / det, ax / det};
    glam[0] = {-glam[1][0] - glam[2][0], -glam[1][1] - glam[2][1]};
}

void TriScalarBasis::bary(double x, double y, double* lam) const {
    const double dx = x - v[0][0], dy = y - v[0][1];
    lam[1] = glam[1][0] * dx + glam[1][1] * dy;
    lam[2] = glam[2][0] * dx + glam[2][1] * dy;
    lam[0] = 1.0 - lam[1] - lam[2];
}

void TriScalarBasis::eval(double x, double y, double* vals) const {
    if (k == 0) {
        vals[0] = 1.0;
        return;
    }
    double lam[3];
    bary(x, y, lam);
    if (k == 1) {
        vals[0] = lam[0];
        vals[1] = lam[1];
        vals[2] = lam[2];
        return;
    }
    for (int i = 0; i < 3; ++i) vals[i] = lam[i] * (2 * lam[i] - 1);
    // edge bubble i sits on the edge opposite vertex i
    vals[3] = 4 * lam[1] * lam[2];
    vals[4] = 4 * lam[2] * lam[0];
    vals[5] = 4 * lam[0] * lam[1];
}

void TriScalarBasis::grad(double x, double y, std::array<double, 2>* grads) const {
    if (k == 0) {
        grads[0] = {0.0, 0.0};
        return;
    }
    if (k == 1) {
        for (int i = 0; i < 3; ++i) grads[i] = glam[i];
        return;
    }
    double lam[3];
    bary(x, y, lam);
    for (int i = 0; i < 3; ++i) {
        grads[i] = {(4 * lam[i] - 1) * glam[i][0], (4 * lam[i] - 1) * glam[i][1]};
    }
    auto bubble = [&](int a, int b) -> std::array<double, 2> {
        return {4 * (lam[a] * glam[b][0] + lam[b] * glam[a][0]),
                4 * (lam[a] * glam[b][1] + lam[b] * glam[a][1])};
    };
    grads[3] = bubble(1, 2);
    grads[4] = bubble(2, 0);
    grads[5] = bubble(0, 1);
}

namespace {

// Monomial span for RT_k / NED_k in centered-scaled coordinates.
struct VecSpan {
    VecFamily fam;
    int k;
    int n;
    void eval(double xt, double yt, std::array<double, 2>* out) const {
        if (k == 1) {
            out[0] = {1, 0};
            out[1] = {0, 1};
            out[2] = fam == VecFamily::RT ? std::array<double, 2>{xt, yt} : std::array<double, 2>{-yt, xt};
            return;
        }
        out[0] = {1, 0};
        out[1] = {0, 1};
        out[2] = {xt, 0};
        out[3] = {0, xt};
        out[4] = {yt, 0};
        out[5] = {0, yt};
        if (fam == VecFamily::RT) {
            out[6] = {xt * xt, xt * yt};
            out[7] = {xt * yt, yt * yt};
        } else {
            out[6] = {-xt * yt, xt * xt};
            out[7] = {-yt * yt, xt * yt};
        }
    }
    // div (RT) or scalar curl (NED) of each span member; hinv = 1/h.
    void dop(double xt, double yt, double hinv, double* out) const {
        if (k == 1) {
            out[0] = 0;
            out[1] = 0;
            out[2] = 2 * hinv;
            return;
        }
        if (fam == VecFamily::RT) {
            out[0] = 0;
            out[1] = 0;
            out[2] = hinv;
            out[3] = 0;
            out[4] = 0;
            out[5] = hinv;
            out[6] = 3 * xt * hinv;
            out[7] = 3 * yt * hinv;
        } else {
            out[0] = 0;
            out[1] = 0;
            out[2] = 0;
            out[3] = hinv;
            out[4] = -hinv;
            out[5] = 0;
            out[6] = 3 * xt * hinv;
            out[7] = 3 * yt * hinv;
        }
    }
};

} // namespace

TriVectorBasis::TriVectorBasis(VecFamily family, int degree,
                               const std::array<std::array<double, 2>, 3>& verts,
                               const std::array<std::array<int, 2>, 3>& elv)
    : fam(family), k(degree), v(verts), edge_lv(elv) {
    if (k < 1 || k > 2) throw std::invalid_argument("TriVectorBasis: unsupported degree");
    ndof = vec_basis_ndof(k);
    cx = (v[0][0] + v[1][0] + v[2][0]) / 3.0;
    cy = (v[0][1] + v[1][1] + v[2][1]) / 3.0;
    double hmax = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto& a = v[i];
        const auto& b = v[(i + 1) % 3];
        hmax = std::max(hmax, std::hypot(b[0] - a[0], b[1] - a[1]));
    }
    h = hmax;

    const VecSpan span{fam, k, ndof};
    DenseMatrix V(ndof, ndof);
    std::vector<std::array<double, 2>> sv(ndof);
    const QuadRule1D ge = gauss_legendre(4);

    int row = 0;
    for (int e = 0; e < 3; ++e) {
        const auto& plo = v[edge_lv[e][0]];
        const auto& phi = v[edge_lv[e][1]];
        const double ex = phi[0] - plo[0], ey = phi[1] - plo[1];
        const double elen = std::hypot(ex, ey);
        const double tx = ex / elen, ty = ey / elen;
        // global normal is the tangent rotated by -90 degrees
        const double wx = fam == VecFamily::RT ? ty : tx;
        const double wy = fam == VecFamily::RT ? -tx : ty;
        for (int j = 0; j < k; ++j, ++row) {
            for (size_t q = 0; q < ge.pts.size(); ++q) {
                const double s = ge.pts[q];
                const double px = plo[0] + s * ex, py = plo[1] + s * ey;
                const double qs = j == 0 ? 1.0 : 2.0 * s - 1.0;
                span.eval((px - cx) / h, (py - cy) / h, sv.data());
                const double wgt = ge.wts[q] * elen * qs;
                for (int m = 0; m < ndof; ++m) V(row, m) += wgt * (sv[m][0] * wx + sv[m][1] * wy);
            }
        }
    }
    if (k == 2) {
        const QuadRule2D tq = triangle_rule(2);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        for (int c = 0; c < 2; ++c, ++row) {
            for (size_t q = 0; q < tq.pts.size(); ++q) {
                const double px = x0 + ax * tq.pts[q][0] + bx * tq.pts[q][1];
                const double py = y0 + ay * tq.pts[q][0] + by * tq.pts[q][1];
                span.eval((px - cx) / h, (py - cy) / h, sv.data());
                const double wgt = tq.wts[q] * jac;
                for (int m = 0; m < ndof; ++m) V(row, m) += wgt * sv[m][c];
            }
        }
    }
    // F_i(basis_j) = sum_m V(i,m) coef(j,m) = delta_ij, so coef = V^{-T}
    coef = DenseMatrix(ndof, ndof);
    for (int j = 0; j < ndof; ++j) {
        Vec rhs(ndof, 0.0);
        rhs[j] = 1.0;
        Vec c = dense_solve(V, rhs);
        for (int m = 0; m < ndof; ++m) coef(j, m) = c[m];
    }
}

void TriVectorBasis::eval(double x, double y, std::array<double, 2>* vals) const {
    const VecSpan span{fam, k, ndof};
    std::array<double, 2> sv[8];
    span.eval((x - cx) / h, (y - cy) / h, sv);
    for (int j = 0; j < ndof; ++j) {
        double vx = 0.0, vy = 0.0;
        for (int m = 0; m < ndof; ++m) {
            vx += coef(j, m) * sv[m][0];
            vy += coef(j, m) * sv[m][1];
        }
        vals[j] = {vx, vy};
    }
}

void TriVectorBasis::dop(double x, double y, double* out) const {
    const VecSpan span{fam, k, ndof};
    double sd[8];
    span.dop((x - cx) / h, (y - cy) / h, 1.0 / h, sd);
    for (int j = 0; j < ndof; ++j) {
        double s = 0.0;
        for (int m = 0; m < ndof; ++m) s += coef(j, m) * sd[m];
        out[j] = s;
    }
}

} // namespace phfem
