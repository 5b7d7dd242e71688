#include "phfem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace phfem {

QuadRule1D gauss_legendre(int npts) {
    if (npts < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
    QuadRule1D r;
    r.pts.resize(npts);
    r.wts.resize(npts);
    const int m = (npts + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n over [-1,1], Chebyshev initial guess
        double x = std::cos(M_PI * (i + 0.75) / (npts + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < npts; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = npts * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.pts[i] = 0.5 * (1.0 - x); // map to [0,1], mirrored below
        r.wts[i] = 0.5 * w;
        r.pts[npts - 1 - i] = 0.5 * (1.0 + x);
        r.wts[npts - 1 - i] = 0.5 * w;
    }
    return r;
}

QuadRule1D interval_rule(int order) {
    if (order < 0 || order > 10) throw std::invalid_argument("interval_rule: order out of range");
    return gauss_legendre(order / 2 + 1);
}

QuadRule2D triangle_rule(int order) {
    if (order < 0 || order > 10) throw std::invalid_argument("triangle_rule: order out of range");
    QuadRule2D r;
    if (order <= 1) {
        r.pts = {{1.0 / 3.0, 1.0 / 3.0}};
        r.wts = {0.5};
        return r;
    }
    if (order == 2) {
        r.pts = {{1.0 / 6.0, 1.0 / 6.0}, {2.0 / 3.0, 1.0 / 6.0}, {1.0 / 6.0, 2.0 / 3.0}};
        r.wts = {1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0};
        return r;
    }
    // Duffy map of a Gauss product rule: (u, v) -> (u, v(1-u)), Jacobian 1-u.
    // x^a y^b with a+b <= d needs u-degree d+1 and v-degree d.
    const QuadRule1D gu = gauss_legendre((order + 1) / 2 + 1);
    const QuadRule1D gv = gauss_legendre(order / 2 + 1);
    for (size_t i = 0; i < gu.pts.size(); ++i)
        for (size_t j = 0; j < gv.pts.size(); ++j) {
            const double u = gu.pts[i], v = gv.pts[j];
            r.pts.push_back({u, v * (1.0 - u)});
            r.wts.push_back(gu.wts[i] * gv.wts[j] * (1.0 - u));
        }
    return r;
}

} // namespace phfem
