#pragma once

#include <array>
#include <vector>

#include "phfem/linalg.hpp"

namespace phfem {

/// Quadrature on the reference interval [0,1].
struct QuadRule1D {
    Vec pts;
    Vec wts;
};

/// Quadrature on the reference triangle {x>=0, y>=0, x+y<=1}.
struct QuadRule2D {
    std::vector<std::array<double, 2>> pts;
    Vec wts;
};

/// Gauss-Legendre points on [0,1], exact for polynomials of degree 2n-1.
QuadRule1D gauss_legendre(int npts);

/// Interval rule exact for polynomials up to `order` (order <= 10).
QuadRule1D interval_rule(int order);

/// Triangle rule exact for total degree up to `order` (order <= 10), all
/// weights positive. Low orders use symmetric rules, higher orders a Duffy
/// tensor construction.
QuadRule2D triangle_rule(int order);

} // namespace phfem
