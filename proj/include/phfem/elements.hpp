#pragma once

#include <array>

#include "phfem/linalg.hpp"
#include "phfem/quadrature.hpp"

namespace phfem {

/// Cubic Hermite shape functions on the reference interval [0,1], ordered
/// (value-left, slope-left, value-right, slope-right). deriv in {0,1,2}.
/// Physical slope DOFs scale the slope functions by the element length.
std::array<double, 4> hermite_eval(double t, int deriv);

/// Equispaced Lagrange basis on [0,1] of degree k (k in {0,1,2}); out has k+1
/// entries. deriv in {0,1}.
void lagrange1d_eval(int k, double t, int deriv, double* out);

/// Nodal scalar basis of degree k on a physical triangle: k=0 constant,
/// k=1 vertex hats, k=2 vertices then edge midpoints (opposite-vertex order).
struct TriScalarBasis {
    std::array<std::array<double, 2>, 3> v;
    int k = 1;
    int ndof = 3;
    double area = 0.0;
    std::array<std::array<double, 2>, 3> glam{}; // gradients of barycentric coords

    TriScalarBasis(const std::array<std::array<double, 2>, 3>& verts, int degree);
    void bary(double x, double y, double* lam) const;
    void eval(double x, double y, double* vals) const;
    void grad(double x, double y, std::array<double, 2>* grads) const;
};

enum class VecFamily { RT, NED };

/// Raviart-Thomas / Nedelec (first kind) basis of degree k in {1,2} on a
/// physical triangle, dual to globally oriented edge moments (plus interior
/// moments for k=2). Local edge i is opposite vertex i; edge_lv[i] gives the
/// (local start, local end) vertex indices of that edge in global lo->hi
/// order, which fixes the moment orientation shared between neighbours.
struct TriVectorBasis {
    VecFamily fam;
    int k = 1;
    int ndof = 3;
    std::array<std::array<double, 2>, 3> v;
    std::array<std::array<int, 2>, 3> edge_lv;
    double cx = 0, cy = 0, h = 1; // monomial centering and scale
    DenseMatrix coef;             // ndof x nspan

    TriVectorBasis(VecFamily fam, int degree, const std::array<std::array<double, 2>, 3>& verts,
                   const std::array<std::array<int, 2>, 3>& edge_lv);

    void eval(double x, double y, std::array<double, 2>* vals) const;
    /// div for RT, scalar curl for NED, one value per basis function.
    void dop(double x, double y, double* out) const;
};

/// Number of DOFs: k per edge plus 2(k-1) interior.
inline int vec_basis_ndof(int k) { return 3 * k + 2 * (k - 1); }

} // namespace phfem
