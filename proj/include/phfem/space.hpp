#pragma once

#include <array>
#include <functional>
#include <map>
#include <vector>

#include "phfem/elements.hpp"
#include "phfem/mesh.hpp"

namespace phfem {

enum class Family { Hermite, DG1D, CG, DG, RT, NED };

using ScalarFn = std::function<double(double, double)>;
using VectorFn = std::function<std::array<double, 2>(double, double)>;

/// A finite element space over one tagged subdomain. Continuous families share
/// DOFs across interior facets, DG families never do. DOF numbering is fixed
/// by global entity order so assembled operators are deterministic.
struct FunctionSpace {
    const Mesh1D* m1 = nullptr;
    const Mesh2D* m2 = nullptr;
    int tag = 0;
    Family family = Family::CG;
    int degree = 1; // polynomial degree: Hermite 3, DG1D 1, CG/RT/NED k, DG k-1
    int ndof = 0;

    std::vector<int> cells;                  // global cell ids of the subdomain
    std::vector<std::vector<int>> cell_dofs; // per local cell, local order

    // 2D bookkeeping
    std::vector<std::array<std::array<int, 2>, 3>> cell_edge_lv; // local lo/hi vertex per local edge
    std::map<std::pair<int, int>, std::vector<int>> edge_cells;  // global edge -> local cells
    std::vector<int> vert_dof; // CG: global vertex -> dof, else empty
    std::map<std::pair<int, int>, int> edge_dof0;

    // 1D bookkeeping
    std::vector<int> sub_vertices; // ascending global vertex ids

    bool is_vector() const { return family == Family::RT || family == Family::NED; }
    int dofs_per_cell() const;
    std::array<std::array<double, 2>, 3> cell_verts(int lc) const;
    TriScalarBasis scalar_basis(int lc) const;
    TriVectorBasis vector_basis(int lc) const;

    // 1D cell geometry
    double cell_x0(int lc) const;
    double cell_h(int lc) const;
};

FunctionSpace build_space(const Mesh1D& m, int tag, Family family, int k);
FunctionSpace build_space(const Mesh2D& m, int tag, Family family, int k);

/// DOF-functional interpolation. 1D scalar spaces need the derivative for
/// Hermite slope DOFs.
Vec interpolate_1d(const FunctionSpace& s, const std::function<double(double)>& f,
                   const std::function<double(double)>& fprime);
Vec interpolate_scalar(const FunctionSpace& s, const ScalarFn& f);
Vec interpolate_vector(const FunctionSpace& s, const VectorFn& f);

/// Point evaluation of a discrete function inside local cell lc.
double eval_scalar(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y);
std::array<double, 2> eval_scalar_grad(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y);
std::array<double, 2> eval_vector(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y);
/// div (RT) or scalar curl (NED).
double eval_dop(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y);
/// 1D evaluation with derivative order 0..2.
double eval_1d(const FunctionSpace& s, const Vec& coeff, int lc, double x, int deriv);

} // namespace phfem
