#pragma once

#include "phfem/space.hpp"

namespace phfem {

enum class DiffOp { Dxx, Div, Grad };

/// Mass matrix with a constant positive coefficient.
CsrMatrix assemble_mass(const FunctionSpace& s, double coeff);

/// Differential pairing [D]_{im} = <chi_row^i, op chi_col^m>. op acts on the
/// column space (Dxx on Hermite, Div on RT, Grad on CG); the row space must
/// contain the image (DG1D, DG_{k-1}, NED_k).
CsrMatrix assemble_d(const FunctionSpace& row, const FunctionSpace& col, DiffOp op);

/// C[m][j] = <rot chi_cg^m, chi_rt^j> with rot v = (dv/dy, -dv/dx); rotations
/// of H1 functions are the divergence-free H(div) test fields used by the
/// weak curl-free diagnostic.
CsrMatrix assemble_rot_pairing(const FunctionSpace& cg, const FunctionSpace& rt);

/// Which trace operator a boundary space realizes. Beta traces carry the
/// outward-normal signs (-n df/dx, n f at beam endpoints; outward normal flux
/// for RT); Alpha traces are plain restrictions (f, df/dx; pointwise values).
enum class TraceKind { Alpha, Beta };

struct BoundarySpace {
    const FunctionSpace* parent = nullptr;
    int tag = 0;
    TraceKind kind = TraceKind::Alpha;
    int ntrace = 0;
    std::vector<int> parent_dof;
    Vec tsign; // entries of the trace matrix

    // 1D: unit trace data vectors per trace dof
    std::vector<std::array<double, 2>> chi;

    struct Facet {
        std::array<double, 2> p0, p1; // global lo -> hi
        double len = 0;
        int lc = -1;     // adjacent local cell of the parent space
        double oe = 1.0; // +1 when the global edge normal is outward
        std::vector<int> active;
    };
    std::vector<Facet> facets;

    /// Values of the unit trace functions of the active dofs of facet fi at
    /// parameters s[q]; out is (active.size() x s.size()).
    void eval_facet(int fi, const Vec& s, DenseMatrix& out) const;
};

BoundarySpace make_boundary_space(const FunctionSpace& s, int btag, TraceKind kind);

/// Signed boolean localization matrix (ntrace x ndof); (T c)_r is the outward
/// trace coefficient of dof r. DG spaces yield 0 rows.
CsrMatrix trace_matrix(const BoundarySpace& bs);
CsrMatrix trace_matrix(const FunctionSpace& s, int btag);

/// Gram matrix of two trace bases over a shared facet set:
/// Psi[l][k] = <chi_a^l, chi_b^k>.
CsrMatrix boundary_gram(const BoundarySpace& a, const BoundarySpace& b);

/// Psi of the gyrator pairing: bs1 = alpha traces from the Omega_2 side,
/// bs2 = beta traces from the Omega_1 side, both on the interface.
CsrMatrix psi_interface(const BoundarySpace& bs1, const BoundarySpace& bs2);

/// L = (Psi T_beta)^T T_alpha.
CsrMatrix interface_coupling(const CsrMatrix& psi, const CsrMatrix& t_beta, const CsrMatrix& t_alpha);

/// Piecewise polynomial space on a tagged polyline, used to expand external
/// boundary data: continuous P_deg (Dirichlet-type) or per-facet P_deg
/// (flux-type).
struct LineSpace {
    struct Facet {
        std::array<double, 2> p0, p1;
        double len = 0;
        std::vector<int> active;
    };
    std::vector<Facet> facets;
    bool continuous = true;
    int deg = 1;
    int ndof = 0;
    void eval_facet(int fi, const Vec& s, DenseMatrix& out) const;
};

LineSpace make_line_space(const Mesh2D& m, int tag, bool continuous, int deg);
CsrMatrix line_mass(const LineSpace& ls);
Vec line_load(const LineSpace& ls, const ScalarFn& f);

/// Boundary input matrices assembled directly from the trace pairing,
/// independently of the T/Psi factorization:
/// [B]_{mk} = <trace(phi_m), chi_data^k> over the tag.
CsrMatrix assemble_B(const BoundarySpace& test, const LineSpace& data);
CsrMatrix assemble_B(const BoundarySpace& test, const BoundarySpace& data);
/// 1D external ports: data basis is the two unit components at the endpoint.
CsrMatrix assemble_B_point(const BoundarySpace& test);

/// L2 distance of op(u_h) from its L2 projection onto the row space; zero when
/// the subcomplex inclusion op(V_col) in V_row holds. The distance is
/// integrated pointwise so exact inclusions measure at roundoff level.
struct SubcomplexCheck {
    const FunctionSpace* row;
    const FunctionSpace* col;
    DiffOp op;
    CsrMatrix D;
    LuFactorization mass_row;
    SubcomplexCheck(const FunctionSpace& row, const FunctionSpace& col, DiffOp op);
    double residual(const Vec& c) const;
};

} // namespace phfem
