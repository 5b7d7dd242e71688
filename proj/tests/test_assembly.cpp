#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "phfem/assembly.hpp"

using namespace phfem;

namespace {

bool cholesky_ok(const CsrMatrix& A) {
    DenseMatrix D = to_dense(A);
    try {
        cholesky_inplace(D);
    } catch (const NumericalError&) {
        return false;
    }
    return true;
}

int dense_rank(const CsrMatrix& A, double tol = 1e-10) {
    DenseMatrix D = to_dense(A);
    const int m = D.nrows, n = D.ncols;
    int rank = 0;
    for (int col = 0; col < n && rank < m; ++col) {
        int p = rank;
        for (int i = rank + 1; i < m; ++i)
            if (std::fabs(D(i, col)) > std::fabs(D(p, col))) p = i;
        if (std::fabs(D(p, col)) < tol) continue;
        for (int j = 0; j < n; ++j) std::swap(D(rank, j), D(p, j));
        for (int i = rank + 1; i < m; ++i) {
            const double f = D(i, col) / D(rank, col);
            for (int j = col; j < n; ++j) D(i, j) -= f * D(rank, j);
        }
        ++rank;
    }
    return rank;
}

double max_abs_diff(const CsrMatrix& A, const CsrMatrix& B) {
    double m = 0.0;
    const CsrMatrix D = csr_add(1.0, A, -1.0, B);
    for (double v : D.vals) m = std::max(m, std::fabs(v));
    return m;
}

} // namespace

TEST_SUITE_BEGIN("assembly");

TEST_CASE("space dimensions match the combinatorial formulas") {
    const Mesh1D m1 = build_interval_decomposed(1.0, 3, 3, 0.5);
    CHECK(build_space(m1, 1, Family::Hermite, 3).ndof == 8);
    CHECK(build_space(m1, 1, Family::DG1D, 1).ndof == 6);
    const Mesh2D sq1 = build_square_decomposed(1);
    CHECK(build_space(sq1, 1, Family::RT, 1).ndof == 3);
    CHECK(build_space(sq1, 1, Family::NED, 1).ndof == 3);
    CHECK(build_space(sq1, 1, Family::CG, 1).ndof == 3);
    CHECK(build_space(sq1, 1, Family::DG, 0).ndof == 1);
    CHECK(build_space(sq1, 2, Family::RT, 2).ndof == 8);
    CHECK(build_space(sq1, 2, Family::CG, 2).ndof == 6);
    const Mesh2D sq2 = build_square_decomposed(2);
    // Omega_1 of the 2x2 square: 4 triangles, 9 edges, 6 vertices
    CHECK(build_space(sq2, 1, Family::RT, 1).ndof == 9);
    CHECK(build_space(sq2, 1, Family::CG, 1).ndof == 6);
    CHECK(build_space(sq2, 1, Family::DG, 1).ndof == 12);
    CHECK(build_space(sq2, 1, Family::RT, 2).ndof == 2 * 9 + 2 * 4);
    CHECK_THROWS_AS(build_space(m1, 1, Family::RT, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_space(sq1, 1, Family::Hermite, 3), std::invalid_argument);
}

TEST_CASE("DG1 mass on a single cell is (h/6)[[2,1],[1,2]]") {
    const Mesh1D m = build_interval_decomposed(1.0, 1, 1, 0.4);
    const FunctionSpace dg = build_space(m, 2, Family::DG1D, 1); // one cell of length 0.4
    const CsrMatrix M = assemble_mass(dg, 1.0);
    const double h = 0.4;
    CHECK(M.at(0, 0) == doctest::Approx(2 * h / 6).epsilon(1e-14));
    CHECK(M.at(0, 1) == doctest::Approx(h / 6).epsilon(1e-14));
    CHECK(M.at(1, 1) == doctest::Approx(2 * h / 6).epsilon(1e-14));
    CHECK_THROWS_AS(assemble_mass(dg, -1.0), std::invalid_argument);
}

TEST_CASE("CG1 mass row sums integrate the subdomain area") {
    const Mesh2D sq = build_square_decomposed(4);
    const FunctionSpace cg = build_space(sq, 1, Family::CG, 1);
    const CsrMatrix M = assemble_mass(cg, 1.0);
    const Vec ones(cg.ndof, 1.0);
    CHECK(dot(ones, M.apply(ones)) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("DG0 mass is the cell area") {
    const Mesh2D sq = build_square_decomposed(1);
    const CsrMatrix M = assemble_mass(build_space(sq, 1, Family::DG, 0), 1.0);
    REQUIRE(M.nrows == 1);
    CHECK(M.at(0, 0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("all model mass matrices are SPD") {
    const Mesh1D m1 = build_interval_decomposed(1.0, 3, 3, 0.5);
    const Mesh2D sq = build_square_decomposed(2);
    CHECK(cholesky_ok(assemble_mass(build_space(m1, 1, Family::Hermite, 3), 1.0)));
    CHECK(cholesky_ok(assemble_mass(build_space(m1, 2, Family::DG1D, 1), 2.5)));
    for (int k : {1, 2}) {
        CHECK(cholesky_ok(assemble_mass(build_space(sq, 1, Family::RT, k), 1.0)));
        CHECK(cholesky_ok(assemble_mass(build_space(sq, 2, Family::NED, k), 1.0)));
        CHECK(cholesky_ok(assemble_mass(build_space(sq, 2, Family::CG, k), 1.0)));
        CHECK(cholesky_ok(assemble_mass(build_space(sq, 1, Family::DG, k - 1), 1.0)));
    }
}

TEST_CASE("D_div on the single-triangle subdomain carries unit signed fluxes") {
    const Mesh2D sq = build_square_decomposed(1);
    const FunctionSpace dg = build_space(sq, 1, Family::DG, 0);
    const FunctionSpace rt = build_space(sq, 1, Family::RT, 1);
    const CsrMatrix D = assemble_d(dg, rt, DiffOp::Div);
    REQUIRE(D.nrows == 1);
    REQUIRE(D.ncols == 3);
    for (int j = 0; j < 3; ++j) CHECK(std::fabs(D.at(0, j)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("D_grad annihilates constants") {
    const Mesh2D sq = build_square_decomposed(3);
    for (int k : {1, 2}) {
        const FunctionSpace ned = build_space(sq, 2, Family::NED, k);
        const FunctionSpace cg = build_space(sq, 2, Family::CG, k);
        const CsrMatrix D = assemble_d(ned, cg, DiffOp::Grad);
        const Vec c(cg.ndof, 3.7);
        CHECK(norm_inf(D.apply(c)) <= 1e-13);
    }
    CHECK_THROWS_AS(assemble_d(build_space(sq, 2, Family::CG, 1), build_space(sq, 2, Family::NED, 1),
                               DiffOp::Grad),
                    std::invalid_argument);
}

TEST_CASE("D_dxx matches the hand-assembled symbolic element integrals") {
    // uniform 2-cell mesh, h = 1/2; per-element matrix over
    // (dg_L, dg_R) x (val_L, slope_L, val_R, slope_R) is
    // [[-1/h, -1, 1/h, 0], [1/h, 0, -1/h, 1]]
    const Mesh1D m = build_interval_decomposed(2.0, 2, 2, 1.0);
    const FunctionSpace dg = build_space(m, 1, Family::DG1D, 1);
    const FunctionSpace her = build_space(m, 1, Family::Hermite, 3);
    const CsrMatrix D = assemble_d(dg, her, DiffOp::Dxx);
    const double h = 0.5;
    const double ref[2][4] = {{-1 / h, -1, 1 / h, 0}, {1 / h, 0, -1 / h, 1}};
    for (int cell = 0; cell < 2; ++cell)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(D.at(2 * cell + i, 2 * cell + j) == doctest::Approx(ref[i][j]).epsilon(1e-13));
}

TEST_CASE("trace matrices localize boundary DOFs") {
    const Mesh1D m = build_interval_decomposed(1.0, 2, 2, 0.5);
    const FunctionSpace her1 = build_space(m, 1, Family::Hermite, 3); // on [0.5, 1], 6 dofs
    const CsrMatrix Tg1 = trace_matrix(her1, kGamma1);
    REQUIRE(Tg1.nrows == 2);
    REQUIRE(Tg1.ncols == her1.ndof);
    CHECK(Tg1.at(0, her1.ndof - 2) == 1.0);
    CHECK(Tg1.at(1, her1.ndof - 1) == 1.0);
    CHECK(Tg1.nnz() == 2);

    const FunctionSpace dg = build_space(m, 1, Family::DG1D, 1);
    CHECK(trace_matrix(dg, kGamma1).nrows == 0); // DG has no trace DOFs

    const Mesh2D sq = build_square_decomposed(2);
    const FunctionSpace rt = build_space(sq, 1, Family::RT, 1);
    const CsrMatrix Ti = trace_matrix(rt, kInterface);
    REQUIRE(Ti.nrows == 2);
    REQUIRE(Ti.ncols == rt.ndof);
    for (int r = 0; r < 2; ++r) {
        CHECK(Ti.offsets[r + 1] - Ti.offsets[r] == 1);
        CHECK(std::fabs(Ti.vals[Ti.offsets[r]]) == 1.0); // orientation-signed boolean
    }
}

TEST_CASE("beam interface Psi pairs value and slope traces with unit magnitude") {
    const Mesh1D m = build_interval_decomposed(1.0, 3, 3, 0.5);
    const FunctionSpace b1 = build_space(m, 1, Family::Hermite, 3);
    const FunctionSpace a2 = build_space(m, 2, Family::Hermite, 3);
    const BoundarySpace bs1 = make_boundary_space(a2, kInterface, TraceKind::Alpha);
    const BoundarySpace bs2 = make_boundary_space(b1, kInterface, TraceKind::Beta);
    const CsrMatrix psi = psi_interface(bs1, bs2);
    REQUIRE(psi.nrows == 2);
    REQUIRE(psi.ncols == 2);
    // derived by evaluating the Hermite trace functionals at the interface
    CHECK(psi.at(0, 0) == doctest::Approx(0.0));
    CHECK(psi.at(0, 1) == doctest::Approx(1.0));
    CHECK(psi.at(1, 0) == doctest::Approx(-1.0));
    CHECK(psi.at(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("wave interface Psi on the unit cell: oracle quadrature values") {
    const Mesh2D sq = build_square_decomposed(1);
    const FunctionSpace b1 = build_space(sq, 1, Family::RT, 1);
    const FunctionSpace a2 = build_space(sq, 2, Family::CG, 1);
    const BoundarySpace bs1 = make_boundary_space(a2, kInterface, TraceKind::Alpha);
    const BoundarySpace bs2 = make_boundary_space(b1, kInterface, TraceKind::Beta);
    const CsrMatrix psi = psi_interface(bs1, bs2);
    REQUIRE(psi.nrows == 2); // CG hats with nonzero diagonal trace
    REQUIRE(psi.ncols == 1); // one RT interface flux
    // oracle: the unit-outward-flux RT trace is 1/|e| and each hat integrates
    // to |e|/2 over the diagonal, so both entries are 1/2
    CHECK(psi.at(0, 0) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(psi.at(1, 0) == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("Psi of a trace space with itself is an SPD Gram matrix") {
    const Mesh2D sq = build_square_decomposed(3);
    const FunctionSpace a2 = build_space(sq, 2, Family::CG, 1);
    const BoundarySpace bs = make_boundary_space(a2, kInterface, TraceKind::Alpha);
    const CsrMatrix G = boundary_gram(bs, bs);
    CHECK(cholesky_ok(G));
    CHECK(max_abs_diff(G, G.transposed()) <= 1e-15);
}

TEST_CASE("B factorization identity on the beam interface") {
    const Mesh1D m = build_interval_decomposed(1.0, 3, 3, 0.5);
    const FunctionSpace b1 = build_space(m, 1, Family::Hermite, 3);
    const FunctionSpace a2 = build_space(m, 2, Family::Hermite, 3);
    const BoundarySpace bsb = make_boundary_space(b1, kInterface, TraceKind::Beta);
    const BoundarySpace bsa = make_boundary_space(a2, kInterface, TraceKind::Alpha);
    const CsrMatrix psi = psi_interface(bsa, bsb);
    const CsrMatrix Bb = assemble_B(bsb, bsa); // direct pairing route
    const CsrMatrix Ba = assemble_B(bsa, bsb);
    const CsrMatrix Bb_fact = csr_matmul(trace_matrix(bsb).transposed(), psi.transposed());
    const CsrMatrix Ba_fact = csr_matmul(trace_matrix(bsa).transposed(), psi);
    CHECK(max_abs_diff(Bb, Bb_fact) <= 1e-14);
    CHECK(max_abs_diff(Ba, Ba_fact) <= 1e-14);
}

TEST_CASE("B factorization identity on the wave interface, n=2") {
    for (int k : {1, 2}) {
        const Mesh2D sq = build_square_decomposed(2);
        const FunctionSpace b1 = build_space(sq, 1, Family::RT, k);
        const FunctionSpace a2 = build_space(sq, 2, Family::CG, k);
        const BoundarySpace bsb = make_boundary_space(b1, kInterface, TraceKind::Beta);
        const BoundarySpace bsa = make_boundary_space(a2, kInterface, TraceKind::Alpha);
        const CsrMatrix psi = psi_interface(bsa, bsb);
        const CsrMatrix Bb = assemble_B(bsb, bsa);
        const CsrMatrix Ba = assemble_B(bsa, bsb);
        const CsrMatrix Bb_fact = csr_matmul(trace_matrix(bsb).transposed(), psi.transposed());
        const CsrMatrix Ba_fact = csr_matmul(trace_matrix(bsa).transposed(), psi);
        CHECK(max_abs_diff(Bb, Bb_fact) <= 1e-13);
        CHECK(max_abs_diff(Ba, Ba_fact) <= 1e-13);
    }
}

TEST_CASE("external beam B on Gamma_1 has exactly the two endpoint rows") {
    const Mesh1D m = build_interval_decomposed(1.0, 3, 3, 0.5);
    const FunctionSpace b1 = build_space(m, 1, Family::Hermite, 3);
    const BoundarySpace bs = make_boundary_space(b1, kGamma1, TraceKind::Beta);
    const CsrMatrix B = assemble_B_point(bs);
    REQUIRE(B.nrows == 8);
    REQUIRE(B.ncols == 2);
    int nonzero_rows = 0;
    for (int i = 0; i < B.nrows; ++i)
        if (B.offsets[i + 1] > B.offsets[i]) ++nonzero_rows;
    CHECK(nonzero_rows == 2);
    // IBP pairing at the right endpoint: the value DOF multiplies the slope
    // datum with +1, the slope DOF multiplies the value datum with -1
    CHECK(B.at(6, 1) == doctest::Approx(1.0));
    CHECK(B.at(7, 0) == doctest::Approx(-1.0));
}

TEST_CASE("interface coupling L: beam block structure and wave rank") {
    const Mesh1D m = build_interval_decomposed(1.0, 3, 3, 0.5);
    const FunctionSpace b1 = build_space(m, 1, Family::Hermite, 3);
    const FunctionSpace a2 = build_space(m, 2, Family::Hermite, 3);
    const BoundarySpace bsb = make_boundary_space(b1, kInterface, TraceKind::Beta);
    const BoundarySpace bsa = make_boundary_space(a2, kInterface, TraceKind::Alpha);
    const CsrMatrix psi = psi_interface(bsa, bsb);
    const CsrMatrix L = interface_coupling(psi, trace_matrix(bsb), trace_matrix(bsa));
    REQUIRE(L.nrows == 8);
    REQUIRE(L.ncols == 8);
    CHECK(L.nnz() == 2);
    // interface vertex is the first vertex of Omega_1 and the last of Omega_2
    CHECK(L.at(0, 7) == doctest::Approx(-1.0));
    CHECK(L.at(1, 6) == doctest::Approx(1.0));

    const Mesh2D sq = build_square_decomposed(1);
    const FunctionSpace wb1 = build_space(sq, 1, Family::RT, 1);
    const FunctionSpace wa2 = build_space(sq, 2, Family::CG, 1);
    const BoundarySpace wbs = make_boundary_space(wb1, kInterface, TraceKind::Beta);
    const BoundarySpace was = make_boundary_space(wa2, kInterface, TraceKind::Alpha);
    const CsrMatrix wpsi = psi_interface(was, wbs);
    const CsrMatrix wl = interface_coupling(wpsi, trace_matrix(wbs), trace_matrix(was));
    CHECK(dense_rank(wl) == 1);

    const CsrMatrix zero_psi = csr_from_triplets(wpsi.nrows, wpsi.ncols, {});
    CHECK(interface_coupling(zero_psi, trace_matrix(wbs), trace_matrix(was)).nnz() == 0);
}

TEST_CASE("subcomplex residuals vanish on 100 random fields per inclusion") {
    const Mesh1D m = build_interval_decomposed(1.0, 2, 2, 0.5);
    const FunctionSpace dg = build_space(m, 1, Family::DG1D, 1);
    const FunctionSpace her = build_space(m, 1, Family::Hermite, 3);
    const SubcomplexCheck dxx(dg, her, DiffOp::Dxx);
    for (int trial = 0; trial < 100; ++trial)
        CHECK(dxx.residual(oracle::random_vec(her.ndof)) <= 1e-12);

    const Mesh2D sq = build_square_decomposed(2);
    for (int k : {1, 2}) {
        const FunctionSpace dgk = build_space(sq, 1, Family::DG, k - 1);
        const FunctionSpace rt = build_space(sq, 1, Family::RT, k);
        const SubcomplexCheck div(dgk, rt, DiffOp::Div);
        const FunctionSpace ned = build_space(sq, 2, Family::NED, k);
        const FunctionSpace cg = build_space(sq, 2, Family::CG, k);
        const SubcomplexCheck grad(ned, cg, DiffOp::Grad);
        for (int trial = 0; trial < 100; ++trial) {
            CHECK(div.residual(oracle::random_vec(rt.ndof)) <= 1e-12);
            CHECK(grad.residual(oracle::random_vec(cg.ndof)) <= 1e-12);
        }
    }
}

TEST_CASE("vector interpolation reproduces fields inside the space") {
    const Mesh2D sq = build_square_decomposed(2);
    const FunctionSpace rt = build_space(sq, 1, Family::RT, 1);
    const auto lin = [](double x, double y) {
        return std::array<double, 2>{0.3 + 0.5 * x, 0.1 + 0.5 * y}; // in RT_1
    };
    const Vec c = interpolate_vector(rt, lin);
    for (int lc = 0; lc < static_cast<int>(rt.cells.size()); ++lc) {
        const auto v = rt.cell_verts(lc);
        const double px = (v[0][0] + v[1][0] + v[2][0]) / 3.0;
        const double py = (v[0][1] + v[1][1] + v[2][1]) / 3.0;
        const auto got = eval_vector(rt, c, lc, px, py);
        const auto want = lin(px, py);
        CHECK(got[0] == doctest::Approx(want[0]).epsilon(1e-12));
        CHECK(got[1] == doctest::Approx(want[1]).epsilon(1e-12));
    }
}

TEST_SUITE_END();
