#include "phfem/phcore.hpp"

#include <stdexcept>

namespace phfem {

PHSubsystem build_subsystem(int side, const CsrMatrix& M_alpha, const CsrMatrix& M_beta,
                            const CsrMatrix& D, const CsrMatrix& B_ext, const CsrMatrix& B_int,
                            const CsrMatrix& T_ext, const CsrMatrix& T_int) {
    if (side != 1 && side != 2) throw std::invalid_argument("build_subsystem: side must be 1 or 2");
    PHSubsystem s;
    s.side = side;
    s.n_alpha = M_alpha.nrows;
    s.n_beta = M_beta.nrows;
    s.n = s.n_alpha + s.n_beta;
    const bool d_ok = side == 1 ? (D.nrows == s.n_alpha && D.ncols == s.n_beta)
                                : (D.nrows == s.n_beta && D.ncols == s.n_alpha);
    if (!d_ok) throw std::invalid_argument("build_subsystem: D block dimensions inconsistent");

    BlockBuilder mb;
    mb.add_block(0, 0, M_alpha, 1.0);
    mb.add_block(s.n_alpha, s.n_alpha, M_beta, 1.0);
    s.M = mb.build(s.n, s.n);

    BlockBuilder jb;
    if (side == 1) {
        jb.add_block(0, s.n_alpha, D, -1.0);
        jb.add_block_transposed(s.n_alpha, 0, D, 1.0);
    } else {
        jb.add_block_transposed(0, s.n_alpha, D, -1.0);
        jb.add_block(s.n_alpha, 0, D, 1.0);
    }
    s.J = jb.build(s.n, s.n);

    // inputs enter the beta equation on side 1, the alpha equation on side 2
    const int row0 = side == 1 ? s.n_alpha : 0;
    const int traced_dim = side == 1 ? s.n_beta : s.n_alpha;
    if (B_ext.nrows != traced_dim || B_int.nrows != traced_dim ||
        T_ext.ncols != traced_dim || T_int.ncols != traced_dim)
        throw std::invalid_argument("build_subsystem: boundary matrices must act on the traced block");
    BlockBuilder bb;
    bb.add_block(row0, 0, B_ext, 1.0);
    s.B_ext = bb.build(s.n, B_ext.ncols);
    BlockBuilder bi;
    bi.add_block(row0, 0, B_int, 1.0);
    s.B_int = bi.build(s.n, B_int.ncols);
    BlockBuilder te;
    te.add_block(0, row0, T_ext, 1.0);
    s.T_ext = te.build(T_ext.nrows, s.n);
    BlockBuilder ti;
    ti.add_block(0, row0, T_int, 1.0);
    s.T_int = ti.build(T_int.nrows, s.n);
    return s;
}

Vec CoupledSystem::stack(const Vec& e1, const Vec& e2) const {
    Vec e(n);
    std::copy(e1.begin(), e1.end(), e.begin());
    std::copy(e2.begin(), e2.end(), e.begin() + n1);
    return e;
}

void CoupledSystem::split(const Vec& e, Vec& e1, Vec& e2) const {
    e1.assign(e.begin(), e.begin() + n1);
    e2.assign(e.begin() + n1, e.end());
}

CoupledSystem couple(PHSubsystem sub1, PHSubsystem sub2, const CsrMatrix& psi, double sigma) {
    if (sub1.side != 1 || sub2.side != 2) throw std::invalid_argument("couple: pass side-1 then side-2");
    if (psi.nrows != sub2.T_int.nrows || psi.ncols != sub1.T_int.nrows)
        throw std::invalid_argument("couple: Psi dimensions do not pair the interface trace spaces");
    CoupledSystem c;
    c.sigma = sigma;
    c.n1 = sub1.n;
    c.n2 = sub2.n;
    c.n = c.n1 + c.n2;
    // G = sigma (Psi T_beta1)^T T_alpha2, supported on the (beta1, alpha2) block
    const CsrMatrix L = csr_matmul(csr_matmul(psi, sub1.T_int).transposed(), sub2.T_int);
    BlockBuilder gb;
    gb.add_block(0, 0, L, sigma);
    c.G = gb.build(c.n1, c.n2);

    BlockBuilder mb;
    mb.add_block(0, 0, sub1.M, 1.0);
    mb.add_block(c.n1, c.n1, sub2.M, 1.0);
    c.M = mb.build(c.n, c.n);

    BlockBuilder jb;
    jb.add_block(0, 0, sub1.J, 1.0);
    jb.add_block(c.n1, c.n1, sub2.J, 1.0);
    jb.add_block(0, c.n1, c.G, 1.0);
    jb.add_block_transposed(c.n1, 0, c.G, -1.0);
    c.J = jb.build(c.n, c.n);

    BlockBuilder bb;
    bb.add_block(0, 0, sub1.B_ext, 1.0);
    bb.add_block(c.n1, sub1.B_ext.ncols, sub2.B_ext, 1.0);
    c.B = bb.build(c.n, sub1.B_ext.ncols + sub2.B_ext.ncols);

    BlockBuilder tb;
    tb.add_block(0, 0, sub1.T_ext, 1.0);
    tb.add_block(sub1.T_ext.nrows, c.n1, sub2.T_ext, 1.0);
    c.T = tb.build(sub1.T_ext.nrows + sub2.T_ext.nrows, c.n);

    c.psi = psi;
    c.sub1 = std::move(sub1);
    c.sub2 = std::move(sub2);
    return c;
}

} // namespace phfem
