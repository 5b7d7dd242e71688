#include "phfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phfem {

namespace {

std::pair<int, int> ekey(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

void check_same_subdomain(const FunctionSpace& a, const FunctionSpace& b, const char* who) {
    if (a.m1 != b.m1 || a.m2 != b.m2 || a.tag != b.tag || a.cells != b.cells)
        throw std::invalid_argument(std::string(who) + ": spaces must live on the same subdomain");
}

// physical Hermite basis values on a cell of length h (slope functions carry h)
std::array<double, 4> hermite_phys(double t, double h, int deriv) {
    auto v = hermite_eval(t, deriv);
    const double hs = std::pow(h, -deriv);
    return {hs * v[0], h * hs * v[1], hs * v[2], h * hs * v[3]};
}

} // namespace

CsrMatrix assemble_mass(const FunctionSpace& s, double coeff) {
    if (!(coeff > 0.0)) throw std::invalid_argument("assemble_mass: coefficient must be positive");
    std::vector<Triplet> trips;
    if (s.m1) {
        const QuadRule1D qr = gauss_legendre(4);
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            const double h = s.cell_h(lc);
            const int nd = s.dofs_per_cell();
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double t = qr.pts[q];
                double vals[4];
                if (s.family == Family::Hermite) {
                    const auto hv = hermite_phys(t, h, 0);
                    std::copy(hv.begin(), hv.end(), vals);
                } else {
                    lagrange1d_eval(1, t, 0, vals);
                }
                const double w = coeff * qr.wts[q] * h;
                for (int i = 0; i < nd; ++i)
                    for (int j = 0; j < nd; ++j)
                        trips.push_back({s.cell_dofs[lc][i], s.cell_dofs[lc][j], w * vals[i] * vals[j]});
            }
        }
        return csr_from_triplets(s.ndof, s.ndof, trips);
    }
    const QuadRule2D qr = triangle_rule(2 * std::max(1, s.degree) + 2);
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const int nd = s.dofs_per_cell();
        const auto v = s.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        if (s.is_vector()) {
            const TriVectorBasis basis = s.vector_basis(lc);
            std::array<double, 2> vals[8];
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
                const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
                basis.eval(px, py, vals);
                const double w = coeff * qr.wts[q] * jac;
                for (int i = 0; i < nd; ++i)
                    for (int j = 0; j < nd; ++j)
                        trips.push_back({s.cell_dofs[lc][i], s.cell_dofs[lc][j],
                                         w * (vals[i][0] * vals[j][0] + vals[i][1] * vals[j][1])});
            }
        } else {
            const TriScalarBasis basis = s.scalar_basis(lc);
            double vals[6];
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
                const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
                basis.eval(px, py, vals);
                const double w = coeff * qr.wts[q] * jac;
                for (int i = 0; i < nd; ++i)
                    for (int j = 0; j < nd; ++j)
                        trips.push_back({s.cell_dofs[lc][i], s.cell_dofs[lc][j], w * vals[i] * vals[j]});
            }
        }
    }
    return csr_from_triplets(s.ndof, s.ndof, trips);
}

CsrMatrix assemble_d(const FunctionSpace& row, const FunctionSpace& col, DiffOp op) {
    check_same_subdomain(row, col, "assemble_d");
    std::vector<Triplet> trips;
    if (op == DiffOp::Dxx) {
        if (col.family != Family::Hermite || row.family != Family::DG1D)
            throw std::invalid_argument("assemble_d: Dxx needs DG1D rows and Hermite columns");
        const QuadRule1D qr = gauss_legendre(3);
        for (int lc = 0; lc < static_cast<int>(row.cells.size()); ++lc) {
            const double h = col.cell_h(lc);
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double t = qr.pts[q];
                double dg[2];
                lagrange1d_eval(1, t, 0, dg);
                const auto d2 = hermite_phys(t, h, 2);
                const double w = qr.wts[q] * h;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 4; ++j)
                        trips.push_back({row.cell_dofs[lc][i], col.cell_dofs[lc][j], w * dg[i] * d2[j]});
            }
        }
        return csr_from_triplets(row.ndof, col.ndof, trips);
    }
    if (op == DiffOp::Div && (row.family != Family::DG || col.family != Family::RT))
        throw std::invalid_argument("assemble_d: Div needs DG rows and RT columns");
    if (op == DiffOp::Grad && (row.family != Family::NED || col.family != Family::CG))
        throw std::invalid_argument("assemble_d: Grad needs NED rows and CG columns");
    const QuadRule2D qr = triangle_rule(4);
    for (int lc = 0; lc < static_cast<int>(row.cells.size()); ++lc) {
        const auto v = row.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        const int nr = row.dofs_per_cell(), nc = col.dofs_per_cell();
        if (op == DiffOp::Div) {
            const TriScalarBasis rb = row.scalar_basis(lc);
            const TriVectorBasis cb = col.vector_basis(lc);
            double rv[6], dv[8];
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
                const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
                rb.eval(px, py, rv);
                cb.dop(px, py, dv);
                const double w = qr.wts[q] * jac;
                for (int i = 0; i < nr; ++i)
                    for (int j = 0; j < nc; ++j)
                        trips.push_back({row.cell_dofs[lc][i], col.cell_dofs[lc][j], w * rv[i] * dv[j]});
            }
        } else {
            const TriVectorBasis rb = row.vector_basis(lc);
            const TriScalarBasis cb = col.scalar_basis(lc);
            std::array<double, 2> rv[8], cg[6];
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
                const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
                rb.eval(px, py, rv);
                cb.grad(px, py, cg);
                const double w = qr.wts[q] * jac;
                for (int i = 0; i < nr; ++i)
                    for (int j = 0; j < nc; ++j)
                        trips.push_back({row.cell_dofs[lc][i], col.cell_dofs[lc][j],
                                         w * (rv[i][0] * cg[j][0] + rv[i][1] * cg[j][1])});
            }
        }
    }
    return csr_from_triplets(row.ndof, col.ndof, trips);
}


CsrMatrix assemble_rot_pairing(const FunctionSpace& cg, const FunctionSpace& rt) {
    check_same_subdomain(cg, rt, "assemble_rot_pairing");
    if (cg.family != Family::CG || rt.family != Family::RT)
        throw std::invalid_argument("assemble_rot_pairing: needs CG rows and RT columns");
    std::vector<Triplet> trips;
    const QuadRule2D qr = triangle_rule(4);
    for (int lc = 0; lc < static_cast<int>(cg.cells.size()); ++lc) {
        const auto v = cg.cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        const TriScalarBasis rb = cg.scalar_basis(lc);
        const TriVectorBasis cb = rt.vector_basis(lc);
        std::array<double, 2> g[6], rv[8];
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
            const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
            rb.grad(px, py, g);
            cb.eval(px, py, rv);
            const double w = qr.wts[q] * jac;
            for (int i = 0; i < rb.ndof; ++i) {
                // rot v = (dv/dy, -dv/dx)
                const double rx = g[i][1], ry = -g[i][0];
                for (int j = 0; j < cb.ndof; ++j)
                    trips.push_back({cg.cell_dofs[lc][i], rt.cell_dofs[lc][j],
                                     w * (rx * rv[j][0] + ry * rv[j][1])});
            }
        }
    }
    return csr_from_triplets(cg.ndof, rt.ndof, trips);
}

BoundarySpace make_boundary_space(const FunctionSpace& s, int btag, TraceKind kind) {
    BoundarySpace bs;
    bs.parent = &s;
    bs.tag = btag;
    bs.kind = kind;
    if (s.family == Family::DG1D || s.family == Family::DG || s.family == Family::NED) {
        bs.ntrace = 0; // no trace DOFs in the chosen causality split
        return bs;
    }
    if (s.m1) {
        const int vtx = facets_by_tag(*s.m1, btag)[0];
        const auto it = std::find(s.sub_vertices.begin(), s.sub_vertices.end(), vtx);
        if (it == s.sub_vertices.end()) {
            bs.ntrace = 0; // tag on the other subdomain
            return bs;
        }
        const int li = static_cast<int>(it - s.sub_vertices.begin());
        const double n = li == static_cast<int>(s.sub_vertices.size()) - 1 ? 1.0 : -1.0;
        bs.ntrace = 2;
        bs.parent_dof = {2 * li, 2 * li + 1};
        bs.tsign = {1.0, 1.0};
        if (kind == TraceKind::Beta) {
            bs.chi = {{{0.0, n}}, {{-n, 0.0}}};
        } else {
            bs.chi = {{{1.0, 0.0}}, {{0.0, 1.0}}};
        }
        return bs;
    }
    const auto facets = facets_by_tag(*s.m2, btag);
    std::vector<int> dof_to_trace(s.ndof, -1);
    for (const auto& fe : facets) {
        const auto key = ekey(fe.v0, fe.v1);
        const auto it = s.edge_cells.find(key);
        if (it == s.edge_cells.end()) continue; // facet on the other subdomain
        BoundarySpace::Facet f;
        const int vlo = std::min(fe.v0, fe.v1), vhi = std::max(fe.v0, fe.v1);
        f.p0 = s.m2->vertices[vlo];
        f.p1 = s.m2->vertices[vhi];
        f.len = std::hypot(f.p1[0] - f.p0[0], f.p1[1] - f.p0[1]);
        f.lc = it->second[0];
        const auto cv = s.cell_verts(f.lc);
        const double cxm = (cv[0][0] + cv[1][0] + cv[2][0]) / 3.0;
        const double cym = (cv[0][1] + cv[1][1] + cv[2][1]) / 3.0;
        const double ngx = (f.p1[1] - f.p0[1]) / f.len, ngy = -(f.p1[0] - f.p0[0]) / f.len;
        const double mx = 0.5 * (f.p0[0] + f.p1[0]), my = 0.5 * (f.p0[1] + f.p1[1]);
        f.oe = ((mx - cxm) * ngx + (my - cym) * ngy) > 0 ? 1.0 : -1.0;
        std::vector<std::pair<int, double>> pdofs; // parent dof, sign
        if (s.family == Family::CG) {
            pdofs.push_back({s.vert_dof[vlo], 1.0});
            pdofs.push_back({s.vert_dof[vhi], 1.0});
            if (s.degree == 2) pdofs.push_back({s.edge_dof0.at(key), 1.0});
        } else if (s.family == Family::RT) {
            const int d0 = s.edge_dof0.at(key);
            for (int j = 0; j < s.degree; ++j) pdofs.push_back({d0 + j, f.oe});
        } else {
            throw std::invalid_argument("make_boundary_space: family has no boundary trace here");
        }
        for (const auto& [pd, sign] : pdofs) {
            int r = dof_to_trace[pd];
            if (r < 0) {
                r = bs.ntrace++;
                dof_to_trace[pd] = r;
                bs.parent_dof.push_back(pd);
                bs.tsign.push_back(sign);
            }
            f.active.push_back(r);
        }
        bs.facets.push_back(std::move(f));
    }
    return bs;
}

void BoundarySpace::eval_facet(int fi, const Vec& s, DenseMatrix& out) const {
    const auto& f = facets[fi];
    const auto& fs = *parent;
    const int na = static_cast<int>(f.active.size());
    const int nq = static_cast<int>(s.size());
    out = DenseMatrix(na, nq);
    // local indices of the active parent dofs within the adjacent cell
    std::vector<int> loc(na, -1);
    for (int a = 0; a < na; ++a) {
        const int pd = parent_dof[f.active[a]];
        const auto& cd = fs.cell_dofs[f.lc];
        for (size_t j = 0; j < cd.size(); ++j)
            if (cd[j] == pd) loc[a] = static_cast<int>(j);
        if (loc[a] < 0) throw std::logic_error("eval_facet: active dof not on adjacent cell");
    }
    const double ngx = (f.p1[1] - f.p0[1]) / f.len, ngy = -(f.p1[0] - f.p0[0]) / f.len;
    if (fs.family == Family::CG) {
        const TriScalarBasis basis = fs.scalar_basis(f.lc);
        double vals[6];
        for (int q = 0; q < nq; ++q) {
            const double px = f.p0[0] + s[q] * (f.p1[0] - f.p0[0]);
            const double py = f.p0[1] + s[q] * (f.p1[1] - f.p0[1]);
            basis.eval(px, py, vals);
            for (int a = 0; a < na; ++a) out(a, q) = vals[loc[a]];
        }
    } else {
        const TriVectorBasis basis = fs.vector_basis(f.lc);
        std::array<double, 2> vals[8];
        for (int q = 0; q < nq; ++q) {
            const double px = f.p0[0] + s[q] * (f.p1[0] - f.p0[0]);
            const double py = f.p0[1] + s[q] * (f.p1[1] - f.p0[1]);
            basis.eval(px, py, vals);
            for (int a = 0; a < na; ++a) out(a, q) = vals[loc[a]][0] * ngx + vals[loc[a]][1] * ngy;
        }
    }
}

CsrMatrix trace_matrix(const BoundarySpace& bs) {
    std::vector<Triplet> trips;
    for (int r = 0; r < bs.ntrace; ++r) trips.push_back({r, bs.parent_dof[r], bs.tsign[r]});
    return csr_from_triplets(bs.ntrace, bs.parent->ndof, trips);
}

CsrMatrix trace_matrix(const FunctionSpace& s, int btag) {
    return trace_matrix(make_boundary_space(s, btag, TraceKind::Alpha));
}

CsrMatrix boundary_gram(const BoundarySpace& a, const BoundarySpace& b) {
    std::vector<Triplet> trips;
    if (a.parent->m1) {
        if (b.chi.size() != b.parent_dof.size() || a.chi.size() != a.parent_dof.size())
            throw std::invalid_argument("boundary_gram: point trace spaces required");
        for (int l = 0; l < a.ntrace; ++l)
            for (int k = 0; k < b.ntrace; ++k)
                trips.push_back({l, k, a.chi[l][0] * b.chi[k][0] + a.chi[l][1] * b.chi[k][1]});
        return csr_from_triplets(a.ntrace, b.ntrace, trips);
    }
    if (a.facets.size() != b.facets.size())
        throw std::invalid_argument("boundary_gram: facet mismatch between trace spaces");
    const QuadRule1D qr = gauss_legendre(4);
    DenseMatrix va, vb;
    for (size_t fi = 0; fi < a.facets.size(); ++fi) {
        const auto& fa = a.facets[fi];
        const auto& fb = b.facets[fi];
        if (std::fabs(fa.p0[0] - fb.p0[0]) + std::fabs(fa.p0[1] - fb.p0[1]) +
                std::fabs(fa.p1[0] - fb.p1[0]) + std::fabs(fa.p1[1] - fb.p1[1]) > 1e-14)
            throw std::invalid_argument("boundary_gram: facet geometry mismatch");
        a.eval_facet(static_cast<int>(fi), qr.pts, va);
        b.eval_facet(static_cast<int>(fi), qr.pts, vb);
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double w = qr.wts[q] * fa.len;
            for (size_t i = 0; i < fa.active.size(); ++i)
                for (size_t j = 0; j < fb.active.size(); ++j)
                    trips.push_back({fa.active[i], fb.active[j],
                                     w * va(static_cast<int>(i), static_cast<int>(q)) *
                                         vb(static_cast<int>(j), static_cast<int>(q))});
        }
    }
    return csr_from_triplets(a.ntrace, b.ntrace, trips);
}

CsrMatrix psi_interface(const BoundarySpace& bs1, const BoundarySpace& bs2) {
    return boundary_gram(bs1, bs2);
}

CsrMatrix interface_coupling(const CsrMatrix& psi, const CsrMatrix& t_beta, const CsrMatrix& t_alpha) {
    return csr_matmul(csr_matmul(psi, t_beta).transposed(), t_alpha);
}

LineSpace make_line_space(const Mesh2D& m, int tag, bool continuous, int deg) {
    if (deg < 0 || deg > 2) throw std::invalid_argument("make_line_space: unsupported degree");
    LineSpace ls;
    ls.continuous = continuous;
    ls.deg = deg;
    std::map<int, int> vdof;
    for (const auto& fe : facets_by_tag(m, tag)) {
        LineSpace::Facet f;
        const int vlo = std::min(fe.v0, fe.v1), vhi = std::max(fe.v0, fe.v1);
        f.p0 = m.vertices[vlo];
        f.p1 = m.vertices[vhi];
        f.len = std::hypot(f.p1[0] - f.p0[0], f.p1[1] - f.p0[1]);
        if (continuous) {
            // nodes ordered lo, (mid,) hi to match lagrange1d_eval
            const auto vget = [&](int v) {
                auto it = vdof.find(v);
                if (it == vdof.end()) it = vdof.emplace(v, ls.ndof++).first;
                return it->second;
            };
            f.active.push_back(vget(vlo));
            if (deg == 2) f.active.push_back(ls.ndof++);
            f.active.push_back(vget(vhi));
        } else {
            for (int j = 0; j <= deg; ++j) f.active.push_back(ls.ndof++);
        }
        ls.facets.push_back(std::move(f));
    }
    return ls;
}

void LineSpace::eval_facet(int fi, const Vec& s, DenseMatrix& out) const {
    const int na = static_cast<int>(facets[fi].active.size());
    out = DenseMatrix(na, static_cast<int>(s.size()));
    double vals[3];
    for (size_t q = 0; q < s.size(); ++q) {
        lagrange1d_eval(na - 1, s[q], 0, vals);
        for (int a = 0; a < na; ++a) out(a, static_cast<int>(q)) = vals[a];
    }
}

CsrMatrix line_mass(const LineSpace& ls) {
    std::vector<Triplet> trips;
    const QuadRule1D qr = gauss_legendre(4);
    DenseMatrix v;
    for (size_t fi = 0; fi < ls.facets.size(); ++fi) {
        const auto& f = ls.facets[fi];
        ls.eval_facet(static_cast<int>(fi), qr.pts, v);
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double w = qr.wts[q] * f.len;
            for (size_t i = 0; i < f.active.size(); ++i)
                for (size_t j = 0; j < f.active.size(); ++j)
                    trips.push_back({f.active[i], f.active[j],
                                     w * v(static_cast<int>(i), static_cast<int>(q)) *
                                         v(static_cast<int>(j), static_cast<int>(q))});
        }
    }
    return csr_from_triplets(ls.ndof, ls.ndof, trips);
}

Vec line_load(const LineSpace& ls, const ScalarFn& f) {
    Vec b(ls.ndof, 0.0);
    const QuadRule1D qr = gauss_legendre(6);
    DenseMatrix v;
    for (size_t fi = 0; fi < ls.facets.size(); ++fi) {
        const auto& fc = ls.facets[fi];
        ls.eval_facet(static_cast<int>(fi), qr.pts, v);
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = fc.p0[0] + qr.pts[q] * (fc.p1[0] - fc.p0[0]);
            const double py = fc.p0[1] + qr.pts[q] * (fc.p1[1] - fc.p0[1]);
            const double w = qr.wts[q] * fc.len * f(px, py);
            for (size_t i = 0; i < fc.active.size(); ++i)
                b[fc.active[i]] += w * v(static_cast<int>(i), static_cast<int>(q));
        }
    }
    return b;
}

namespace {

// shared facet-pairing loop for the two assemble_B overloads
template <typename DataSpace>
CsrMatrix assemble_B_impl(const BoundarySpace& test, const DataSpace& data, int data_ndof) {
    if (test.facets.size() != data.facets.size())
        throw std::invalid_argument("assemble_B: facet mismatch between trace and data spaces");
    std::vector<Triplet> trips;
    const QuadRule1D qr = gauss_legendre(4);
    DenseMatrix vt, vd;
    for (size_t fi = 0; fi < test.facets.size(); ++fi) {
        const auto& ft = test.facets[fi];
        test.eval_facet(static_cast<int>(fi), qr.pts, vt);
        data.eval_facet(static_cast<int>(fi), qr.pts, vd);
        const auto& da = data.facets[fi].active;
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double w = qr.wts[q] * ft.len;
            for (size_t i = 0; i < ft.active.size(); ++i) {
                const int r = ft.active[i];
                // trace of the parent basis function = tsign * unit trace fn
                const double tv = test.tsign[r] * vt(static_cast<int>(i), static_cast<int>(q));
                for (size_t j = 0; j < da.size(); ++j)
                    trips.push_back({test.parent_dof[r], da[j],
                                     w * tv * vd(static_cast<int>(j), static_cast<int>(q))});
            }
        }
    }
    return csr_from_triplets(test.parent->ndof, data_ndof, trips);
}

} // namespace

CsrMatrix assemble_B(const BoundarySpace& test, const LineSpace& data) {
    return assemble_B_impl(test, data, data.ndof);
}

CsrMatrix assemble_B(const BoundarySpace& test, const BoundarySpace& data) {
    if (test.parent->m1) {
        std::vector<Triplet> trips;
        for (int r = 0; r < test.ntrace; ++r)
            for (int k = 0; k < data.ntrace; ++k)
                trips.push_back({test.parent_dof[r],
                                 k,
                                 test.tsign[r] * (test.chi[r][0] * data.chi[k][0] +
                                                  test.chi[r][1] * data.chi[k][1])});
        return csr_from_triplets(test.parent->ndof, data.ntrace, trips);
    }
    struct Wrap {
        const BoundarySpace& b;
        const std::vector<BoundarySpace::Facet>& facets;
        void eval_facet(int fi, const Vec& s, DenseMatrix& out) const { b.eval_facet(fi, s, out); }
    };
    const Wrap w{data, data.facets};
    return assemble_B_impl(test, w, data.ntrace);
}

CsrMatrix assemble_B_point(const BoundarySpace& test) {
    std::vector<Triplet> trips;
    for (int r = 0; r < test.ntrace; ++r)
        for (int c = 0; c < 2; ++c)
            trips.push_back({test.parent_dof[r], c, test.tsign[r] * test.chi[r][c]});
    return csr_from_triplets(test.parent->ndof, 2, trips);
}

SubcomplexCheck::SubcomplexCheck(const FunctionSpace& row_, const FunctionSpace& col_, DiffOp op_)
    : row(&row_), col(&col_), op(op_), D(assemble_d(row_, col_, op_)),
      mass_row(assemble_mass(row_, 1.0)) {}

double SubcomplexCheck::residual(const Vec& c) const {
    const Vec w = mass_row.solve(D.apply(c));
    double acc = 0.0;
    if (op == DiffOp::Dxx) {
        const QuadRule1D qr = gauss_legendre(4);
        for (int lc = 0; lc < static_cast<int>(col->cells.size()); ++lc) {
            const double x0 = col->cell_x0(lc), h = col->cell_h(lc);
            for (size_t q = 0; q < qr.pts.size(); ++q) {
                const double x = x0 + h * qr.pts[q];
                const double d = eval_1d(*col, c, lc, x, 2) - eval_1d(*row, w, lc, x, 0);
                acc += qr.wts[q] * h * d * d;
            }
        }
        return std::sqrt(acc);
    }
    const QuadRule2D qr = triangle_rule(6);
    for (int lc = 0; lc < static_cast<int>(col->cells.size()); ++lc) {
        const auto v = col->cell_verts(lc);
        const double x0 = v[0][0], y0 = v[0][1];
        const double ax = v[1][0] - x0, ay = v[1][1] - y0;
        const double bx = v[2][0] - x0, by = v[2][1] - y0;
        const double jac = ax * by - ay * bx;
        for (size_t q = 0; q < qr.pts.size(); ++q) {
            const double px = x0 + ax * qr.pts[q][0] + bx * qr.pts[q][1];
            const double py = y0 + ay * qr.pts[q][0] + by * qr.pts[q][1];
            if (op == DiffOp::Div) {
                const double d = eval_dop(*col, c, lc, px, py) - eval_scalar(*row, w, lc, px, py);
                acc += qr.wts[q] * jac * d * d;
            } else {
                const auto g = eval_scalar_grad(*col, c, lc, px, py);
                const auto r = eval_vector(*row, w, lc, px, py);
                acc += qr.wts[q] * jac * ((g[0] - r[0]) * (g[0] - r[0]) + (g[1] - r[1]) * (g[1] - r[1]));
            }
        }
    }
    return std::sqrt(acc);
}

} // namespace phfem
