#include "phfem/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace phfem {

namespace {

std::pair<int, int> ekey(int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); }

} // namespace

int FunctionSpace::dofs_per_cell() const {
    switch (family) {
        case Family::Hermite: return 4;
        case Family::DG1D: return 2;
        case Family::CG: return degree == 1 ? 3 : 6;
        case Family::DG: return degree == 0 ? 1 : 3;
        case Family::RT:
        case Family::NED: return vec_basis_ndof(degree);
    }
    return 0;
}

std::array<std::array<double, 2>, 3> FunctionSpace::cell_verts(int lc) const {
    const auto& t = m2->tris[cells[lc]];
    return {m2->vertices[t[0]], m2->vertices[t[1]], m2->vertices[t[2]]};
}

TriScalarBasis FunctionSpace::scalar_basis(int lc) const {
    return TriScalarBasis(cell_verts(lc), family == Family::DG ? degree : degree);
}

TriVectorBasis FunctionSpace::vector_basis(int lc) const {
    return TriVectorBasis(family == Family::RT ? VecFamily::RT : VecFamily::NED, degree,
                          cell_verts(lc), cell_edge_lv[lc]);
}

double FunctionSpace::cell_x0(int lc) const { return m1->vertices[m1->cells[cells[lc]][0]]; }
double FunctionSpace::cell_h(int lc) const { return m1->cell_length(cells[lc]); }

FunctionSpace build_space(const Mesh1D& m, int tag, Family family, int k) {
    if (family != Family::Hermite && family != Family::DG1D)
        throw std::invalid_argument("build_space: family/dimension mismatch for 1D mesh");
    if (family == Family::DG1D && k != 1) throw std::invalid_argument("build_space: DG1D supports k=1 only");
    FunctionSpace s;
    s.m1 = &m;
    s.tag = tag;
    s.family = family;
    s.degree = family == Family::Hermite ? 3 : 1;
    for (int c = 0; c < m.ncells(); ++c)
        if (m.cell_tag[c] == tag) s.cells.push_back(c);
    if (s.cells.empty()) throw std::invalid_argument("build_space: empty subdomain");
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto& cell = m.cells[s.cells[lc]];
        if (lc == 0) s.sub_vertices.push_back(cell[0]);
        s.sub_vertices.push_back(cell[1]);
    }
    const int nc = static_cast<int>(s.cells.size());
    if (family == Family::Hermite) {
        s.ndof = 2 * (nc + 1);
        for (int lc = 0; lc < nc; ++lc)
            s.cell_dofs.push_back({2 * lc, 2 * lc + 1, 2 * lc + 2, 2 * lc + 3});
    } else {
        s.ndof = 2 * nc;
        for (int lc = 0; lc < nc; ++lc) s.cell_dofs.push_back({2 * lc, 2 * lc + 1});
    }
    return s;
}

FunctionSpace build_space(const Mesh2D& m, int tag, Family family, int k) {
    if (family == Family::Hermite || family == Family::DG1D)
        throw std::invalid_argument("build_space: family/dimension mismatch for 2D mesh");
    const bool is_dg = family == Family::DG;
    if (!is_dg && (k < 1 || k > 2)) throw std::invalid_argument("build_space: unsupported degree");
    if (is_dg && (k < 0 || k > 1)) throw std::invalid_argument("build_space: unsupported DG degree");
    FunctionSpace s;
    s.m2 = &m;
    s.tag = tag;
    s.family = family;
    s.degree = k;
    for (int t = 0; t < m.ntris(); ++t)
        if (m.tri_tag[t] == tag) s.cells.push_back(t);
    if (s.cells.empty()) throw std::invalid_argument("build_space: empty subdomain");

    // edge table and globally oriented local edges (edge i opposite vertex i)
    std::vector<std::pair<int, int>> edges;
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto& t = m.tris[s.cells[lc]];
        std::array<std::array<int, 2>, 3> elv{};
        for (int e = 0; e < 3; ++e) {
            const int la = (e + 1) % 3, lb = (e + 2) % 3;
            const int ga = t[la], gb = t[lb];
            elv[e] = ga < gb ? std::array<int, 2>{la, lb} : std::array<int, 2>{lb, la};
            const auto key = ekey(ga, gb);
            auto it = s.edge_cells.find(key);
            if (it == s.edge_cells.end()) {
                s.edge_cells.emplace(key, std::vector<int>{lc});
                edges.push_back(key);
            } else {
                it->second.push_back(lc);
            }
        }
        s.cell_edge_lv.push_back(elv);
    }
    std::sort(edges.begin(), edges.end());

    if (family == Family::CG) {
        std::vector<int> verts;
        for (int gc : s.cells)
            for (int v : m.tris[gc]) verts.push_back(v);
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        s.vert_dof.assign(m.vertices.size(), -1);
        for (size_t i = 0; i < verts.size(); ++i) s.vert_dof[verts[i]] = static_cast<int>(i);
        int next = static_cast<int>(verts.size());
        if (k == 2)
            for (const auto& e : edges) s.edge_dof0.emplace(e, next++);
        s.ndof = next;
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            const auto& t = m.tris[s.cells[lc]];
            std::vector<int> d = {s.vert_dof[t[0]], s.vert_dof[t[1]], s.vert_dof[t[2]]};
            if (k == 2)
                for (int e = 0; e < 3; ++e)
                    d.push_back(s.edge_dof0.at(ekey(t[(e + 1) % 3], t[(e + 2) % 3])));
            s.cell_dofs.push_back(std::move(d));
        }
    } else if (is_dg) {
        const int per = k == 0 ? 1 : 3;
        s.ndof = per * static_cast<int>(s.cells.size());
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            std::vector<int> d;
            for (int j = 0; j < per; ++j) d.push_back(per * lc + j);
            s.cell_dofs.push_back(std::move(d));
        }
    } else {
        // RT / NED: k moments per edge, then 2(k-1) interior per cell
        int next = 0;
        for (const auto& e : edges) {
            s.edge_dof0.emplace(e, next);
            next += k;
        }
        const int cell0 = next;
        const int per_cell = 2 * (k - 1);
        s.ndof = next + per_cell * static_cast<int>(s.cells.size());
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            const auto& t = m.tris[s.cells[lc]];
            std::vector<int> d;
            for (int e = 0; e < 3; ++e) {
                const int d0 = s.edge_dof0.at(ekey(t[(e + 1) % 3], t[(e + 2) % 3]));
                for (int j = 0; j < k; ++j) d.push_back(d0 + j);
            }
            for (int j = 0; j < per_cell; ++j) d.push_back(cell0 + per_cell * lc + j);
            s.cell_dofs.push_back(std::move(d));
        }
    }
    return s;
}

Vec interpolate_1d(const FunctionSpace& s, const std::function<double(double)>& f,
                   const std::function<double(double)>& fprime) {
    Vec c(s.ndof, 0.0);
    if (s.family == Family::Hermite) {
        for (size_t i = 0; i < s.sub_vertices.size(); ++i) {
            const double x = s.m1->vertices[s.sub_vertices[i]];
            c[2 * i] = f(x);
            c[2 * i + 1] = fprime(x);
        }
    } else {
        for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
            const double x0 = s.cell_x0(lc), h = s.cell_h(lc);
            c[s.cell_dofs[lc][0]] = f(x0);
            c[s.cell_dofs[lc][1]] = f(x0 + h);
        }
    }
    return c;
}

Vec interpolate_scalar(const FunctionSpace& s, const ScalarFn& f) {
    Vec c(s.ndof, 0.0);
    if (s.family == Family::CG) {
        for (size_t v = 0; v < s.vert_dof.size(); ++v)
            if (s.vert_dof[v] >= 0) c[s.vert_dof[v]] = f(s.m2->vertices[v][0], s.m2->vertices[v][1]);
        for (const auto& [e, d0] : s.edge_dof0) {
            const auto& a = s.m2->vertices[e.first];
            const auto& b = s.m2->vertices[e.second];
            c[d0] = f(0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]));
        }
        return c;
    }
    if (s.family != Family::DG) throw std::invalid_argument("interpolate_scalar: scalar space required");
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto v = s.cell_verts(lc);
        if (s.degree == 0) {
            c[s.cell_dofs[lc][0]] = f((v[0][0] + v[1][0] + v[2][0]) / 3.0, (v[0][1] + v[1][1] + v[2][1]) / 3.0);
        } else {
            for (int i = 0; i < 3; ++i) c[s.cell_dofs[lc][i]] = f(v[i][0], v[i][1]);
        }
    }
    return c;
}

Vec interpolate_vector(const FunctionSpace& s, const VectorFn& f) {
    if (!s.is_vector()) throw std::invalid_argument("interpolate_vector: vector space required");
    Vec c(s.ndof, 0.0);
    const QuadRule1D ge = gauss_legendre(8);
    const QuadRule2D tq = triangle_rule(8);
    const int k = s.degree;
    std::vector<char> done(s.ndof, 0);
    for (int lc = 0; lc < static_cast<int>(s.cells.size()); ++lc) {
        const auto v = s.cell_verts(lc);
        const auto& elv = s.cell_edge_lv[lc];
        for (int e = 0; e < 3; ++e) {
            const int d0 = s.cell_dofs[lc][k * e];
            if (done[d0]) continue;
            done[d0] = 1;
            const auto& plo = v[elv[e][0]];
            const auto& phi = v[elv[e][1]];
            const double ex = phi[0] - plo[0], ey = phi[1] - plo[1];
            const double elen = std::hypot(ex, ey);
            const double wx = s.family == Family::RT ? ey / elen : ex / elen;
            const double wy = s.family == Family::RT ? -ex / elen : ey / elen;
            for (int j = 0; j < k; ++j) {
                double mom = 0.0;
                for (size_t q = 0; q < ge.pts.size(); ++q) {
                    const double t = ge.pts[q];
                    const auto val = f(plo[0] + t * ex, plo[1] + t * ey);
                    const double qs = j == 0 ? 1.0 : 2.0 * t - 1.0;
                    mom += ge.wts[q] * elen * qs * (val[0] * wx + val[1] * wy);
                }
                c[d0 + j] = mom;
            }
        }
        if (k == 2) {
            const double x0 = v[0][0], y0 = v[0][1];
            const double ax = v[1][0] - x0, ay = v[1][1] - y0;
            const double bx = v[2][0] - x0, by = v[2][1] - y0;
            const double jac = ax * by - ay * bx;
            for (int comp = 0; comp < 2; ++comp) {
                double mom = 0.0;
                for (size_t q = 0; q < tq.pts.size(); ++q) {
                    const auto val = f(x0 + ax * tq.pts[q][0] + bx * tq.pts[q][1],
                                       y0 + ay * tq.pts[q][0] + by * tq.pts[q][1]);
                    mom += tq.wts[q] * jac * val[comp];
                }
                c[s.cell_dofs[lc][3 * k + comp]] = mom;
            }
        }
    }
    return c;
}

double eval_scalar(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y) {
    const TriScalarBasis b = s.scalar_basis(lc);
    double vals[6];
    b.eval(x, y, vals);
    double r = 0.0;
    for (int j = 0; j < b.ndof; ++j) r += coeff[s.cell_dofs[lc][j]] * vals[j];
    return r;
}

std::array<double, 2> eval_scalar_grad(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y) {
    const TriScalarBasis b = s.scalar_basis(lc);
    std::array<double, 2> g[6];
    b.grad(x, y, g);
    std::array<double, 2> r{0.0, 0.0};
    for (int j = 0; j < b.ndof; ++j) {
        r[0] += coeff[s.cell_dofs[lc][j]] * g[j][0];
        r[1] += coeff[s.cell_dofs[lc][j]] * g[j][1];
    }
    return r;
}

std::array<double, 2> eval_vector(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y) {
    const TriVectorBasis b = s.vector_basis(lc);
    std::array<double, 2> vals[8];
    b.eval(x, y, vals);
    std::array<double, 2> r{0.0, 0.0};
    for (int j = 0; j < b.ndof; ++j) {
        r[0] += coeff[s.cell_dofs[lc][j]] * vals[j][0];
        r[1] += coeff[s.cell_dofs[lc][j]] * vals[j][1];
    }
    return r;
}

double eval_dop(const FunctionSpace& s, const Vec& coeff, int lc, double x, double y) {
    const TriVectorBasis b = s.vector_basis(lc);
    double vals[8];
    b.dop(x, y, vals);
    double r = 0.0;
    for (int j = 0; j < b.ndof; ++j) r += coeff[s.cell_dofs[lc][j]] * vals[j];
    return r;
}

double eval_1d(const FunctionSpace& s, const Vec& coeff, int lc, double x, int deriv) {
    const double x0 = s.cell_x0(lc), h = s.cell_h(lc);
    const double t = (x - x0) / h;
    if (s.family == Family::Hermite) {
        const auto v = hermite_eval(t, deriv);
        const double hs = std::pow(h, -deriv);
        // slope basis functions carry a factor h in physical coordinates
        return hs * (coeff[s.cell_dofs[lc][0]] * v[0] + h * coeff[s.cell_dofs[lc][1]] * v[1] +
                     coeff[s.cell_dofs[lc][2]] * v[2] + h * coeff[s.cell_dofs[lc][3]] * v[3]);
    }
    if (deriv > 1) return 0.0;
    double v[2];
    lagrange1d_eval(1, t, deriv, v);
    const double hs = deriv == 1 ? 1.0 / h : 1.0;
    return hs * (coeff[s.cell_dofs[lc][0]] * v[0] + coeff[s.cell_dofs[lc][1]] * v[1]);
}

} // namespace phfem
