#include "phfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "phfem/errors.hpp"

namespace phfem {

Mesh1D build_interval_decomposed(double L, int n1, int n2, double x_int) {
    if (n1 < 1 || n2 < 1) throw std::invalid_argument("build_interval_decomposed: cell counts must be >= 1");
    if (!(x_int > 0.0 && x_int < L)) throw std::invalid_argument("build_interval_decomposed: x_int outside (0, L)");
    Mesh1D m;
    // Omega_2 covers [0, x_int] with n2 cells, Omega_1 covers [x_int, L] with n1
    for (int i = 0; i <= n2; ++i) m.vertices.push_back(x_int * i / n2);
    for (int i = 1; i <= n1; ++i) m.vertices.push_back(x_int + (L - x_int) * i / n1);
    for (int c = 0; c < n1 + n2; ++c) {
        m.cells.push_back({c, c + 1});
        m.cell_tag.push_back(c < n2 ? 2 : 1);
    }
    m.gamma2_vertex = 0;
    m.interface_vertex = n2;
    m.gamma1_vertex = n1 + n2;
    return m;
}

double Mesh2D::tri_area(int t) const {
    const auto& a = vertices[tris[t][0]];
    const auto& b = vertices[tris[t][1]];
    const auto& c = vertices[tris[t][2]];
    return 0.5 * ((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]));
}

Mesh2D build_square_decomposed(int n) {
    if (n < 1) throw std::invalid_argument("build_square_decomposed: n must be >= 1");
    Mesh2D m;
    const auto vid = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
            m.vertices.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
    // every cell split along its lower-left -> upper-right diagonal, so the
    // global diagonal y = x is a union of edges
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
            // lower-right triangle is on or below the cell diagonal
            m.tris.push_back({v00, v10, v11});
            m.tri_tag.push_back(j <= i ? 1 : 2);
            m.tris.push_back({v00, v11, v01});
            m.tri_tag.push_back(j < i ? 1 : 2);
            if (i == j) m.bedges.push_back({v00, v11, kInterface});
        }
    for (int i = 0; i < n; ++i) {
        m.bedges.push_back({vid(i, 0), vid(i + 1, 0), kGamma1});     // bottom, Omega_1 side
        m.bedges.push_back({vid(n, i), vid(n, i + 1), kGamma1});     // right
        m.bedges.push_back({vid(0, i), vid(0, i + 1), kGamma2});     // left, Omega_2 side
        m.bedges.push_back({vid(i, n), vid(i + 1, n), kGamma2});     // top
    }
    return m;
}

std::vector<int> facets_by_tag(const Mesh1D& m, int tag) {
    switch (tag) {
        case kGamma1: return {m.gamma1_vertex};
        case kGamma2: return {m.gamma2_vertex};
        case kInterface: return {m.interface_vertex};
        default: throw std::invalid_argument("facets_by_tag: unknown tag");
    }
}

std::vector<Mesh2D::BEdge> facets_by_tag(const Mesh2D& m, int tag) {
    if (tag != kGamma1 && tag != kGamma2 && tag != kInterface)
        throw std::invalid_argument("facets_by_tag: unknown tag");
    std::vector<Mesh2D::BEdge> out;
    for (const auto& e : m.bedges)
        if (e.tag == tag) out.push_back(e);
    std::sort(out.begin(), out.end(), [&](const Mesh2D::BEdge& a, const Mesh2D::BEdge& b) {
        const double ax = 0.5 * (m.vertices[a.v0][0] + m.vertices[a.v1][0]);
        const double ay = 0.5 * (m.vertices[a.v0][1] + m.vertices[a.v1][1]);
        const double bx = 0.5 * (m.vertices[b.v0][0] + m.vertices[b.v1][0]);
        const double by = 0.5 * (m.vertices[b.v0][1] + m.vertices[b.v1][1]);
        return ax != bx ? ax < bx : ay < by;
    });
    return out;
}

namespace {

void validate_mesh(const Mesh2D& m, const std::string& origin) {
    for (int t = 0; t < m.ntris(); ++t) {
        if (!(m.tri_area(t) > 0.0))
            throw ConfigError(origin + ": triangle " + std::to_string(t) + " has non-positive area");
        if (m.tri_tag[t] != 1 && m.tri_tag[t] != 2)
            throw ConfigError(origin + ": triangle " + std::to_string(t) + " has invalid subdomain tag");
    }
    // every interface edge must separate a tag-1 and a tag-2 triangle
    std::map<std::pair<int, int>, std::array<int, 2>> tags_by_edge;
    for (int t = 0; t < m.ntris(); ++t)
        for (int e = 0; e < 3; ++e) {
            int a = m.tris[t][e], b = m.tris[t][(e + 1) % 3];
            if (a > b) std::swap(a, b);
            auto& rec = tags_by_edge.try_emplace({a, b}, std::array<int, 2>{0, 0}).first->second;
            ++rec[m.tri_tag[t] - 1];
        }
    for (const auto& e : m.bedges) {
        if (e.tag == kInterface) {
            int a = e.v0, b = e.v1;
            if (a > b) std::swap(a, b);
            const auto it = tags_by_edge.find({a, b});
            if (it == tags_by_edge.end() || it->second[0] != 1 || it->second[1] != 1)
                throw ConfigError(origin + ": interface edge not shared by one tag-1 and one tag-2 triangle");
        }
    }
}

} // namespace

void write_mesh(const Mesh2D& m, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path);
    f << "ph-mesh 2d 1\n";
    f << m.vertices.size() << " " << m.tris.size() << " " << m.bedges.size() << "\n";
    char buf[96];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v[0], v[1]);
        f << buf;
    }
    for (size_t t = 0; t < m.tris.size(); ++t)
        f << m.tris[t][0] << " " << m.tris[t][1] << " " << m.tris[t][2] << " " << m.tri_tag[t] << "\n";
    for (const auto& e : m.bedges) f << e.v0 << " " << e.v1 << " " << e.tag << "\n";
    if (!f) throw IoError("write failed: " + path);
}

Mesh2D read_mesh(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    Mesh2D m;
    std::string line;
    int lineno = 0;
    const auto next_line = [&]() -> std::string {
        if (!std::getline(f, line)) throw ConfigError(path + ":" + std::to_string(lineno + 1) + ": unexpected end of file");
        ++lineno;
        return line;
    };
    if (next_line() != "ph-mesh 2d 1")
        throw ConfigError(path + ":1: bad header, expected 'ph-mesh 2d 1'");
    size_t nv = 0, nt = 0, nbe = 0;
    {
        std::istringstream is(next_line());
        if (!(is >> nv >> nt >> nbe)) throw ConfigError(path + ":2: expected '<nv> <nt> <nbe>'");
    }
    for (size_t i = 0; i < nv; ++i) {
        std::istringstream is(next_line());
        double x, y;
        if (!(is >> x >> y)) throw ConfigError(path + ":" + std::to_string(lineno) + ": bad vertex line");
        m.vertices.push_back({x, y});
    }
    for (size_t i = 0; i < nt; ++i) {
        std::istringstream is(next_line());
        int a, b, c, tag;
        if (!(is >> a >> b >> c >> tag)) throw ConfigError(path + ":" + std::to_string(lineno) + ": bad triangle line");
        const int n = static_cast<int>(nv);
        if (a < 0 || a >= n || b < 0 || b >= n || c < 0 || c >= n)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": vertex index out of range");
        m.tris.push_back({a, b, c});
        m.tri_tag.push_back(tag);
    }
    for (size_t i = 0; i < nbe; ++i) {
        std::istringstream is(next_line());
        int a, b, tag;
        if (!(is >> a >> b >> tag)) throw ConfigError(path + ":" + std::to_string(lineno) + ": bad boundary edge line");
        if (tag < 1 || tag > 3) throw ConfigError(path + ":" + std::to_string(lineno) + ": boundary tag must be 1, 2 or 3");
        m.bedges.push_back({a, b, tag});
    }
    validate_mesh(m, path);
    return m;
}

} // namespace phfem
