#include <doctest.h>

#include <cmath>
#include <fstream>
#include <map>

#include "phfem/errors.hpp"
#include "phfem/mesh.hpp"

using namespace phfem;

TEST_SUITE_BEGIN("mesh");

TEST_CASE("decomposed interval: three elements per side") {
    const Mesh1D m = build_interval_decomposed(1.0, 3, 3, 0.5);
    REQUIRE(m.ncells() == 6);
    const Vec expect = {0.0, 1.0 / 6, 2.0 / 6, 0.5, 0.5 + 1.0 / 6, 0.5 + 2.0 / 6, 1.0};
    REQUIRE(m.vertices.size() == 7);
    for (size_t i = 0; i < expect.size(); ++i) CHECK(m.vertices[i] == doctest::Approx(expect[i]));
    CHECK(m.vertices[m.interface_vertex] == doctest::Approx(0.5));
    CHECK(m.gamma2_vertex == 0);
    CHECK(m.gamma1_vertex == 6);
    // Omega_2 left of the interface, Omega_1 right of it
    for (int c = 0; c < 3; ++c) CHECK(m.cell_tag[c] == 2);
    for (int c = 3; c < 6; ++c) CHECK(m.cell_tag[c] == 1);
}

TEST_CASE("decomposed interval: minimal mesh and nonuniform sides") {
    const Mesh1D m1 = build_interval_decomposed(1.0, 1, 1, 0.5);
    CHECK(m1.ncells() == 2);
    CHECK(m1.vertices.size() == 3);
    const Mesh1D m2 = build_interval_decomposed(2.0, 2, 4, 1.0);
    for (int c = 0; c < m2.ncells(); ++c)
        CHECK(m2.cell_length(c) == doctest::Approx(m2.cell_tag[c] == 2 ? 0.25 : 0.5));
}

TEST_CASE("decomposed interval: invalid arguments rejected") {
    CHECK_THROWS_AS(build_interval_decomposed(1.0, 0, 3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(build_interval_decomposed(1.0, 3, 3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(build_interval_decomposed(1.0, 3, 3, 0.0), std::invalid_argument);
}

TEST_CASE("decomposed square: counts for n = 1, 2, 30") {
    const Mesh2D m1 = build_square_decomposed(1);
    CHECK(m1.ntris() == 2);
    CHECK(facets_by_tag(m1, kInterface).size() == 1);
    const Mesh2D m2 = build_square_decomposed(2);
    CHECK(m2.ntris() == 8);
    int t1 = 0, t2 = 0;
    for (int t : m2.tri_tag) (t == 1 ? t1 : t2)++;
    CHECK(t1 == 4);
    CHECK(t2 == 4);
    CHECK(facets_by_tag(m2, kInterface).size() == 2);
    CHECK(facets_by_tag(m2, kGamma1).size() == 4); // 2 bottom + 2 right
    const Mesh2D m30 = build_square_decomposed(30);
    CHECK(m30.ntris() == 1800);
    t1 = 0;
    for (int t : m30.tri_tag) t1 += (t == 1);
    CHECK(t1 == 900);
    CHECK(facets_by_tag(m30, kInterface).size() == 30);
    CHECK_THROWS_AS(build_square_decomposed(0), std::invalid_argument);
}

TEST_CASE("decomposed square: areas positive, total area 1, diagonal interface") {
    for (int n : {1, 3, 7}) {
        const Mesh2D m = build_square_decomposed(n);
        double total = 0.0;
        for (int t = 0; t < m.ntris(); ++t) {
            CHECK(m.tri_area(t) > 0.0);
            total += m.tri_area(t);
        }
        CHECK(std::fabs(total - 1.0) <= 1e-14);
        // interface edges lie on y = x, connected from (0,0) to (1,1)
        const auto facets = facets_by_tag(m, kInterface);
        for (const auto& e : facets) {
            CHECK(m.vertices[e.v0][0] == doctest::Approx(m.vertices[e.v0][1]));
            CHECK(m.vertices[e.v1][0] == doctest::Approx(m.vertices[e.v1][1]));
        }
        CHECK(m.vertices[facets.front().v0][0] + m.vertices[facets.front().v0][1] == doctest::Approx(0.0));
        CHECK(m.vertices[facets.back().v1][0] == doctest::Approx(1.0));
    }
}

TEST_CASE("decomposed square: every interface edge separates the two subdomains") {
    const Mesh2D m = build_square_decomposed(4);
    std::map<std::pair<int, int>, std::array<int, 2>> tags;
    for (int t = 0; t < m.ntris(); ++t)
        for (int e = 0; e < 3; ++e) {
            int a = m.tris[t][e], b = m.tris[t][(e + 1) % 3];
            if (a > b) std::swap(a, b);
            tags.try_emplace({a, b}, std::array<int, 2>{0, 0}).first->second[m.tri_tag[t] - 1]++;
        }
    for (const auto& e : facets_by_tag(m, kInterface)) {
        int a = e.v0, b = e.v1;
        if (a > b) std::swap(a, b);
        CHECK(tags.at({a, b})[0] == 1);
        CHECK(tags.at({a, b})[1] == 1);
    }
    // subdomain assignment convention: Omega_1 is the lower-right region y < x
    for (int t = 0; t < m.ntris(); ++t) {
        double cx = 0, cy = 0;
        for (int v : m.tris[t]) {
            cx += m.vertices[v][0] / 3.0;
            cy += m.vertices[v][1] / 3.0;
        }
        CHECK(m.tri_tag[t] == (cy < cx ? 1 : 2));
    }
}

TEST_CASE("facet ordering is lexicographic by midpoint; bad tags rejected") {
    const Mesh2D m = build_square_decomposed(3);
    const auto facets = facets_by_tag(m, kInterface);
    for (size_t i = 1; i < facets.size(); ++i) {
        const double prev = m.vertices[facets[i - 1].v0][0] + m.vertices[facets[i - 1].v1][0];
        const double cur = m.vertices[facets[i].v0][0] + m.vertices[facets[i].v1][0];
        CHECK(prev < cur);
    }
    CHECK_THROWS_AS(facets_by_tag(m, 7), std::invalid_argument);
    const Mesh1D m1 = build_interval_decomposed(1.0, 2, 2, 0.5);
    CHECK(facets_by_tag(m1, kInterface) == std::vector<int>{2});
    CHECK_THROWS_AS(facets_by_tag(m1, 0), std::invalid_argument);
}

TEST_CASE("mesh file round trip preserves every field") {
    for (int n : {1, 3}) {
        const Mesh2D m = build_square_decomposed(n);
        const std::string path = "test_mesh_" + std::to_string(n) + ".txt";
        write_mesh(m, path);
        const Mesh2D r = read_mesh(path);
        REQUIRE(r.vertices.size() == m.vertices.size());
        for (size_t i = 0; i < m.vertices.size(); ++i) {
            CHECK(r.vertices[i][0] == m.vertices[i][0]);
            CHECK(r.vertices[i][1] == m.vertices[i][1]);
        }
        CHECK(r.tris == m.tris);
        CHECK(r.tri_tag == m.tri_tag);
        REQUIRE(r.bedges.size() == m.bedges.size());
        for (size_t i = 0; i < m.bedges.size(); ++i) {
            CHECK(r.bedges[i].v0 == m.bedges[i].v0);
            CHECK(r.bedges[i].v1 == m.bedges[i].v1);
            CHECK(r.bedges[i].tag == m.bedges[i].tag);
        }
    }
}

TEST_CASE("mesh reader rejects malformed files with a line number") {
    {
        std::ofstream f("bad_header.txt");
        f << "not-a-mesh\n";
    }
    CHECK_THROWS_WITH_AS(read_mesh("bad_header.txt"), doctest::Contains(":1:"), ConfigError);
    {
        // negative-area (clockwise) triangle
        std::ofstream f("bad_area.txt");
        f << "ph-mesh 2d 1\n3 1 0\n0 0\n1 0\n0 1\n0 2 1 1\n";
    }
    CHECK_THROWS_AS(read_mesh("bad_area.txt"), ConfigError);
    {
        std::ofstream f("bad_vertex.txt");
        f << "ph-mesh 2d 1\n2 0 0\n0 0\nnot-a-number 1\n";
    }
    CHECK_THROWS_WITH_AS(read_mesh("bad_vertex.txt"), doctest::Contains(":4:"), ConfigError);
}

TEST_SUITE_END();
