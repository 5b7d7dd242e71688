#pragma once

#include <array>
#include <string>
#include <vector>

#include "phfem/linalg.hpp"

namespace phfem {

// Boundary tags shared by both meshes and the mesh file format.
inline constexpr int kGamma1 = 1;    // Dirichlet part
inline constexpr int kGamma2 = 2;    // Neumann part
inline constexpr int kInterface = 3; // internal coupling interface

/// Decomposed interval: Omega_2 = [0, x_int] (Neumann side, tag 2),
/// Omega_1 = [x_int, L] (Dirichlet side, tag 1).
struct Mesh1D {
    Vec vertices; // strictly increasing
    std::vector<std::array<int, 2>> cells;
    std::vector<int> cell_tag;
    int gamma1_vertex = -1;    // x = L
    int gamma2_vertex = -1;    // x = 0
    int interface_vertex = -1; // x = x_int

    int ncells() const { return static_cast<int>(cells.size()); }
    double cell_length(int c) const { return vertices[cells[c][1]] - vertices[cells[c][0]]; }
};

Mesh1D build_interval_decomposed(double L, int n1, int n2, double x_int);

/// Decomposed unit square, triangulated; Omega_1 = {y < x} (tag 1),
/// Omega_2 = {y > x} (tag 2), interface along the main diagonal.
struct Mesh2D {
    std::vector<std::array<double, 2>> vertices;
    std::vector<std::array<int, 3>> tris; // counterclockwise
    std::vector<int> tri_tag;
    struct BEdge {
        int v0;
        int v1;
        int tag;
    };
    std::vector<BEdge> bedges; // boundary and interface edges

    int ntris() const { return static_cast<int>(tris.size()); }
    double tri_area(int t) const;
};

Mesh2D build_square_decomposed(int n);

/// Facets of a given tag in deterministic order (lexicographic by midpoint).
/// 1D facets are vertex indices.
std::vector<int> facets_by_tag(const Mesh1D& m, int tag);
std::vector<Mesh2D::BEdge> facets_by_tag(const Mesh2D& m, int tag);

/// Line-oriented ASCII mesh format; read validates all mesh invariants and
/// reports the offending line on failure.
void write_mesh(const Mesh2D& m, const std::string& path);
Mesh2D read_mesh(const std::string& path);

} // namespace phfem
