#pragma once

#include "phfem/linalg.hpp"

namespace phfem {

/// One subdomain's algebraic port-Hamiltonian system
///   M de/dt = J e + B_ext u_ext + B_int u_int,   y = T e.
/// Side 1 (boundary term in the beta equation): J = [[0, -D],[D^T, 0]] with
/// [D]_{im} = <chi_alpha^i, L* chi_beta^m>. Side 2 (boundary term in the alpha
/// equation): J = [[0, -D^T],[D, 0]] with [D]_{mi} = <chi_beta^m, L chi_alpha^i>.
struct PHSubsystem {
    int side = 1;
    int n_alpha = 0;
    int n_beta = 0;
    int n = 0;
    CsrMatrix M; // block diagonal, SPD
    CsrMatrix J; // skew
    CsrMatrix B_ext;
    CsrMatrix B_int;
    CsrMatrix T_ext; // strong output maps (signed boolean rows)
    CsrMatrix T_int;
};

PHSubsystem build_subsystem(int side, const CsrMatrix& M_alpha, const CsrMatrix& M_beta,
                            const CsrMatrix& D, const CsrMatrix& B_ext, const CsrMatrix& B_int,
                            const CsrMatrix& T_ext, const CsrMatrix& T_int);

/// The two subsystems interconnected through the interface gyrator
/// u1_int = sigma * y2_int, u2_int = -sigma * y1_int, realized by the coupling
/// block G = sigma * L sitting in the (beta1, alpha2) position, together with
/// the assembled monolithic M, J, B, T view.
struct CoupledSystem {
    PHSubsystem sub1;
    PHSubsystem sub2;
    CsrMatrix psi;
    double sigma = 1.0;
    CsrMatrix G; // n1 x n2
    int n1 = 0, n2 = 0, n = 0;
    CsrMatrix M, J; // monolithic
    CsrMatrix B;    // n x (next1 + next2)
    CsrMatrix T;    // (ntr1 + ntr2) x n

    Vec stack(const Vec& e1, const Vec& e2) const;
    void split(const Vec& e, Vec& e1, Vec& e2) const;
};

CoupledSystem couple(PHSubsystem sub1, PHSubsystem sub2, const CsrMatrix& psi, double sigma);

} // namespace phfem
