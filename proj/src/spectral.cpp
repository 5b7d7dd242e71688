#include "phfem/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace phfem {

namespace {

DenseMatrix dense_block(const CsrMatrix& A, int r0, int size) {
    DenseMatrix D(size, size);
    for (int i = 0; i < size; ++i)
        for (int k = A.offsets[r0 + i]; k < A.offsets[r0 + i + 1]; ++k) {
            const int j = A.cols[k] - r0;
            if (j >= 0 && j < size) D(i, j) = A.vals[k];
        }
    return D;
}

} // namespace

ModeSet solve_modes(const CoupledSystem& c, int n_modes, bool want_vectors) {
    ModeSet ms;
    if (want_vectors) {
        const auto pairs = dense_generalized_eig(to_dense(c.M), to_dense(c.J));
        double wmax = 0.0;
        for (const auto& p : pairs) wmax = std::max(wmax, std::fabs(p.lambda.imag()));
        const double thr = 1e-8 * wmax;
        const DenseMatrix Md = to_dense(c.M), Jd = to_dense(c.J);
        for (const auto& p : pairs) {
            const double w = p.lambda.imag();
            if (std::fabs(w) <= thr) {
                ++ms.n_zero;
                continue;
            }
            if (w <= 0.0) continue;
            if (static_cast<int>(ms.omega.size()) >= n_modes) continue;
            ms.omega.push_back(w);
            ms.vectors.push_back(p.vec);
            // residual ||J psi - i w M psi|| / ||psi||
            const int n = c.n;
            double rn = 0.0, vn = 0.0;
            std::vector<std::complex<double>> r(n, 0.0);
            for (int i = 0; i < n; ++i) {
                std::complex<double> ji = 0.0, mi = 0.0;
                for (int j = 0; j < n; ++j) {
                    ji += Jd(i, j) * p.vec[j];
                    mi += Md(i, j) * p.vec[j];
                }
                const std::complex<double> ri = ji - std::complex<double>(0.0, w) * mi;
                rn += std::norm(ri);
                vn += std::norm(p.vec[i]);
            }
            ms.residuals.push_back(std::sqrt(rn / vn));
        }
        return ms;
    }
    std::vector<DenseMatrix> blocks;
    blocks.push_back(dense_block(c.sub1.M, 0, c.sub1.n_alpha));
    blocks.push_back(dense_block(c.sub1.M, c.sub1.n_alpha, c.sub1.n_beta));
    blocks.push_back(dense_block(c.M, c.n1, c.sub2.n_alpha));
    blocks.push_back(dense_block(c.M, c.n1 + c.sub2.n_alpha, c.sub2.n_beta));
    const std::vector<double> evs = skew_pencil_frequencies(blocks, c.J);
    double wmax = 0.0;
    for (double w : evs) wmax = std::max(wmax, std::fabs(w));
    const double thr = 1e-8 * wmax;
    for (double w : evs) {
        if (std::fabs(w) <= thr) {
            ++ms.n_zero;
            continue;
        }
        if (w > 0.0 && static_cast<int>(ms.omega.size()) < n_modes) ms.omega.push_back(w);
    }
    return ms;
}

std::vector<double> beam_analytical_freqs(int n, double EI, double rhoA, double L) {
    if (n < 1 || !(EI > 0) || !(rhoA > 0) || !(L > 0))
        throw std::invalid_argument("beam_analytical_freqs: invalid arguments");
    std::vector<double> out;
    const auto f = [](double x) { return std::cos(x) * std::cosh(x) + 1.0; };
    for (int k = 1; k <= n; ++k) {
        // roots sit within 0.31 of (2k-1)pi/2; the first needs a wider bracket
        double a, b;
        if (k == 1) {
            a = M_PI / 2.0;
            b = M_PI;
        } else {
            a = (2.0 * k - 1.0) * M_PI / 2.0 - 0.35;
            b = (2.0 * k - 1.0) * M_PI / 2.0 + 0.35;
        }
        double fa = f(a);
        for (int it = 0; it < 200; ++it) {
            const double m = 0.5 * (a + b);
            const double fm = f(m);
            if ((fa <= 0.0) == (fm <= 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
            if (b - a < 1e-12) break;
        }
        const double xi = 0.5 * (a + b);
        out.push_back((xi / L) * (xi / L) * std::sqrt(EI / rhoA));
    }
    return out;
}

std::vector<double> wave_analytical_freqs(int count, double L) {
    if (count < 1 || !(L > 0)) throw std::invalid_argument("wave_analytical_freqs: invalid arguments");
    const int K = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count)))) + 2;
    std::vector<double> all;
    for (int m = 1; m <= K; ++m)
        for (int n = 1; n <= K; ++n)
            all.push_back(M_PI / (2.0 * L) *
                          std::sqrt(static_cast<double>((2 * m - 1) * (2 * m - 1) + (2 * n - 1) * (2 * n - 1))));
    std::sort(all.begin(), all.end());
    all.resize(count);
    return all;
}

} // namespace phfem
