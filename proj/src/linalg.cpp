#include "phfem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <queue>

namespace phfem {

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& v) { return std::sqrt(dot(v, v)); }

double norm_inf(const Vec& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

void axpy(double a, const Vec& x, Vec& y) {
    if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
    for (size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

CsrMatrix csr_from_triplets(int nrows, int ncols, const std::vector<Triplet>& triplets) {
    if (nrows < 0 || ncols < 0) throw std::invalid_argument("csr_from_triplets: negative dimension");
    for (const Triplet& t : triplets) {
        if (t.row < 0 || t.row >= nrows || t.col < 0 || t.col >= ncols)
            throw std::invalid_argument("csr_from_triplets: index out of range");
    }
    std::vector<Triplet> sorted = triplets;
    std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    CsrMatrix A;
    A.nrows = nrows;
    A.ncols = ncols;
    A.offsets.assign(nrows + 1, 0);
    size_t i = 0;
    while (i < sorted.size()) {
        size_t j = i;
        double s = 0.0;
        while (j < sorted.size() && sorted[j].row == sorted[i].row && sorted[j].col == sorted[i].col) {
            s += sorted[j].val;
            ++j;
        }
        A.cols.push_back(sorted[i].col);
        A.vals.push_back(s);
        A.offsets[sorted[i].row + 1]++;
        i = j;
    }
    for (int r = 0; r < nrows; ++r) A.offsets[r + 1] += A.offsets[r];
    return A;
}

Vec CsrMatrix::apply(const Vec& x) const {
    if (static_cast<int>(x.size()) != ncols) throw std::invalid_argument("spmv: dimension mismatch");
    Vec y(nrows, 0.0);
    apply_add(1.0, x, y);
    return y;
}

void CsrMatrix::apply_add(double a, const Vec& x, Vec& y) const {
    if (static_cast<int>(x.size()) != ncols || static_cast<int>(y.size()) != nrows)
        throw std::invalid_argument("apply_add: dimension mismatch");
    for (int i = 0; i < nrows; ++i) {
        double s = 0.0;
        for (int k = offsets[i]; k < offsets[i + 1]; ++k) s += vals[k] * x[cols[k]];
        y[i] += a * s;
    }
}

void CsrMatrix::apply_transpose_add(double a, const Vec& x, Vec& y) const {
    if (static_cast<int>(x.size()) != nrows || static_cast<int>(y.size()) != ncols)
        throw std::invalid_argument("apply_transpose_add: dimension mismatch");
    for (int i = 0; i < nrows; ++i) {
        const double xi = a * x[i];
        if (xi == 0.0) continue;
        for (int k = offsets[i]; k < offsets[i + 1]; ++k) y[cols[k]] += vals[k] * xi;
    }
}

CsrMatrix CsrMatrix::transposed() const {
    std::vector<Triplet> t;
    t.reserve(vals.size());
    for (int i = 0; i < nrows; ++i)
        for (int k = offsets[i]; k < offsets[i + 1]; ++k) t.push_back({cols[k], i, vals[k]});
    return csr_from_triplets(ncols, nrows, t);
}

double CsrMatrix::at(int i, int j) const {
    for (int k = offsets[i]; k < offsets[i + 1]; ++k)
        if (cols[k] == j) return vals[k];
    return 0.0;
}

CsrMatrix CsrMatrix::identity(int n) {
    std::vector<Triplet> t;
    t.reserve(n);
    for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
    return csr_from_triplets(n, n, t);
}

Vec spmv(const CsrMatrix& A, const Vec& x) { return A.apply(x); }

CsrMatrix csr_add(double a, const CsrMatrix& A, double b, const CsrMatrix& B) {
    if (A.nrows != B.nrows || A.ncols != B.ncols) throw std::invalid_argument("csr_add: shape mismatch");
    std::vector<Triplet> t;
    t.reserve(A.vals.size() + B.vals.size());
    for (int i = 0; i < A.nrows; ++i) {
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k) t.push_back({i, A.cols[k], a * A.vals[k]});
        for (int k = B.offsets[i]; k < B.offsets[i + 1]; ++k) t.push_back({i, B.cols[k], b * B.vals[k]});
    }
    return csr_from_triplets(A.nrows, A.ncols, t);
}

CsrMatrix csr_scaled(const CsrMatrix& A, double s) {
    CsrMatrix B = A;
    for (double& v : B.vals) v *= s;
    return B;
}

CsrMatrix csr_matmul(const CsrMatrix& A, const CsrMatrix& B) {
    if (A.ncols != B.nrows) throw std::invalid_argument("csr_matmul: shape mismatch");
    std::vector<Triplet> t;
    std::vector<double> acc(B.ncols, 0.0);
    std::vector<int> touched;
    for (int i = 0; i < A.nrows; ++i) {
        touched.clear();
        for (int ka = A.offsets[i]; ka < A.offsets[i + 1]; ++ka) {
            const int j = A.cols[ka];
            const double av = A.vals[ka];
            for (int kb = B.offsets[j]; kb < B.offsets[j + 1]; ++kb) {
                const int c = B.cols[kb];
                if (acc[c] == 0.0) touched.push_back(c);
                acc[c] += av * B.vals[kb];
            }
        }
        for (int c : touched) {
            if (acc[c] != 0.0) t.push_back({i, c, acc[c]});
            acc[c] = 0.0;
        }
    }
    return csr_from_triplets(A.nrows, B.ncols, t);
}

double skew_defect_max(const CsrMatrix& J) {
    if (J.nrows != J.ncols) throw std::invalid_argument("skew_defect_max: not square");
    const CsrMatrix S = csr_add(1.0, J, 1.0, J.transposed());
    double m = 0.0;
    for (double v : S.vals) m = std::max(m, std::fabs(v));
    return m;
}

void BlockBuilder::add_block(int row0, int col0, const CsrMatrix& A, double scale) {
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k)
            trips.push_back({row0 + i, col0 + A.cols[k], scale * A.vals[k]});
}

void BlockBuilder::add_block_transposed(int row0, int col0, const CsrMatrix& A, double scale) {
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k)
            trips.push_back({row0 + A.cols[k], col0 + i, scale * A.vals[k]});
}

DenseMatrix to_dense(const CsrMatrix& A) {
    DenseMatrix D(A.nrows, A.ncols);
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k) D(i, A.cols[k]) = A.vals[k];
    return D;
}

Vec dense_solve(DenseMatrix A, Vec b) {
    if (A.nrows != A.ncols || static_cast<int>(b.size()) != A.nrows)
        throw std::invalid_argument("dense_solve: shape mismatch");
    const int n = A.nrows;
    std::vector<int> piv(n);
    std::iota(piv.begin(), piv.end(), 0);
    for (int k = 0; k < n; ++k) {
        int p = k;
        for (int i = k + 1; i < n; ++i)
            if (std::fabs(A(i, k)) > std::fabs(A(p, k))) p = i;
        if (A(p, k) == 0.0) throw NumericalError("dense_solve: singular matrix");
        if (p != k) {
            for (int j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
            std::swap(b[k], b[p]);
        }
        for (int i = k + 1; i < n; ++i) {
            const double m = A(i, k) / A(k, k);
            if (m == 0.0) continue;
            for (int j = k + 1; j < n; ++j) A(i, j) -= m * A(k, j);
            b[i] -= m * b[k];
        }
    }
    Vec x(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * x[j];
        x[i] = s / A(i, i);
    }
    return x;
}

void cholesky_inplace(DenseMatrix& A) {
    if (A.nrows != A.ncols) throw std::invalid_argument("cholesky: not square");
    const int n = A.nrows;
    for (int j = 0; j < n; ++j) {
        double d = A(j, j);
        for (int k = 0; k < j; ++k) d -= A(j, k) * A(j, k);
        if (d <= 0.0 || !std::isfinite(d)) throw NumericalError("cholesky: matrix not SPD");
        const double ljj = std::sqrt(d);
        A(j, j) = ljj;
        for (int i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (int k = 0; k < j; ++k) s -= A(i, k) * A(j, k);
            A(i, j) = s / ljj;
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) A(i, j) = 0.0;
}

void forward_solve_lower(const DenseMatrix& L, Vec& y) {
    const int n = L.nrows;
    for (int i = 0; i < n; ++i) {
        double s = y[i];
        for (int k = 0; k < i; ++k) s -= L(i, k) * y[k];
        y[i] = s / L(i, i);
    }
}

void backward_solve_lower_t(const DenseMatrix& L, Vec& y) {
    const int n = L.nrows;
    for (int i = n - 1; i >= 0; --i) {
        double s = y[i];
        for (int k = i + 1; k < n; ++k) s -= L(k, i) * y[k];
        y[i] = s / L(i, i);
    }
}

namespace {

// Reverse Cuthill-McKee on the symmetrized pattern, BFS from a low-degree node
// of each connected component.
std::vector<int> rcm_order(const CsrMatrix& A) {
    const int n = A.nrows;
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i) {
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k) {
            const int j = A.cols[k];
            if (j != i) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
        }
    }
    for (auto& v : adj) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    std::vector<int> order;
    order.reserve(n);
    std::vector<char> seen(n, 0);
    std::vector<int> nodes(n);
    std::iota(nodes.begin(), nodes.end(), 0);
    std::sort(nodes.begin(), nodes.end(),
              [&](int a, int b) { return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b; });
    for (int start : nodes) {
        if (seen[start]) continue;
        std::queue<int> q;
        q.push(start);
        seen[start] = 1;
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            order.push_back(u);
            std::vector<int> nb;
            for (int v : adj[u])
                if (!seen[v]) nb.push_back(v);
            std::sort(nb.begin(), nb.end(),
                      [&](int a, int b) { return adj[a].size() != adj[b].size() ? adj[a].size() < adj[b].size() : a < b; });
            for (int v : nb) {
                seen[v] = 1;
                q.push(v);
            }
        }
    }
    std::reverse(order.begin(), order.end());
    return order;
}

} // namespace

LuFactorization::LuFactorization(const CsrMatrix& A) : orig_(A) {
    if (A.nrows != A.ncols) throw std::invalid_argument("lu_factorize: matrix not square");
    n_ = A.nrows;
    perm_ = rcm_order(A);
    iperm_.assign(n_, 0);
    for (int i = 0; i < n_; ++i) iperm_[perm_[i]] = i;

    int kl = 0, ku = 0;
    for (int i = 0; i < n_; ++i) {
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k) {
            const int pi = iperm_[i], pj = iperm_[A.cols[k]];
            kl = std::max(kl, pi - pj);
            ku = std::max(ku, pj - pi);
        }
    }
    kl_ = kl;
    ku_ = ku;
    const int ld = 2 * kl_ + ku_ + 1;
    band_.assign(static_cast<size_t>(ld) * n_, 0.0);
    // band_(r, j) stores entry (i, j) with r = i - j + kl + ku; fill-in from
    // pivoting occupies r in [0, kl+ku], original entries r in [kl, kl+ku+kl].
    auto bref = [&](int i, int j) -> double& {
        return band_[static_cast<size_t>(i - j + kl_ + ku_) * n_ + j];
    };
    for (int i = 0; i < n_; ++i)
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k)
            bref(iperm_[i], iperm_[A.cols[k]]) += A.vals[k];

    pivot_.assign(n_, 0);
    double maxabs = 0.0;
    for (double v : A.vals) maxabs = std::max(maxabs, std::fabs(v));
    const double tiny = 1e-300 + 1e-16 * maxabs * 1e-4;

    for (int k = 0; k < n_; ++k) {
        const int lastrow = std::min(n_ - 1, k + kl_);
        int p = k;
        double pmax = std::fabs(bref(k, k));
        for (int i = k + 1; i <= lastrow; ++i) {
            const double v = std::fabs(bref(i, k));
            if (v > pmax) {
                pmax = v;
                p = i;
            }
        }
        if (!(pmax > tiny)) throw NumericalError("lu_factorize: numerically singular pivot");
        pivot_[k] = p;
        const int lastcol = std::min(n_ - 1, k + kl_ + ku_);
        if (p != k)
            for (int j = k; j <= lastcol; ++j) std::swap(bref(k, j), bref(p, j));
        const double dkk = bref(k, k);
        for (int i = k + 1; i <= lastrow; ++i) {
            const double m = bref(i, k) / dkk;
            bref(i, k) = m;
            if (m == 0.0) continue;
            for (int j = k + 1; j <= lastcol; ++j) bref(i, j) -= m * bref(k, j);
        }
    }
}

Vec LuFactorization::solve_band(const Vec& bp) const {
    Vec x = bp;
    const auto bref = [&](int i, int j) -> double {
        return band_[static_cast<size_t>(i - j + kl_ + ku_) * n_ + j];
    };
    for (int k = 0; k < n_; ++k) {
        if (pivot_[k] != k) std::swap(x[k], x[pivot_[k]]);
        const int lastrow = std::min(n_ - 1, k + kl_);
        for (int i = k + 1; i <= lastrow; ++i) x[i] -= bref(i, k) * x[k];
    }
    for (int i = n_ - 1; i >= 0; --i) {
        double s = x[i];
        const int lastcol = std::min(n_ - 1, i + kl_ + ku_);
        for (int j = i + 1; j <= lastcol; ++j) s -= bref(i, j) * x[j];
        x[i] = s / bref(i, i);
    }
    return x;
}

Vec LuFactorization::solve(const Vec& b) const {
    if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("lu_solve: dimension mismatch");
    Vec bp(n_);
    for (int i = 0; i < n_; ++i) bp[i] = b[perm_[i]];
    Vec xp = solve_band(bp);
    Vec x(n_);
    for (int i = 0; i < n_; ++i) x[perm_[i]] = xp[i];
    // one refinement pass against the unpermuted matrix
    Vec r = b;
    orig_.apply_add(-1.0, x, r);
    Vec rp(n_);
    for (int i = 0; i < n_; ++i) rp[i] = r[perm_[i]];
    Vec dp = solve_band(rp);
    for (int i = 0; i < n_; ++i) x[perm_[i]] += dp[i];
    return x;
}

LuFactorization lu_factorize(const CsrMatrix& A) { return LuFactorization(A); }

Vec lu_solve(const LuFactorization& F, const Vec& b) { return F.solve(b); }

namespace {

inline double hypot2(double a, double b) { return std::hypot(a, b); }

} // namespace

void tridiag_eig(std::vector<double>& d, std::vector<double>& e, DenseMatrix* Z) {
    const int n = static_cast<int>(d.size());
    if (n == 0) return;
    if (static_cast<int>(e.size()) != n - 1 && n > 1)
        throw std::invalid_argument("tridiag_eig: off-diagonal size must be n-1");
    std::vector<double> ee(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) ee[i] = e[i];
    // deflation needs an absolute floor: zero-diagonal (skew-derived)
    // tridiagonals never satisfy a purely diagonal-relative test
    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        anorm = std::max(anorm, std::fabs(d[i]) + (i + 1 < n ? std::fabs(ee[i]) : 0.0) +
                                    (i > 0 ? std::fabs(ee[i - 1]) : 0.0));

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(ee[m]) <= 2.3e-16 * (dd + anorm)) break;
            }
            if (m != l) {
                if (++iter == 100) throw NumericalError("tridiag_eig: too many QL iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * ee[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + ee[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * ee[i];
                    const double b = c * ee[i];
                    r = hypot2(f, g);
                    ee[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        ee[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (Z) {
                        for (int k = 0; k < Z->nrows; ++k) {
                            f = (*Z)(k, i + 1);
                            (*Z)(k, i + 1) = s * (*Z)(k, i) + c * f;
                            (*Z)(k, i) = c * (*Z)(k, i) - s * f;
                        }
                    }
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l] -= p;
                ee[l] = g;
                ee[m] = 0.0;
            }
        } while (m != l);
    }
    for (int i = 0; i + 1 < n; ++i) e[i] = ee[i];
    // sort ascending, permuting columns of Z alongside
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
    std::vector<double> ds(n);
    for (int i = 0; i < n; ++i) ds[i] = d[idx[i]];
    if (Z) {
        DenseMatrix Zs(Z->nrows, Z->ncols);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < Z->nrows; ++k) Zs(k, j) = (*Z)(k, idx[j]);
        *Z = std::move(Zs);
    }
    d = std::move(ds);
}

namespace {

// Householder reduction of a skew-symmetric matrix to tridiagonal form, lower
// triangle only. On exit e[k] = T(k+1,k) and, if Q is non-null, *Q holds the
// accumulated orthogonal transform (A = Q T Q^T).
void skew_tridiagonalize(DenseMatrix& A, std::vector<double>& e, DenseMatrix* Q) {
    const int n = A.nrows;
    e.assign(std::max(0, n - 1), 0.0);
    std::vector<Vec> house_v;
    std::vector<double> house_beta;
    Vec v(n), p(n);
    for (int k = 0; k + 2 < n; ++k) {
        // column k below the subdiagonal
        double xnorm2 = 0.0;
        for (int i = k + 2; i < n; ++i) xnorm2 += A(i, k) * A(i, k);
        const double x0 = A(k + 1, k);
        if (xnorm2 == 0.0) {
            e[k] = x0;
            if (Q) {
                house_v.emplace_back();
                house_beta.push_back(0.0);
            }
            continue;
        }
        const double alpha = -(x0 >= 0 ? 1.0 : -1.0) * std::sqrt(x0 * x0 + xnorm2);
        std::fill(v.begin(), v.end(), 0.0);
        v[k + 1] = x0 - alpha;
        for (int i = k + 2; i < n; ++i) v[i] = A(i, k);
        double vtv = 0.0;
        for (int i = k + 1; i < n; ++i) vtv += v[i] * v[i];
        const double beta = 2.0 / vtv;
        // p = A v over the trailing block, using the lower triangle of skew A
        std::fill(p.begin(), p.end(), 0.0);
        for (int i = k + 1; i < n; ++i) {
            const double vi = v[i];
            double s = 0.0;
            const double* arow = &A.a[static_cast<size_t>(i) * A.ncols];
            for (int j = k + 1; j < i; ++j) {
                s += arow[j] * v[j];
                p[j] -= arow[j] * vi;
            }
            p[i] += s;
        }
        // A <- A + beta v p^T - beta p v^T, lower triangle
        for (int i = k + 1; i < n; ++i) {
            double* arow = &A.a[static_cast<size_t>(i) * A.ncols];
            const double vi = beta * v[i], pi = beta * p[i];
            for (int j = k + 1; j < i; ++j) arow[j] += vi * p[j] - pi * v[j];
        }
        A(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) A(i, k) = 0.0;
        e[k] = alpha;
        if (Q) {
            house_v.push_back(Vec(v.begin() + (k + 1), v.end()));
            house_beta.push_back(beta);
        }
    }
    if (n >= 2) e[n - 2] = A(n - 1, n - 2);
    if (Q) {
        *Q = DenseMatrix(n, n);
        for (int i = 0; i < n; ++i) (*Q)(i, i) = 1.0;
        // accumulate Q = H_0 H_1 ... applied from the left to identity
        for (int k = static_cast<int>(house_v.size()) - 1; k >= 0; --k) {
            if (house_beta[k] == 0.0) continue;
            const Vec& hv = house_v[k];
            const int off = k + 1;
            for (int col = 0; col < n; ++col) {
                double s = 0.0;
                for (size_t i = 0; i < hv.size(); ++i) s += hv[i] * (*Q)(off + static_cast<int>(i), col);
                s *= house_beta[k];
                for (size_t i = 0; i < hv.size(); ++i) (*Q)(off + static_cast<int>(i), col) -= s * hv[i];
            }
        }
    }
}

} // namespace

std::vector<EigPair> dense_generalized_eig(const DenseMatrix& M, const DenseMatrix& J) {
    if (M.nrows != M.ncols || J.nrows != J.ncols || M.nrows != J.nrows)
        throw std::invalid_argument("dense_generalized_eig: shape mismatch");
    const int n = M.nrows;
    // require skew J: the reduction below relies on it
    double jmax = 0.0, defect = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            jmax = std::max(jmax, std::fabs(J(i, j)));
            defect = std::max(defect, std::fabs(J(i, j) + J(j, i)));
        }
    if (defect > 1e-12 * std::max(1.0, jmax))
        throw std::invalid_argument("dense_generalized_eig: J is not skew-symmetric");

    DenseMatrix L = M;
    cholesky_inplace(L); // throws if M not SPD
    // A = L^{-1} J L^{-T}, built column by column
    DenseMatrix A = J;
    for (int c = 0; c < n; ++c) {
        Vec col(n);
        for (int i = 0; i < n; ++i) col[i] = A(i, c);
        forward_solve_lower(L, col);
        for (int i = 0; i < n; ++i) A(i, c) = col[i];
    }
    for (int r = 0; r < n; ++r) {
        Vec row(n);
        for (int j = 0; j < n; ++j) row[j] = A(r, j);
        forward_solve_lower(L, row);
        for (int j = 0; j < n; ++j) A(r, j) = row[j];
    }
    // enforce exact skewness of the reduced matrix against roundoff
    for (int i = 0; i < n; ++i) {
        A(i, i) = 0.0;
        for (int j = 0; j < i; ++j) {
            const double v = 0.5 * (A(i, j) - A(j, i));
            A(i, j) = v;
            A(j, i) = -v;
        }
    }

    std::vector<double> e;
    DenseMatrix Q;
    skew_tridiagonalize(A, e, &Q);
    // eigenvalues of skew T equal i * eigenvalues of the symmetric tridiagonal
    // with the same off-diagonals; eigenvectors map through diag((-i)^k)
    std::vector<double> d(n, 0.0);
    std::vector<double> ecopy = e;
    DenseMatrix Z(n, n);
    for (int i = 0; i < n; ++i) Z(i, i) = 1.0;
    tridiag_eig(d, ecopy, &Z);

    std::vector<EigPair> out(n);
    Vec re(n), im(n), wre(n), wim(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double z = Z(k, j);
            switch (k & 3) { // (-i)^k
                case 0: re[k] = z;  im[k] = 0;   break;
                case 1: re[k] = 0;  im[k] = -z;  break;
                case 2: re[k] = -z; im[k] = 0;   break;
                default: re[k] = 0; im[k] = z;   break;
            }
        }
        // back-transform through Q, then through L^{-T}
        for (int i = 0; i < n; ++i) {
            double sr = 0.0, si = 0.0;
            for (int k = 0; k < n; ++k) {
                sr += Q(i, k) * re[k];
                si += Q(i, k) * im[k];
            }
            wre[i] = sr;
            wim[i] = si;
        }
        backward_solve_lower_t(L, wre);
        backward_solve_lower_t(L, wim);
        out[j].lambda = std::complex<double>(0.0, d[j]);
        out[j].vec.resize(n);
        for (int i = 0; i < n; ++i) out[j].vec[i] = std::complex<double>(wre[i], wim[i]);
    }
    return out;
}

std::vector<double> skew_pencil_frequencies(const std::vector<DenseMatrix>& M_blocks,
                                            const CsrMatrix& J) {
    const int n = J.nrows;
    if (J.ncols != n) throw std::invalid_argument("skew_pencil_frequencies: J not square");
    int total = 0;
    std::vector<int> off;
    for (const auto& B : M_blocks) {
        off.push_back(total);
        if (B.nrows != B.ncols) throw std::invalid_argument("skew_pencil_frequencies: block not square");
        total += B.nrows;
    }
    if (total != n) throw std::invalid_argument("skew_pencil_frequencies: block sizes do not sum to dim(J)");

    std::vector<DenseMatrix> Lb = M_blocks;
    for (auto& B : Lb) cholesky_inplace(B);

    DenseMatrix A = to_dense(J);
    // A <- L^{-1} A: forward solves per block row, applied to all columns
    for (size_t b = 0; b < Lb.size(); ++b) {
        const DenseMatrix& L = Lb[b];
        const int o = off[b], m = L.nrows;
        for (int i = 0; i < m; ++i) {
            double* rowi = &A.a[static_cast<size_t>(o + i) * n];
            for (int k = 0; k < i; ++k) {
                const double lik = L(i, k);
                if (lik == 0.0) continue;
                const double* rowk = &A.a[static_cast<size_t>(o + k) * n];
                for (int c = 0; c < n; ++c) rowi[c] -= lik * rowk[c];
            }
            const double inv = 1.0 / L(i, i);
            for (int c = 0; c < n; ++c) rowi[c] *= inv;
        }
    }
    // A <- A L^{-T}: same solves applied to rows from the right
    for (size_t b = 0; b < Lb.size(); ++b) {
        const DenseMatrix& L = Lb[b];
        const int o = off[b], m = L.nrows;
        for (int r = 0; r < n; ++r) {
            double* row = &A.a[static_cast<size_t>(r) * n + o];
            for (int i = 0; i < m; ++i) {
                double s = row[i];
                for (int k = 0; k < i; ++k) s -= L(i, k) * row[k];
                row[i] = s / L(i, i);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        A(i, i) = 0.0;
        for (int j = 0; j < i; ++j) {
            const double v = 0.5 * (A(i, j) - A(j, i));
            A(i, j) = v;
            A(j, i) = -v;
        }
    }
    std::vector<double> e;
    skew_tridiagonalize(A, e, nullptr);
    std::vector<double> d(n, 0.0);
    tridiag_eig(d, e, nullptr);
    return d; // ascending, in +/- pairs
}

void write_matrix_market(const CsrMatrix& A, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path);
    f << "%%MatrixMarket matrix coordinate real general\n";
    f << A.nrows << " " << A.ncols << " " << A.nnz() << "\n";
    char buf[64];
    for (int i = 0; i < A.nrows; ++i)
        for (int k = A.offsets[i]; k < A.offsets[i + 1]; ++k) {
            std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i + 1, A.cols[k] + 1, A.vals[k]);
            f << buf;
        }
    if (!f) throw IoError("write failed: " + path);
}

} // namespace phfem
