#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nsconic {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

double dot(VecView a, VecView b) {
    double acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm2(VecView a) { return std::sqrt(dot(a, a)); }

Vec operator+(VecView a, VecView b) {
    Vec r(a.begin(), a.end());
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Vec operator-(VecView a, VecView b) {
    Vec r(a.begin(), a.end());
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

Vec scaled(VecView a, double t) {
    Vec r(a.begin(), a.end());
    for (double &v : r) v *= t;
    return r;
}

void axpy(Vec &y, double t, VecView x) {
    for (size_t i = 0; i < y.size(); ++i) y[i] += t * x[i];
}

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

Vec DenseMatrix::apply(VecView x) const {
    if (static_cast<int>(x.size()) != cols)
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vec r(rows, 0.0);
    for (int i = 0; i < rows; ++i) {
        double acc = 0.0;
        const double *row = a.data() + static_cast<size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) acc += row[j] * x[j];
        r[i] = acc;
    }
    return r;
}

Vec DenseMatrix::apply_transpose(VecView y) const {
    if (static_cast<int>(y.size()) != rows)
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vec r(cols, 0.0);
    for (int i = 0; i < rows; ++i) {
        const double *row = a.data() + static_cast<size_t>(i) * cols;
        for (int j = 0; j < cols; ++j) r[j] += row[j] * y[i];
    }
    return r;
}

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::fabs(v));
    return m;
}

SymMatrix SymMatrix::identity(int n) {
    SymMatrix s(n);
    for (int i = 0; i < n; ++i) s.at(i, i) = 1.0;
    return s;
}

SymMatrix SymMatrix::diag(VecView d) {
    SymMatrix s(static_cast<int>(d.size()));
    for (int i = 0; i < s.n; ++i) s.at(i, i) = d[i];
    return s;
}

Vec SymMatrix::apply(VecView x) const {
    if (static_cast<int>(x.size()) != n)
        throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
    Vec r(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double *row = p.data() + static_cast<size_t>(i) * (i + 1) / 2;
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            acc += row[j] * x[j];
            r[j] += row[j] * x[i];
        }
        acc += row[i] * x[i];
        r[i] += acc;
    }
    return r;
}

DenseMatrix SymMatrix::to_dense() const {
    DenseMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = at(i, j);
    return m;
}

double SymMatrix::frobenius() const {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) acc += 2.0 * at(i, j) * at(i, j);
        acc += at(i, i) * at(i, i);
    }
    return std::sqrt(acc);
}

double SymMatrix::max_diag() const {
    double m = 0.0;
    for (int i = 0; i < n; ++i) m = std::max(m, std::fabs(at(i, i)));
    return m;
}

void SymMatrix::add_outer(VecView v, double coef) {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) at(i, j) += coef * v[i] * v[j];
}

void SymMatrix::add_scaled(const SymMatrix &s, double coef) {
    for (size_t k = 0; k < p.size(); ++k) p[k] += coef * s.p[k];
}

Vec CholeskyFactor::forward(VecView rhs) const {
    Vec x(rhs.begin(), rhs.end());
    for (int i = 0; i < n; ++i) {
        const double *row = l.data() + static_cast<size_t>(i) * (i + 1) / 2;
        double acc = x[i];
        for (int j = 0; j < i; ++j) acc -= row[j] * x[j];
        x[i] = acc / row[i];
    }
    return x;
}

Vec CholeskyFactor::backward(VecView rhs) const {
    Vec x(rhs.begin(), rhs.end());
    for (int i = n - 1; i >= 0; --i) {
        double acc = x[i];
        for (int k = i + 1; k < n; ++k) acc -= at(k, i) * x[k];
        x[i] = acc / at(i, i);
    }
    return x;
}

Vec CholeskyFactor::solve(VecView rhs) const { return backward(forward(rhs)); }

CholeskyFactor cholesky(const SymMatrix &s) {
    if (s.n < 1) throw Error(ErrorCode::InvalidArgument, "cholesky of empty matrix");
    const double tol = s.n * kEps * s.max_diag();
    CholeskyFactor f;
    f.n = s.n;
    f.l = s.p;
    for (int i = 0; i < s.n; ++i) {
        double *row_i = f.l.data() + static_cast<size_t>(i) * (i + 1) / 2;
        for (int j = 0; j < i; ++j) {
            const double *row_j = f.l.data() + static_cast<size_t>(j) * (j + 1) / 2;
            double acc = row_i[j];
            for (int k = 0; k < j; ++k) acc -= row_i[k] * row_j[k];
            row_i[j] = acc / row_j[j];
        }
        double d = row_i[i];
        for (int k = 0; k < i; ++k) d -= row_i[k] * row_i[k];
        if (d <= tol)
            throw Error(ErrorCode::NotPositiveDefinite, "matrix is not positive definite");
        row_i[i] = std::sqrt(d);
    }
    return f;
}

Vec solve_spd(const SymMatrix &s, VecView rhs) { return cholesky(s).solve(rhs); }

SymMatrix spd_inverse(const SymMatrix &s) {
    CholeskyFactor f = cholesky(s);
    SymMatrix inv(s.n);
    Vec e(s.n, 0.0);
    for (int j = 0; j < s.n; ++j) {
        e[j] = 1.0;
        Vec col = f.solve(e);
        for (int i = j; i < s.n; ++i) inv.at(i, j) = col[i];
        e[j] = 0.0;
    }
    return inv;
}

LuFactor lu_factor(const DenseMatrix &m) {
    if (m.rows != m.cols) throw Error(ErrorCode::DimensionMismatch, "lu of non-square matrix");
    const int n = m.rows;
    const double tol = n * kEps * m.max_abs();
    LuFactor f;
    f.n = n;
    f.lu = m;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(f.lu.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::fabs(f.lu.at(i, k));
            if (v > best) {
                best = v;
                piv = i;
            }
        }
        if (best <= tol) throw Error(ErrorCode::SingularSystem, "singular linear system");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu.at(k, j), f.lu.at(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        const double pivot = f.lu.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double mult = f.lu.at(i, k) / pivot;
            f.lu.at(i, k) = mult;
            for (int j = k + 1; j < n; ++j) f.lu.at(i, j) -= mult * f.lu.at(k, j);
        }
    }
    return f;
}

Vec LuFactor::solve(VecView rhs) const {
    if (static_cast<int>(rhs.size()) != n)
        throw Error(ErrorCode::DimensionMismatch, "rhs size mismatch");
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = rhs[perm[i]];
    for (int i = 0; i < n; ++i) {
        double acc = x[i];
        for (int j = 0; j < i; ++j) acc -= lu.at(i, j) * x[j];
        x[i] = acc;
    }
    for (int i = n - 1; i >= 0; --i) {
        double acc = x[i];
        for (int j = i + 1; j < n; ++j) acc -= lu.at(i, j) * x[j];
        x[i] = acc / lu.at(i, i);
    }
    return x;
}

Vec solve_general(const DenseMatrix &m, VecView rhs) { return lu_factor(m).solve(rhs); }

double norm_induced(VecView v, const SymMatrix &s) {
    const double q = dot(v, s.apply(v));
    if (q < -1e-12)
        throw Error(ErrorCode::NegativeQuadratic, "negative quadratic form in induced norm");
    return std::sqrt(std::max(q, 0.0));
}

double norm_dual(VecView v, const SymMatrix &s) { return norm_dual(v, cholesky(s)); }

double norm_dual(VecView v, const CholeskyFactor &chol) {
    // v' S^{-1} v = ||L^{-1} v||^2
    return norm2(chol.forward(v));
}

namespace {

// Cyclic Jacobi on a dense symmetric work matrix; off-diagonal Frobenius
// threshold 1e-13 * ||A||_F, fixed sweep order for reproducibility.
std::vector<double> jacobi_eigenvalues(DenseMatrix a) {
    const int n = a.rows;
    if (n == 1) return {a.at(0, 0)};
    double frob = 0.0;
    for (double v : a.a) frob += v * v;
    frob = std::sqrt(frob);
    const double stop = 1e-13 * frob;
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += 2.0 * a.at(i, j) * a.at(i, j);
        if (std::sqrt(off) <= stop) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double app = a.at(p, p);
                const double aqq = a.at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                double t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a.at(k, p);
                    const double akq = a.at(k, q);
                    a.at(k, p) = c * akp - s * akq;
                    a.at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a.at(p, k);
                    const double aqk = a.at(q, k);
                    a.at(p, k) = c * apk - s * aqk;
                    a.at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace

std::vector<double> sym_eigenvalues(const SymMatrix &a) { return jacobi_eigenvalues(a.to_dense()); }

std::vector<double> congruence_eigenvalues(const SymMatrix &q, const CholeskyFactor &p_chol) {
    const int n = q.n;
    if (n != p_chol.n) throw Error(ErrorCode::DimensionMismatch, "congruence size mismatch");
    // B = L^{-1} Q L^{-T}; build column by column, then symmetrize.
    DenseMatrix y(n, n); // columns of L^{-1} Q
    Vec col(n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) col[i] = q.at(i, j);
        Vec u = p_chol.forward(col);
        for (int i = 0; i < n; ++i) y.at(i, j) = u[i];
    }
    DenseMatrix b(n, n); // rows: L^{-1} applied to rows of Y', i.e. B = Y L^{-T}
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) col[k] = y.at(i, k);
        Vec u = p_chol.forward(col); // (L^{-1} Y(i,:)')' = row of Y L^{-T}
        for (int k = 0; k < n; ++k) b.at(i, k) = u[k];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            const double m = 0.5 * (b.at(i, j) + b.at(j, i));
            b.at(i, j) = m;
            b.at(j, i) = m;
        }
    return jacobi_eigenvalues(std::move(b));
}

double operator_norm(const SymMatrix &q, const SymMatrix &p) {
    std::vector<double> eig = congruence_eigenvalues(q, cholesky(p));
    return std::max(std::fabs(eig.front()), std::fabs(eig.back()));
}

bool loewner_sandwich(const SymMatrix &p, const SymMatrix &q, double eps) {
    if (eps < 0.0) throw Error(ErrorCode::InvalidArgument, "negative sandwich width");
    std::vector<double> eig = congruence_eigenvalues(q, cholesky(p));
    const double slack = 1e-12 * (1.0 + eps);
    return eig.front() >= 1.0 - eps - slack && eig.back() <= 1.0 + eps + slack;
}

} // namespace nsconic
