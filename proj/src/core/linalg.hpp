#pragma once

#include <span>
#include <vector>

#include "core/errors.hpp"

namespace nsconic {

using Vec = std::vector<double>;
using VecView = std::span<const double>;

double dot(VecView a, VecView b);
double norm2(VecView a);
Vec operator+(VecView a, VecView b);
Vec operator-(VecView a, VecView b);
Vec scaled(VecView a, double t);
// y += t * x
void axpy(Vec &y, double t, VecView x);

// Row-major dense rectangular matrix.
struct DenseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}

    double &at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    static DenseMatrix identity(int n);

    Vec apply(VecView x) const;           // A x
    Vec apply_transpose(VecView y) const; // A' y
    double max_abs() const;
};

// Symmetric matrix in packed lower-triangular storage, entry (i,j) with i >= j
// lives at i*(i+1)/2 + j.
struct SymMatrix {
    int n = 0;
    std::vector<double> p;

    SymMatrix() = default;
    explicit SymMatrix(int dim) : n(dim), p(static_cast<size_t>(dim) * (dim + 1) / 2, 0.0) {}

    double &at(int i, int j) {
        if (i < j) std::swap(i, j);
        return p[static_cast<size_t>(i) * (i + 1) / 2 + j];
    }
    double at(int i, int j) const {
        if (i < j) std::swap(i, j);
        return p[static_cast<size_t>(i) * (i + 1) / 2 + j];
    }

    static SymMatrix identity(int n);
    static SymMatrix diag(VecView d);

    Vec apply(VecView x) const;
    DenseMatrix to_dense() const;
    double frobenius() const;
    double max_diag() const;
    // *this += coef * v v'
    void add_outer(VecView v, double coef);
    // *this += coef * S
    void add_scaled(const SymMatrix &s, double coef);
};

// Lower-triangular Cholesky factor, packed storage as SymMatrix.
struct CholeskyFactor {
    int n = 0;
    std::vector<double> l;

    double at(int i, int j) const { return l[static_cast<size_t>(i) * (i + 1) / 2 + j]; }

    Vec forward(VecView rhs) const;  // L^{-1} rhs
    Vec backward(VecView rhs) const; // L^{-T} rhs
    Vec solve(VecView rhs) const;    // (L L')^{-1} rhs
};

CholeskyFactor cholesky(const SymMatrix &s);
Vec solve_spd(const SymMatrix &s, VecView rhs);
SymMatrix spd_inverse(const SymMatrix &s);

// LU factorization with partial pivoting.
struct LuFactor {
    int n = 0;
    DenseMatrix lu;
    std::vector<int> perm;

    Vec solve(VecView rhs) const;
};

LuFactor lu_factor(const DenseMatrix &m);
Vec solve_general(const DenseMatrix &m, VecView rhs);

// sqrt(v' S v) and sqrt(v' S^{-1} v).
double norm_induced(VecView v, const SymMatrix &s);
double norm_dual(VecView v, const SymMatrix &s);
double norm_dual(VecView v, const CholeskyFactor &chol);

// Eigenvalues of a symmetric matrix by cyclic Jacobi sweeps, ascending order.
std::vector<double> sym_eigenvalues(const SymMatrix &a);

// Eigenvalues of L^{-1} Q L^{-T} where P = L L'; these coincide with the
// eigenvalues of P^{-1/2} Q P^{-1/2}.
std::vector<double> congruence_eigenvalues(const SymMatrix &q, const CholeskyFactor &p_chol);

// sup_{||u||_P <= 1} ||Q u||_P^*  ==  max |eig(P^{-1/2} Q P^{-1/2})|.
double operator_norm(const SymMatrix &q, const SymMatrix &p);

// True iff (1-eps) P <= Q <= (1+eps) P in the semidefinite order.
bool loewner_sandwich(const SymMatrix &p, const SymMatrix &q, double eps);

} // namespace nsconic
