#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "otabench/errors.hpp"

namespace otabench {

namespace detail {
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
}  // namespace detail

/// Dense row-major n x n matrix with an attached right-hand side,
/// addressed in MNA index space: index 0 is ground and is discarded by
/// the stamp helpers, so callers stamp with full node/branch indices.
template <typename Scalar>
struct SystemMatrix {
    int n = 0;                 // reduced dimension: nodes-1 + branches
    std::vector<Scalar> a;     // row-major n*n
    std::vector<Scalar> rhs;   // length n

    explicit SystemMatrix(int dim = 0) { resize(dim); }

    void resize(int dim) {
        n = dim;
        a.assign(static_cast<std::size_t>(n) * n, Scalar{});
        rhs.assign(n, Scalar{});
    }

    void clear() {
        std::fill(a.begin(), a.end(), Scalar{});
        std::fill(rhs.begin(), rhs.end(), Scalar{});
    }

    Scalar& at(int row, int col) { return a[static_cast<std::size_t>(row) * n + col]; }
    const Scalar& at(int row, int col) const {
        return a[static_cast<std::size_t>(row) * n + col];
    }

    /// Add `v` at (i, j) in MNA index space; contributions touching
    /// ground (index 0) vanish.
    void add(int i, int j, Scalar v) {
        if (i == 0 || j == 0) return;
        at(i - 1, j - 1) += v;
    }

    void add_rhs(int i, Scalar v) {
        if (i == 0) return;
        rhs[i - 1] += v;
    }
};

/// Solve A x = b by LU with partial pivoting. The factorization is done
/// on a copy; A and b are untouched. Throws SingularMatrix when a pivot
/// falls below 1e-14 * ||A||_inf.
template <typename Scalar>
std::vector<Scalar> solve_dense(const SystemMatrix<Scalar>& sys) {
    const int n = sys.n;
    if (n == 0) return {};
    std::vector<Scalar> a = sys.a;
    std::vector<Scalar> x = sys.rhs;

    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) row_sum += detail::magnitude(a[i * std::size_t(n) + j]);
        norm = std::max(norm, row_sum);
    }
    const double pivot_floor = 1e-14 * std::max(norm, 1e-300);

    for (int k = 0; k < n; ++k) {
        int pivot_row = k;
        double best = detail::magnitude(a[std::size_t(k) * n + k]);
        for (int i = k + 1; i < n; ++i) {
            const double m = detail::magnitude(a[std::size_t(i) * n + k]);
            if (m > best) {
                best = m;
                pivot_row = i;
            }
        }
        if (best < pivot_floor)
            throw SingularMatrix("solve_dense: pivot " + std::to_string(best) +
                                 " below threshold at column " + std::to_string(k));
        if (pivot_row != k) {
            for (int j = 0; j < n; ++j)
                std::swap(a[std::size_t(k) * n + j], a[std::size_t(pivot_row) * n + j]);
            std::swap(x[k], x[pivot_row]);
        }
        const Scalar pivot = a[std::size_t(k) * n + k];
        for (int i = k + 1; i < n; ++i) {
            const Scalar factor = a[std::size_t(i) * n + k] / pivot;
            if (factor == Scalar{}) continue;
            a[std::size_t(i) * n + k] = factor;
            for (int j = k + 1; j < n; ++j)
                a[std::size_t(i) * n + j] -= factor * a[std::size_t(k) * n + j];
            x[i] -= factor * x[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        Scalar acc = x[i];
        for (int j = i + 1; j < n; ++j) acc -= a[std::size_t(i) * n + j] * x[j];
        x[i] = acc / a[std::size_t(i) * n + i];
    }
    return x;
}

}  // namespace otabench
