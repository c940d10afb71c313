#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "cdzero/errors.hpp"
#include "cdzero/matrix.hpp"
#include "cdzero/rational.hpp"

namespace cdzero {

namespace detail {

/// Row echelon form over the integers by fraction-free (Bareiss) elimination.
/// Rows are pre-scaled to clear denominators; `det_scale` collects those row
/// factors and `sign` the row-swap parity so the caller can recover the exact
/// rational determinant from the final pivot.
struct FractionFreeEchelon {
    Matrix<BigInt> u;
    std::vector<int> pivot_cols;
    int rank = 0;
    int sign = 1;
    Rational det_scale = 1;
};

inline FractionFreeEchelon fraction_free_echelon(const Matrix<Rational>& m) {
    FractionFreeEchelon out;
    const int rows = m.rows(), cols = m.cols();
    out.u = Matrix<BigInt>(rows, cols);
    for (int i = 0; i < rows; ++i) {
        BigInt den_lcm = 1;
        for (int j = 0; j < cols; ++j)
            den_lcm = boost::multiprecision::lcm(den_lcm, BigInt(boost::multiprecision::denominator(m(i, j))));
        for (int j = 0; j < cols; ++j) {
            const Rational scaled = m(i, j) * Rational(den_lcm);
            out.u(i, j) = BigInt(boost::multiprecision::numerator(scaled));
        }
        out.det_scale *= Rational(den_lcm);
    }

    BigInt prev = 1;
    int row = 0;
    for (int col = 0; col < cols && row < rows; ++col) {
        int piv = -1;
        for (int r = row; r < rows; ++r)
            if (out.u(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < cols; ++j) std::swap(out.u(piv, j), out.u(row, j));
            out.sign = -out.sign;
        }
        const BigInt p = out.u(row, col);
        for (int r = row + 1; r < rows; ++r) {
            const BigInt f = out.u(r, col);
            out.u(r, col) = 0;
            for (int j = col + 1; j < cols; ++j)
                out.u(r, j) = (p * out.u(r, j) - f * out.u(row, j)) / prev;
        }
        prev = p;
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.rank = row;
    return out;
}

}  // namespace detail

inline int rank_exact(const Matrix<Rational>& m) {
    return detail::fraction_free_echelon(m).rank;
}

inline Rational det_exact(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("determinant needs a square matrix");
    if (m.rows() == 0) return 1;
    const auto ech = detail::fraction_free_echelon(m);
    if (ech.rank < m.rows()) return 0;
    Rational det = Rational(ech.u(m.rows() - 1, m.cols() - 1)) / ech.det_scale;
    return ech.sign < 0 ? -det : det;
}

/// Integer-normalized basis of the null space: each vector has coprime integer
/// coordinates with positive leading entry.
inline std::vector<std::vector<Rational>> kernel_exact(const Matrix<Rational>& m) {
    const auto ech = detail::fraction_free_echelon(m);
    const int cols = m.cols();
    std::vector<bool> is_pivot(std::size_t(cols), false);
    for (int c : ech.pivot_cols) is_pivot[std::size_t(c)] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[std::size_t(free_col)]) continue;
        std::vector<Rational> x(std::size_t(cols), Rational(0));
        x[std::size_t(free_col)] = 1;
        for (int k = ech.rank - 1; k >= 0; --k) {
            const int pc = ech.pivot_cols[std::size_t(k)];
            Rational acc = 0;
            for (int j = pc + 1; j < cols; ++j)
                if (x[std::size_t(j)] != 0) acc += Rational(ech.u(k, j)) * x[std::size_t(j)];
            x[std::size_t(pc)] = -acc / Rational(ech.u(k, pc));
        }
        BigInt den_lcm = 1;
        for (const Rational& v : x)
            den_lcm = boost::multiprecision::lcm(den_lcm, BigInt(boost::multiprecision::denominator(v)));
        BigInt content = 0;
        for (Rational& v : x) {
            v *= Rational(den_lcm);
            content = boost::multiprecision::gcd(content, BigInt(boost::multiprecision::numerator(v)));
        }
        if (content > 1)
            for (Rational& v : x) v /= Rational(content);
        for (const Rational& v : x) {
            if (v == 0) continue;
            if (v < 0)
                for (Rational& w : x) w = -w;
            break;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

inline Matrix<Rational> inverse_exact(const Matrix<Rational>& m) {
    if (m.rows() != m.cols()) throw PreconditionError("inverse needs a square matrix");
    const int n = m.rows();
    Matrix<Rational> a = m;
    Matrix<Rational> inv = Matrix<Rational>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw PreconditionError("matrix is singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const Rational p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

/// True iff v lies in the rational span of `vectors`.
inline bool in_span_exact(const std::vector<std::vector<Rational>>& vectors,
                          const std::vector<Rational>& v) {
    if (vectors.empty()) {
        for (const Rational& c : v)
            if (c != 0) return false;
        return true;
    }
    const int cols = int(vectors.front().size());
    Matrix<Rational> base(int(vectors.size()), cols);
    Matrix<Rational> ext(int(vectors.size()) + 1, cols);
    for (int i = 0; i < int(vectors.size()); ++i)
        for (int j = 0; j < cols; ++j) {
            base(i, j) = vectors[std::size_t(i)][std::size_t(j)];
            ext(i, j) = base(i, j);
        }
    for (int j = 0; j < cols; ++j) ext(int(vectors.size()), j) = v[std::size_t(j)];
    return rank_exact(base) == rank_exact(ext);
}

/// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
struct SymmetricEigen {
    std::vector<double> values;  // ascending
    Matrix<double> vectors;      // column k pairs with values[k]
    int sweeps = 0;
};

inline SymmetricEigen jacobi_symmetric(Matrix<double> a, double tol = 1e-12,
                                       int max_sweeps = 100) {
    if (a.rows() != a.cols()) throw PreconditionError("eigensolver needs a square matrix");
    const int n = a.rows();
    Matrix<double> v = Matrix<double>::identity(n);
    double frob = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
    frob = std::sqrt(frob);
    const double stop = tol * std::max(1.0, frob);

    SymmetricEigen out;
    for (out.sweeps = 0; out.sweeps < max_sweeps; ++out.sweeps) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
        if (std::sqrt(off) <= stop) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= stop / (n * n)) continue;
                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (out.sweeps >= max_sweeps)
        throw DiagnosticError("Jacobi eigensolver did not converge");

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
    out.values.resize(std::size_t(n));
    out.vectors = Matrix<double>(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[std::size_t(k)] = a(order[std::size_t(k)], order[std::size_t(k)]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[std::size_t(k)]);
    }
    return out;
}

/// Singular values (ascending) via the symmetric eigenproblem of M^T M.
inline std::vector<double> singular_values(const Matrix<double>& m) {
    const auto eig = jacobi_symmetric(m.transpose() * m);
    std::vector<double> sv;
    sv.reserve(eig.values.size());
    for (double v : eig.values) sv.push_back(std::sqrt(std::max(0.0, v)));
    return sv;
}

/// Null-space vectors on the floating path: right singular vectors whose
/// singular value is at most rel_tol * max(1, sigma_max).  Singular values are
/// taken from the eigenvalues of m^T m, which cannot resolve anything below
/// sqrt(n * eps) of sigma_max, so the cut is floored there.
inline std::vector<std::vector<double>> kernel_float(const Matrix<double>& m,
                                                     double rel_tol = 1e-9) {
    const auto eig = jacobi_symmetric(m.transpose() * m);
    const int n = m.cols();
    const double sigma_max = std::sqrt(std::max(0.0, eig.values.empty() ? 0.0 : eig.values.back()));
    const double floor_tol = std::sqrt(double(n) * std::numeric_limits<double>::epsilon());
    const double cut = std::max(rel_tol, floor_tol) * std::max(1.0, sigma_max);
    std::vector<std::vector<double>> basis;
    for (int k = 0; k < n; ++k) {
        const double sigma = std::sqrt(std::max(0.0, eig.values[std::size_t(k)]));
        if (sigma > cut) continue;
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) x[std::size_t(i)] = eig.vectors(i, k);
        basis.push_back(std::move(x));
    }
    return basis;
}

/// log|det| and sign by LU with partial pivoting; sign 0 means singular to
/// working precision.
struct DetLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;
};

inline DetLog det_log_abs_lu(Matrix<double> a) {
    if (a.rows() != a.cols()) throw PreconditionError("determinant needs a square matrix");
    const int n = a.rows();
    DetLog out;
    int sign = 1;
    double log_sum = 0.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (a(piv, col) == 0.0) return out;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            sign = -sign;
        }
        const double p = a(col, col);
        log_sum += std::log(std::abs(p));
        if (p < 0) sign = -sign;
        for (int r = col + 1; r < n; ++r) {
            const double f = a(r, col) / p;
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    out.log_abs = log_sum;
    out.sign = sign;
    return out;
}

}  // namespace cdzero
