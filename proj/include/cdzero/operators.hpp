#pragma once

#include <optional>
#include <string>
#include <utility>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/linalg.hpp"
#include "cdzero/matrix.hpp"

namespace cdzero {

namespace detail {

template <class S>
bool matrices_equal(const Matrix<S>& x, const Matrix<S>& y) {
    if constexpr (std::is_same_v<S, double>) {
        if (x.rows() != y.rows() || x.cols() != y.cols()) return false;
        const double scale = std::max(1.0, std::max(max_abs(x), max_abs(y)));
        return max_abs(x - y) <= 1e-12 * scale;
    } else {
        return x == y;
    }
}

}  // namespace detail

/// Matrix of x -> a x in the standard basis; column j is a e_j.
template <class S>
Matrix<S> left_matrix(const Element<S>& a) {
    const int d = a.dim();
    Matrix<S> m(d, d, MatrixTag::L);
    for (int j = 0; j < d; ++j) {
        const Element<S> col = a * Element<S>::basis(a.level(), j);
        for (int i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

/// Matrix of x -> x a in the standard basis.
template <class S>
Matrix<S> right_matrix(const Element<S>& a) {
    const int d = a.dim();
    Matrix<S> m(d, d, MatrixTag::R);
    for (int j = 0; j < d; ++j) {
        const Element<S> col = Element<S>::basis(a.level(), j) * a;
        for (int i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

/// The S map x -> (a, x, b) = (ax)b - a(xb), for pure a, b of one level.
template <class S>
Matrix<S> assoc_operator(const Element<S>& a, const Element<S>& b) {
    if (a.level() != b.level()) throw LevelMismatchError("assoc_operator needs one level");
    if (!is_pure(a) || !is_pure(b))
        throw PreconditionError("assoc_operator is defined for pure elements");
    const int d = a.dim();
    Matrix<S> m(d, d, MatrixTag::S);
    for (int j = 0; j < d; ++j) {
        const Element<S> ej = Element<S>::basis(a.level(), j);
        const Element<S> col = (a * ej) * b - a * (ej * b);
        for (int i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

/// The A = L_a^2 + R_b^2 and S blocks of L^2_{(a,b)}.
template <class S>
std::pair<Matrix<S>, Matrix<S>> block_decomposition(const Element<S>& a, const Element<S>& b) {
    if (a.level() != b.level()) throw LevelMismatchError("block_decomposition needs one level");
    if (!is_pure(a) || !is_pure(b) || a.is_zero() || b.is_zero())
        throw PreconditionError("block_decomposition needs pure nonzero a, b");
    const Matrix<S> la = left_matrix(a);
    const Matrix<S> rb = right_matrix(b);
    Matrix<S> blockA = la * la + rb * rb;
    blockA.set_tag(MatrixTag::A);
    Matrix<S> blockS = rb * la - la * rb;
    blockS.set_tag(MatrixTag::S);
    return {std::move(blockA), std::move(blockS)};
}

/// ((A, -S), (S, A)) assembled at pair dimension, for comparison against
/// left_matrix((a,b))^2.
template <class S>
Matrix<S> assemble_blocks(const Matrix<S>& blockA, const Matrix<S>& blockS) {
    const int d = blockA.rows();
    Matrix<S> m(2 * d, 2 * d, MatrixTag::LSquared);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            m(i, j) = blockA(i, j);
            m(i, d + j) = -blockS(i, j);
            m(d + i, j) = blockS(i, j);
            m(d + i, d + j) = blockA(i, j);
        }
    return m;
}

/// L_a^2 = R_a^2 for pure a.
template <class S>
bool l_squared_equals_r_squared_check(const Element<S>& a) {
    if (!is_pure(a)) throw PreconditionError("check is stated for pure elements");
    const Matrix<S> l = left_matrix(a), r = right_matrix(a);
    return detail::matrices_equal(l * l, r * r);
}

/// R_a R_e~0 + R_e~0 R_a = 0 and L_a L_a~ + L_a~ L_a = 0 for doubly pure a.
template <class S>
bool anticommutation_check(const Element<S>& a) {
    if (!is_doubly_pure(a)) throw NotDoublyPureError("anticommutation check needs a doubly pure");
    const Element<S> st = symplectic_unit<S>(a.level());
    const Matrix<S> ra = right_matrix(a), rst = right_matrix(st);
    const Matrix<S> la = left_matrix(a), lat = left_matrix(tilde(a));
    const Matrix<S> zero(a.dim(), a.dim());
    return detail::matrices_equal(ra * rst + rst * ra, zero) &&
           detail::matrices_equal(la * lat + lat * la, zero);
}

/// The O(2) action on pairs: rotation (ra - sb, sa + rb) keeps L^2_{(a,b)};
/// reflection (ra + sb, sa - rb) turns it into L^2_{(b,a)}.
template <class S>
std::pair<Element<S>, Element<S>> o2_action(const Element<S>& a, const Element<S>& b, const S& r,
                                            const S& s, bool reflect) {
    if (a.level() != b.level()) throw LevelMismatchError("o2_action needs one level");
    const S circle = r * r + s * s;
    if constexpr (std::is_same_v<S, double>) {
        if (std::abs(circle - 1.0) > 1e-12)
            throw PreconditionError("(r, s) must lie on the unit circle");
    } else {
        if (circle != S(1)) throw PreconditionError("(r, s) must lie on the unit circle");
    }
    if (reflect) return {r * a + s * b, s * a - r * b};
    return {r * a - s * b, s * a + r * b};
}

enum class VerdictReason { DetNonzero, KernelVectorFound, SchurCriterion };

inline std::string to_string(VerdictReason r) {
    switch (r) {
        case VerdictReason::DetNonzero: return "det-nonzero";
        case VerdictReason::KernelVectorFound: return "kernel-vector-found";
        default: return "schur-criterion";
    }
}

/// Outcome of the invertibility test for L_{(a,b)}. Exactly one witness field
/// is populated when the operator is singular, matching the arithmetic path
/// taken; det_log_abs is log|det L_{(a,b)}| (-inf when singular).
struct InvertibilityVerdict {
    bool invertible = false;
    VerdictReason reason = VerdictReason::DetNonzero;
    std::optional<Element<Rational>> witness_exact;
    std::optional<Element<double>> witness_float;
    double det_log_abs = -std::numeric_limits<double>::infinity();
    bool exact_path = true;
};

namespace detail {

inline Matrix<double> inverse_float(const Matrix<double>& m) {
    const int n = m.rows();
    Matrix<double> a = m;
    Matrix<double> inv = Matrix<double>::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (std::abs(a(piv, col)) < 1e-300) throw PreconditionError("matrix is singular");
        if (piv != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a(piv, j), a(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        const double p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0.0) continue;
            const double f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

}  // namespace detail

/// Decides invertibility of L_{(a,b)} for pure nonzero a, b in A_n (n >= 3).
/// Levels up to exact_max_level use exact arithmetic: the Schur route
/// det(L^2) = det(A) det(A + S A^-1 S) when A is invertible, the full matrix
/// otherwise. Higher levels run in floating point with singular-value
/// screening.
inline InvertibilityVerdict invertibility_test(const Element<Rational>& a,
                                               const Element<Rational>& b,
                                               int exact_max_level = 4) {
    if (a.level() != b.level()) throw LevelMismatchError("invertibility_test needs one level");
    if (a.level() < 3) throw PreconditionError("invertibility_test needs level >= 3");
    if (!is_pure(a) || !is_pure(b) || a.is_zero() || b.is_zero())
        throw PreconditionError("invertibility_test needs pure nonzero a, b");

    InvertibilityVerdict v;
    const Element<Rational> pair = make_pair_element(a, b);

    if (a.level() <= exact_max_level) {
        v.exact_path = true;
        const auto [blockA, blockS] = block_decomposition(a, b);
        const Rational det_a = det_exact(blockA);
        bool singular;
        bool via_schur = false;
        if (det_a != 0) {
            const Matrix<Rational> schur = blockA + blockS * inverse_exact(blockA) * blockS;
            const Rational det_schur = det_exact(schur);
            singular = det_schur == 0;
            via_schur = true;
            if (!singular) {
                v.det_log_abs = 0.5 * (log_abs(det_a) + log_abs(det_schur));
            }
        } else {
            const Rational det_l = det_exact(left_matrix(pair));
            singular = det_l == 0;
            if (!singular) v.det_log_abs = log_abs(det_l);
        }
        if (singular) {
            const auto kern = kernel_exact(left_matrix(pair));
            Element<Rational> w(pair.level());
            for (int i = 0; i < w.dim(); ++i) w[i] = kern.front()[std::size_t(i)];
            v.invertible = false;
            v.reason = VerdictReason::KernelVectorFound;
            v.witness_exact = std::move(w);
        } else {
            v.invertible = true;
            v.reason = via_schur ? VerdictReason::SchurCriterion : VerdictReason::DetNonzero;
        }
        return v;
    }

    v.exact_path = false;
    const Matrix<double> l = left_matrix(to_double(pair));
    const auto sv = singular_values(l);
    const double sigma_max = sv.back();
    const bool singular = sv.front() <= 1e-9 * std::max(1.0, sigma_max);
    if (singular) {
        const auto kern = kernel_float(l);
        Element<double> w(pair.level());
        for (int i = 0; i < w.dim(); ++i) w[i] = kern.front()[std::size_t(i)];
        v.invertible = false;
        v.reason = VerdictReason::KernelVectorFound;
        v.witness_float = std::move(w);
        return v;
    }
    v.invertible = true;
    v.det_log_abs = det_log_abs_lu(l).log_abs;
    const auto [blockA, blockS] = block_decomposition(to_double(a), to_double(b));
    const auto sv_a = singular_values(blockA);
    if (sv_a.front() > 1e-9 * std::max(1.0, sv_a.back())) {
        // A is invertible, so the Schur identity certifies the verdict
        const auto schur = blockA + blockS * detail::inverse_float(blockA) * blockS;
        const auto lu = det_log_abs_lu(schur);
        v.reason = lu.sign != 0 ? VerdictReason::SchurCriterion : VerdictReason::DetNonzero;
    } else {
        v.reason = VerdictReason::DetNonzero;
    }
    return v;
}

}  // namespace cdzero
