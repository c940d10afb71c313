#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/linalg.hpp"
#include "cdzero/operators.hpp"

namespace cdzero {

struct SpectrumCluster {
    double lambda = 0.0;
    int multiplicity = 0;
    double residual = 0.0;
};

/// Spectrum of a doubly pure element: the eigenvalues of -L^2 of the unit
/// element restricted to H_a-perp. `lambdas` lists each eigenvalue
/// multiplicity/4 times (2^{n-2}-1 entries in total).
struct SpectrumReport {
    std::vector<double> lambdas;
    std::vector<SpectrumCluster> clusters;
    bool contains_zero = false;
    bool contains_one = false;
    double tolerance = 1e-8;
};

struct EigenspaceBasis {
    double lambda = 0.0;
    std::vector<Element<double>> vectors;
    std::string diagnostic;  // empty on success
};

namespace detail {

/// Orthonormal columns spanning the orthocomplement of H_a = span{e_0, a~, a,
/// e~_0}, built by Gram-Schmidt over the standard basis.
inline Matrix<double> h_perp_basis(const Element<double>& unit_a) {
    const int d = unit_a.dim();
    const auto h = quaternion_basis(unit_a);
    std::vector<Element<double>> collected(h.begin(), h.end());
    std::vector<Element<double>> perp;
    for (int j = 0; j < d && int(perp.size()) < d - 4; ++j) {
        Element<double> v = Element<double>::basis(unit_a.level(), j);
        for (const auto& u : collected) v = v - u * inner(v, u);
        const double len = norm(v);
        if (len < 1e-6) continue;
        v = v * (1.0 / len);
        // second orthogonalization pass for numerical hygiene
        for (const auto& u : collected) v = v - u * inner(v, u);
        v = v * (1.0 / norm(v));
        collected.push_back(v);
        perp.push_back(v);
    }
    if (int(perp.size()) != d - 4)
        throw DiagnosticError("H_a-perp basis construction failed");
    for (std::size_t i = 0; i < collected.size(); ++i)
        for (std::size_t j = i + 1; j < collected.size(); ++j)
            if (std::abs(inner(collected[i], collected[j])) > 1e-12)
                throw DiagnosticError("H_a-perp basis lost orthogonality");
    Matrix<double> b(d, d - 4);
    for (int k = 0; k < d - 4; ++k)
        for (int i = 0; i < d; ++i) b(i, k) = perp[std::size_t(k)][i];
    return b;
}

inline std::vector<SpectrumCluster> cluster_values(const std::vector<double>& sorted_vals,
                                                   double tol) {
    std::vector<SpectrumCluster> out;
    std::size_t start = 0;
    while (start < sorted_vals.size()) {
        std::size_t end = start + 1;
        while (end < sorted_vals.size() && sorted_vals[end] - sorted_vals[end - 1] <= tol) ++end;
        double mean = 0.0;
        for (std::size_t k = start; k < end; ++k) mean += sorted_vals[k];
        mean /= double(end - start);
        double residual = 0.0;
        for (std::size_t k = start; k < end; ++k)
            residual = std::max(residual, std::abs(sorted_vals[k] - mean));
        out.push_back({mean, int(end - start), residual});
        start = end;
    }
    return out;
}

struct RestrictedEigen {
    Matrix<double> basis;  // columns span H_a-perp
    SymmetricEigen eigen;  // of -L^2(unit a) restricted to that basis
};

template <class S>
RestrictedEigen restricted_operator_eigen(const Element<S>& a) {
    if (!is_doubly_pure(a) || a.is_zero())
        throw NotDoublyPureError("spectrum needs a nonzero doubly pure element");
    if (a.level() < 3) throw PreconditionError("spectrum needs level >= 3");
    Element<double> unit = to_double(a);
    unit = unit * (1.0 / norm(unit));
    const Matrix<double> l = left_matrix(unit);
    const Matrix<double> m = -(l * l);
    RestrictedEigen out{h_perp_basis(unit), {}};
    Matrix<double> r = out.basis.transpose() * m * out.basis;
    Matrix<double> sym = r;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) sym(i, j) = 0.5 * (r(i, j) + r(j, i));
    out.eigen = jacobi_symmetric(sym);
    return out;
}

}  // namespace detail

template <class S>
SpectrumReport spectrum(const Element<S>& a, double tol = 1e-8) {
    const auto restricted = detail::restricted_operator_eigen(a);
    std::vector<double> vals = restricted.eigen.values;
    for (double& v : vals) {
        if (v < -1e-10)
            throw DiagnosticError("restricted operator produced a negative eigenvalue: " +
                                  std::to_string(v));
        if (v < 0.0) v = 0.0;
    }

    SpectrumReport report;
    report.tolerance = tol;
    report.clusters = detail::cluster_values(vals, tol);

    // Thm 3.1 guard: the clustering must be stable and mod-4 across a
    // tolerance sweep.
    std::vector<int> reference;
    for (double sweep_tol : {1e-6, 1e-7, 1e-8, 1e-9, 1e-10}) {
        const auto swept = detail::cluster_values(vals, sweep_tol);
        std::vector<int> mults;
        for (const auto& c : swept) {
            if (c.multiplicity % 4 != 0)
                throw DiagnosticError("eigenvalue multiplicity not divisible by 4 at tolerance " +
                                      std::to_string(sweep_tol));
            mults.push_back(c.multiplicity);
        }
        if (reference.empty())
            reference = mults;
        else if (mults != reference)
            throw DiagnosticError("eigenvalue clustering is unstable across the tolerance sweep");
    }
    for (const auto& c : report.clusters)
        if (c.multiplicity % 4 != 0)
            throw DiagnosticError("eigenvalue multiplicity not divisible by 4");

    for (const auto& c : report.clusters) {
        for (int k = 0; k < c.multiplicity / 4; ++k) report.lambdas.push_back(c.lambda);
        if (std::abs(c.lambda) <= tol) report.contains_zero = true;
        if (std::abs(c.lambda - 1.0) <= tol) report.contains_one = true;
    }

    // Exact supplement at small levels: 0 and 1 membership by rational rank.
    if constexpr (std::is_same_v<S, Rational>) {
        if (a.level() <= 4) {
            const Matrix<Rational> l = left_matrix(a);
            const Rational n2 = norm_sq(a);
            const bool exact_zero = rank_exact(l) < a.dim();
            const bool exact_one =
                rank_exact(l * l + Matrix<Rational>::identity(a.dim()) * n2) < a.dim() - 4;
            if (exact_zero != report.contains_zero || exact_one != report.contains_one)
                throw DiagnosticError("floating spectrum disagrees with the exact rank checks");
        }
    }
    return report;
}

/// Basis of V_lambda = {x in H_a-perp : a(a x) = -lambda x for unit a}, with
/// lambda in the same eigenvalue convention as SpectrumReport.lambdas.
template <class S>
EigenspaceBasis eigenspace(const Element<S>& a, double lambda, double tol = 1e-8) {
    const auto restricted = detail::restricted_operator_eigen(a);
    EigenspaceBasis out;
    out.lambda = lambda;
    const int k = restricted.eigen.vectors.rows();
    for (int idx = 0; idx < k; ++idx) {
        if (std::abs(restricted.eigen.values[std::size_t(idx)] - lambda) > tol) continue;
        Element<double> x(a.level());
        for (int i = 0; i < a.dim(); ++i) {
            double acc = 0.0;
            for (int j = 0; j < k; ++j) acc += restricted.basis(i, j) * restricted.eigen.vectors(j, idx);
            x[i] = acc;
        }
        out.vectors.push_back(std::move(x));
    }
    if (out.vectors.empty()) {
        out.diagnostic = "lambda is not in the spectrum within tolerance";
        return out;
    }
    if (int(out.vectors.size()) % 4 != 0)
        throw DiagnosticError("eigenspace dimension not divisible by 4");
    return out;
}

/// Exact rational basis of V_mu for unnormalized doubly pure a: solutions of
/// a(a x) = -mu ||a||^2 x inside H_a-perp. Empty when mu is not in the
/// spectrum. For mu = 1 the H_a part of the kernel is projected away.
inline std::vector<Element<Rational>> eigenspace_exact(const Element<Rational>& a,
                                                       const Rational& mu) {
    if (!is_doubly_pure(a) || a.is_zero())
        throw NotDoublyPureError("eigenspace_exact needs a nonzero doubly pure element");
    if (a.level() < 3) throw PreconditionError("eigenspace_exact needs level >= 3");
    if (mu < 0) throw PreconditionError("eigenvalues are nonnegative");
    const Matrix<Rational> l = left_matrix(a);
    const Matrix<Rational> shifted =
        l * l + Matrix<Rational>::identity(a.dim()) * (mu * norm_sq(a));
    auto kernel = kernel_exact(shifted);
    std::vector<Element<Rational>> out;
    if (mu == Rational(1)) {
        if (kernel.empty()) return out;
        // L^2 acts as -||a||^2 on all of H_a, so the kernel is H_a + V_1;
        // cut it down with the four orthogonality constraints
        const Element<Rational> at = tilde(a);
        const int half = a.dim() / 2;
        Matrix<Rational> constraints(4, int(kernel.size()));
        for (int j = 0; j < int(kernel.size()); ++j) {
            const auto& v = kernel[std::size_t(j)];
            Rational dot_a(0), dot_at(0);
            for (int i = 0; i < a.dim(); ++i) {
                dot_a += v[std::size_t(i)] * a[i];
                dot_at += v[std::size_t(i)] * at[i];
            }
            constraints(0, j) = v[0];
            constraints(1, j) = v[std::size_t(half)];
            constraints(2, j) = dot_a;
            constraints(3, j) = dot_at;
        }
        for (const auto& combo : kernel_exact(constraints)) {
            Element<Rational> x(a.level());
            for (int j = 0; j < int(kernel.size()); ++j)
                if (combo[std::size_t(j)] != 0)
                    for (int i = 0; i < a.dim(); ++i)
                        x[i] += combo[std::size_t(j)] * kernel[std::size_t(j)][std::size_t(i)];
            out.push_back(std::move(x));
        }
    } else {
        for (const auto& v : kernel) {
            Element<Rational> x(a.level());
            for (int i = 0; i < a.dim(); ++i) x[i] = v[std::size_t(i)];
            out.push_back(std::move(x));
        }
    }
    return out;
}

/// L^2_a = a^2 I as a matrix identity (pure a).
template <class S>
bool is_alternative(const Element<S>& a) {
    if (!is_pure(a) || a.is_zero()) throw PreconditionError("is_alternative needs pure nonzero a");
    const Matrix<S> l = left_matrix(a);
    const Matrix<S> expect = Matrix<S>::identity(a.dim()) * (a * a)[0];
    return detail::matrices_equal(l * l, expect);
}

/// ||a x|| = ||a|| ||x|| for all x, i.e. L^T L = ||a||^2 I (pure a).
template <class S>
bool is_normed(const Element<S>& a) {
    if (!is_pure(a) || a.is_zero()) throw PreconditionError("is_normed needs pure nonzero a");
    const Matrix<S> l = left_matrix(a);
    const Matrix<S> expect = Matrix<S>::identity(a.dim()) * norm_sq(a);
    return detail::matrices_equal(l.transpose() * l, expect);
}

struct LocalNormResult {
    bool normed_with = false;
    double lambda_effective = 0.0;  // ||ax|| / (||a|| ||x||)
};

template <class S>
LocalNormResult local_norm_check(const Element<S>& a, const Element<S>& x) {
    if (!is_doubly_pure(a) || a.is_zero())
        throw NotDoublyPureError("local_norm_check needs a nonzero doubly pure element");
    if (x.is_zero()) throw PreconditionError("local_norm_check needs x nonzero");
    const double ratio = norm(a * x) / (norm(a) * norm(x));
    return {std::abs(ratio - 1.0) <= 1e-9, ratio};
}

/// dim Ker(a^2 I - L^2_a) for pure a, exact below exact_max_level and via
/// eigenvalue screening above; always >= 8 (Cor 3.6).
inline int kernel_dimension_bound_check(const Element<Rational>& a, int exact_max_level = 4) {
    if (!is_pure(a) || a.is_zero())
        throw PreconditionError("kernel_dimension_bound_check needs pure nonzero a");
    if (a.level() < 3) throw PreconditionError("kernel_dimension_bound_check needs level >= 3");
    const Rational n2 = norm_sq(a);
    int dim;
    if (a.level() <= exact_max_level) {
        const Matrix<Rational> l = left_matrix(a);
        dim = a.dim() - rank_exact(l * l + Matrix<Rational>::identity(a.dim()) * n2);
    } else {
        const Matrix<double> l = left_matrix(to_double(a));
        const Matrix<double> k =
            l * l + Matrix<double>::identity(a.dim()) * to_double(n2);
        const auto eig = jacobi_symmetric(k);
        double scale = 0.0;
        for (double v : eig.values) scale = std::max(scale, std::abs(v));
        dim = 0;
        for (double v : eig.values)
            if (std::abs(v) <= 1e-8 * std::max(1.0, scale)) ++dim;
    }
    if (dim < 8) throw DiagnosticError("Cor 3.6 kernel dimension bound violated");
    return dim;
}

}  // namespace cdzero
