#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/linalg.hpp"
#include "cdzero/operators.hpp"
#include "cdzero/spectrum.hpp"

namespace cdzero {

enum class Construction {
    Orthogonal_H_perp,
    TildePartner,
    SpectralLambda,
    PurePromotion,
    KernelSolve,
};

inline const char* to_string(Construction c) {
    switch (c) {
        case Construction::Orthogonal_H_perp: return "orthogonal-h-perp";
        case Construction::TildePartner: return "tilde-partner";
        case Construction::SpectralLambda: return "spectral-lambda";
        case Construction::PurePromotion: return "pure-promotion";
        case Construction::KernelSolve: return "kernel-solve";
    }
    return "unknown";
}

/// A certified pair alpha * chi = 0. `residual` is exactly 0 on the rational
/// path and a relative bound on the floating path; every constructor throws
/// DiagnosticError instead of returning an uncertified pair.
template <class S>
struct ZeroDivisorPair {
    Element<S> alpha;
    Element<S> chi;
    Construction construction = Construction::KernelSolve;
    double residual = 0.0;
    int level = 0;
    int annihilator_dim = -1;  // -1 until filled by annihilator()
};

template <class S>
struct Annihilator {
    Element<S> element;
    std::vector<Element<S>> basis;
    int dim = 0;
};

namespace detail {

template <class S>
inline constexpr bool exact_scalar_v = std::is_same_v<S, Rational>;

template <class S>
double certify_product(const Element<S>& alpha, const Element<S>& chi, const char* who) {
    const auto prod = alpha * chi;
    if constexpr (exact_scalar_v<S>) {
        if (!prod.is_zero())
            throw DiagnosticError(std::string(who) + ": constructed pair fails to annihilate");
        return 0.0;
    } else {
        const double res = norm(prod) / std::max(1.0, norm(alpha) * norm(chi));
        if (res > 1e-9)
            throw DiagnosticError(std::string(who) + ": residual certification failed");
        return res;
    }
}

template <class S>
bool in_h_perp(const Element<S>& a, const Element<S>& x, double tol = 1e-9) {
    const int half = a.dim() / 2;
    const S checks[4] = {x[0], x[half], inner(x, a), inner(x, tilde(a))};
    if constexpr (exact_scalar_v<S>) {
        for (const S& v : checks)
            if (!(v == S(0))) return false;
        return true;
    } else {
        const double scale = std::max(1.0, norm(x) * std::max(1.0, norm(a)));
        for (const S& v : checks)
            if (std::abs(v) > tol * scale) return false;
        return true;
    }
}

/// First standard basis direction with a nonzero projection into H_a-perp.
template <class S>
Element<S> first_h_perp_vector(const Element<S>& a) {
    const S n2 = norm_sq(a);
    const Element<S> at = tilde(a);
    for (int j = 1; j < a.dim(); ++j) {
        if (j == a.dim() / 2) continue;
        Element<S> x = Element<S>::basis(a.level(), j);
        x = x - a * (inner(x, a) / n2) - at * (inner(x, at) / n2);
        if constexpr (exact_scalar_v<S>) {
            if (!x.is_zero()) return x;
        } else {
            if (norm(x) > 1e-9) return x / norm(x);
        }
    }
    throw DiagnosticError("H_a-perp admits no basis direction");  // unreachable for level >= 3
}

template <class S>
bool norms_agree(const Element<S>& a, const Element<S>& b) {
    if constexpr (exact_scalar_v<S>) {
        return norm_sq(a) == norm_sq(b);
    } else {
        const double na = norm_sq(a), nb = norm_sq(b);
        return std::abs(na - nb) <= 1e-9 * std::max({1.0, na, nb});
    }
}

}  // namespace detail

/// Prop 4.3(1): (a, b)(a~, b~) = 0 for b in H_a-perp of the same norm.
template <class S>
ZeroDivisorPair<S> construct_orthogonal(const Element<S>& a, const Element<S>& b) {
    Element<S>::same_level(a, b);
    if (a.level() < 3)
        throw PreconditionError("construct_orthogonal: level must be >= 3");
    if (!is_doubly_pure(a) || a.is_zero())
        throw PreconditionError("construct_orthogonal: a must be doubly pure and nonzero");
    if (b.is_zero() || !detail::in_h_perp(a, b))
        throw PreconditionError("construct_orthogonal: b must lie in H_a-perp and be nonzero");
    if (!detail::norms_agree(a, b))
        throw PreconditionError("construct_orthogonal: ||a|| must equal ||b||");

    ZeroDivisorPair<S> out;
    out.alpha = make_pair_element(a, b);
    out.chi = make_pair_element(tilde(a), tilde(b));
    out.construction = Construction::Orthogonal_H_perp;
    out.level = out.alpha.level();
    out.residual = detail::certify_product(out.alpha, out.chi, "construct_orthogonal");
    return out;
}

/// Prop 4.3(2): (a, +/-a~)(x, -/+x~) = 0 for any x in H_a-perp.
template <class S>
ZeroDivisorPair<S> construct_tilde_partner(const Element<S>& a, int sign, const Element<S>& x) {
    if (sign != 1 && sign != -1)
        throw PreconditionError("construct_tilde_partner: sign must be +1 or -1");
    if (a.level() < 3)
        throw PreconditionError("construct_tilde_partner: level must be >= 3");
    if (!is_doubly_pure(a) || a.is_zero())
        throw PreconditionError("construct_tilde_partner: a must be doubly pure and nonzero");
    Element<S>::same_level(a, x);
    if (x.is_zero() || !detail::in_h_perp(a, x))
        throw PreconditionError("construct_tilde_partner: x must lie in H_a-perp and be nonzero");

    const S s(sign);
    ZeroDivisorPair<S> out;
    out.alpha = make_pair_element(a, tilde(a) * s);
    out.chi = make_pair_element(x, tilde(x) * (-s));
    out.construction = Construction::TildePartner;
    out.level = out.alpha.level();
    out.residual = detail::certify_product(out.alpha, out.chi, "construct_tilde_partner");
    return out;
}

/// Thm 4.4 in scale-cleared form: for mu in Spec(a) (reported convention) and
/// x in V_mu, the pair (a, +/-beta e~0) with beta = sqrt(mu ||a||^2)
/// annihilates (a x, -/+beta x~). The closing-remark companion
/// ((-1/beta) a x, +/-x~) is certified alongside.
template <class S>
ZeroDivisorPair<S> construct_spectral(const Element<S>& a, const S& mu, const Element<S>& x,
                                      int sign) {
    if (sign != 1 && sign != -1)
        throw PreconditionError("construct_spectral: sign must be +1 or -1");
    if (a.level() < 3)
        throw PreconditionError("construct_spectral: level must be >= 3");
    if (!is_doubly_pure(a) || a.is_zero())
        throw PreconditionError("construct_spectral: a must be doubly pure and nonzero");
    if (!(S(0) < mu))
        throw PreconditionError(
            "construct_spectral: lambda must be positive (lambda = 0 belongs to the "
            "promotion route)");
    Element<S>::same_level(a, x);
    if (x.is_zero())
        throw PreconditionError("construct_spectral: x must be nonzero");

    const S scaled = mu * norm_sq(a);
    const Element<S> eigen_defect = a * (a * x) + x * scaled;
    if constexpr (detail::exact_scalar_v<S>) {
        if (!eigen_defect.is_zero())
            throw PreconditionError("construct_spectral: x fails the V_lambda test");
        if (mu == S(1) && !detail::in_h_perp(a, x))
            throw PreconditionError("construct_spectral: x must lie in H_a-perp");
    } else {
        const double scale = std::max(1.0, to_double(scaled) * norm(x));
        if (norm(eigen_defect) > 1e-8 * scale)
            throw PreconditionError("construct_spectral: x fails the V_lambda residual test");
        if (std::abs(mu - 1.0) <= 1e-8 && !detail::in_h_perp(a, x, 1e-8))
            throw PreconditionError("construct_spectral: x must lie in H_a-perp");
    }

    const S beta = detail::sqrt_or_throw(scaled, "lambda * ||a||^2");
    const S s(sign);
    ZeroDivisorPair<S> out;
    out.alpha = make_pair_element(a, symplectic_unit<S>(a.level()) * (s * beta));
    out.chi = make_pair_element(a * x, tilde(x) * (-s * beta));
    out.construction = Construction::SpectralLambda;
    out.level = out.alpha.level();
    out.residual = detail::certify_product(out.alpha, out.chi, "construct_spectral");
    const auto companion = make_pair_element((a * x) / (-beta), tilde(x) * s);
    out.residual =
        std::max(out.residual, detail::certify_product(out.alpha, companion, "construct_spectral"));
    return out;
}

/// Convenience overload: snaps a floating eigenvalue from a SpectrumReport to
/// a small rational and dispatches to the exact constructor.
inline ZeroDivisorPair<Rational> construct_spectral(const Element<Rational>& a, double mu,
                                                    const Element<Rational>& x, int sign,
                                                    std::int64_t max_denominator = 4096) {
    const Rational snapped = nearest_rational(mu, max_denominator);
    if (std::abs(to_double(snapped) - mu) > 1e-6)
        throw PreconditionError(
            "construct_spectral: eigenvalue is not rational within tolerance; use the "
            "floating-element path");
    return construct_spectral(a, snapped, x, sign);
}

template <class S>
struct PromotionResult {
    Element<S> beta;
    ZeroDivisorPair<S> pair;
};

/// Cor 4.5 / section 5: extend a pure alpha = p + sigma e~0 to the pair
/// (alpha, beta) with beta = (sigma/||p||) p - ||p|| e~0, a zero divisor in
/// A_{n+1} whenever 1 is in Spec(p). Doubly pure inputs delegate to the
/// tilde-partner construction; alpha proportional to e~0 uses the e_1
/// direction. The certificate vector comes from V_1 of the direction; if V_1
/// is trivial (generic at level >= 5) the promotion throws rather than
/// returning an uncertified pair.
template <class S>
PromotionResult<S> construct_promote_pure(const Element<S>& alpha) {
    if (alpha.level() < 3)
        throw PreconditionError("construct_promote_pure: level must be >= 3");
    const PurityClass cls = purity_class(alpha);
    if (cls == PurityClass::DoublyPure) {
        PromotionResult<S> out;
        out.beta = tilde(alpha);
        out.pair = construct_tilde_partner(alpha, 1, detail::first_h_perp_vector(alpha));
        out.pair.construction = Construction::PurePromotion;
        return out;
    }
    if (cls != PurityClass::Pure)
        throw PreconditionError("construct_promote_pure: alpha must be pure and nonzero");

    const int half = alpha.dim() / 2;
    const S sigma = alpha[half];
    Element<S> p = alpha;
    p[half] = S(0);

    PromotionResult<S> out;
    Element<S> witness_x(alpha.level());
    S rho(0);
    if (p.is_zero()) {
        // alpha is a multiple of e~0; any doubly pure direction works, e_1 by convention
        const Element<S> c = Element<S>::basis(alpha.level(), 1);
        out.beta = c * sigma;
        witness_x = detail::first_h_perp_vector(c);
        rho = S(1);
        p = c;
    } else {
        rho = detail::sqrt_or_throw(norm_sq(p), "||doubly pure part||^2");
        out.beta = p * (sigma / rho) - symplectic_unit<S>(alpha.level()) * rho;
        if constexpr (detail::exact_scalar_v<S>) {
            const auto v1 = eigenspace_exact(p, Rational(1));
            if (v1.empty())
                throw DiagnosticError(
                    "construct_promote_pure: 1 is not in the spectrum of the doubly pure "
                    "direction; no certified partner exists at this level");
            witness_x = v1.front();
        } else {
            const auto v1 = eigenspace(p, 1.0);
            if (v1.vectors.empty())
                throw DiagnosticError(
                    "construct_promote_pure: 1 is not in the spectrum of the doubly pure "
                    "direction; no certified partner exists at this level");
            witness_x = v1.vectors.front();
        }
    }

    out.pair.alpha = make_pair_element(alpha, out.beta);
    out.pair.chi = make_pair_element((p * witness_x) / rho, tilde(witness_x));
    out.pair.construction = Construction::PurePromotion;
    out.pair.level = out.pair.alpha.level();
    out.pair.residual =
        detail::certify_product(out.pair.alpha, out.pair.chi, "construct_promote_pure");
    return out;
}

/// Exact (rational) or clustered (floating) basis of Ker L_alpha. The Lemma
/// 4.1 symmetries are asserted: Ker L_alpha = Ker L_alpha~ and the left and
/// right annihilators coincide.
template <class S>
Annihilator<S> annihilator(const Element<S>& alpha) {
    if (alpha.is_zero()) throw PreconditionError("annihilator needs a nonzero element");
    Annihilator<S> out;
    out.element = alpha;
    if constexpr (detail::exact_scalar_v<S>) {
        const auto left = kernel_exact(left_matrix(alpha));
        const auto tilded = kernel_exact(left_matrix(tilde(alpha)));
        const auto right = kernel_exact(right_matrix(alpha));
        if (left.size() != tilded.size() || left.size() != right.size())
            throw DiagnosticError("annihilator kernels disagree in dimension");
        for (const auto& v : tilded)
            if (!in_span_exact(left, v))
                throw DiagnosticError("Ker L_alpha~ escapes Ker L_alpha");
        for (const auto& v : right)
            if (!in_span_exact(left, v))
                throw DiagnosticError("right annihilator escapes the left annihilator");
        for (const auto& v : left) {
            Element<S> x(alpha.level());
            for (int i = 0; i < alpha.dim(); ++i) x[i] = v[std::size_t(i)];
            out.basis.push_back(std::move(x));
        }
    } else {
        const auto left = kernel_float(left_matrix(alpha));
        const auto tilded = kernel_float(left_matrix(tilde(alpha)));
        const auto right = kernel_float(right_matrix(alpha));
        if (left.size() != tilded.size() || left.size() != right.size())
            throw DiagnosticError("annihilator kernels disagree in dimension");
        for (const auto& v : left) {
            Element<S> x(alpha.level());
            for (int i = 0; i < alpha.dim(); ++i) x[i] = v[std::size_t(i)];
            out.basis.push_back(std::move(x));
        }
    }
    out.dim = int(out.basis.size());
    return out;
}

/// Solve for any annihilating vector directly; packages the first kernel
/// vector as a certified pair.
template <class S>
ZeroDivisorPair<S> construct_kernel_solve(const Element<S>& alpha) {
    const auto ann = annihilator(alpha);
    if (ann.dim == 0)
        throw PreconditionError("construct_kernel_solve: alpha is not a zero divisor");
    ZeroDivisorPair<S> out;
    out.alpha = alpha;
    out.chi = ann.basis.front();
    out.construction = Construction::KernelSolve;
    out.level = alpha.level();
    out.residual = detail::certify_product(out.alpha, out.chi, "construct_kernel_solve");
    out.annihilator_dim = ann.dim;
    return out;
}

/// Lemma 4.2: a x = 0 if and only if a^ x^ = 0.
template <class S>
bool hat_symmetry_check(const Element<S>& alpha, const Element<S>& chi) {
    if (alpha.is_zero() || chi.is_zero())
        throw PreconditionError("hat_symmetry_check needs nonzero elements");
    Element<S>::same_level(alpha, chi);
    const auto prod = alpha * chi;
    if constexpr (detail::exact_scalar_v<S>) {
        if (!prod.is_zero())
            throw PreconditionError("hat_symmetry_check: alpha * chi must vanish");
        return (hat(alpha) * hat(chi)).is_zero();
    } else {
        const double scale = std::max(1.0, norm(alpha) * norm(chi));
        if (norm(prod) > 1e-9 * scale)
            throw PreconditionError("hat_symmetry_check: alpha * chi must vanish");
        return norm(hat(alpha) * hat(chi)) <= 1e-9 * scale;
    }
}

/// Lemma 4.1: any zero divisor is doubly pure.
template <class S>
bool zero_divisor_is_doubly_pure_check(const Element<S>& alpha) {
    const auto ann = annihilator(alpha);
    if (ann.dim == 0)
        throw PreconditionError(
            "zero_divisor_is_doubly_pure_check: alpha has a trivial annihilator");
    return purity_class(alpha) == PurityClass::DoublyPure;
}

}  // namespace cdzero
