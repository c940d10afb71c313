#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/linalg.hpp"
#include "cdzero/operators.hpp"
#include "cdzero/parse.hpp"
#include "cdzero/random.hpp"
#include "cdzero/zero_divisors.hpp"

namespace cdzero {

enum class StiefelCase { NonTrivial, TildePartnerCase, PurePromotionCase, Unclassified };

inline const char* to_string(StiefelCase c) {
    switch (c) {
        case StiefelCase::NonTrivial: return "non-trivial";
        case StiefelCase::TildePartnerCase: return "tilde-partner";
        case StiefelCase::PurePromotionCase: return "pure-promotion";
        case StiefelCase::Unclassified: return "unclassified";
    }
    return "unknown";
}

/// Plain (re, im) pair in the ambient scalar kind.
template <class S>
struct ComplexScalar {
    S re{};
    S im{};

    friend bool operator==(const ComplexScalar& a, const ComplexScalar& b) {
        return a.re == b.re && a.im == b.im;
    }
};

template <class S>
struct StiefelClassification {
    bool is_stiefel = false;
    bool is_nontrivial = false;
    S inner_ab{};        // <a, b>
    S inner_tilde_ab{};  // <a~, b>
    S norm_gap{};        // ||a||^2 - ||b||^2
    StiefelCase case_tag = StiefelCase::Unclassified;
};

namespace detail {

template <class S>
bool scalar_zero(const S& v, double scale) {
    if constexpr (exact_scalar_v<S>) {
        (void)scale;
        return v == S(0);
    } else {
        return std::abs(v) <= 1e-9 * std::max(1.0, scale);
    }
}

template <class S>
bool element_zero(const Element<S>& v, double scale) {
    if constexpr (exact_scalar_v<S>) {
        (void)scale;
        return v.is_zero();
    } else {
        return norm(v) <= 1e-9 * std::max(1.0, scale);
    }
}

/// a = p + sigma e~0 against b = t p + v e~0 with t v = -sigma and
/// v^2 = ||p||^2, the shape of the promoted pairs (r c -+ s lambda e~0,
/// (s lambda) c +- r e~0) with all scale factors cleared.
template <class S>
bool matches_promotion_form(const Element<S>& a, const Element<S>& b) {
    const int half = a.dim() / 2;
    const S sigma = a[half];
    Element<S> p = a;
    p[half] = S(0);
    const S v = b[half];
    Element<S> brest = b;
    brest[half] = S(0);
    const double scale = std::max(1.0, to_double(norm_sq(a)) + to_double(norm_sq(b)));
    if (element_zero(p, scale)) return scalar_zero(v, scale) && !element_zero(brest, scale);
    const S pp = norm_sq(p);
    const S bp = inner(brest, p);
    if (!element_zero(brest * pp - p * bp, scale * scale)) return false;
    return scalar_zero(S(bp * v + sigma * pp), scale * scale) &&
           scalar_zero(S(v * v - pp), scale);
}

}  // namespace detail

/// Lemma 5.1: <alpha, chi> = <a, x> + <b, y> for alpha = (a, b), chi = (x, y)
/// with pure halves. Verifies the identity and returns the common value.
template <class S>
S pair_inner_product_check(const Element<S>& alpha, const Element<S>& chi) {
    Element<S>::same_level(alpha, chi);
    if (!is_doubly_pure(alpha) || !is_doubly_pure(chi))
        throw NotDoublyPureError(
            "pair_inner_product_check needs pairs with pure half-coordinates");
    const S whole = inner(alpha, chi);
    const S split = inner(first_half(alpha), first_half(chi)) +
                    inner(second_half(alpha), second_half(chi));
    if (!detail::scalar_zero(S(whole - split), norm(alpha) * norm(chi)))
        throw DiagnosticError("pair inner product fails to split across halves");
    return whole;
}

/// Section-5 predicates for a pair of pure elements, with the partial-answer
/// case tag. The tag is meaningful only when is_stiefel holds; non-Stiefel
/// pairs keep Unclassified.
template <class S>
StiefelClassification<S> classify(const Element<S>& a, const Element<S>& b) {
    Element<S>::same_level(a, b);
    if (a.level() < 3) throw PreconditionError("classify needs level >= 3");
    if (!is_pure(a) || !is_pure(b))
        throw PreconditionError("classify needs pure elements");

    StiefelClassification<S> out;
    out.inner_ab = inner(a, b);
    out.inner_tilde_ab = inner(tilde(a), b);
    out.norm_gap = norm_sq(a) - norm_sq(b);

    const double ip_scale = norm(a) * norm(b);
    const double sq_scale = std::max(to_double(norm_sq(a)), to_double(norm_sq(b)));
    out.is_stiefel = !a.is_zero() && detail::scalar_zero(out.inner_ab, ip_scale) &&
                     detail::scalar_zero(out.norm_gap, sq_scale);
    if (!out.is_stiefel) return out;

    if (is_doubly_pure(a) && is_doubly_pure(b)) {
        if (detail::scalar_zero(out.inner_tilde_ab, ip_scale)) {
            out.is_nontrivial = true;
            out.case_tag = StiefelCase::NonTrivial;
        } else if (detail::element_zero(b * norm_sq(a) - tilde(a) * out.inner_tilde_ab,
                                        sq_scale * std::max(1.0, norm(b)))) {
            // b inside H_a with <a,b> = 0 forces b = +-a~
            out.case_tag = StiefelCase::TildePartnerCase;
        }
    } else if (detail::matches_promotion_form(a, b)) {
        out.case_tag = StiefelCase::PurePromotionCase;
    }
    return out;
}

/// Thm 5.3 proof: H_n(x, y) = 2<x,y> - 2i<x~,y>, the Hermitian form whose
/// null pairs of equal norm are the non-trivial elements.
template <class S>
ComplexScalar<S> hermitian_form(const Element<S>& x, const Element<S>& y) {
    Element<S>::same_level(x, y);
    if (!is_doubly_pure(x) || !is_doubly_pure(y))
        throw NotDoublyPureError("hermitian_form needs doubly pure elements");
    return {S(2) * inner(x, y), S(-2) * inner(tilde(x), y)};
}

/// Thm 5.2, constructive direction: a Stiefel alpha = (a, b) yields the
/// non-trivial element (alpha, alpha^) one level up. The predicate on the
/// output is asserted, so a passing return certifies the biconditional
/// instance.
template <class S>
std::pair<Element<S>, Element<S>> stiefel_to_nontrivial(const Element<S>& alpha) {
    if (alpha.level() < 4)
        throw PreconditionError("stiefel_to_nontrivial needs a pair element of level >= 4");
    const auto halves = classify(first_half(alpha), second_half(alpha));
    if (!halves.is_stiefel)
        throw PreconditionError("stiefel_to_nontrivial: alpha is not a Stiefel element");
    const Element<S> ahat = hat(alpha);
    const auto lifted = classify(alpha, ahat);
    if (!lifted.is_nontrivial)
        throw DiagnosticError("stiefel_to_nontrivial: (alpha, alpha^) fails the predicate");
    return {alpha, ahat};
}

struct StiefelSweepReport {
    int level = 0;  // half-coordinate level n; sampled elements live in A_{n+1}
    int count = 0;
    std::uint64_t seed = 0;
    int zero_divisors = 0;
    std::map<std::string, int> by_case;
    std::vector<std::string> unclassified_zero_divisors;
    std::vector<std::string> failures;
};

/// Random Stiefel elements tagged by classify() with annihilator dimensions:
/// empirical evidence on the section-5 Question. Draws rotate through the
/// partial-answer families (exact) and a generic orthogonalized pure pair
/// whose norms are matched only approximately and therefore certified on the
/// floating path. Any sampled element with a trivial annihilator lands in
/// `failures`; at half-coordinate level >= 5 such elements exist.
inline StiefelSweepReport sweep_stiefel_zero_divisors(int level, int count, std::uint64_t seed) {
    if (level < 3) throw PreconditionError("sweep_stiefel_zero_divisors needs level >= 3");
    if (count < 0) throw PreconditionError("sweep_stiefel_zero_divisors needs count >= 0");
    StiefelSweepReport report;
    report.level = level;
    report.count = count;
    report.seed = seed;
    for (StiefelCase c : {StiefelCase::NonTrivial, StiefelCase::TildePartnerCase,
                          StiefelCase::PurePromotionCase, StiefelCase::Unclassified})
        report.by_case[to_string(c)] = 0;

    const int dim = 1 << level;
    for (int i = 0; i < count; ++i) {
        // one independent stream per draw, so chunked execution cannot change results
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * std::uint64_t(i + 1)));
        Element<Rational> a(level), b(level);
        bool exact = true;
        switch (i % 4) {
            case 0:
                do {
                    a = random_doubly_pure_rational_norm(level, rng);
                    int support = 0;
                    for (const auto& c : a.coords())
                        if (!(c == Rational(0))) ++support;
                    if (3 * support <= dim - 2) break;
                } while (true);
                b = signed_permutation_partner(a, rng);
                break;
            case 1:
                a = random_doubly_pure_rational_norm(level, rng);
                b = rng.coin() ? tilde(a) : -tilde(a);
                break;
            case 2: {
                Rational rho;
                const Element<Rational> p = random_doubly_pure_rational_norm(level, rng, &rho);
                const Rational sigma = random_nonzero_rational(rng);
                a = p + symplectic_unit<Rational>(level) * sigma;
                b = p * (sigma / rho) - symplectic_unit<Rational>(level) * rho;
                break;
            }
            case 3: {
                exact = false;
                do {
                    a = random_pure(level, rng);
                } while (a.is_zero());
                do {
                    b = random_pure(level, rng);
                    b = b - a * (inner(a, b) / norm_sq(a));
                } while (b.is_zero());
                const double ratio = norm(a) / norm(b);
                b = b * nearest_rational(ratio, 1000000000);
                break;
            }
        }
        std::string tag;
        int dim_ann = 0;
        std::string formatted;
        if (exact) {
            const Element<Rational> alpha = make_pair_element(a, b);
            tag = to_string(classify(a, b).case_tag);
            dim_ann = annihilator(alpha).dim;
            formatted = format_element(alpha);
        } else {
            const Element<double> alpha = make_pair_element(to_double(a), to_double(b));
            tag = to_string(classify(to_double(a), to_double(b)).case_tag);
            // norms match only to roundoff, which puts the near-kernel singular
            // values at the noise floor of the squared-matrix solver; 1e-6 sits
            // between that floor and the smallest genuine singular values
            dim_ann = int(kernel_float(left_matrix(alpha), 1e-6).size());
            formatted = format_element(alpha);
        }
        ++report.by_case[tag];
        if (dim_ann > 0) {
            ++report.zero_divisors;
            if (tag == to_string(StiefelCase::Unclassified))
                report.unclassified_zero_divisors.push_back(formatted);
        } else {
            report.failures.push_back(formatted);
        }
    }
    return report;
}

}  // namespace cdzero
