#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cdzero/element.hpp"
#include "cdzero/errors.hpp"
#include "cdzero/rational.hpp"

namespace cdzero {

/// mt19937_64 with a modulo mapping instead of std::uniform_int_distribution,
/// so identical seeds reproduce identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform-enough integer in [lo, hi], both inclusive.
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(gen_() % std::uint64_t(hi - lo + 1));
    }

    bool coin() { return (gen_() & 1) != 0; }

private:
    std::mt19937_64 gen_;
};

/// Numerators in [-9, 9], denominators in {1, 2, 3}.
inline Rational random_rational(Rng& rng) {
    static const int dens[3] = {1, 2, 3};
    return Rational(BigInt(rng.uniform(-9, 9)), BigInt(dens[rng.uniform(0, 2)]));
}

inline Rational random_nonzero_rational(Rng& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (r != 0) return r;
    }
}

inline Element<Rational> random_element(int level, Rng& rng) {
    Element<Rational> a(level);
    for (int i = 0; i < a.dim(); ++i) a[i] = random_rational(rng);
    return a;
}

inline Element<Rational> random_pure(int level, Rng& rng) {
    for (;;) {
        Element<Rational> a = random_element(level, rng);
        a[0] = 0;
        if (!a.is_zero()) return a;
    }
}

inline Element<Rational> random_doubly_pure(int level, Rng& rng) {
    for (;;) {
        Element<Rational> a = random_element(level, rng);
        a[0] = 0;
        a[a.dim() / 2] = 0;
        if (!a.is_zero()) return a;
    }
}

/// Exact projection of a random doubly pure draw onto H_a-perp. Levels 0-2
/// are rejected: there the doubly pure part of H_a-perp is trivial.
inline Element<Rational> random_in_h_perp(const Element<Rational>& a, Rng& rng) {
    if (a.level() < 3) throw PreconditionError("H_a-perp draw needs level >= 3");
    const Rational n = norm_sq(a);
    if (n == 0) throw PreconditionError("H_a-perp draw needs a nonzero");
    const Element<Rational> at = tilde(a);
    for (;;) {
        Element<Rational> x = random_doubly_pure(a.level(), rng);
        x = x - a * (inner(x, a) / n) - at * (inner(x, at) / n);
        if (!x.is_zero()) return x;
    }
}

/// Integer tuples whose Euclidean norm is an integer, used to draw elements
/// with rational norms exactly.
inline const std::vector<std::vector<int>>& pythagorean_catalog() {
    static const std::vector<std::vector<int>> cat = {
        {1},          {3, 4},       {5, 12},      {8, 15},      {7, 24},
        {20, 21},     {1, 2, 2},    {2, 3, 6},    {1, 4, 8},    {4, 4, 7},
        {2, 6, 9},    {6, 6, 7},    {1, 1, 1, 1}, {2, 4, 5, 6}, {1, 2, 4, 10},
        {1, 1, 3, 5},
    };
    return cat;
}

/// Random doubly pure element with an exactly rational norm: a scaled
/// Pythagorean tuple scattered over distinct doubly pure basis positions.
/// norm_out (optional) receives ||a|| as an exact rational.
inline Element<Rational> random_doubly_pure_rational_norm(int level, Rng& rng,
                                                          Rational* norm_out = nullptr) {
    const auto& cat = pythagorean_catalog();
    const auto& tuple = cat[std::size_t(rng.uniform(0, std::int64_t(cat.size()) - 1))];
    const int dim = 1 << level;
    const int half = dim / 2;
    if (int(tuple.size()) > dim - 2) throw PreconditionError("level too small for catalog draw");
    Element<Rational> a(level);
    std::vector<int> used;
    for (int value : tuple) {
        int idx;
        for (;;) {
            idx = int(rng.uniform(1, dim - 1));
            if (idx == half) continue;
            bool clash = false;
            for (int u : used)
                if (u == idx) clash = true;
            if (!clash) break;
        }
        used.push_back(idx);
        a[idx] = Rational(rng.coin() ? value : -value);
    }
    Rational scale(BigInt(rng.uniform(1, 5)), BigInt(rng.uniform(1, 3)));
    a = a * scale;
    if (norm_out) {
        BigInt sq = 0;
        for (int value : tuple) sq += BigInt(value) * value;
        *norm_out = scale * Rational(boost::multiprecision::sqrt(sq));
    }
    return a;
}

/// Equal-norm partner of `a`: the same coefficient multiset with fresh signs
/// on positions disjoint from supp(a), supp(tilde(a)), e_0 and e~0. The result
/// is doubly pure, orthogonal to both a and tilde(a), with ||b|| = ||a||.
inline Element<Rational> signed_permutation_partner(const Element<Rational>& a, Rng& rng) {
    const int dim = a.dim();
    const int half = dim / 2;
    std::vector<int> support;
    std::vector<char> blocked(std::size_t(dim), 0);
    blocked[0] = blocked[std::size_t(half)] = 1;
    for (int i = 0; i < dim; ++i)
        if (a[i] != 0) {
            support.push_back(i);
            blocked[std::size_t(i)] = 1;
            blocked[std::size_t(i < half ? i + half : i - half)] = 1;  // tilde image
        }
    int free_count = 0;
    for (char b : blocked)
        if (!b) ++free_count;
    if (free_count < int(support.size()))
        throw PreconditionError("support too dense for a signed-permutation partner");
    Element<Rational> b(a.level());
    for (int i : support) {
        int idx;
        do {
            idx = int(rng.uniform(1, dim - 1));
        } while (blocked[std::size_t(idx)]);
        blocked[std::size_t(idx)] = 1;
        b[idx] = rng.coin() ? a[i] : Rational(-a[i]);
    }
    return b;
}

/// Exact rational point (r, s) with r^2 + s^2 = 1, drawn from Pythagorean
/// triples with random signs and axis swaps.
inline std::pair<Rational, Rational> random_circle_point(Rng& rng) {
    static const int triples[6][3] = {{3, 4, 5},  {5, 12, 13}, {8, 15, 17},
                                      {7, 24, 25}, {20, 21, 29}, {1, 0, 1}};
    const auto& t = triples[rng.uniform(0, 5)];
    Rational r(t[0], t[2]), s(t[1], t[2]);
    if (rng.coin()) std::swap(r, s);
    if (rng.coin()) r = -r;
    if (rng.coin()) s = -s;
    return {r, s};
}

}  // namespace cdzero
