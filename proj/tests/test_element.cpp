#include <catch2/catch_amalgamated.hpp>

#include "cdzero/element.hpp"
#include "cdzero/random.hpp"

#include "oracle.hpp"

using cdzero::Element;
using cdzero::Rational;
using cdzero::Rng;

namespace {

using E = Element<Rational>;

constexpr int kA3Table[8][8] = {  // entry = sign * (index + 1), from the index-level oracle
    {1, 2, 3, 4, 5, 6, 7, 8},
    {2, -1, 4, -3, 6, -5, -8, 7},
    {3, -4, -1, 2, 7, 8, -5, -6},
    {4, 3, -2, -1, 8, -7, 6, -5},
    {5, -6, -7, -8, -1, 2, 3, 4},
    {6, 5, -8, 7, -2, -1, -4, 3},
    {7, 8, 5, -6, -3, 4, -1, -2},
    {8, -7, 6, 5, -4, -3, 2, -1},
};

E basis(int level, int i) { return E::basis(level, i); }

E signed_basis(int level, int encoded) {
    const int idx = (encoded < 0 ? -encoded : encoded) - 1;
    E e = basis(level, idx);
    return encoded < 0 ? -e : e;
}

}  // namespace

TEST_CASE("doubling product matches the index-level oracle", "[element]") {
    SECTION("A_1 and A_2 ground truth") {
        // A_1 is the complex numbers, A_2 the quaternions with e1e2 = e3.
        REQUIRE(basis(1, 1) * basis(1, 1) == -basis(1, 0));
        REQUIRE(basis(2, 1) * basis(2, 2) == basis(2, 3));
        REQUIRE(basis(2, 2) * basis(2, 1) == -basis(2, 3));
        REQUIRE(basis(2, 2) * basis(2, 3) == basis(2, 1));
        REQUIRE(basis(2, 3) * basis(2, 1) == basis(2, 2));
        for (int i = 1; i < 4; ++i) REQUIRE(basis(2, i) * basis(2, i) == -basis(2, 0));
    }

    SECTION("frozen A_3 table") {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                REQUIRE(basis(3, i) * basis(3, j) == signed_basis(3, kA3Table[i][j]));
    }

    SECTION("oracle agreement and XOR indexing through level 5") {
        for (int level = 0; level <= 5; ++level) {
            const int dim = 1 << level;
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) {
                    const auto [sign, index] = oracle::basis_product(level, i, j);
                    REQUIRE(index == (i ^ j));
                    E expected = basis(level, index);
                    if (sign < 0) expected = -expected;
                    REQUIRE(basis(level, i) * basis(level, j) == expected);
                }
        }
    }

    SECTION("paper section-3 products") {
        REQUIRE(basis(3, 1) * basis(3, 4) == basis(3, 5));
        REQUIRE(basis(3, 7) * basis(3, 1) == -basis(3, 6));
        REQUIRE(basis(3, 7) * basis(3, 2) == basis(3, 5));
        REQUIRE(basis(3, 2) * basis(3, 4) == basis(3, 6));
    }
}

TEST_CASE("conjugation, tilde and hat", "[element]") {
    Rng rng(101);

    SECTION("frozen values") {
        const E alpha = basis(4, 1) + basis(4, 10);
        REQUIRE(tilde(alpha) == -basis(4, 2) + basis(4, 9));
        REQUIRE(hat(alpha) == basis(4, 2) + basis(4, 9));
        REQUIRE(tilde(basis(3, 1)) == basis(3, 5));
        REQUIRE(conjugate(alpha) == -alpha);
    }

    for (int level = 2; level <= 5; ++level) {
        for (int draw = 0; draw < 20; ++draw) {
            const E a = cdzero::random_element(level, rng);
            const E b = cdzero::random_element(level, rng);
            REQUIRE(conjugate(conjugate(a)) == a);
            REQUIRE(conjugate(a * b) == conjugate(b) * conjugate(a));
            REQUIRE(tilde(tilde(a)) == -a);
            REQUIRE(hat(hat(a)) == a);
            REQUIRE(hat(tilde(a)) == -tilde(hat(a)));
            // tilde is right multiplication by the symplectic unit, for every a
            REQUIRE(a * cdzero::symplectic_unit<Rational>(level) == tilde(a));
            // a + conj(a) = t(a) e_0 and a conj(a) = ||a||^2 e_0
            REQUIRE(a + conjugate(a) == E::scalar(level, trace(a)));
            REQUIRE(a * conjugate(a) == E::scalar(level, norm_sq(a)));
            REQUIRE((a * conjugate(b))[0] == inner(a, b));
        }
    }
}

TEST_CASE("Lemma 1.1", "[element][paper]") {
    Rng rng(202);
    for (int level = 2; level <= 5; ++level) {
        const E st = cdzero::symplectic_unit<Rational>(level);
        for (int draw = 0; draw < 25; ++draw) {
            const E a = cdzero::random_doubly_pure(level, rng);
            const E b = cdzero::random_doubly_pure(level, rng);

            // (1)
            REQUIRE(a * st == tilde(a));
            REQUIRE(st * a == -tilde(a));
            // (2)
            REQUIRE(a * tilde(a) == -norm_sq(a) * st);
            REQUIRE(tilde(a) * a == norm_sq(a) * st);
            REQUIRE(inner(a, tilde(a)) == 0);
            // (3) needs only a pure, b doubly pure
            E p = cdzero::random_pure(level, rng);
            REQUIRE(tilde(p) * b == -tilde(p * b));
            // (4)
            const bool orth = inner(a, b) == 0;
            const bool anti = (tilde(a) * b + tilde(b) * a).is_zero();
            REQUIRE(orth == anti);
            // (5)
            const bool torth = inner(tilde(a), b) == 0;
            const bool prod_eq = a * b == tilde(b) * tilde(a);
            REQUIRE(torth == prod_eq);
            // (6)
            const bool six = tilde(a) * b == a * tilde(b);
            REQUIRE(six == (orth && torth));
        }

        // (4)-(6) in the satisfied direction, via exact projections;
        // at level 2 the doubly pure part of H_a-perp is trivial
        for (int draw = 0; level >= 3 && draw < 10; ++draw) {
            const E a = cdzero::random_doubly_pure(level, rng);
            const E x = cdzero::random_in_h_perp(a, rng);
            REQUIRE(inner(a, x) == 0);
            REQUIRE(inner(tilde(a), x) == 0);
            REQUIRE((tilde(a) * x + tilde(x) * a).is_zero());
            REQUIRE(tilde(a) * x == a * tilde(x));
        }
    }
}

TEST_CASE("pure element identities", "[element][paper]") {
    Rng rng(303);
    for (int level = 2; level <= 5; ++level) {
        for (int draw = 0; draw < 15; ++draw) {
            const E a = cdzero::random_pure(level, rng);
            const E b = cdzero::random_pure(level, rng);
            const E x = cdzero::random_element(level, rng);

            // flexibility (a, x, a) = 0
            REQUIRE((a * x) * a == a * (x * a));
            // anticommutativity polarisation: ab + ba = -2<a,b> e_0 for pure a, b
            REQUIRE(a * b + b * a == E::scalar(level, Rational(-2) * inner(a, b)));
            // Hopf identity: (x', y')(y', x') = (2 x'y', ||y'||^2 - ||x'||^2) for pure x'
            const E y = cdzero::random_element(level, rng);
            const E lhs = cdzero::make_pair_element(a, y) * cdzero::make_pair_element(y, a);
            const E rhs = cdzero::make_pair_element(
                Rational(2) * (a * y), E::scalar(level, norm_sq(y) - norm_sq(a)));
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("norm multiplicativity boundary", "[element][paper]") {
    Rng rng(404);
    SECTION("A_3 is a composition algebra") {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                REQUIRE(norm_sq(basis(3, i) * basis(3, j)) == Rational(1));
        for (int draw = 0; draw < 25; ++draw) {
            const E a = cdzero::random_element(3, rng);
            const E b = cdzero::random_element(3, rng);
            REQUIRE(norm_sq(a * b) == norm_sq(a) * norm_sq(b));
        }
    }
    SECTION("A_4 witness") {
        const E alpha = basis(4, 1) + basis(4, 10);
        const E chi = -basis(4, 4) + basis(4, 15);
        REQUIRE((alpha * chi).is_zero());
        REQUIRE(norm_sq(alpha) * norm_sq(chi) == Rational(4));
        // and the companion non-zero product from the paper
        const E v = basis(4, 7) - basis(4, 12);
        REQUIRE(alpha * v == Rational(2) * (basis(4, 6) + basis(4, 13)));
        REQUIRE(alpha * (basis(4, 2) + basis(4, 9)) == Rational(2) * basis(4, 3));
    }
}

TEST_CASE("trace and purity classification", "[element]") {
    using cdzero::PurityClass;

    REQUIRE(trace(basis(3, 0)) == Rational(2));
    REQUIRE(trace(basis(3, 5)) == Rational(0));

    REQUIRE(cdzero::purity_class(E::zero(3)) == PurityClass::Real);
    REQUIRE(cdzero::purity_class(E::scalar(3, Rational(-7))) == PurityClass::Real);
    REQUIRE(cdzero::purity_class(basis(3, 1)) == PurityClass::DoublyPure);
    REQUIRE(cdzero::purity_class(basis(3, 4)) == PurityClass::Pure);
    REQUIRE(cdzero::purity_class(basis(3, 0) + basis(3, 1)) == PurityClass::Mixed);
    REQUIRE(cdzero::purity_class(basis(3, 1) + basis(3, 4)) == PurityClass::Pure);
    REQUIRE(cdzero::is_doubly_pure(basis(4, 1) + basis(4, 10)));
    REQUIRE_FALSE(cdzero::is_doubly_pure(basis(4, 8)));

    SECTION("pure decomposition") {
        E a(4);
        a[1] = Rational(3, 5);
        a[8] = Rational(4, 5);
        const auto info = cdzero::purity_info(a);
        REQUIRE(info.cls == PurityClass::Pure);
        REQUIRE(info.has_decomposition);
        REQUIRE(info.r == Catch::Approx(0.6).margin(1e-12));
        REQUIRE(info.s == Catch::Approx(0.8).margin(1e-12));
        REQUIRE(cdzero::norm(info.c) == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(info.c[1] == Catch::Approx(1.0).margin(1e-12));
    }

    SECTION("symplectic direction falls back to e_1") {
        const auto info = cdzero::purity_info(Rational(2) * basis(4, 8));
        REQUIRE(info.has_decomposition);
        REQUIRE(info.r == 0.0);
        REQUIRE(info.s == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(info.c[1] == Catch::Approx(2.0).margin(1e-12));
    }
}

TEST_CASE("quaternion subalgebra basis", "[element][paper]") {
    Rng rng(505);

    SECTION("exact basis for e_1 in A_3") {
        const auto h = cdzero::quaternion_basis(basis(3, 1));
        REQUIRE(h[0] == basis(3, 0));
        REQUIRE(h[1] == basis(3, 5));
        REQUIRE(h[2] == basis(3, 1));
        REQUIRE(h[3] == basis(3, 4));
    }

    SECTION("Cor 1.2 multiplication table on exact-norm draws") {
        for (int level = 3; level <= 5; ++level) {
            for (int draw = 0; draw < 10; ++draw) {
                const E a = cdzero::random_doubly_pure_rational_norm(level, rng);
                const auto h = cdzero::quaternion_basis(a);
                const E one = h[0], u = h[1], v = h[2], w = h[3];
                for (const E& q : h) REQUIRE(norm_sq(q) == Rational(1));
                REQUIRE(u * v == w);
                REQUIRE(v * w == u);
                REQUIRE(w * u == v);
                REQUIRE(v * u == -w);
                REQUIRE(w * v == -u);
                REQUIRE(u * w == -v);
                REQUIRE(u * u == -one);
                REQUIRE(v * v == -one);
                REQUIRE(w * w == -one);
                for (const E& q : {u, v, w}) {
                    REQUIRE(one * q == q);
                    REQUIRE(q * one == q);
                }
            }
        }
    }

    SECTION("irrational norm is rejected on the exact path") {
        const E a = basis(4, 2) + basis(4, 9);
        REQUIRE_THROWS_AS(cdzero::quaternion_basis(a), cdzero::PreconditionError);
        const auto hd = cdzero::quaternion_basis(cdzero::to_double(a));
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const double ip = inner(hd[i], hd[j]);
                REQUIRE(ip == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-12));
            }
    }
}

TEST_CASE("pair assembly and splitting", "[element]") {
    Rng rng(606);
    const E a = cdzero::random_element(3, rng);
    const E b = cdzero::random_element(3, rng);
    const E pair = cdzero::make_pair_element(a, b);
    REQUIRE(pair.level() == 4);
    REQUIRE(cdzero::first_half(pair) == a);
    REQUIRE(cdzero::second_half(pair) == b);
    REQUIRE(cdzero::symplectic_unit<Rational>(4) == basis(4, 8));

    REQUIRE_THROWS_AS(a + cdzero::random_element(4, rng), cdzero::LevelMismatchError);
    REQUIRE_THROWS_AS(a * cdzero::random_element(2, rng), cdzero::LevelMismatchError);
}
