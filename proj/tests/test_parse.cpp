#include <catch2/catch_amalgamated.hpp>

#include "cdzero/parse.hpp"
#include "cdzero/random.hpp"

using cdzero::Element;
using cdzero::ParseError;
using cdzero::Rational;

namespace {
using E = Element<Rational>;
}

TEST_CASE("parse_element grammar", "[parse]") {
    SECTION("reference string") {
        const E a = cdzero::parse_element("e1 + 2e10 - 1/2 e16", 5);
        E want(5);
        want[1] = 1;
        want[10] = 2;
        want[16] = Rational(-1, 2);
        REQUIRE(a == want);
    }

    SECTION("whitespace-insensitive") {
        const E tight = cdzero::parse_element("e1+2e10-1/2e16", 5);
        const E loose = cdzero::parse_element("  e1 +  2 e10   - 1 / 2 e16 ", 5);
        REQUIRE(tight == loose);
        REQUIRE(tight == cdzero::parse_element("e1 + 2e10 - 1/2 e16", 5));
    }

    SECTION("signs and scalars") {
        REQUIRE(cdzero::parse_element("-e4 + e15", 4) == -E::basis(4, 4) + E::basis(4, 15));
        REQUIRE(cdzero::parse_element("3", 2) == E::scalar(2, Rational(3)));
        REQUIRE(cdzero::parse_element("-7/2", 3) == E::scalar(3, Rational(-7, 2)));
        REQUIRE(cdzero::parse_element("5e0", 3) == E::scalar(3, Rational(5)));
        REQUIRE(cdzero::parse_element("0", 4).is_zero());
    }

    SECTION("repeated terms accumulate") {
        REQUIRE(cdzero::parse_element("e1 + e1 - 3e1", 3) == -E::basis(3, 1));
        REQUIRE(cdzero::parse_element("e2 - e2", 3).is_zero());
    }

    SECTION("errors") {
        REQUIRE_THROWS_AS(cdzero::parse_element("", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("e9", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("e1 +", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("2x3", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("1/0 e1", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("e", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("++e1", 3), ParseError);
        REQUIRE_THROWS_AS(cdzero::parse_element("e1 e2", 3), ParseError);
    }

    SECTION("level cap") {
        REQUIRE_THROWS_AS(cdzero::parse_element("e1", 11), cdzero::PreconditionError);
        REQUIRE_NOTHROW(cdzero::parse_element("e1", 11, /*allow_large=*/true));
    }
}

TEST_CASE("format_element", "[parse]") {
    E a(5);
    a[1] = 1;
    a[10] = 2;
    a[16] = Rational(-1, 2);
    REQUIRE(cdzero::format_element(a) == "e1 + 2e10 - 1/2 e16");
    REQUIRE(cdzero::format_element(E::zero(3)) == "0");
    REQUIRE(cdzero::format_element(E::basis(3, 5)) == "e5");
    REQUIRE(cdzero::format_element(-E::basis(4, 4) + E::basis(4, 15)) == "-e4 + e15");
    REQUIRE(cdzero::format_element(E::scalar(2, Rational(-3, 4))) == "-3/4");
    REQUIRE(cdzero::parse_element(cdzero::format_element(E::scalar(2, Rational(-3, 4))), 2) ==
            E::scalar(2, Rational(-3, 4)));

    Element<double> d(3);
    d[2] = 1.5;
    REQUIRE(cdzero::format_element(d) == "1.5 e2");
}

TEST_CASE("parse/format round trip", "[parse]") {
    cdzero::Rng rng(808);
    for (int level = 1; level <= 5; ++level) {
        for (int draw = 0; draw < 25; ++draw) {
            const E a = cdzero::random_element(level, rng);
            REQUIRE(cdzero::parse_element(cdzero::format_element(a), level) == a);
        }
    }
}
