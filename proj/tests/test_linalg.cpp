#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "cdzero/linalg.hpp"
#include "cdzero/random.hpp"

#include "oracle.hpp"

using cdzero::BigInt;
using cdzero::Matrix;
using cdzero::Rational;
using cdzero::Rng;

namespace {

Matrix<Rational> random_matrix(int rows, int cols, Rng& rng) {
    Matrix<Rational> m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = cdzero::random_rational(rng);
    return m;
}

}  // namespace

TEST_CASE("exact determinant", "[linalg]") {
    SECTION("hand values") {
        Matrix<Rational> m(2, 2);
        m(0, 0) = Rational(1, 2);
        m(0, 1) = Rational(3);
        m(1, 0) = Rational(-2);
        m(1, 1) = Rational(4, 3);
        REQUIRE(cdzero::det_exact(m) == Rational(1, 2) * Rational(4, 3) - Rational(3) * Rational(-2));
        REQUIRE(cdzero::det_exact(Matrix<Rational>::identity(5)) == Rational(1));
        Matrix<Rational> sing(3, 3);
        for (int j = 0; j < 3; ++j) {
            sing(0, j) = Rational(j + 1);
            sing(1, j) = Rational(2 * (j + 1));
            sing(2, j) = Rational(7 - j);
        }
        REQUIRE(cdzero::det_exact(sing) == 0);
        REQUIRE(cdzero::rank_exact(sing) == 2);
    }

    SECTION("multiplicativity and transpose invariance") {
        Rng rng(11);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_matrix(6, 6, rng);
            const auto b = random_matrix(6, 6, rng);
            REQUIRE(cdzero::det_exact(a * b) == cdzero::det_exact(a) * cdzero::det_exact(b));
            REQUIRE(cdzero::det_exact(a.transpose()) == cdzero::det_exact(a));
        }
    }

    SECTION("agrees with floating LU") {
        Rng rng(12);
        for (int trial = 0; trial < 10; ++trial) {
            const auto a = random_matrix(7, 7, rng);
            const Rational d = cdzero::det_exact(a);
            const auto lu = cdzero::det_log_abs_lu(cdzero::to_double(a));
            if (d == 0) {
                REQUIRE(lu.log_abs < -20.0);
            } else {
                REQUIRE(lu.sign == (d > 0 ? 1 : -1));
                REQUIRE(lu.log_abs == Catch::Approx(cdzero::log_abs(d)).margin(1e-9));
            }
        }
    }
}

TEST_CASE("rank and kernel", "[linalg]") {
    Rng rng(13);

    SECTION("constructed rank deficiency") {
        // 5x4 matrix whose third row is a combination of the first two
        auto m = random_matrix(5, 4, rng);
        for (int j = 0; j < 4; ++j) m(2, j) = m(0, j) * Rational(2) - m(1, j) * Rational(1, 3);
        REQUIRE(cdzero::rank_exact(m) <= 4);

        // square matrix with a planted kernel vector
        auto sq = random_matrix(6, 6, rng);
        for (int i = 0; i < 6; ++i) sq(i, 5) = sq(i, 0) * Rational(3) + sq(i, 2) * Rational(-1, 2);
        REQUIRE(cdzero::det_exact(sq) == 0);
        const auto kern = cdzero::kernel_exact(sq);
        REQUIRE(int(kern.size()) == 6 - cdzero::rank_exact(sq));
        REQUIRE(!kern.empty());
        for (const auto& x : kern) {
            // exact annihilation
            for (int i = 0; i < 6; ++i) {
                Rational acc = 0;
                for (int j = 0; j < 6; ++j) acc += sq(i, j) * x[std::size_t(j)];
                REQUIRE(acc == 0);
            }
            // integer-normalized: coprime integer entries, positive leading entry
            BigInt content = 0;
            for (const Rational& v : x) {
                REQUIRE(boost::multiprecision::denominator(v) == 1);
                content = boost::multiprecision::gcd(content, BigInt(boost::multiprecision::numerator(v)));
            }
            REQUIRE(content == 1);
            for (const Rational& v : x) {
                if (v == 0) continue;
                REQUIRE(v > 0);
                break;
            }
        }
        // the planted relation 3 e0 - 1/2 e2 + ... : (3, 0, -1/2, 0, 0, -1)-ish
        std::vector<Rational> planted{Rational(3), 0, Rational(-1, 2), 0, 0, Rational(-1)};
        REQUIRE(cdzero::in_span_exact(kern, planted));
    }

    SECTION("full-rank random matrices have trivial kernel") {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_matrix(5, 5, rng);
            if (cdzero::det_exact(a) == 0) continue;
            REQUIRE(cdzero::rank_exact(a) == 5);
            REQUIRE(cdzero::kernel_exact(a).empty());
        }
    }

    SECTION("rank-nullity on rectangular draws") {
        for (int trial = 0; trial < 5; ++trial) {
            const auto a = random_matrix(4, 7, rng);
            REQUIRE(int(cdzero::kernel_exact(a).size()) == 7 - cdzero::rank_exact(a));
        }
    }
}

TEST_CASE("exact inverse", "[linalg]") {
    Rng rng(14);
    for (int trial = 0; trial < 8; ++trial) {
        auto a = random_matrix(6, 6, rng);
        if (cdzero::det_exact(a) == 0) continue;
        const auto inv = cdzero::inverse_exact(a);
        REQUIRE(a * inv == Matrix<Rational>::identity(6));
        REQUIRE(inv * a == Matrix<Rational>::identity(6));
    }
    Matrix<Rational> sing(2, 2);
    sing(0, 0) = 1;
    sing(0, 1) = 2;
    sing(1, 0) = 2;
    sing(1, 1) = 4;
    REQUIRE_THROWS_AS(cdzero::inverse_exact(sing), cdzero::PreconditionError);
}

TEST_CASE("Jacobi eigensolver against the QL oracle", "[linalg]") {
    Rng rng(15);
    for (int n : {3, 8, 12, 16}) {
        for (int trial = 0; trial < 4; ++trial) {
            Matrix<double> sym(n, n);
            std::vector<std::vector<double>> grid(static_cast<std::size_t>(n),
                                                  std::vector<double>(static_cast<std::size_t>(n)));
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) {
                    const double v = cdzero::to_double(cdzero::random_rational(rng));
                    sym(i, j) = sym(j, i) = v;
                    grid[std::size_t(i)][std::size_t(j)] = grid[std::size_t(j)][std::size_t(i)] = v;
                }
            const auto mine = cdzero::jacobi_symmetric(sym);
            const auto theirs = oracle::symmetric_eigenvalues(grid);
            REQUIRE(mine.values.size() == theirs.size());
            for (std::size_t k = 0; k < theirs.size(); ++k)
                REQUIRE(mine.values[k] == Catch::Approx(theirs[k]).margin(1e-9));
            // eigenvector residual ||A v - lambda v||
            for (int k = 0; k < n; ++k) {
                double res = 0.0, nrm = 0.0;
                for (int i = 0; i < n; ++i) {
                    double av = 0.0;
                    for (int j = 0; j < n; ++j) av += sym(i, j) * mine.vectors(j, k);
                    const double r = av - mine.values[std::size_t(k)] * mine.vectors(i, k);
                    res += r * r;
                    nrm += mine.vectors(i, k) * mine.vectors(i, k);
                }
                REQUIRE(std::sqrt(res) <= 1e-9 * std::max(1.0, std::sqrt(nrm)));
                REQUIRE(std::sqrt(nrm) == Catch::Approx(1.0).margin(1e-9));
            }
        }
    }
}

TEST_CASE("singular values and floating kernel", "[linalg]") {
    Rng rng(16);

    SECTION("diagonal ground truth") {
        Matrix<double> d(4, 4);
        d(0, 0) = -3.0;
        d(1, 1) = 0.5;
        d(2, 2) = 0.0;
        d(3, 3) = 2.0;
        const auto sv = cdzero::singular_values(d);
        REQUIRE(sv[0] == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(sv[1] == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(sv[2] == Catch::Approx(2.0).margin(1e-12));
        REQUIRE(sv[3] == Catch::Approx(3.0).margin(1e-12));
    }

    SECTION("planted kernel agrees with the exact path") {
        auto m = random_matrix(8, 8, rng);
        for (int i = 0; i < 8; ++i) m(i, 7) = m(i, 1) - m(i, 3);
        const auto exact = cdzero::kernel_exact(m);
        const auto floating = cdzero::kernel_float(cdzero::to_double(m));
        REQUIRE(floating.size() == exact.size());
        const auto md = cdzero::to_double(m);
        for (const auto& x : floating) {
            double res = 0.0;
            for (int i = 0; i < 8; ++i) {
                double acc = 0.0;
                for (int j = 0; j < 8; ++j) acc += md(i, j) * x[std::size_t(j)];
                res += acc * acc;
            }
            REQUIRE(std::sqrt(res) <= 1e-8);
        }
    }
}
