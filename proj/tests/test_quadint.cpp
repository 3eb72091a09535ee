#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "ks33/quadint.hpp"

using ks33::QuadInt;

TEST_CASE("quadint ring operations") {
    const QuadInt s2 = QuadInt::sqrt2();
    CHECK(QuadInt(1, 1) * QuadInt(1, -1) == QuadInt(-1, 0));
    CHECK(s2 * s2 == QuadInt(2, 0));
    CHECK(QuadInt(1, 0) + QuadInt(-1, 0) == QuadInt(0, 0));
    CHECK(QuadInt(3, -2) - QuadInt(1, 1) == QuadInt(2, -3));
    CHECK(-QuadInt(3, -2) == QuadInt(-3, 2));
    CHECK(QuadInt::integer(7) == QuadInt(7, 0));
    CHECK(QuadInt(2, 3) * QuadInt(5, -1) == QuadInt(2 * 5 + 2 * 3 * -1, 2 * -1 + 3 * 5));
}

TEST_CASE("quadint exact sign") {
    CHECK(QuadInt(0, 0).sign() == 0);
    CHECK(QuadInt(-1, 1).sign() == 1);  // sqrt(2) > 1
    CHECK(QuadInt(3, -2).sign() == 1);  // 9 > 8
    CHECK(QuadInt(-3, 2).sign() == -1);
    CHECK(QuadInt(1, -1).sign() == -1);
    CHECK(QuadInt(7, -5).sign() == -1); // 49 < 50
    CHECK(QuadInt(-7, 5).sign() == 1);
    CHECK(QuadInt(4, 0).sign() == 1);
    CHECK(QuadInt(0, -3).sign() == -1);
}

TEST_CASE("quadint division by sqrt(2)") {
    CHECK(QuadInt(0, 1).div_sqrt2() == QuadInt(1, 0));
    CHECK(QuadInt(2, 0).div_sqrt2() == QuadInt(0, 1));
    CHECK(QuadInt(4, -3).div_sqrt2() == QuadInt(-3, 2));
    CHECK(QuadInt(0, 1).divisible_by_sqrt2());
    CHECK_FALSE(QuadInt(1, 0).divisible_by_sqrt2());
    CHECK_THROWS_AS(QuadInt(1, 0).div_sqrt2(), std::domain_error);
    CHECK_THROWS_AS(QuadInt(3, 4).div_sqrt2(), std::domain_error);
}

TEST_CASE("quadint overflow is an error, never a silent wrap") {
    const std::int64_t top = std::numeric_limits<std::int64_t>::max();
    const std::int64_t bottom = std::numeric_limits<std::int64_t>::min();
    CHECK_THROWS_AS(QuadInt(top, 0) + QuadInt(1, 0), std::overflow_error);
    CHECK_THROWS_AS(QuadInt(bottom, 0) - QuadInt(1, 0), std::overflow_error);
    CHECK_THROWS_AS(QuadInt(top, 0) * QuadInt(2, 0), std::overflow_error);
    CHECK_THROWS_AS(-QuadInt(bottom, 0), std::overflow_error);
    // the cross term 2*b*d overflows even though every field fits
    CHECK_THROWS_AS(QuadInt(0, top) * QuadInt::sqrt2(), std::overflow_error);
}

TEST_CASE("quadint agrees with floating point on the working grid") {
    const double s2 = std::sqrt(2.0);
    for (std::int64_t a = -8; a <= 8; ++a)
        for (std::int64_t b = -8; b <= 8; ++b) {
            const QuadInt x{a, b};
            const double fx = static_cast<double>(a) + static_cast<double>(b) * s2;
            CHECK(x.to_double() == doctest::Approx(fx));
            // the grid's smallest nonzero magnitude is |−7 + 5*sqrt2| ~ 0.071,
            // so the float sign is reliable
            const int float_sign = (fx > 1e-9) - (fx < -1e-9);
            CHECK(x.sign() == float_sign);
            CHECK((x * x).sign() >= 0);
            CHECK(((x * x).sign() == 0) == x.is_zero());
            CHECK((x * QuadInt::sqrt2()).div_sqrt2() == x);
            if (x.divisible_by_sqrt2())
                CHECK(x.div_sqrt2() * QuadInt::sqrt2() == x);
        }
}

TEST_CASE("quadint commutativity and distributivity") {
    std::vector<QuadInt> grid;
    for (std::int64_t a = -2; a <= 2; ++a)
        for (std::int64_t b = -2; b <= 2; ++b) grid.push_back({a, b});
    for (const QuadInt& x : grid)
        for (const QuadInt& y : grid) {
            CHECK(x * y == y * x);
            CHECK(x + y == y + x);
            for (const QuadInt& z : grid)
                CHECK(x * (y + z) == x * y + x * z);
        }
}

TEST_CASE("quadint rendering") {
    CHECK(QuadInt(0, 0).str() == "0");
    CHECK(QuadInt(5, 0).str() == "5");
    CHECK(QuadInt(-3, 0).str() == "-3");
    CHECK(QuadInt(0, 1).str() == "√2");
    CHECK(QuadInt(0, -1).str() == "-√2");
    CHECK(QuadInt(0, 2).str() == "2√2");
    CHECK(QuadInt(1, 1).str() == "1+√2");
    CHECK(QuadInt(1, -1).str() == "1-√2");
    CHECK(QuadInt(3, -2).str() == "3-2√2");
    CHECK(QuadInt(-1, 1).str() == "-1+√2");
}
