#include "rainfield/normal.hpp"

#include <doctest.h>

#include <cmath>

using namespace rainfield;

TEST_CASE("normal cdf matches high-precision reference values") {
    // reference values computed with mpmath at 25 digits
    CHECK(std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std_normal_cdf(1.0) == doctest::Approx(0.84134474606854295).epsilon(1e-12));
    CHECK(std_normal_cdf(0.5) == doctest::Approx(0.6914624612740131).epsilon(1e-12));
    CHECK(std_normal_cdf(-2.33) == doctest::Approx(0.0099030755591642521).epsilon(1e-11));
    CHECK(std_normal_cdf(3.7) == doctest::Approx(0.99989220026652261).epsilon(1e-12));
    CHECK(std::abs(std_normal_cdf(1.0) - 0.84134474606854295) < 1e-9);
}

TEST_CASE("normal inverse matches reference values and round-trips") {
    CHECK(std_normal_inv(0.5) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std_normal_inv(0.975) == doctest::Approx(1.9599639845400542).epsilon(1e-12));
    CHECK(std_normal_inv(0.99) == doctest::Approx(2.3263478740408411).epsilon(1e-12));
    CHECK(std_normal_inv(0.00001) == doctest::Approx(-4.2648907939228246).epsilon(1e-12));
    CHECK(std_normal_inv(0.3) == doctest::Approx(-0.52440051270804078).epsilon(1e-12));

    for (double x = -6.0; x <= 6.0; x += 0.01) {
        const double back = std_normal_inv(std_normal_cdf(x));
        CHECK(std::abs(back - x) < 1e-7);
    }
}

TEST_CASE("normal inverse rejects the endpoints") {
    CHECK_THROWS(std_normal_inv(0.0));
    CHECK_THROWS(std_normal_inv(1.0));
    CHECK_THROWS(std_normal_inv(-0.2));
}

TEST_CASE("normal cdf is monotone") {
    double prev = 0.0;
    for (double x = -8.0; x <= 8.0; x += 0.05) {
        const double f = std_normal_cdf(x);
        CHECK(f >= prev);
        prev = f;
    }
}
