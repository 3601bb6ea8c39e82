#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include <starbary/conformal_maps.hpp>

using namespace starbary;

TEST_SUITE("conformal_maps") {

TEST_CASE("radial shift calibration fixes the endpoints") {
    for (double beta : {0.3, 0.722605, 1.0, 1.7}) {
        for (double alpha : {0.5, 2.8, 10.0}) {
            auto rs = make_radial_shift(beta, alpha);
            CHECK(apply_radial(rs, 0.0) == 0.0);
            CHECK(apply_radial(rs, 2.0) == 2.0);
            // the underlying formula agrees to 1e-14 even without the
            // exact-endpoint branch
            const double raw0 = rs.beta + std::tan(rs.lambda * 0.0 + rs.theta0) / rs.alpha;
            const double raw2 = rs.beta + std::tan(rs.lambda * 2.0 + rs.theta0) / rs.alpha;
            CHECK(std::abs(raw0 - 0.0) <= 1e-14);
            CHECK(std::abs(raw2 - 2.0) <= 1e-14);
        }
    }
    CHECK_THROWS_AS((void)make_radial_shift(0.0, 2.8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_radial_shift(2.0, 2.8), std::invalid_argument);
    CHECK_THROWS_AS((void)make_radial_shift(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_radial_shift(1.0, -3.0), std::invalid_argument);
}

TEST_CASE("radial shift is strictly increasing and stays in range") {
    auto rs = make_radial_shift(0.6 * std::sqrt(2.0), 2.8);
    double prev = apply_radial(rs, 0.0);
    for (int k = 1; k <= 1000; ++k) {
        const double x = 2.0 * k / 1000.0;
        const double y = apply_radial(rs, x);
        CHECK(y > prev);
        CHECK(y >= 0.0);
        CHECK(y <= 2.0);
        prev = y;
    }
    CHECK_THROWS_AS((void)apply_radial(rs, -0.01), std::domain_error);
    CHECK_THROWS_AS((void)apply_radial(rs, 2.01), std::domain_error);
}

TEST_CASE("radial shift clusters at beta with factor lambda/alpha") {
    const double beta = 0.6 * std::sqrt(2.0);
    auto rs = make_radial_shift(beta, 2.8);
    CHECK(apply_radial(rs, rs.mu) == doctest::Approx(beta).epsilon(1e-13));
    CHECK(rs.lambda / rs.alpha < 1.0);

    // g1(mu + d) - g1(mu - d) ~ 2 d lambda/alpha for small d
    const double d = 1e-5;
    const double slope = (apply_radial(rs, rs.mu + d) - apply_radial(rs, rs.mu - d)) / (2 * d);
    CHECK(slope == doctest::Approx(rs.lambda / rs.alpha).epsilon(1e-6));
}

TEST_CASE("radial shift approaches the identity as alpha -> 0") {
    auto rs = make_radial_shift(1.0, 1e-4);
    for (double x : {0.5, 0.7, 1.5})
        CHECK(std::abs(apply_radial(rs, x) - x) <= 1e-6);

    double sup_small = 0.0, sup_large = 0.0;
    auto rs2 = make_radial_shift(1.3, 1e-2);
    auto rs3 = make_radial_shift(1.3, 1.0);
    for (int k = 0; k <= 500; ++k) {
        const double x = 2.0 * k / 500.0;
        sup_small = std::max(sup_small, std::abs(apply_radial(rs2, x) - x));
        sup_large = std::max(sup_large, std::abs(apply_radial(rs3, x) - x));
    }
    CHECK(sup_small < sup_large);
    CHECK(sup_small < 1e-3);
}

TEST_CASE("radial example: beta=1, alpha=2.8 at the midpoint") {
    auto rs = make_radial_shift(1.0, 2.8);
    const double g1 = apply_radial(rs, 1.0);
    CHECK(std::abs(g1 - 1.0) < 0.5);
    CHECK(apply_radial(rs, 0.999) < g1);
    CHECK(g1 < apply_radial(rs, 1.001));
}

TEST_CASE("angular shift construction and fixed points") {
    CHECK_THROWS_AS((void)make_angular_shift(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS((void)make_angular_shift(0.0, -0.1), std::invalid_argument);

    const double pb = 7.0 * std::numbers::pi / 4.0;
    auto as = make_angular_shift(pb, 0.65);
    CHECK(apply_angular(as, as.phi_bar) == as.phi_bar);
    const double opposite = as.phi_bar - std::numbers::pi;
    CHECK(std::abs(apply_angular(as, opposite) - opposite) <= 1e-13);

    // phi_bar is stored reduced
    auto as2 = make_angular_shift(pb + 4 * two_pi, 0.65);
    CHECK(as2.phi_bar == doctest::Approx(as.phi_bar).epsilon(1e-15));
}

TEST_CASE("eta = 0 gives the identity map") {
    auto as = make_angular_shift(1.1, 0.0);
    for (double t : {0.0, 0.3, 2.0, 5.9})
        CHECK(apply_angular(as, t) == doctest::Approx(t).epsilon(1e-15));
}

TEST_CASE("angular lift is monotone with total increment 2pi") {
    for (double eta : {0.3, 0.65, 0.9}) {
        auto as = make_angular_shift(std::numbers::pi / 3.0, eta);
        const int m = 10000;
        double prev = apply_angular_lift(as, 0.0);
        const double first = prev;
        for (int k = 1; k <= m; ++k) {
            const double t = two_pi * k / m;
            const double v = apply_angular_lift(as, t);
            CHECK(v > prev);
            prev = v;
        }
        CHECK(std::abs((prev - first) - two_pi) <= 1e-12);
    }
}

TEST_CASE("angular derivative at the cluster center") {
    auto as = make_angular_shift(2.0, 0.65);
    const double d = 1e-6;
    const double slope =
        (apply_angular_lift(as, as.phi_bar + d) - apply_angular_lift(as, as.phi_bar - d)) /
        (2 * d);
    CHECK(slope == doctest::Approx((1.0 - 0.65) / (1.0 + 0.65)).epsilon(1e-6));
}

TEST_CASE("angular shift approaches the identity as eta -> 0") {
    double sup_prev = two_pi;
    for (double eta : {0.1, 0.01, 1e-4, 1e-8}) {
        auto as = make_angular_shift(4.0, eta);
        double sup = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const double t = two_pi * k / 1000.0;
            sup = std::max(sup, std::abs(apply_angular_lift(as, t) - t));
        }
        CHECK(sup < sup_prev);
        sup_prev = sup;
        // sup equals 2*arcsin(eta) analytically
        CHECK(sup <= 2.0 * std::asin(eta) + 1e-12);
    }
    CHECK(sup_prev <= 2.1e-8);
}

TEST_CASE("image spacing of equispaced nodes is smallest near phi_bar") {
    const double pb = std::numbers::pi / 3.0;
    for (double eta : {0.3, 0.65, 0.9}) {
        auto as = make_angular_shift(pb, eta);
        const int n2 = 96;
        std::vector<double> img(n2);
        for (int j = 0; j < n2; ++j) img[j] = apply_angular_lift(as, two_pi * j / n2);

        std::size_t argmin = 0;
        double best = two_pi;
        for (int j = 0; j < n2; ++j) {
            const double gap = (j + 1 < n2 ? img[j + 1] : img[0] + two_pi) - img[j];
            if (gap < best) {
                best = gap;
                argmin = static_cast<std::size_t>(j);
            }
        }
        // the smallest image gap starts at one of the two nodes adjacent to
        // the preimage of phi_bar
        double pre = pb; // phi_bar is a fixed point, its preimage is itself
        const double spacing = two_pi / n2;
        const auto nearest = static_cast<std::size_t>(std::llround(pre / spacing)) %
                             static_cast<std::size_t>(n2);
        const long diff = std::abs(static_cast<long>(argmin) - static_cast<long>(nearest));
        CHECK(std::min(diff, n2 - diff) <= 1);
    }
}

TEST_CASE("shifted node density near the center matches the derivative factor") {
    const double pb = std::numbers::pi / 3.0;
    for (double eta : {0.3, 0.65, 0.9}) {
        for (int n2 : {64, 128, 256}) {
            auto as = make_angular_shift(pb, eta);
            const double spacing = two_pi / n2;
            double min_gap = two_pi;
            for (int j = 0; j < n2; ++j) {
                const double gap =
                    apply_angular_lift(as, (j + 1) * spacing) - apply_angular_lift(as, j * spacing);
                min_gap = std::min(min_gap, gap);
            }
            const double predicted = (1.0 - eta) / (1.0 + eta); // derivative at phi_bar
            const double factor = (spacing / min_gap) * predicted;
            CHECK(factor == doctest::Approx(1.0).epsilon(0.2));
        }
    }
}

TEST_CASE("published log form reduces to phi_bar + 2 arg(1 + eta e^{i psi})") {
    auto as = make_angular_shift(1.9, 0.65);
    for (int k = 0; k < 64; ++k) {
        const double t = two_pi * k / 64.0;
        const double psi = t - as.phi_bar;
        const double expect = detail::reduce_angle(
            as.phi_bar + 2.0 * std::atan2(as.eta * std::sin(psi), 1.0 + as.eta * std::cos(psi)));
        const double got = apply_angular_verbatim(as, t);
        CHECK(std::abs(std::remainder(got - expect, two_pi)) <= 1e-12);
    }
}

} // TEST_SUITE
