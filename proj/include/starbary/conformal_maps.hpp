#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <starbary/bary_core.hpp>

namespace starbary {

/// Tangent-type radial point shift on [0,2] clustering nodes around beta with
/// density alpha. lambda and mu are calibrated in closed form so that the two
/// endpoints are fixed: g1(x) = beta + tan(lambda*(x - mu))/alpha.
struct RadialShift {
    double alpha = 1.0;
    double beta = 1.0;
    double lambda = 0.0;
    double mu = 0.0;
    double theta0 = 0.0; // atan(alpha*(0-beta)) = -lambda*mu, cached so the
                         // tangent argument is lambda*x + theta0 without the
                         // cancellation of lambda*(x-mu)
};

/// Moebius-type angular point shift on the circle clustering nodes around
/// phi_bar with density eta in [0,1); eta = 0 is the identity.
struct AngularShift {
    double phi_bar = 0.0;
    double eta = 0.0;
};

[[nodiscard]] inline double apply_radial(const RadialShift& rs, double x);

/// Calibrate the radial shift. The two-arctangent closed form pins g1(0)=0
/// and g1(2)=2 without any iteration.
[[nodiscard]] inline RadialShift make_radial_shift(double beta, double alpha) {
    if (!(beta > 0.0 && beta < 2.0))
        throw std::invalid_argument("make_radial_shift: beta must lie in (0,2)");
    if (!(alpha > 0.0)) throw std::invalid_argument("make_radial_shift: alpha must be positive");

    RadialShift rs;
    rs.alpha = alpha;
    rs.beta = beta;
    const double t0 = std::atan(alpha * (0.0 - beta));
    const double t2 = std::atan(alpha * (2.0 - beta));
    rs.lambda = 0.5 * (t2 - t0);
    rs.mu = -t0 / rs.lambda;
    rs.theta0 = t0;

    for (int k = 0; k < 1000; ++k) {
        const double x0 = 2.0 * k / 1000.0;
        const double x1 = 2.0 * (k + 1) / 1000.0;
        if (!(apply_radial(rs, x0) < apply_radial(rs, x1)))
            throw std::logic_error("make_radial_shift: map not strictly increasing");
    }
    return rs;
}

/// Evaluate the radial shift; endpoints map exactly, interior values are
/// clamped against last-ulp excursions outside [0,2].
[[nodiscard]] inline double apply_radial(const RadialShift& rs, double x) {
    if (x < 0.0 || x > 2.0) throw std::domain_error("apply_radial: x outside [0,2]");
    if (x == 0.0) return 0.0;
    if (x == 2.0) return 2.0;
    double v = rs.beta + std::tan(rs.lambda * x + rs.theta0) / rs.alpha;
    if (v < 0.0) v = 0.0;
    if (v > 2.0) v = 2.0;
    return v;
}

[[nodiscard]] inline AngularShift make_angular_shift(double phi_bar, double eta) {
    if (!(eta >= 0.0 && eta < 1.0))
        throw std::invalid_argument("make_angular_shift: eta must lie in [0,1)");
    return AngularShift{detail::reduce_angle(phi_bar), eta};
}

/// Continuous lift of the angular shift: theta - 2*arg(1 + eta*e^{i psi})
/// with psi = theta - phi_bar. Monotone with derivative
/// (1-eta^2)/(1 + 2 eta cos(psi) + eta^2) > 0, fixes phi_bar and phi_bar+pi.
/// The two-argument arctangent form avoids the complex-log branch cut near
/// psi = pi.
[[nodiscard]] inline double apply_angular_lift(const AngularShift& as, double theta) {
    const double psi = theta - as.phi_bar;
    const double arg = std::atan2(as.eta * std::sin(psi), 1.0 + as.eta * std::cos(psi));
    return theta - 2.0 * arg;
}

/// Angular shift reduced to [0, 2pi).
[[nodiscard]] inline double apply_angular(const AngularShift& as, double theta) {
    return detail::reduce_angle(apply_angular_lift(as, theta));
}

/// The map in its published complex-logarithm form, kept for cross-checks.
/// It reduces algebraically to phi_bar + 2*arg(1 + eta*e^{i psi}), whose range
/// spans only 4*arcsin(eta); the monotone variant above is what the grids use.
[[nodiscard]] inline double apply_angular_verbatim(const AngularShift& as, double theta) {
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> eph = std::exp(i * as.phi_bar);
    const std::complex<double> eth = std::exp(i * theta);
    const std::complex<double> ratio =
        (eph + as.eta * eth) / (1.0 + eph * as.eta / eth);
    return detail::reduce_angle((-i * std::log(ratio)).real());
}

} // namespace starbary
