#pragma once

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <starbary/starlike.hpp>

namespace starbary {

/// Error function, |erf(x) - erf_exact(x)| <= 1e-15 over the real line.
/// Maclaurin series for |x| < 2, Lentz-evaluated continued fraction of the
/// complementary function beyond; odd symmetry is exact by reflection.
[[nodiscard]] inline double erf(double x) {
    const double ax = std::abs(x);
    const double two_over_sqrt_pi = 1.1283791670955126;
    double result;
    if (ax < 2.0) {
        const double x2 = ax * ax;
        double term = ax; // x^(2k+1) / k!
        detail::CompensatedSum sum;
        sum.add(ax);
        for (int k = 1; k < 200; ++k) {
            term *= x2 / k;
            const double contrib = term / (2 * k + 1);
            sum.add((k % 2 == 0) ? contrib : -contrib);
            if (contrib < 1e-18 * std::abs(sum.value())) break;
        }
        result = two_over_sqrt_pi * sum.value();
    } else {
        // erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))
        const double tiny = 1e-300;
        double f = ax, c = ax, d = 0.0;
        for (int k = 1; k < 300; ++k) {
            const double coeff = 0.5 * k;
            d = ax + coeff * d;
            if (d == 0.0) d = tiny;
            c = ax + coeff / c;
            if (c == 0.0) c = tiny;
            d = 1.0 / d;
            const double delta = c * d;
            f *= delta;
            if (std::abs(delta - 1.0) < 1e-17) break;
        }
        const double erfc = std::exp(-ax * ax) * std::numbers::inv_sqrtpi / f;
        result = 1.0 - erfc;
    }
    return x < 0.0 ? -result : result;
}

/// First test function: smooth, no steep front.
[[nodiscard]] inline double f1(double x, double y) {
    return 3.0 * std::exp(-x * x + y + 1.0) + 3.0;
}

/// Second test function: an erf front along x = 0.6 modulated by a Gaussian
/// around y = -0.6. The steep region sits at (0.6, -0.6), polar
/// (0.6*sqrt(2), 7pi/4), inside all the builtin domains.
[[nodiscard]] inline double f2(double x, double y) {
    constexpr double eps = 100.0;
    const double s = std::sqrt(eps / 2.0);
    static const double norm = erf(s);
    const double u = x - 0.6;
    const double v = y + 0.6;
    return 40.0 * erf(s * u) / norm * std::exp(-30.0 * u * u) * std::exp(-60.0 * v * v);
}

/// Cartesian location of the steep front of f2.
inline constexpr double front_x = 0.6;
inline constexpr double front_y = -0.6;

struct Rect {
    double x0, x1, y0, y1;
};

struct BuiltinDomain {
    std::string name;
    StarlikeDomain domain;
    Rect rect;
};

[[nodiscard]] inline const std::vector<std::string>& builtin_domain_names() {
    static const std::vector<std::string> names = {"limacon",  "butterfly1", "butterfly2",
                                                   "asterisk", "square",     "square_smoothed"};
    return names;
}

namespace detail {

inline double rho_square_raw(double t) {
    return std::min(1.0 / std::abs(std::cos(t)), 1.0 / std::abs(std::sin(t)));
}

} // namespace detail

/// The named boundary families with their evaluation rectangles.
/// square_smoothed replaces the corner boundary by the trigonometric
/// interpolant through 64 equispaced samples of it.
[[nodiscard]] inline BuiltinDomain builtin_domain(const std::string& name) {
    if (name == "limacon")
        return {name, domain_from_function([](double t) { return 1.5 + 1.2 * std::cos(t); }),
                {-1.0, 3.0, -2.0, 2.0}};
    if (name == "butterfly1")
        return {name,
                domain_from_function(
                    [](double t) { return 1.0 - std::cos(t) * std::sin(3.0 * t); }),
                {-2.0, 2.0, -2.0, 2.0}};
    if (name == "butterfly2")
        return {name,
                domain_from_function([](double t) {
                    return 7.5 - std::sin(t) + 4.0 * std::sin(3.0 * t) - std::sin(7.0 * t) +
                           3.0 * std::cos(2.0 * t);
                }),
                {-13.0, 13.0, -10.0, 10.0}};
    if (name == "asterisk")
        return {name, domain_from_function([](double t) { return std::sin(10.0 * t) + 2.2; }),
                {-4.0, 4.0, -4.0, 4.0}};
    if (name == "square")
        return {name, domain_from_function(detail::rho_square_raw), {-2.0, 2.0, -2.0, 2.0}};
    if (name == "square_smoothed") {
        std::vector<double> th(64), rh(64);
        for (int k = 0; k < 64; ++k) {
            th[static_cast<std::size_t>(k)] = two_pi * k / 64.0;
            rh[static_cast<std::size_t>(k)] = detail::rho_square_raw(th[static_cast<std::size_t>(k)]);
        }
        return {name, domain_from_samples(std::move(th), std::move(rh)), {-2.0, 2.0, -2.0, 2.0}};
    }
    std::string msg = "unknown domain '" + name + "'; valid names:";
    for (const auto& n : builtin_domain_names()) msg += " " + n;
    throw std::invalid_argument(msg);
}

/// Named test functions for the command line.
[[nodiscard]] inline std::function<double(double, double)>
test_function(const std::string& name) {
    if (name == "f1") return [](double x, double y) { return f1(x, y); };
    if (name == "f2") return [](double x, double y) { return f2(x, y); };
    throw std::invalid_argument("unknown function '" + name + "'; valid names: f1 f2");
}

/// Maximum-error measurement over an m x m rectangle lattice filtered to the
/// domain interior.
struct ErrorReport {
    int n1 = 0;
    int n2 = 0;
    std::string domain;
    std::string function;
    bool shifted = false;
    double max_abs_error = 0.0;
    bool non_finite = false;
    long points_evaluated = 0;
    double elapsed_seconds = 0.0;
};

class empty_grid_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Sweep the inclusive m x m lattice on rect, keep points inside the domain,
/// and take the maximum absolute difference between f and the interpolant.
/// Lattice rows are processed in parallel; the max-reduce keeps the result
/// independent of the worker count.
[[nodiscard]] inline ErrorReport error_on_grid(const DomainInterpolant& di,
                                               const std::function<double(double, double)>& f,
                                               const Rect& rect, int m = 170) {
    if (m < 2) throw std::invalid_argument("error_on_grid: need m >= 2");
    const auto t_start = std::chrono::steady_clock::now();

    const auto rows = static_cast<std::size_t>(m);
    std::vector<double> row_max(rows, 0.0);
    std::vector<long> row_count(rows, 0);
    std::atomic<bool> non_finite{false};

    detail::parallel_for(rows, [&](std::size_t s) {
        const double x = rect.x0 + (rect.x1 - rect.x0) * static_cast<double>(s) / (m - 1);
        double local_max = 0.0;
        long local_count = 0;
        for (int t = 0; t < m; ++t) {
            const double y = rect.y0 + (rect.y1 - rect.y0) * static_cast<double>(t) / (m - 1);
            if (!contains(di.domain, x, y)) continue;
            ++local_count;
            const double diff = std::abs(f(x, y) - eval_domain(di, x, y));
            if (std::isfinite(diff))
                local_max = std::max(local_max, diff);
            else
                non_finite.store(true, std::memory_order_relaxed);
        }
        row_max[s] = local_max;
        row_count[s] = local_count;
    });

    ErrorReport report;
    report.n1 = static_cast<int>(di.disk.grid.radial_count()) - 1;
    report.n2 = static_cast<int>(di.disk.grid.angular_count());
    report.shifted = di.rshift.has_value() || di.ashift.has_value();
    for (std::size_t s = 0; s < rows; ++s) {
        report.max_abs_error = std::max(report.max_abs_error, row_max[s]);
        report.points_evaluated += row_count[s];
    }
    report.non_finite = non_finite.load();
    if (report.points_evaluated == 0)
        throw empty_grid_error("error_on_grid: no lattice point falls inside the domain");
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

/// One error_on_grid row per grid size, in order.
[[nodiscard]] inline std::vector<ErrorReport>
convergence_table(const BuiltinDomain& bd, const std::string& function_name,
                  const std::function<double(double, double)>& f,
                  const std::vector<std::pair<int, int>>& sizes,
                  const std::optional<RadialShift>& rshift = {},
                  const std::optional<AngularShift>& ashift = {}, int m = 170) {
    if (sizes.empty()) throw std::invalid_argument("convergence_table: empty size list");
    std::vector<ErrorReport> reports;
    reports.reserve(sizes.size());
    for (const auto& [n1, n2] : sizes) {
        auto di = build_domain_interpolant(bd.domain, n1, n2, rshift, ashift, f);
        ErrorReport rep = error_on_grid(di, f, bd.rect, m);
        rep.domain = bd.name;
        rep.function = function_name;
        reports.push_back(std::move(rep));
    }
    return reports;
}

/// Conformal shifts aimed at the steep front of f2: the angular center is the
/// front's polar angle and the radial center its image on the disk, capped
/// below the rim for fronts outside the boundary; density alpha = 2.8 and
/// eta = 0.65.
[[nodiscard]] inline std::pair<RadialShift, AngularShift>
derive_front_shifts(const StarlikeDomain& dom, double alpha = 2.8, double eta = 0.65) {
    const double phi_bar = detail::reduce_angle(std::atan2(front_y, front_x));
    const double xi_front = std::hypot(front_x, front_y);
    double beta = 2.0 * xi_front / dom.rho(phi_bar);
    beta = std::min(beta, 1.999);
    return {make_radial_shift(beta, alpha), make_angular_shift(phi_bar, eta)};
}

/// Fixed CSV rendering of a table: scientific notation with 10 significant
/// digits, non-finite errors spelled Inf. With include_timing = false the
/// elapsed column is zeroed so identical runs give byte-identical files.
[[nodiscard]] inline std::string to_csv(const std::vector<ErrorReport>& reports,
                                        bool include_timing = true) {
    std::string out = "n1,n2,domain,function,shifted,max_abs_error,points,elapsed_s\n";
    char buf[160];
    for (const auto& r : reports) {
        const double elapsed = include_timing ? r.elapsed_seconds : 0.0;
        if (r.non_finite) {
            std::snprintf(buf, sizeof buf, "%d,%d,%s,%s,%d,Inf,%ld,%.6f\n", r.n1, r.n2,
                          r.domain.c_str(), r.function.c_str(), r.shifted ? 1 : 0,
                          r.points_evaluated, elapsed);
        } else {
            std::snprintf(buf, sizeof buf, "%d,%d,%s,%s,%d,%.9e,%ld,%.6f\n", r.n1, r.n2,
                          r.domain.c_str(), r.function.c_str(), r.shifted ? 1 : 0,
                          r.max_abs_error, r.points_evaluated, elapsed);
        }
        out += buf;
    }
    return out;
}

} // namespace starbary
