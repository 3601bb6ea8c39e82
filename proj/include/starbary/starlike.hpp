#pragma once

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <starbary/disk_tensor.hpp>

namespace starbary {

/// The boundary radius function is not positive everywhere.
class not_starlike_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The boundary radius function fails 2pi-periodicity.
class invalid_boundary_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested evaluation point lies outside the closed domain.
class outside_domain_error : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Starlike domain { (xi, phi) : xi < rho(phi) } with the origin as center.
/// rho is validated on a 4096-point scan at construction.
struct StarlikeDomain {
    std::function<double(double)> rho;
    double rho_min = 0.0;
    double rho_max = 0.0;
    /// Set when the scanned second differences of rho spike two orders of
    /// magnitude above their mean, which flags corner-like boundaries that
    /// ruin the convergence of the transplanted interpolant.
    bool smoothness_warning = false;
};

namespace detail {

inline constexpr int domain_scan_points = 4096;

inline StarlikeDomain validate_domain(std::function<double(double)> rho, bool check_periodicity) {
    StarlikeDomain dom;
    dom.rho = std::move(rho);

    const int n = domain_scan_points;
    std::vector<double> scan(static_cast<std::size_t>(n));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int k = 0; k < n; ++k) {
        const double theta = two_pi * k / n;
        const double v = dom.rho(theta);
        if (!(v > 0.0) || !std::isfinite(v))
            throw not_starlike_error("boundary radius is not strictly positive at theta=" +
                                     std::to_string(theta));
        if (check_periodicity && std::abs(dom.rho(theta + two_pi) - v) > 1e-9)
            throw invalid_boundary_error("boundary radius is not 2pi-periodic at theta=" +
                                         std::to_string(theta));
        scan[static_cast<std::size_t>(k)] = v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    dom.rho_min = lo;
    dom.rho_max = hi;

    double mean_d2 = 0.0, max_d2 = 0.0;
    for (int k = 0; k < n; ++k) {
        const double d2 = scan[static_cast<std::size_t>((k + n - 1) % n)] -
                          2.0 * scan[static_cast<std::size_t>(k)] +
                          scan[static_cast<std::size_t>((k + 1) % n)];
        mean_d2 += std::abs(d2);
        max_d2 = std::max(max_d2, std::abs(d2));
    }
    mean_d2 /= n;
    dom.smoothness_warning = mean_d2 > 0.0 && max_d2 > 1e2 * mean_d2;
    return dom;
}

} // namespace detail

/// Domain from a closed-form 2pi-periodic radius function.
[[nodiscard]] inline StarlikeDomain domain_from_function(std::function<double(double)> rho) {
    return detail::validate_domain(std::move(rho), /*check_periodicity=*/true);
}

/// Domain whose boundary is the trigonometric barycentric interpolant through
/// (theta_k, rho_k) samples; reproduces the samples exactly and smooths
/// whatever lies between them.
[[nodiscard]] inline StarlikeDomain domain_from_samples(std::vector<double> thetas,
                                                        std::vector<double> rhos) {
    if (thetas.size() != rhos.size())
        throw std::invalid_argument("domain_from_samples: theta/rho length mismatch");
    if (thetas.size() < 3) throw std::invalid_argument("domain_from_samples: need >= 3 samples");
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        if (thetas[k] < 0.0 || thetas[k] >= two_pi)
            throw std::invalid_argument("domain_from_samples: theta outside [0,2pi)");
        if (k > 0 && !(thetas[k] > thetas[k - 1]))
            throw std::invalid_argument("domain_from_samples: thetas must increase strictly");
        if (!(rhos[k] > 0.0))
            throw std::invalid_argument("domain_from_samples: rho samples must be positive");
    }

    PeriodicNodeSet pns;
    pns.nodes = std::move(thetas);
    pns.kind = pns.nodes.size() % 2 != 0 ? CstKind::cosecant : CstKind::cotangent;
    auto smoother = [pns = std::move(pns), vals = std::move(rhos)](double theta) {
        return eval_trig_1d(pns, vals, theta);
    };
    // periodic by construction; the scan still guards positivity
    return detail::validate_domain(std::move(smoother), /*check_periodicity=*/false);
}

/// Read boundary samples from two-column text: "theta rho" per line, radians,
/// '#' starts a comment. Returns (thetas, rhos).
[[nodiscard]] inline std::pair<std::vector<double>, std::vector<double>>
load_boundary_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("load_boundary_samples: cannot open " + path);
    std::vector<double> thetas, rhos;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double theta, rho;
        if (fields >> theta) {
            if (!(fields >> rho))
                throw std::invalid_argument("load_boundary_samples: " + path + ":" +
                                            std::to_string(lineno) + ": expected two columns");
            thetas.push_back(theta);
            rhos.push_back(rho);
        }
    }
    return {std::move(thetas), std::move(rhos)};
}

/// Change of variable from the domain onto the radius-2 disk:
/// (xi, phi) -> (2 xi / rho(phi), phi).
[[nodiscard]] inline std::pair<double, double> map_S(const StarlikeDomain& dom, double xi,
                                                     double phi) {
    if (xi < 0.0) throw std::invalid_argument("map_S: xi must be nonnegative");
    const double theta = detail::reduce_angle(phi);
    const double boundary = dom.rho(theta);
    if (xi > boundary * (1.0 + 1e-12))
        throw outside_domain_error("map_S: point beyond the boundary radius");
    double r = 2.0 * xi / boundary;
    if (r > 2.0) r = 2.0;
    if (r < 0.0) r = 0.0;
    return {r, theta};
}

/// Inverse transplant: (r, theta) -> (r rho(theta)/2, theta).
[[nodiscard]] inline std::pair<double, double> map_S_inv(const StarlikeDomain& dom, double r,
                                                         double theta) {
    if (r < 0.0 || r > 2.0) throw std::domain_error("map_S_inv: r outside [0,2]");
    const double phi = detail::reduce_angle(theta);
    return {0.5 * r * dom.rho(phi), phi};
}

/// True iff Cartesian (x, y) lies in the closed domain, with a relative
/// boundary slack so roundoff cannot drop boundary points.
[[nodiscard]] inline bool contains(const StarlikeDomain& dom, double x, double y) {
    const double phi = detail::reduce_angle(std::atan2(y, x));
    return std::hypot(x, y) <= dom.rho(phi) * (1.0 + 1e-12);
}

namespace detail {

/// Cartesian coordinates of the homothetic grid point at disk-polar (r, theta).
/// Shared between sampling and node bookkeeping so both produce identical bits.
inline std::pair<double, double> homothetic_cartesian(const StarlikeDomain& dom, double r,
                                                      double theta) {
    const double xi = 0.5 * r * dom.rho(theta);
    return {xi * std::cos(theta), xi * std::sin(theta)};
}

} // namespace detail

/// Disk interpolant transplanted onto a starlike domain, with the Cartesian
/// homothetic grid nodes retained for exact node evaluation.
struct DomainInterpolant {
    StarlikeDomain domain;
    DiskInterpolant disk;
    std::optional<RadialShift> rshift;
    std::optional<AngularShift> ashift;
    std::vector<double> node_x; // (n1+1) x n2, same layout as the value matrix
    std::vector<double> node_y;
};

/// Interpolate f(x, y) on the domain: sample on the homothetic grid of the
/// (possibly shifted) node families and interpolate on the disk through the
/// transplant map.
[[nodiscard]] inline DomainInterpolant
build_domain_interpolant(const StarlikeDomain& dom, int n1, int n2,
                         const std::optional<RadialShift>& rshift,
                         const std::optional<AngularShift>& ashift,
                         const std::function<double(double, double)>& f,
                         bool sequential_sampling = false) {
    auto h = [&dom, &f](double r, double theta) {
        const auto [x, y] = detail::homothetic_cartesian(dom, r, theta);
        return f(x, y);
    };
    DomainInterpolant di;
    di.domain = dom;
    di.disk = build_disk_interpolant(n1, n2, rshift, ashift, h, sequential_sampling);
    di.rshift = rshift;
    di.ashift = ashift;

    const TensorGrid& g = di.disk.grid;
    di.node_x.resize(g.values.size());
    di.node_y.resize(g.values.size());
    for (std::size_t i = 0; i < g.radial_count(); ++i)
        for (std::size_t j = 0; j < g.angular_count(); ++j) {
            const auto [x, y] =
                detail::homothetic_cartesian(dom, g.radial.nodes[i], g.angular.nodes[j]);
            di.node_x[i * g.angular_count() + j] = x;
            di.node_y[i * g.angular_count() + j] = y;
        }
    return di;
}

namespace detail {

/// Exact-hit lookup: returns the stored sample when (x, y) is bit-equal to a
/// homothetic grid node. atan2/hypot roundoff makes the generic collision
/// tolerance unreachable through the Cartesian route, so node identity is
/// checked against the stored coordinates instead; only the three columns
/// nearest in angle need probing.
inline const double* exact_node_value(const DomainInterpolant& di, double x, double y,
                                      double phi) {
    const TensorGrid& g = di.disk.grid;
    const std::size_t cols = g.angular_count();
    const auto& nodes = g.angular.nodes;
    const auto it = std::lower_bound(nodes.begin(), nodes.end(), phi);
    const auto base = static_cast<std::size_t>(it - nodes.begin());
    for (std::size_t off = 0; off < 3; ++off) {
        const std::size_t j = (base + cols - 1 + off) % cols;
        for (std::size_t i = 0; i < g.radial_count(); ++i) {
            const std::size_t idx = i * cols + j;
            if (di.node_x[idx] == x && di.node_y[idx] == y) return &g.values[idx];
        }
    }
    return nullptr;
}

} // namespace detail

/// Evaluate the transplanted interpolant at Cartesian (x, y).
[[nodiscard]] inline double eval_domain(const DomainInterpolant& di, double x, double y) {
    if (!contains(di.domain, x, y))
        throw outside_domain_error("eval_domain: point outside the domain");
    const double phi = detail::reduce_angle(std::atan2(y, x));
    if (const double* v = detail::exact_node_value(di, x, y, phi)) return *v;
    const auto [r, theta] = map_S(di.domain, std::hypot(x, y), phi);
    return eval_disk(di.disk, r, theta);
}

/// Lebesgue estimate of the transplanted interpolant over a lattice in the
/// domain, mapped through S. Equals the disk estimate: the transplant leaves
/// the Lebesgue function values unchanged.
[[nodiscard]] inline double lebesgue_estimate_domain(const DomainInterpolant& di, int m1,
                                                     int m2) {
    const TensorGrid& g = di.disk.grid;
    double best = 0.0;
    for (int l = 0; l < m2; ++l) {
        const double phi = (l + 0.5) * two_pi / m2;
        const double boundary = di.domain.rho(phi);
        const double ang = lebesgue_function_angular(g.angular, phi);
        for (int k = 0; k < m1; ++k) {
            const double xi = (k + 0.5) * boundary / m1;
            const double r = map_S(di.domain, xi, phi).first;
            best = std::max(best, lebesgue_function_radial(g.radial, r) * ang);
        }
    }
    return best;
}

} // namespace starbary
