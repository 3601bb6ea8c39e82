#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <starbary/bary_core.hpp>
#include <starbary/conformal_maps.hpp>

namespace starbary {

/// A sampled function value came out non-finite; carries the grid indices.
class sampling_error : public std::runtime_error {
  public:
    sampling_error(int radial_index, int angular_index)
        : std::runtime_error("sampling_error: non-finite sample at grid node (" +
                             std::to_string(radial_index) + ", " +
                             std::to_string(angular_index) + ")"),
          i_(radial_index), j_(angular_index) {}
    [[nodiscard]] int radial_index() const { return i_; }
    [[nodiscard]] int angular_index() const { return j_; }

  private:
    int i_, j_;
};

namespace detail {

/// Worker cap: STARBARY_THREADS if set, else hardware concurrency.
inline unsigned max_workers() {
    static const unsigned cap = [] {
        if (const char* env = std::getenv("STARBARY_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) return static_cast<unsigned>(v);
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw > 0 ? hw : 1u;
    }();
    return cap;
}

/// Run fn(k) for k in [0, jobs), strided across threads.
/// The first worker exception is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(max_workers(), jobs));
    if (workers <= 1) {
        for (std::size_t k = 0; k < jobs; ++k) fn(k);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t k = w; k < jobs; k += workers) fn(k);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace detail

/// Tensor grid of physical (possibly conformally shifted) nodes together with
/// the sampled value matrix, radial index major.
struct TensorGrid {
    NodeSet1D radial;           // physical nodes y_i = g1(r_i), weights (-1)^i delta_i
    PeriodicNodeSet angular;    // physical nodes phi_j = g2(theta_j), sorted
    std::vector<double> values; // (n1+1) x n2

    [[nodiscard]] std::size_t radial_count() const { return radial.size(); }
    [[nodiscard]] std::size_t angular_count() const { return angular.size(); }
    [[nodiscard]] double value(std::size_t i, std::size_t j) const {
        return values[i * angular_count() + j];
    }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return std::span<const double>(values).subspan(i * angular_count(), angular_count());
    }
};

struct DiskInterpolant {
    TensorGrid grid;
};

/// Tensor-product rational interpolant of f(r, theta) on the radius-2 disk.
/// Radial nodes are Chebyshev points of the second kind in [0,2], angular
/// nodes equispaced in [0,2pi); optional conformal shifts move both families.
/// The function is sampled once at the disk center and broadcast along the
/// r = 0 row. Set sequential_sampling when f is not safe to call from
/// multiple threads.
[[nodiscard]] inline DiskInterpolant
build_disk_interpolant(int n1, int n2, const std::optional<RadialShift>& rshift,
                       const std::optional<AngularShift>& ashift,
                       const std::function<double(double, double)>& f,
                       bool sequential_sampling = false) {
    if (n1 < 2) throw std::invalid_argument("build_disk_interpolant: n1 must be >= 2");
    if (n2 < 3) throw std::invalid_argument("build_disk_interpolant: n2 must be >= 3");

    TensorGrid grid;
    grid.radial = chebyshev_nodes(n1);
    if (rshift) {
        for (auto& y : grid.radial.nodes) y = apply_radial(*rshift, y);
    }

    grid.angular = equispaced_nodes(n2);
    if (ashift) {
        auto& ph = grid.angular.nodes;
        for (auto& p : ph) p = apply_angular(*ashift, p);
        // the circle map preserves cyclic order; rotate so the stored nodes
        // ascend (for odd counts the csc kernel absorbs the 2pi reduction of
        // the wrapped block, so plain (-1)^j weights stay correct)
        const auto pivot = std::min_element(ph.begin(), ph.end());
        std::rotate(ph.begin(), pivot, ph.end());
    }

    const auto rows = static_cast<std::size_t>(n1) + 1;
    const auto cols = static_cast<std::size_t>(n2);
    grid.values.assign(rows * cols, 0.0);

    const double center = f(0.0, grid.angular.nodes[0]);
    if (!std::isfinite(center)) throw sampling_error(0, 0);
    std::fill_n(grid.values.begin(), cols, center);

    auto sample_row = [&](std::size_t i) {
        const double y = grid.radial.nodes[i];
        for (std::size_t j = 0; j < cols; ++j) {
            const double v = f(y, grid.angular.nodes[j]);
            if (!std::isfinite(v))
                throw sampling_error(static_cast<int>(i), static_cast<int>(j));
            grid.values[i * cols + j] = v;
        }
    };
    if (sequential_sampling || rows * cols < 4096) {
        for (std::size_t i = 1; i < rows; ++i) sample_row(i);
    } else {
        detail::parallel_for(rows - 1, [&](std::size_t k) { sample_row(k + 1); });
    }
    return DiskInterpolant{std::move(grid)};
}

namespace detail {

/// Angular kernel c_j = (-1)^j cst((theta - phi_j)/2); returns the index of a
/// colliding node or -1. theta must already be reduced to [0, 2pi).
inline long angular_kernel(const PeriodicNodeSet& pns, double theta, std::vector<double>& c) {
    const std::size_t n = pns.size();
    c.resize(n);
    const bool odd = pns.kind == CstKind::cosecant;
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double u = 0.5 * (theta - pns.nodes[j]);
        const double s = std::sin(u);
        if (std::abs(s) <= 4.0 * unit_roundoff) return static_cast<long>(j);
        c[j] = sign * (odd ? 1.0 / s : std::cos(u) / s);
        sign = -sign;
    }
    return -1;
}

/// Radial factors a_i = w_i/(r - y_i); returns a colliding index or -1.
inline long radial_factors(const NodeSet1D& ns, double r, std::vector<double>& a) {
    const std::size_t n = ns.size();
    a.resize(n);
    const double tol = ns.collision_tolerance();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = r - ns.nodes[i];
        if (std::abs(d) <= tol) return static_cast<long>(i);
        a[i] = ns.weights[i] / d;
    }
    return -1;
}

} // namespace detail

/// Evaluate the disk interpolant at polar (r, theta). Collisions cascade to
/// exact one-dimensional interpolation along the matching circle or ray, and
/// to the stored value when both coordinates hit a node.
[[nodiscard]] inline double eval_disk(const DiskInterpolant& di, double r, double theta) {
    const TensorGrid& g = di.grid;
    if (r < 0.0 || r > 2.0) throw std::domain_error("eval_disk: r outside [0,2]");
    const double t = detail::reduce_angle(theta);

    std::vector<double> c;
    const long jcoll = detail::angular_kernel(g.angular, t, c);

    std::vector<double> a;
    const long icoll = detail::radial_factors(g.radial, r, a);

    const std::size_t rows = g.radial_count();
    const std::size_t cols = g.angular_count();

    if (icoll >= 0 && jcoll >= 0)
        return g.value(static_cast<std::size_t>(icoll), static_cast<std::size_t>(jcoll));
    if (icoll >= 0) return eval_trig_1d(g.angular, g.row(static_cast<std::size_t>(icoll)), t);
    if (jcoll >= 0) {
        std::vector<double> column(rows);
        for (std::size_t i = 0; i < rows; ++i)
            column[i] = g.value(i, static_cast<std::size_t>(jcoll));
        return eval_rational_1d(g.radial, column, r);
    }

    detail::CompensatedSum kernel_sum;
    for (std::size_t j = 0; j < cols; ++j) kernel_sum.add(c[j]);

    detail::CompensatedSum num, den;
    const double* row = g.values.data();
    for (std::size_t i = 0; i < rows; ++i, row += cols) {
        detail::CompensatedSum inner;
        for (std::size_t j = 0; j < cols; ++j) inner.add(c[j] * row[j]);
        num.add(a[i] * inner.value());
        den.add(a[i]);
    }
    return num.value() / (den.value() * kernel_sum.value());
}

/// Lebesgue function of the radial family at a point (1 on node collision).
[[nodiscard]] inline double lebesgue_function_radial(const NodeSet1D& ns, double x) {
    std::vector<double> a;
    if (detail::radial_factors(ns, x, a) >= 0) return 1.0;
    detail::CompensatedSum absolute, signed_sum;
    for (double t : a) {
        absolute.add(std::abs(t));
        signed_sum.add(t);
    }
    return absolute.value() / std::abs(signed_sum.value());
}

/// Lebesgue function of the angular family at a point.
[[nodiscard]] inline double lebesgue_function_angular(const PeriodicNodeSet& pns, double theta) {
    std::vector<double> c;
    if (detail::angular_kernel(pns, detail::reduce_angle(theta), c) >= 0) return 1.0;
    detail::CompensatedSum absolute, signed_sum;
    for (double t : c) {
        absolute.add(std::abs(t));
        signed_sum.add(t);
    }
    return absolute.value() / std::abs(signed_sum.value());
}

/// Max of the radial Lebesgue function over an m-point lattice offset from
/// the nodes.
[[nodiscard]] inline double lebesgue_1d_radial(const NodeSet1D& ns, int m) {
    double best = 0.0;
    for (int k = 0; k < m; ++k) {
        const double x = ns.a + (k + 0.5) * (ns.b - ns.a) / m;
        best = std::max(best, lebesgue_function_radial(ns, x));
    }
    return best;
}

[[nodiscard]] inline double lebesgue_1d_angular(const PeriodicNodeSet& pns, int m) {
    double best = 0.0;
    for (int k = 0; k < m; ++k)
        best = std::max(best, lebesgue_function_angular(pns, (k + 0.5) * two_pi / m));
    return best;
}

/// Lebesgue-constant estimate of the tensor interpolant over an m1 x m2
/// evaluation lattice. The variables separate, so the estimate is the product
/// of the two one-dimensional maxima; full_scan instead walks the whole
/// lattice evaluating the genuine double-sum ratio, as a cross-check.
[[nodiscard]] inline double lebesgue_estimate(const TensorGrid& grid, int m1, int m2,
                                              bool full_scan = false) {
    if (!full_scan)
        return lebesgue_1d_radial(grid.radial, m1) * lebesgue_1d_angular(grid.angular, m2);

    double best = 0.0;
    std::vector<double> a, c;
    for (int k = 0; k < m1; ++k) {
        const double r = grid.radial.a + (k + 0.5) * (grid.radial.b - grid.radial.a) / m1;
        if (detail::radial_factors(grid.radial, r, a) >= 0) continue;
        for (int l = 0; l < m2; ++l) {
            const double theta = (l + 0.5) * two_pi / m2;
            if (detail::angular_kernel(grid.angular, theta, c) >= 0) continue;
            detail::CompensatedSum abs_sum, sig_a, sig_c;
            for (double ai : a) {
                detail::CompensatedSum inner;
                for (double cj : c) inner.add(std::abs(ai * cj));
                abs_sum.add(inner.value());
                sig_a.add(ai);
            }
            for (double cj : c) sig_c.add(cj);
            best = std::max(best, abs_sum.value() / std::abs(sig_a.value() * sig_c.value()));
        }
    }
    return best;
}

} // namespace starbary
