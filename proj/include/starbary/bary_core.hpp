#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace starbary {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Unit roundoff of IEEE double (2^-53).
inline constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2.0;

namespace detail {

/// Neumaier-compensated accumulator. The alternating-sign barycentric sums
/// cancel heavily; plain summation loses the 1e-13 floor on large grids.
class CompensatedSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Reduce an angle to [0, 2pi) with a single remainder.
[[nodiscard]] inline double reduce_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0; // t + two_pi can round back up to two_pi
    return t;
}

} // namespace detail

/// Radial nodes with signed barycentric weights on a closed interval.
/// Weights alternate in sign; the endpoint halving is baked into the weights
/// so a single kernel serves shifted and unshifted node families.
struct NodeSet1D {
    std::vector<double> nodes;   // strictly increasing, in [a, b]
    std::vector<double> weights; // same length, alternating sign
    double a = 0.0;
    double b = 2.0;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }

    /// Evaluation points within this distance of a node take the stored datum.
    [[nodiscard]] double collision_tolerance() const {
        return 4.0 * unit_roundoff * std::max(std::abs(a), std::abs(b));
    }
};

/// Kernel kind for the trigonometric weights: csc for an odd node count,
/// cot for an even one.
enum class CstKind { cosecant, cotangent };

/// Angular nodes in [0, 2pi) with implicit sign weights (-1)^j.
struct PeriodicNodeSet {
    std::vector<double> nodes; // strictly increasing, in [0, 2pi)
    CstKind kind = CstKind::cotangent;

    [[nodiscard]] std::size_t size() const { return nodes.size(); }
};

/// Auxiliary weights for radial grids missing one or both endpoints of [0,2].
/// Not applied by any evaluator here; exposed for completeness.
struct EtaWeights {
    std::vector<double> eta;
};

/// n1+1 Chebyshev points of the second kind on [a, b], with barycentric
/// weights (-1)^i * delta_i (delta = 1/2 at the two ends, 1 inside).
/// Nodes are constructed symmetrically so mirrored pairs match exactly.
[[nodiscard]] inline NodeSet1D chebyshev_nodes(int n1, double a = 0.0, double b = 2.0) {
    if (n1 < 1) throw std::invalid_argument("chebyshev_nodes: n1 must be >= 1");
    if (!(a < b)) throw std::invalid_argument("chebyshev_nodes: need a < b");

    const std::size_t count = static_cast<std::size_t>(n1) + 1;
    NodeSet1D ns;
    ns.a = a;
    ns.b = b;
    ns.nodes.resize(count);
    ns.weights.resize(count);

    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (int i = 0; 2 * i < n1; ++i) {
        const double c = std::cos(static_cast<double>(i) * std::numbers::pi /
                                  static_cast<double>(n1));
        ns.nodes[static_cast<std::size_t>(i)] = mid - half * c;
        ns.nodes[static_cast<std::size_t>(n1 - i)] = mid + half * c;
    }
    if (n1 % 2 == 0) ns.nodes[static_cast<std::size_t>(n1) / 2] = mid;
    ns.nodes.front() = a;
    ns.nodes.back() = b;

    for (std::size_t i = 0; i < count; ++i) {
        const double delta = (i == 0 || i + 1 == count) ? 0.5 : 1.0;
        ns.weights[i] = (i % 2 == 0) ? delta : -delta;
    }
    return ns;
}

/// Four-case eta weights for radial nodes in [0,2], keyed on whether the
/// endpoints 0 and 2 belong to the node set. Equal to 1 everywhere when both
/// endpoints are present.
[[nodiscard]] inline EtaWeights radial_eta_weights(const NodeSet1D& ns, bool has0, bool has2) {
    EtaWeights ew;
    ew.eta.reserve(ns.size());
    if (!ns.nodes.empty()) {
        if (has0 != (ns.nodes.front() == 0.0) || has2 != (ns.nodes.back() == 2.0))
            throw std::invalid_argument("radial_eta_weights: endpoint flags disagree with nodes");
    }
    for (double x : ns.nodes) {
        if (x < 0.0 || x > 2.0)
            throw std::invalid_argument("radial_eta_weights: node outside [0,2]");
        const double t2 = (x - 1.0) * (x - 1.0);
        double eta;
        if (!has0 && !has2)
            eta = std::sqrt(1.0 - t2);
        else if (!has0 && has2)
            eta = std::sqrt(0.5 * (1.0 + t2));
        else if (has0 && !has2)
            eta = std::sqrt(0.5 * (1.0 - t2));
        else
            eta = 1.0;
        ew.eta.push_back(eta);
    }
    return ew;
}

/// Second-form barycentric evaluation of the rational interpolant through
/// (nodes, values). Exact at nodes via the collision branch.
[[nodiscard]] inline double eval_rational_1d(const NodeSet1D& ns,
                                             std::span<const double> values, double x) {
    if (values.size() != ns.size())
        throw std::invalid_argument("eval_rational_1d: values/nodes length mismatch");
    if (x < ns.a || x > ns.b)
        throw std::domain_error("eval_rational_1d: x outside the interpolation interval");

    const double tol = ns.collision_tolerance();
    detail::CompensatedSum num, den;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        const double d = x - ns.nodes[i];
        if (std::abs(d) <= tol) return values[i];
        const double t = ns.weights[i] / d;
        num.add(t * values[i]);
        den.add(t);
    }
    return num.value() / den.value();
}

/// n2 equispaced angular nodes 2*pi*j/n2; kernel kind follows the parity.
[[nodiscard]] inline PeriodicNodeSet equispaced_nodes(int n2) {
    if (n2 < 2) throw std::invalid_argument("equispaced_nodes: n2 must be >= 2");
    PeriodicNodeSet pns;
    pns.nodes.resize(static_cast<std::size_t>(n2));
    for (int j = 0; j < n2; ++j)
        pns.nodes[static_cast<std::size_t>(j)] =
            two_pi * static_cast<double>(j) / static_cast<double>(n2);
    pns.kind = (n2 % 2 != 0) ? CstKind::cosecant : CstKind::cotangent;
    return pns;
}

/// csc(u) or cot(u) depending on the kernel kind. At integer multiples of pi
/// the result is huge or infinite; callers detect that as a node collision.
[[nodiscard]] inline double cst(double u, CstKind kind) {
    const double s = std::sin(u);
    return kind == CstKind::cosecant ? 1.0 / s : std::cos(u) / s;
}

/// Trigonometric barycentric evaluation with weights (-1)^j and the cst
/// kernel. theta is taken modulo 2*pi; exact at nodes.
[[nodiscard]] inline double eval_trig_1d(const PeriodicNodeSet& pns,
                                         std::span<const double> values, double theta) {
    if (values.size() != pns.size())
        throw std::invalid_argument("eval_trig_1d: values/nodes length mismatch");

    const double t = detail::reduce_angle(theta);
    detail::CompensatedSum num, den;
    double sign = 1.0;
    for (std::size_t j = 0; j < pns.size(); ++j) {
        const double u = 0.5 * (t - pns.nodes[j]);
        const double s = std::sin(u);
        if (std::abs(s) <= 4.0 * unit_roundoff) return values[j];
        const double k = pns.kind == CstKind::cosecant ? 1.0 / s : std::cos(u) / s;
        num.add(sign * k * values[j]);
        den.add(sign * k);
        sign = -sign;
    }
    return num.value() / den.value();
}

} // namespace starbary
