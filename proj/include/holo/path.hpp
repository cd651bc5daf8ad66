#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "holo/errors.hpp"
#include "holo/mpod.hpp"

namespace holo {

// Discretized curve in coupling space. For a closed path the first and last
// samples are bitwise equal.
struct ControlPath {
    std::vector<CouplingPoint> samples;
    std::vector<double> grid; // t_k in [0, 1], monotone, grid.front()=0, grid.back()=1
    bool closed = false;
};

inline ControlPath make_path(std::vector<CouplingPoint> samples, bool closed,
                             double eps_tol = 1e-12) {
    if (samples.size() < 2) throw InvalidSpec("make_path: need at least two samples");
    if (closed && !(samples.front() == samples.back())) {
        throw NotALoop("make_path: closed path must end exactly where it starts");
    }
    for (const auto& s : samples) {
        if (s.energy_scale() <= eps_tol) {
            throw SingularSample("make_path: sample with energy scale below tolerance");
        }
    }
    ControlPath path;
    const std::size_t n = samples.size();
    path.samples = std::move(samples);
    path.grid.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        path.grid[k] = static_cast<double>(k) / static_cast<double>(n - 1);
    }
    path.closed = closed;
    return path;
}

// Piecewise-linear interpolation in kappa-space at parameter t in [0, 1].
inline CouplingPoint sample_at(const ControlPath& path, double t) {
    t = std::clamp(t, 0.0, 1.0);
    const auto& grid = path.grid;
    std::size_t hi = 1;
    while (hi + 1 < grid.size() && grid[hi] < t) ++hi;
    const std::size_t lo = hi - 1;
    const double span = grid[hi] - grid[lo];
    const double w = span > 0.0 ? (t - grid[lo]) / span : 0.0;
    Vector kappa = (1.0 - w) * path.samples[lo].couplings() + w * path.samples[hi].couplings();
    return CouplingPoint(std::move(kappa));
}

// Re-discretize the polyline at `steps` uniform parameter intervals. The
// curve itself is unchanged; only the sampling density varies.
inline ControlPath resample(const ControlPath& path, int steps) {
    if (steps < 2) throw InvalidSpec("resample: need at least two steps");
    std::vector<CouplingPoint> samples;
    samples.reserve(static_cast<std::size_t>(steps) + 1);
    for (int k = 0; k < steps; ++k) {
        samples.push_back(sample_at(path, static_cast<double>(k) / steps));
    }
    samples.push_back(path.closed ? path.samples.front() : sample_at(path, 1.0));
    return make_path(std::move(samples), path.closed);
}

// Real-valued one-form evaluated at kappa with tangent dkappa/dt.
using OneForm = std::function<double(const CouplingPoint&, const Vector&)>;

namespace detail {

// 8-point Gauss-Legendre nodes/weights on [0, 1].
inline const std::vector<std::pair<double, double>>& gauss8() {
    static const std::vector<std::pair<double, double>> table = [] {
        const double x[4] = {0.1834346424956498, 0.5255324099163290,
                             0.7966664774136267, 0.9602898564975363};
        const double w[4] = {0.3626837833783620, 0.3137066458778873,
                             0.2223810344533745, 0.1012285362903763};
        std::vector<std::pair<double, double>> t;
        for (int i = 3; i >= 0; --i) t.emplace_back(0.5 * (1.0 - x[i]), 0.5 * w[i]);
        for (int i = 0; i < 4; ++i) t.emplace_back(0.5 * (1.0 + x[i]), 0.5 * w[i]);
        return t;
    }();
    return table;
}

inline double integrate_segment(const Vector& a, const Vector& b, const OneForm& form,
                                int subdivisions) {
    const Vector velocity = b - a;
    double acc = 0.0;
    for (int s = 0; s < subdivisions; ++s) {
        const double lo = static_cast<double>(s) / subdivisions;
        const double h = 1.0 / subdivisions;
        for (const auto& [node, weight] : gauss8()) {
            const double t = lo + h * node;
            CouplingPoint p(a + t * velocity);
            acc += weight * h * form(p, velocity);
        }
    }
    return acc;
}

} // namespace detail

// Composite Gauss-Legendre quadrature of a one-form along the polyline, with
// step doubling until successive estimates differ by less than tol.
inline double integrate_one_form(const ControlPath& path, const OneForm& form,
                                 double tol = 1e-10, int max_doublings = 10) {
    double previous = 0.0;
    bool have_previous = false;
    int subdivisions = 1;
    for (int iter = 0; iter <= max_doublings; ++iter) {
        double total = 0.0;
        for (std::size_t k = 0; k + 1 < path.samples.size(); ++k) {
            total += detail::integrate_segment(path.samples[k].couplings(),
                                               path.samples[k + 1].couplings(), form,
                                               subdivisions);
        }
        if (have_previous && std::abs(total - previous) < tol) return total;
        previous = total;
        have_previous = true;
        subdivisions *= 2;
    }
    return previous;
}

} // namespace holo
