#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "holo/analytic.hpp"
#include "holo/errors.hpp"
#include "holo/path.hpp"

// Named loop constructors and the closed-form phase predictions for them.

namespace holo {

// Rectangle boundary in the (r1, r2)-plane at r3 = kappa.
struct PlaquetteSpec {
    double alpha = 1.0;
    double beta = 1.0;
    double kappa = 1.0;
};

// One arm's phase advances by 2 pi * windings while all moduli stay fixed;
// the remaining arms are held at real couplings radii[j].
struct ThetaWindingSpec {
    int arm = 2;
    RealVector radii; // length M
    int windings = 1;
};

// Boundary of a rectangle in the (phi, theta) chart kappa1 = k sin(phi) cos(theta),
// kappa2 = k sin(phi) sin(theta), kappa3 = k.
struct SphericalArcSpec {
    double phi0 = 0.0;
    double phi1 = 0.5 * kPi;
    double theta0 = 0.0;
    double theta1 = 1.0;
    double kappa = 1.0;
};

// Closed polygon through explicit coupling-space vertices.
struct PiecewiseLinearSpec {
    std::vector<Vector> vertices;
};

struct LoopSpec {
    std::variant<PlaquetteSpec, ThetaWindingSpec, SphericalArcSpec, PiecewiseLinearSpec> params;
    int orientation = 1; // -1 reverses traversal
    int steps = 4096;
};

// Stokes value of the bright phase over the full plaquette, positive for
// counterclockwise traversal in the (r1, r2) chart.
inline double plaquette_phase(double alpha, double beta, double kappa, int orientation = 1) {
    if (alpha <= 0.0 || beta <= 0.0 || kappa <= 0.0) {
        throw InvalidSpec("plaquette_phase: alpha, beta, kappa must be positive");
    }
    return orientation *
           std::atan(alpha * beta / (kappa * std::sqrt(alpha * alpha + beta * beta + kappa * kappa)));
}

// beta such that |plaquette_phase(alpha, beta, kappa)| = pi/4, which exists
// only for alpha > kappa.
inline double solve_beta_for_quarter_pi(double alpha, double kappa) {
    if (kappa <= 0.0 || alpha <= 0.0) throw InvalidSpec("solve_beta_for_quarter_pi: need positive arguments");
    if (alpha <= kappa) throw NoSolution("solve_beta_for_quarter_pi: requires alpha > kappa");
    const double beta =
        kappa * std::sqrt((alpha * alpha + kappa * kappa) / (alpha * alpha - kappa * kappa));
    if (std::abs(std::abs(plaquette_phase(alpha, beta, kappa)) - kPi / 4.0) > 1e-12) {
        throw NoSolution("solve_beta_for_quarter_pi: back-substitution check failed");
    }
    return beta;
}

// Closed-form bright phase of the spherical-chart rectangle.
inline double spherical_phase(const SphericalArcSpec& spec) {
    const double s1 = std::sin(spec.phi1);
    const double s0 = std::sin(spec.phi0);
    return (std::sqrt(s1 * s1 + 1.0) - std::sqrt(s0 * s0 + 1.0)) * (spec.theta1 - spec.theta0);
}

namespace detail {

// Sample a closed polygon: edge j gets counts[j] segments; the final sample
// is a bitwise copy of the first so closure is exact.
inline std::vector<CouplingPoint> sample_polygon(const std::vector<Vector>& vertices,
                                                 int steps) {
    const std::size_t edges = vertices.size();
    std::vector<int> counts(edges, steps / static_cast<int>(edges));
    for (std::size_t j = 0; j < static_cast<std::size_t>(steps % static_cast<int>(edges)); ++j) {
        counts[j] += 1;
    }
    std::vector<CouplingPoint> samples;
    samples.reserve(static_cast<std::size_t>(steps) + 1);
    for (std::size_t j = 0; j < edges; ++j) {
        const Vector& a = vertices[j];
        const Vector& b = vertices[(j + 1) % edges];
        for (int k = 0; k < counts[j]; ++k) {
            const double t = static_cast<double>(k) / counts[j];
            samples.emplace_back(Vector((1.0 - t) * a + t * b));
        }
    }
    samples.push_back(samples.front());
    return samples;
}

} // namespace detail

inline ControlPath materialize(const LoopSpec& spec) {
    if (spec.steps < 16) throw InvalidSpec("materialize: need at least 16 steps");
    if (spec.orientation != 1 && spec.orientation != -1) {
        throw InvalidSpec("materialize: orientation must be +1 or -1");
    }

    std::vector<CouplingPoint> samples;

    if (const auto* p = std::get_if<PlaquetteSpec>(&spec.params)) {
        if (p->alpha <= 0.0 || p->beta <= 0.0 || p->kappa <= 0.0) {
            throw InvalidSpec("materialize: plaquette parameters must be positive");
        }
        auto corner = [&](double r1, double r2) {
            Vector v(3);
            v << Complex(r1, 0.0), Complex(r2, 0.0), Complex(p->kappa, 0.0);
            return v;
        };
        samples = detail::sample_polygon(
            {corner(0.0, 0.0), corner(p->alpha, 0.0), corner(p->alpha, p->beta),
             corner(0.0, p->beta)},
            spec.steps);
    } else if (const auto* t = std::get_if<ThetaWindingSpec>(&spec.params)) {
        if (t->arm < 1 || t->arm > t->radii.size()) {
            throw InvalidSpec("materialize: theta winding arm out of range");
        }
        samples.reserve(static_cast<std::size_t>(spec.steps) + 1);
        for (int k = 0; k < spec.steps; ++k) {
            const double theta =
                2.0 * kPi * t->windings * static_cast<double>(k) / spec.steps;
            Vector v = t->radii.cast<Complex>();
            v[t->arm - 1] = t->radii[t->arm - 1] * std::exp(kImag * theta);
            samples.emplace_back(std::move(v));
        }
        samples.push_back(samples.front());
    } else if (const auto* s = std::get_if<SphericalArcSpec>(&spec.params)) {
        if (s->kappa <= 0.0) throw InvalidSpec("materialize: spherical arc needs kappa > 0");
        auto chart = [&](double phi, double theta) {
            Vector v(3);
            v << Complex(s->kappa * std::sin(phi) * std::cos(theta), 0.0),
                Complex(s->kappa * std::sin(phi) * std::sin(theta), 0.0),
                Complex(s->kappa, 0.0);
            return v;
        };
        // Boundary of the (phi, theta) rectangle, traversed edge by edge in
        // chart coordinates (the mapped edges are curves, not chords).
        const int per_edge = std::max(4, spec.steps / 4);
        auto push_edge = [&](double pa, double ta, double pb, double tb) {
            for (int k = 0; k < per_edge; ++k) {
                const double u = static_cast<double>(k) / per_edge;
                samples.emplace_back(chart(pa + u * (pb - pa), ta + u * (tb - ta)));
            }
        };
        push_edge(s->phi0, s->theta0, s->phi1, s->theta0);
        push_edge(s->phi1, s->theta0, s->phi1, s->theta1);
        push_edge(s->phi1, s->theta1, s->phi0, s->theta1);
        push_edge(s->phi0, s->theta1, s->phi0, s->theta0);
        samples.push_back(samples.front());
    } else {
        const auto& pw = std::get<PiecewiseLinearSpec>(spec.params);
        if (pw.vertices.size() < 3) {
            throw InvalidSpec("materialize: piecewise linear loop needs at least 3 vertices");
        }
        samples = detail::sample_polygon(pw.vertices, spec.steps);
    }

    if (spec.orientation == -1) std::reverse(samples.begin(), samples.end());
    return make_path(std::move(samples), /*closed=*/true);
}

} // namespace holo
