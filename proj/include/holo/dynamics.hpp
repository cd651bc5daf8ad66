#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "holo/analytic.hpp"
#include "holo/errors.hpp"
#include "holo/mpod.hpp"
#include "holo/path.hpp"
#include "holo/transport.hpp"

// Time-ordered propagation of the full layer Hamiltonian along a schedule,
// dynamical-phase bookkeeping, and extraction of the geometric blocks that
// the adiabatic limit promises.

namespace holo {

struct Schedule {
    ControlPath path;        // closed control loop
    double total_time = 1.0; // T, in units of 1/epsilon
    // Optional reparametrization s -> t(s) of the path parameter; identity
    // when empty. Used to slow down at kinks of piecewise loops.
    std::function<double(double)> time_map;

    double map(double s) const { return time_map ? time_map(s) : s; }
};

inline Schedule make_schedule(ControlPath path, double total_time,
                              std::function<double(double)> time_map = {}) {
    if (!path.closed) throw NotALoop("make_schedule: schedule path must be a loop");
    if (total_time <= 0.0) throw InvalidSpec("make_schedule: total time must be positive");
    return Schedule{std::move(path), total_time, std::move(time_map)};
}

// Piecewise reparametrization for a loop whose vertices sit at parameter
// multiples of 1/edges: within each edge the speed ramps as 1 - cos(2 pi x),
// so the drive velocity vanishes at every vertex and H(t) is C^1 around the
// corners. This restores fast adiabatic convergence on polygonal loops.
inline std::function<double(double)> smoothed_edge_time_map(int edges) {
    if (edges < 1) throw InvalidSpec("smoothed_edge_time_map: need at least one edge");
    return [edges](double s) {
        s = std::clamp(s, 0.0, 1.0);
        const double scaled = s * edges;
        double whole = std::floor(scaled);
        if (whole >= edges) whole = edges - 1;
        const double x = scaled - whole;
        const double ramped = x - std::sin(2.0 * kPi * x) / (2.0 * kPi);
        return (whole + ramped) / edges;
    };
}

struct PropagatorResult {
    Matrix full_unitary;                 // p x p
    std::map<int, Matrix> blocks;        // order n -> frame_n^dag U frame_n
    std::map<int, double> dynamical_phases; // omega_n = n * int eps dt
    std::map<int, double> leakage;       // off-block norm per level
    std::vector<EigenLevel> start_levels; // eigenframes at t = 0
    int steps = 0;
};

// Time-ordered product of exact midpoint exponentials U = prod exp(-i H Dt).
// Unitary to roundoff; blocks are extracted with the start-point eigenframes.
inline PropagatorResult propagate(const FockBasis& basis, const Schedule& schedule, int steps,
                                  double tol = 1e-8) {
    if (steps < 1) throw InvalidSpec("propagate: need at least one step");
    const double dt = schedule.total_time / steps;

    const CouplingPoint start = schedule.path.samples.front();
    const SpectralDecomposition at_start =
        decompose(build_hamiltonian(basis, start), start, tol);
    const std::map<int, int> structure = at_start.multiplicities();

    Matrix u = Matrix::Identity(basis.size(), basis.size());
    double eps_integral = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double s_mid = schedule.map((static_cast<double>(k) + 0.5) / steps);
        const CouplingPoint p = sample_at(schedule.path, s_mid);
        const Matrix h = build_hamiltonian(basis, p);

        Eigen::SelfAdjointEigenSolver<Matrix> es(h);
        const double eps = p.energy_scale();
        if (eps <= tol) throw DecoupledSystem("propagate: decoupled point along schedule");
        std::map<int, int> pattern;
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
            pattern[static_cast<int>(std::lround(es.eigenvalues()[j] / eps))] += 1;
        }
        if (pattern != structure) {
            throw DegeneracyCrossing("propagate: bucket multiplicities changed along schedule");
        }

        Vector phases(es.eigenvalues().size());
        for (Eigen::Index j = 0; j < phases.size(); ++j) {
            phases[j] = std::exp(kImag * (-dt * es.eigenvalues()[j]));
        }
        u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint() * u;
        eps_integral += eps * dt;
    }

    PropagatorResult result;
    result.full_unitary = std::move(u);
    result.start_levels = at_start.levels();
    result.steps = steps;
    for (const auto& lvl : at_start.levels()) {
        const Matrix block = lvl.frame.adjoint() * result.full_unitary * lvl.frame;
        const double captured = block.squaredNorm();
        result.leakage[lvl.order] =
            std::sqrt(std::max(0.0, static_cast<double>(lvl.multiplicity) - captured));
        result.blocks[lvl.order] = block;
        result.dynamical_phases[lvl.order] = lvl.order * eps_integral;
    }
    return result;
}

// omega_n = n * int_0^T eps(t) dt on the same midpoint grid as propagate.
inline double dynamical_phase(const Schedule& schedule, int order, int steps) {
    if (steps < 1) throw InvalidSpec("dynamical_phase: need at least one step");
    const double dt = schedule.total_time / steps;
    double acc = 0.0;
    for (int k = 0; k < steps; ++k) {
        const double s_mid = schedule.map((static_cast<double>(k) + 0.5) / steps);
        acc += sample_at(schedule.path, s_mid).energy_scale() * dt;
    }
    return order * acc;
}

// Remove the accumulated dynamical phase e^{-i omega_n} from the level block
// and unitarize; comparable to the transport holonomy of the same loop.
inline Matrix extract_geometric_block(const PropagatorResult& result, int order,
                                      double leakage_bound = 0.1) {
    auto it = result.blocks.find(order);
    if (it == result.blocks.end()) throw InvalidOrder("extract_geometric_block: no such level");
    if (result.leakage.at(order) >= leakage_bound) {
        throw NotAdiabatic("extract_geometric_block: leakage exceeds the adiabaticity bound");
    }
    const double omega = result.dynamical_phases.at(order);
    return polar_factor(std::exp(kImag * omega) * it->second);
}

struct SweepRow {
    double total_time = 0.0;
    double leakage = 0.0;
    double block_error = 0.0;
};

// Adiabatic convergence sweep: for each T, propagate the loop and compare
// the extracted geometric block of the selected level with the transport
// holonomy of the same loop (both in the start eigenframe). Step count per
// run is 50 * T * eps(start), i.e. a fixed step of 0.02 / eps.
inline std::vector<SweepRow> adiabatic_sweep(const FockBasis& basis, const ControlPath& loop,
                                             SubspaceSelector selector,
                                             const std::vector<double>& times,
                                             std::function<double(double)> time_map = {}) {
    const HolonomyResult transport = holonomy_numeric(basis, loop, selector);
    const double eps0 = loop.samples.front().energy_scale();
    std::vector<SweepRow> rows;
    rows.reserve(times.size());
    for (double t : times) {
        const int steps = std::max(1000, static_cast<int>(std::lround(50.0 * t * eps0)));
        const PropagatorResult prop = propagate(basis, Schedule{loop, t, time_map}, steps);
        const Matrix block = extract_geometric_block(prop, selector.order);
        // The propagator start frame and the transport start frame come from
        // the same deterministic decomposition, so the bases agree.
        SweepRow row;
        row.total_time = t;
        row.leakage = prop.leakage.at(selector.order);
        row.block_error = (block - transport.unitary).norm();
        rows.push_back(row);
    }
    return rows;
}

} // namespace holo
