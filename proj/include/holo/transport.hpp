#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "holo/errors.hpp"
#include "holo/fock.hpp"
#include "holo/mpod.hpp"
#include "holo/path.hpp"

// Gauge-fixed numerical adiabatic connection, curvature and path-ordered
// holonomy for any (N, M) and any eigenspace. This module is the oracle the
// closed forms are tested against.

namespace holo {

struct SubspaceSelector {
    int order = 0; // selects the eigenspace at energy order * epsilon
};

// Coordinate on the control manifold: the modulus or the phase of one arm.
struct Coordinate {
    enum Kind { Radius, Phase } kind = Radius;
    int arm = 1; // 1-based
};

// Smooth reference gauge: a frame with orthonormal columns per point.
using FrameField = std::function<Matrix(const CouplingPoint&)>;

namespace detail {

inline CouplingPoint displaced(const CouplingPoint& point, Coordinate mu, double delta) {
    Vector kappa = point.couplings();
    const int i = mu.arm - 1;
    if (i < 0 || i >= point.arms()) throw InvalidSpec("displaced: arm index out of range");
    if (mu.kind == Coordinate::Radius) {
        const double r = std::abs(kappa[i]);
        const Complex dir = (r > 0.0) ? kappa[i] / r : Complex(1.0, 0.0);
        kappa[i] = (r + delta) * dir;
    } else {
        kappa[i] *= std::exp(kImag * delta);
    }
    return CouplingPoint(std::move(kappa));
}

inline void require_same_structure(const SpectralDecomposition& a,
                                   const SpectralDecomposition& b) {
    if (a.multiplicities() != b.multiplicities()) {
        throw DegeneracyCrossing("eigenvalue bucket multiplicities changed");
    }
}

// Raw eigenframe of the selected level, gauge-aligned to the reference frame
// by the polar factor of the overlap. For an exact reference eigenframe this
// reproduces the reference up to the eigensolver's roundoff; a large
// alignment residual means the reference does not span the eigenspace.
inline Matrix aligned_frame(const FockBasis& basis, const CouplingPoint& point,
                            SubspaceSelector selector, const Matrix& reference, double tol) {
    const SpectralDecomposition sd = decompose(build_hamiltonian(basis, point), point, tol);
    const Matrix& raw = sd.level(selector.order).frame;
    if (reference.cols() != raw.cols()) {
        throw FrameMismatch("aligned_frame: reference has wrong column count");
    }
    double sigma_min = 0.0;
    const Matrix q = polar_factor(raw.adjoint() * reference, &sigma_min);
    if (sigma_min < 0.5) {
        throw FrameMismatch("aligned_frame: reference frame does not span the eigenspace");
    }
    return raw * q;
}

} // namespace detail

struct ConnectionEstimate {
    Matrix value;                  // anti-Hermitian part of the difference quotient
    double discarded_hermitian = 0.0; // norm of the symmetrized remainder (diagnostic)
};

// Central-difference estimate of <psi_a | d_mu psi_b> in the gauge of the
// reference frame field. Neighbor eigenframes are aligned to the reference
// field at the displaced points, which both removes eigensolver gauge noise
// and verifies the reference is an eigenframe family.
inline ConnectionEstimate connection_numeric(const FockBasis& basis, const CouplingPoint& point,
                                             Coordinate mu, SubspaceSelector selector,
                                             const FrameField& reference, double step,
                                             double tol = 1e-8) {
    const CouplingPoint plus = detail::displaced(point, mu, step);
    const CouplingPoint minus = detail::displaced(point, mu, -step);
    const SpectralDecomposition at_center = decompose(build_hamiltonian(basis, point), point, tol);
    detail::require_same_structure(at_center,
                                   decompose(build_hamiltonian(basis, plus), plus, tol));
    detail::require_same_structure(at_center,
                                   decompose(build_hamiltonian(basis, minus), minus, tol));

    const Matrix f0 = detail::aligned_frame(basis, point, selector, reference(point), tol);
    const Matrix fp = detail::aligned_frame(basis, plus, selector, reference(plus), tol);
    const Matrix fm = detail::aligned_frame(basis, minus, selector, reference(minus), tol);

    const Matrix a = f0.adjoint() * ((fp - fm) / (2.0 * step));
    ConnectionEstimate est;
    est.value = 0.5 * (a - a.adjoint());
    est.discarded_hermitian = (0.5 * (a + a.adjoint())).norm();
    return est;
}

// Curvature F_mu_nu = d_mu A_nu - d_nu A_mu + [A_mu, A_nu] by nested central
// differences. All frames are aligned to the single anchor frame, i.e. the
// derivatives are taken in the polar-transport gauge anchored at `frame`;
// the curvature at the anchor point is covariant, so this reproduces the
// curvature matrix in the anchor frame's basis.
inline Matrix curvature_numeric(const FockBasis& basis, const CouplingPoint& point,
                                Coordinate mu, Coordinate nu, SubspaceSelector selector,
                                const Matrix& frame, double step, double tol = 1e-8) {
    auto anchored = [&](const CouplingPoint& p) {
        return detail::aligned_frame(basis, p, selector, frame, tol);
    };
    auto connection_at = [&](const CouplingPoint& p, Coordinate dir) {
        const Matrix f0 = anchored(p);
        const Matrix fp = anchored(detail::displaced(p, dir, step));
        const Matrix fm = anchored(detail::displaced(p, dir, -step));
        const Matrix a = f0.adjoint() * ((fp - fm) / (2.0 * step));
        return Matrix(0.5 * (a - a.adjoint()));
    };

    const Matrix da_nu = (connection_at(detail::displaced(point, mu, step), nu) -
                          connection_at(detail::displaced(point, mu, -step), nu)) /
                         (2.0 * step);
    const Matrix da_mu = (connection_at(detail::displaced(point, nu, step), mu) -
                          connection_at(detail::displaced(point, nu, -step), mu)) /
                         (2.0 * step);
    const Matrix a_mu = connection_at(point, mu);
    const Matrix a_nu = connection_at(point, nu);
    return da_nu - da_mu + a_mu * a_nu - a_nu * a_mu;
}

struct HolonomyResult {
    Matrix unitary;      // m x m, expressed in frame_start
    Matrix frame_start;  // p x m raw eigenframe at the start sample
    int steps = 0;
    double error_estimate = 0.0; // fine-vs-coarse discretization difference
};

struct TransportOptions {
    double bucket_tol = 1e-8;
    double min_overlap = 0.1; // sigma_min gate on link overlaps
    // Test hook: extra gauge applied to the raw frame of each sample.
    std::function<Matrix(int, const Matrix&)> regauge;
};

namespace detail {

// Ordered product of unitarized frame overlaps along a closed sample chain;
// index k+1 wraps to 0 so the loop closes on the very first frame.
inline Matrix transport_product(const std::vector<Matrix>& frames, double min_overlap) {
    const std::size_t n = frames.size();
    Matrix u = Matrix::Identity(frames[0].cols(), frames[0].cols());
    for (std::size_t k = 0; k < n; ++k) {
        const Matrix& from = frames[k];
        const Matrix& to = frames[(k + 1) % n];
        double sigma_min = 0.0;
        const Matrix link = polar_factor(to.adjoint() * from, &sigma_min);
        if (sigma_min < min_overlap) {
            throw StepTooCoarse("transport_product: subspace rotated too far between samples");
        }
        u = link * u;
    }
    return u;
}

} // namespace detail

// Discrete parallel transport around a closed path: the ordered product of
// unitarized overlaps U = prod_k polar(frame_{k+1}^dag frame_k), which
// converges to the path-ordered exponential of the adiabatic connection of
// the traversal. Eigenphases of the result are gauge independent.
inline HolonomyResult holonomy_numeric(const FockBasis& basis, const ControlPath& path,
                                       SubspaceSelector selector, int steps = 0,
                                       const TransportOptions& opts = {}) {
    if (!path.closed) throw NotALoop("holonomy_numeric: path is not a loop");
    const ControlPath& used =
        (steps > 0 && steps + 1 != static_cast<int>(path.samples.size())) ? resample(path, steps)
                                                                          : path;
    const std::size_t n = used.samples.size() - 1; // last sample repeats the first

    std::vector<Matrix> frames;
    frames.reserve(n);
    std::map<int, int> structure;
    for (std::size_t k = 0; k < n; ++k) {
        const CouplingPoint& p = used.samples[k];
        const SpectralDecomposition sd =
            decompose(build_hamiltonian(basis, p), p, opts.bucket_tol);
        if (k == 0) {
            structure = sd.multiplicities();
        } else if (sd.multiplicities() != structure) {
            throw DegeneracyCrossing("holonomy_numeric: bucket multiplicities changed along path");
        }
        Matrix f = sd.level(selector.order).frame;
        if (opts.regauge) f = opts.regauge(static_cast<int>(k), f);
        frames.push_back(std::move(f));
    }

    HolonomyResult result;
    result.frame_start = frames[0];
    result.steps = static_cast<int>(n);
    result.unitary = detail::transport_product(frames, opts.min_overlap);

    // Coarse pass on every second sample for the discretization estimate.
    if (n >= 8) {
        std::vector<Matrix> coarse;
        coarse.reserve(n / 2 + 1);
        for (std::size_t k = 0; k < n; k += 2) coarse.push_back(frames[k]);
        const Matrix u_coarse = detail::transport_product(coarse, opts.min_overlap);
        result.error_estimate = (result.unitary - u_coarse).norm();
    }
    return result;
}

// Re-express a holonomy in another frame of the same subspace: entry (a, b)
// of the result is <target_a | U | target_b>, with the basis change
// unitarized so the result stays exactly unitary.
inline Matrix express_in_frame(const HolonomyResult& result, const Matrix& target_frame) {
    if (target_frame.cols() != result.frame_start.cols() ||
        target_frame.rows() != result.frame_start.rows()) {
        throw FrameMismatch("express_in_frame: frame shape mismatch");
    }
    double sigma_min = 0.0;
    const Matrix v = polar_factor(target_frame.adjoint() * result.frame_start, &sigma_min);
    if (sigma_min < 0.5) {
        throw FrameMismatch("express_in_frame: target frame spans a different subspace");
    }
    return v * result.unitary * v.adjoint();
}

} // namespace holo
