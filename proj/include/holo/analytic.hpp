#pragma once

#include <cmath>
#include <numbers>

#include "holo/errors.hpp"
#include "holo/fock.hpp"
#include "holo/mpod.hpp"
#include "holo/path.hpp"

// Closed-form eigenstate families, connections, holonomies and geometric
// phases of the two-photon tripod (N = 2, M = 3). Everything here is exact
// in the stated charts; other (N, M) go through the numerical transport.

namespace holo {

inline constexpr double kPi = std::numbers::pi;

enum class FrameFamily { DarkTheta2, DarkReal, BrightTheta1, BrightReal };

struct TripodFrame {
    FrameFamily family;
    int sign = 0;        // +1 / -1 for bright families, 0 for dark
    CouplingPoint point; // coupling configuration the frame diagonalizes
    Matrix vectors;      // 10 x k, columns in the printed order
};

namespace detail {

inline void require_tripod_layer(const FockBasis& basis) {
    if (basis.photon_number() != 2 || basis.modes() != 4) {
        throw ArityMismatch("tripod closed forms require the (N=2, M=3) layer");
    }
}

inline int idx(const FockBasis& basis, int n1, int n2, int n3, int n4) {
    return basis.index_of({n1, n2, n3, n4});
}

} // namespace detail

// zeta_ijk(r) = r_i r_k / ((r_i^2 + r_j^2) r) with r = |(r1, r2, r3)|.
inline double zeta(int i, int j, int k, double r1, double r2, double r3) {
    const double r[4] = {0.0, r1, r2, r3};
    const double norm = std::sqrt(r1 * r1 + r2 * r2 + r3 * r3);
    const double denom = (r[i] * r[i] + r[j] * r[j]) * norm;
    if (denom == 0.0) throw SingularParametrization("zeta: degenerate chart point");
    return r[i] * r[k] / denom;
}

// Dark frame in the chart kappa = (0, r2 e^{i theta2}, r3).
inline TripodFrame dark_states_theta2(const FockBasis& basis, double r2, double theta2,
                                      double r3) {
    detail::require_tripod_layer(basis);
    const double rho2 = r2 * r2 + r3 * r3;
    if (rho2 <= 0.0) throw SingularParametrization("dark_states_theta2: rho_23 = 0");
    const double rho = std::sqrt(rho2);
    const Complex ph = std::exp(kImag * theta2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    Matrix d = Matrix::Zero(basis.size(), 4);
    d(detail::idx(basis, 2, 0, 0, 0), 0) = 1.0;

    d(detail::idx(basis, 1, 0, 1, 0), 1) = r2 / rho;
    d(detail::idx(basis, 1, 1, 0, 0), 1) = -r3 * ph / rho;

    d(detail::idx(basis, 0, 2, 0, 0), 2) = r3 * r3 * ph * ph / rho2;
    d(detail::idx(basis, 0, 1, 1, 0), 2) = -std::sqrt(2.0) * r2 * r3 * ph / rho2;
    d(detail::idx(basis, 0, 0, 2, 0), 2) = r2 * r2 / rho2;

    d(detail::idx(basis, 0, 2, 0, 0), 3) = r2 * r2 * ph * ph * inv_sqrt2 / rho2;
    d(detail::idx(basis, 0, 0, 2, 0), 3) = r3 * r3 * inv_sqrt2 / rho2;
    d(detail::idx(basis, 0, 1, 1, 0), 3) = r2 * r3 * ph / rho2;
    d(detail::idx(basis, 0, 0, 0, 2), 3) = -inv_sqrt2;

    Vector kappa(3);
    kappa << Complex(0.0, 0.0), r2 * ph, Complex(r3, 0.0);
    return TripodFrame{FrameFamily::DarkTheta2, 0, CouplingPoint(kappa), std::move(d)};
}

// Dark frame in the real chart kappa = (r1, r2, r3).
inline TripodFrame dark_states_real(const FockBasis& basis, double r1, double r2, double r3) {
    detail::require_tripod_layer(basis);
    const double rho12sq = r1 * r1 + r2 * r2;
    const double rsq = rho12sq + r3 * r3;
    if (rho12sq <= 0.0 || rsq <= 0.0) {
        throw SingularParametrization("dark_states_real: rho_12 = 0 or r = 0");
    }
    const double r = std::sqrt(rsq);
    const double sqrt2 = std::sqrt(2.0);

    Matrix d = Matrix::Zero(basis.size(), 4);
    const int i2000 = detail::idx(basis, 2, 0, 0, 0);
    const int i0200 = detail::idx(basis, 0, 2, 0, 0);
    const int i0020 = detail::idx(basis, 0, 0, 2, 0);
    const int i0002 = detail::idx(basis, 0, 0, 0, 2);
    const int i1100 = detail::idx(basis, 1, 1, 0, 0);
    const int i1010 = detail::idx(basis, 1, 0, 1, 0);
    const int i0110 = detail::idx(basis, 0, 1, 1, 0);

    d(i2000, 0) = r2 * r2 / rho12sq;
    d(i1100, 0) = -sqrt2 * r1 * r2 / rho12sq;
    d(i0200, 0) = r1 * r1 / rho12sq;

    d(i0200, 1) = sqrt2 * r1 * r2 * r3 / (rho12sq * r);
    d(i2000, 1) = -sqrt2 * r1 * r2 * r3 / (rho12sq * r);
    d(i1010, 1) = r2 / r;
    d(i0110, 1) = -r1 / r;
    d(i1100, 1) = (r1 * r1 - r2 * r2) * r3 / (rho12sq * r);

    d(i2000, 2) = r3 * r3 * r1 * r1 / (rho12sq * rsq);
    d(i0200, 2) = r3 * r3 * r2 * r2 / (rho12sq * rsq);
    d(i1100, 2) = sqrt2 * r3 * r1 * r2 * r3 / (rho12sq * rsq);
    d(i1010, 2) = -sqrt2 * r3 * r1 / rsq;
    d(i0110, 2) = -sqrt2 * r3 * r2 / rsq;
    d(i0020, 2) = rho12sq / rsq;

    d(i2000, 3) = r1 * r1 / (sqrt2 * rsq);
    d(i0200, 3) = r2 * r2 / (sqrt2 * rsq);
    d(i0020, 3) = r3 * r3 / (sqrt2 * rsq);
    d(i1100, 3) = r1 * r2 / rsq;
    d(i1010, 3) = r1 * r3 / rsq;
    d(i0110, 3) = r2 * r3 / rsq;
    d(i0002, 3) = -1.0 / sqrt2;

    Vector kappa(3);
    kappa << Complex(r1, 0.0), Complex(r2, 0.0), Complex(r3, 0.0);
    return TripodFrame{FrameFamily::DarkReal, 0, CouplingPoint(kappa), std::move(d)};
}

// First-order bright frame in the chart kappa = (r1 e^{i theta1}, 0, r3).
inline TripodFrame bright_states_theta1(const FockBasis& basis, double r1, double theta1,
                                        double r3, int sign) {
    detail::require_tripod_layer(basis);
    if (sign != 1 && sign != -1) throw InvalidOrder("bright_states_theta1: sign must be +1/-1");
    const double rho2 = r1 * r1 + r3 * r3;
    if (rho2 <= 0.0) throw SingularParametrization("bright_states_theta1: rho_13 = 0");
    const double rho = std::sqrt(rho2);
    const double s = static_cast<double>(sign);
    const Complex ph = std::exp(kImag * theta1);
    const double sqrt2 = std::sqrt(2.0);

    Matrix b = Matrix::Zero(basis.size(), 2);
    b(detail::idx(basis, 2, 0, 0, 0), 0) = r1 * r3 * ph * ph / rho2;
    b(detail::idx(basis, 0, 0, 2, 0), 0) = -r1 * r3 / rho2;
    b(detail::idx(basis, 1, 0, 0, 1), 0) = s * r3 * ph / (sqrt2 * rho);
    b(detail::idx(basis, 0, 0, 1, 1), 0) = -s * r1 / (sqrt2 * rho);
    b(detail::idx(basis, 1, 0, 1, 0), 0) = (r3 * r3 - r1 * r1) * ph / (sqrt2 * rho2);

    b(detail::idx(basis, 0, 1, 1, 0), 1) = r3 / (sqrt2 * rho);
    b(detail::idx(basis, 1, 1, 0, 0), 1) = r1 * ph / (sqrt2 * rho);
    b(detail::idx(basis, 0, 1, 0, 1), 1) = s / sqrt2;

    Vector kappa(3);
    kappa << r1 * ph, Complex(0.0, 0.0), Complex(r3, 0.0);
    return TripodFrame{FrameFamily::BrightTheta1, sign, CouplingPoint(kappa), std::move(b)};
}

// First-order bright frame in the real chart kappa = (r1, r2, r3).
inline TripodFrame bright_states_real(const FockBasis& basis, double r1, double r2, double r3,
                                      int sign) {
    detail::require_tripod_layer(basis);
    if (sign != 1 && sign != -1) throw InvalidOrder("bright_states_real: sign must be +1/-1");
    const double rho2 = r1 * r1 + r3 * r3;
    const double rsq = rho2 + r2 * r2;
    if (rho2 <= 0.0 || rsq <= 0.0) {
        throw SingularParametrization("bright_states_real: rho_13 = 0 or r = 0");
    }
    const double rho = std::sqrt(rho2);
    const double r = std::sqrt(rsq);
    const double s = static_cast<double>(sign);
    const double sqrt2 = std::sqrt(2.0);

    Matrix b = Matrix::Zero(basis.size(), 2);
    b(detail::idx(basis, 2, 0, 0, 0), 0) = r1 * r3 / (r * rho);
    b(detail::idx(basis, 0, 0, 2, 0), 0) = -r1 * r3 / (r * rho);
    b(detail::idx(basis, 1, 1, 0, 0), 0) = r2 * r3 / (sqrt2 * r * rho);
    b(detail::idx(basis, 0, 1, 1, 0), 0) = -r2 * r1 / (sqrt2 * r * rho);
    b(detail::idx(basis, 1, 0, 0, 1), 0) = s * r3 / (sqrt2 * rho);
    b(detail::idx(basis, 0, 0, 1, 1), 0) = -s * r1 / (sqrt2 * rho);
    b(detail::idx(basis, 1, 0, 1, 0), 0) = (r3 * r3 - r1 * r1) / (sqrt2 * r * rho);

    b(detail::idx(basis, 0, 2, 0, 0), 1) = rho * r2 / (r * r);
    b(detail::idx(basis, 0, 1, 0, 1), 1) = s * rho / (sqrt2 * r);
    b(detail::idx(basis, 2, 0, 0, 0), 1) = -r2 * r1 * r1 / (rho * rsq);
    b(detail::idx(basis, 1, 0, 1, 0), 1) = -sqrt2 * r2 * r1 * r3 / (rho * rsq);
    b(detail::idx(basis, 0, 0, 2, 0), 1) = -r2 * r3 * r3 / (rho * rsq);
    b(detail::idx(basis, 1, 0, 0, 1), 1) = -s * r2 * r1 / (sqrt2 * r * rho);
    b(detail::idx(basis, 0, 0, 1, 1), 1) = -s * r2 * r3 / (sqrt2 * r * rho);
    b(detail::idx(basis, 1, 1, 0, 0), 1) = (r1 * r1 - r2 * r2 + r3 * r3) * r1 / (sqrt2 * rho * rsq);
    b(detail::idx(basis, 0, 1, 1, 0), 1) = (r1 * r1 - r2 * r2 + r3 * r3) * r3 / (sqrt2 * rho * rsq);

    Vector kappa(3);
    kappa << Complex(r1, 0.0), Complex(r2, 0.0), Complex(r3, 0.0);
    return TripodFrame{FrameFamily::BrightReal, sign, CouplingPoint(kappa), std::move(b)};
}

// Diagonal dark connection component A_theta2 in the printed dark basis;
// all other coordinate components vanish in this chart.
inline Matrix connection_theta2(double r2, double r3) {
    const double rho2 = r2 * r2 + r3 * r3;
    if (rho2 <= 0.0) throw SingularParametrization("connection_theta2: rho_23 = 0");
    Matrix a = Matrix::Zero(4, 4);
    a(1, 1) = kImag * (r3 * r3 / rho2);
    a(2, 2) = kImag * (2.0 * r3 * r3 / rho2);
    a(3, 3) = kImag * (r2 * r2 / rho2);
    return a;
}

// Generator of the real-chart dark rotations.
inline Matrix sigma_dark() {
    Matrix s = Matrix::Zero(4, 4);
    s(0, 1) = 1.0;
    s(1, 0) = -1.0;
    s(1, 2) = 1.0;
    s(2, 1) = -1.0;
    return s;
}

// Pauli-Y in the (B1, B2) frame; the same matrix serves both bright signs.
inline Matrix sigma_y_bright() {
    Matrix s = Matrix::Zero(2, 2);
    s(0, 1) = -kImag;
    s(1, 0) = kImag;
    return s;
}

struct ConnectionComponents {
    Matrix a_r1;
    Matrix a_r2;
    Matrix a_r3;
};

// Real-chart dark connection: A_r1 = -sqrt(2) zeta_213 Sigma,
// A_r2 = +sqrt(2) zeta_123 Sigma, A_r3 = 0. Real antisymmetric, consistent
// with the real dark states; its loop exponential is the W2 matrix below.
inline ConnectionComponents dark_connection_real(double r1, double r2, double r3) {
    const Matrix sigma = sigma_dark();
    ConnectionComponents c;
    c.a_r1 = -std::sqrt(2.0) * zeta(2, 1, 3, r1, r2, r3) * sigma;
    c.a_r2 = std::sqrt(2.0) * zeta(1, 2, 3, r1, r2, r3) * sigma;
    c.a_r3 = Matrix::Zero(4, 4);
    return c;
}

// Real-chart bright connection: A_r1 = -i zeta_312 sigma_y,
// A_r3 = +i zeta_132 sigma_y, A_r2 = 0; identical 2x2 matrices for both
// signs (they act in the respective (B1, B2) frames).
inline ConnectionComponents bright_connection_real(double r1, double r2, double r3,
                                                   int sign) {
    if (sign != 1 && sign != -1) throw InvalidOrder("bright_connection_real: sign must be +1/-1");
    const Matrix sy = sigma_y_bright();
    ConnectionComponents c;
    c.a_r1 = -kImag * zeta(3, 1, 2, r1, r2, r3) * sy;
    c.a_r3 = kImag * zeta(1, 3, 2, r1, r2, r3) * sy;
    c.a_r2 = Matrix::Zero(2, 2);
    return c;
}

enum class HolonomyKind { W1Dark, W2Dark, W1Bright, W2Bright };

struct ClosedFormHolonomy {
    HolonomyKind kind;
    Matrix matrix;
    double phase = 0.0;       // phi0 / phi1 / phi2
    double phase_tilde = 0.0; // phi2-tilde for W2Bright
};

// Dark holonomy of a loop holding (r2, r3) fixed while theta2 advances by
// 2 pi * winding: exp(2 pi winding A_theta2), a diagonal unitary.
inline ClosedFormHolonomy holonomy_w1_dark(int winding, double r2, double r3) {
    const Matrix a = connection_theta2(r2, r3);
    Matrix w = Matrix::Identity(4, 4);
    for (int j = 0; j < 4; ++j) {
        w(j, j) = std::exp(2.0 * kPi * winding * a(j, j));
    }
    return ClosedFormHolonomy{HolonomyKind::W1Dark, std::move(w), 2.0 * kPi * winding};
}

// Dark holonomy of a real-chart loop, exp(sqrt(2) phi0 Sigma) written out.
inline ClosedFormHolonomy holonomy_w2_dark(double phi0) {
    const double c = std::cos(phi0);
    const double s = std::sin(phi0);
    Matrix w = Matrix::Zero(4, 4);
    w(0, 0) = c * c;
    w(0, 1) = std::sqrt(2.0) * s * c;
    w(0, 2) = s * s;
    w(1, 0) = -std::sqrt(2.0) * s * c;
    w(1, 1) = std::cos(2.0 * phi0);
    w(1, 2) = std::sqrt(2.0) * s * c;
    w(2, 0) = s * s;
    w(2, 1) = -std::sqrt(2.0) * s * c;
    w(2, 2) = c * c;
    w(3, 3) = 1.0;
    return ClosedFormHolonomy{HolonomyKind::W2Dark, std::move(w), phi0};
}

// Bright holonomy exp(i phi1 sigma_y) in the (B1, B2) frame.
inline ClosedFormHolonomy gate_w1_bright(double phi1) {
    Matrix w(2, 2);
    w << std::cos(phi1), std::sin(phi1), -std::sin(phi1), std::cos(phi1);
    return ClosedFormHolonomy{HolonomyKind::W1Bright, std::move(w), phi1};
}

// Bright holonomy diag(e^{i phi2}, e^{i phi2~}) in the (B1, B2) frame.
inline ClosedFormHolonomy gate_w2_bright(double phi2, double phi2_tilde) {
    Matrix w = Matrix::Zero(2, 2);
    w(0, 0) = std::exp(kImag * phi2);
    w(1, 1) = std::exp(kImag * phi2_tilde);
    return ClosedFormHolonomy{HolonomyKind::W2Bright, std::move(w), phi2, phi2_tilde};
}

namespace detail {

inline void require_closed(const ControlPath& path, const char* what) {
    if (!path.closed) throw NotALoop(std::string(what) + ": path is not a loop");
}

inline void require_real_chart(const ControlPath& path, const char* what) {
    double scale = 0.0;
    double imag = 0.0;
    for (const auto& s : path.samples) {
        scale = std::max(scale, s.couplings().cwiseAbs().maxCoeff());
        imag = std::max(imag, s.couplings().imag().cwiseAbs().maxCoeff());
    }
    if (imag > 1e-12 * std::max(scale, 1.0)) {
        throw SingularParametrization(std::string(what) + ": path leaves the real-coupling chart");
    }
}

} // namespace detail

// phi0 = oint zeta_123 dr2 - zeta_213 dr1 over a real-chart loop.
inline double phi0_line_integral(const ControlPath& path, double tol = 1e-10) {
    detail::require_closed(path, "phi0_line_integral");
    detail::require_real_chart(path, "phi0_line_integral");
    OneForm form = [](const CouplingPoint& p, const Vector& v) {
        const double r1 = p.couplings()[0].real();
        const double r2 = p.couplings()[1].real();
        const double r3 = p.couplings()[2].real();
        return zeta(1, 2, 3, r1, r2, r3) * v[1].real() - zeta(2, 1, 3, r1, r2, r3) * v[0].real();
    };
    return integrate_one_form(path, form, tol);
}

// phi1 = oint zeta_132 dr3 - zeta_312 dr1 over a real-chart loop.
inline double phi1_line_integral(const ControlPath& path, double tol = 1e-10) {
    detail::require_closed(path, "phi1_line_integral");
    detail::require_real_chart(path, "phi1_line_integral");
    OneForm form = [](const CouplingPoint& p, const Vector& v) {
        const double r1 = p.couplings()[0].real();
        const double r2 = p.couplings()[1].real();
        const double r3 = p.couplings()[2].real();
        return zeta(1, 3, 2, r1, r2, r3) * v[2].real() - zeta(3, 1, 2, r1, r2, r3) * v[0].real();
    };
    return integrate_one_form(path, form, tol);
}

struct Phi2Pair {
    double phi2 = 0.0;
    double phi2_tilde = 0.0;
};

// phi2 = oint (r1^2 + 2 r3^2) / (2 (r1^2 + r3^2)) dtheta1 and
// phi2~ = oint r1^2 / (2 (r1^2 + r3^2)) dtheta1 in the chart kappa2 = 0.
inline Phi2Pair phi2_line_integrals(const ControlPath& path, double tol = 1e-10) {
    detail::require_closed(path, "phi2_line_integrals");
    double scale = 0.0;
    for (const auto& s : path.samples) scale = std::max(scale, s.couplings().cwiseAbs().maxCoeff());
    for (const auto& s : path.samples) {
        if (std::abs(s.couplings()[1]) > 1e-12 * std::max(scale, 1.0)) {
            throw SingularParametrization("phi2_line_integrals: chart requires kappa2 = 0");
        }
    }
    auto dtheta1 = [](const CouplingPoint& p, const Vector& v) {
        const Complex k1 = p.couplings()[0];
        const double n2 = std::norm(k1);
        if (n2 <= 0.0) throw SingularParametrization("phi2_line_integrals: theta1 undefined at r1 = 0");
        return std::imag(std::conj(k1) * v[0]) / n2;
    };
    OneForm f2 = [dtheta1](const CouplingPoint& p, const Vector& v) {
        const double r1sq = std::norm(p.couplings()[0]);
        const double r3sq = std::norm(p.couplings()[2]);
        return (r1sq + 2.0 * r3sq) / (2.0 * (r1sq + r3sq)) * dtheta1(p, v);
    };
    OneForm f2t = [dtheta1](const CouplingPoint& p, const Vector& v) {
        const double r1sq = std::norm(p.couplings()[0]);
        const double r3sq = std::norm(p.couplings()[2]);
        return r1sq / (2.0 * (r1sq + r3sq)) * dtheta1(p, v);
    };
    Phi2Pair out;
    out.phi2 = integrate_one_form(path, f2, tol);
    out.phi2_tilde = integrate_one_form(path, f2t, tol);
    return out;
}

} // namespace holo
