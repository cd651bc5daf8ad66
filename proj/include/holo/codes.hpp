#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "holo/analytic.hpp"
#include "holo/errors.hpp"
#include "holo/fock.hpp"
#include "holo/mpod.hpp"

// Logical qubit encodings over waveguide spatial modes, composite holonomic
// gates across eigenspaces, and their truth tables. Logical basis ordering
// is binary with the first qubit as the most significant bit.

namespace holo {

struct LogicalEncoding {
    int arity = 0;
    std::vector<OccupationVector> images; // index = logical bitstring value
    std::vector<int> level_orders;        // eigenspaces spanned by the code
    CouplingPoint base_point;
};

// |00> = |1010>, |01> = |1001>, |10> = |0110>, |11> = |0101>; the code space
// is the direct sum of the first-order bright spaces at kappa0 = (0, 0, k).
inline LogicalEncoding two_qubit_encoding(double kappa = 1.0) {
    Vector k0(3);
    k0 << Complex(0.0, 0.0), Complex(0.0, 0.0), Complex(kappa, 0.0);
    LogicalEncoding enc{2,
                        {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 0, 1}},
                        {1, -1},
                        CouplingPoint(k0)};
    return enc;
}

// The bright pair basis at kappa0 in logical coordinates: columns are
// B1+, B2+, B1-, B2- with B_a^(+-) = (|a-1,0> +- |a-1,1>)/sqrt(2).
inline Matrix bright_basis_in_logical() {
    const double s = 1.0 / std::sqrt(2.0);
    Matrix t = Matrix::Zero(4, 4);
    t(0, 0) = s;  // B1+ on |00>
    t(1, 0) = s;  //        |01>
    t(2, 1) = s;  // B2+ on |10>
    t(3, 1) = s;  //        |11>
    t(0, 2) = s;  // B1- on |00>
    t(1, 2) = -s; //        |01>
    t(2, 3) = s;  // B2- on |10>
    t(3, 3) = -s; //        |11>
    return t;
}

// e^{i omega} W+ (+) e^{-i omega} W- expressed in the logical basis through
// the bright-pair change of basis.
inline Matrix composite_gate(const Matrix& w_plus, const Matrix& w_minus, double omega) {
    if (w_plus.rows() != 2 || w_plus.cols() != 2 || w_minus.rows() != 2 || w_minus.cols() != 2) {
        throw ArityMismatch("composite_gate: bright holonomies must be 2x2");
    }
    Matrix block = Matrix::Zero(4, 4);
    block.topLeftCorner(2, 2) = std::exp(kImag * omega) * w_plus;
    block.bottomRightCorner(2, 2) = std::exp(kImag * (-omega)) * w_minus;
    const Matrix t = bright_basis_in_logical();
    return t * block * t.adjoint();
}

// Single-qubit factors of the printed truth tables.
inline Matrix omega_gate(double omega) {
    Matrix m(2, 2);
    m << std::cos(omega), kImag * std::sin(omega), kImag * std::sin(omega), std::cos(omega);
    return m;
}

inline Matrix phi_rotation(double phi1) {
    Matrix m(2, 2);
    m << std::cos(phi1), std::sin(phi1), -std::sin(phi1), std::cos(phi1);
    return m;
}

inline Matrix phase_gate(double phi2, double phi2_tilde) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = std::exp(kImag * phi2);
    m(1, 1) = std::exp(kImag * phi2_tilde);
    return m;
}

inline Matrix kron2(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

struct KronFactorization {
    bool factorizable = false;
    Matrix first;   // 2x2 factor on qubit 1
    Matrix second;  // 2x2 factor on qubit 2
    double residual = 0.0; // second singular value of the rearrangement
};

// Nearest product form U ~ A (x) B via the rank-one structure of the
// rearranged matrix M[(i1,j1),(i2,j2)] = U[(i1,i2),(j1,j2)].
inline KronFactorization nearest_kron_factors(const Matrix& u, double tol = 1e-10) {
    if (u.rows() != 4 || u.cols() != 4) throw ArityMismatch("nearest_kron_factors: need a 4x4 matrix");
    Matrix m(4, 4);
    for (int i1 = 0; i1 < 2; ++i1) {
        for (int j1 = 0; j1 < 2; ++j1) {
            for (int i2 = 0; i2 < 2; ++i2) {
                for (int j2 = 0; j2 < 2; ++j2) {
                    m(i1 * 2 + j1, i2 * 2 + j2) = u(i1 * 2 + i2, j1 * 2 + j2);
                }
            }
        }
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    KronFactorization out;
    out.residual = svd.singularValues()[1];
    out.factorizable = out.residual < tol;
    const double s = std::sqrt(svd.singularValues()[0]);
    Matrix a(2, 2), b(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            a(i, j) = s * svd.matrixU()(i * 2 + j, 0);
            b(i, j) = s * std::conj(svd.matrixV()(i * 2 + j, 0));
        }
    }
    // Fix the shared phase: largest entry of the first factor real positive.
    Eigen::Index imax = 0, jmax = 0;
    a.cwiseAbs().maxCoeff(&imax, &jmax);
    const Complex z = a(imax, jmax);
    if (std::abs(z) > 0.0) {
        const Complex ph = z / std::abs(z);
        a /= ph;
        b *= ph;
    }
    out.first = std::move(a);
    out.second = std::move(b);
    return out;
}

struct GateReport {
    Matrix unitary; // 4x4 on the code, logical ordering
    KronFactorization factorization;
    double leakage = 0.0;
};

// U1(phi1, omega): |b1 b2> -> (phi1-rotated qubit 1) (x) (omega-rotated qubit 2).
inline GateReport truth_table_u1(double phi1, double omega) {
    GateReport report;
    report.unitary = kron2(phi_rotation(phi1), omega_gate(omega));
    report.factorization = nearest_kron_factors(report.unitary);
    return report;
}

// U2(phi2, phi2~, omega) = P (x) Omega.
inline GateReport truth_table_u2(double phi2, double phi2_tilde, double omega) {
    GateReport report;
    report.unitary = kron2(phase_gate(phi2, phi2_tilde), omega_gate(omega));
    report.factorization = nearest_kron_factors(report.unitary);
    return report;
}

// Three-qubit labelling on the N = 3 tripod; the code spans the first- and
// third-order bright spaces at kappa0 = (k, 0, 0).
inline LogicalEncoding three_qubit_encoding(double kappa = 1.0) {
    Vector k0(3);
    k0 << Complex(kappa, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0);
    LogicalEncoding enc{3,
                        {
                            {0, 0, 0, 3}, // |000>
                            {0, 0, 2, 1}, // |001>
                            {0, 2, 0, 1}, // |010>
                            {0, 1, 1, 1}, // |011>
                            {3, 0, 0, 0}, // |100>
                            {1, 0, 2, 0}, // |101>
                            {1, 2, 0, 0}, // |110>
                            {1, 1, 1, 0}, // |111>
                        },
                        {1, -1, 3, -3},
                        CouplingPoint(k0)};
    return enc;
}

// The ten Fock states spanning the code's eigenspace sum, ordered as the
// eight code words followed by the two over-labelling states.
inline std::vector<OccupationVector> code_span_fock_states() {
    std::vector<OccupationVector> states = three_qubit_encoding().images;
    states.push_back({1, 0, 0, 2});
    states.push_back({2, 0, 0, 1});
    return states;
}

struct CodeExpansion {
    // Rows: code words 0..7; columns follow level_orders of the encoding.
    RealMatrix projection_norms;
    // Normalized projections onto the two fourfold bright spaces, for
    // direction/pairing checks (columns: code words).
    Matrix directions_plus;
    Matrix directions_minus;
    double max_out_of_span = 0.0;
};

// Expand the Eq.-type code words over numerically computed bright frames.
inline CodeExpansion analyze_three_qubit_code(const FockBasis& basis,
                                              const SpectralDecomposition& at_base) {
    if (basis.photon_number() != 3 || basis.modes() != 4) {
        throw ArityMismatch("analyze_three_qubit_code: need the (N=3, M=3) layer");
    }
    const LogicalEncoding enc = three_qubit_encoding();
    CodeExpansion out;
    out.projection_norms = RealMatrix::Zero(8, static_cast<Eigen::Index>(enc.level_orders.size()));
    out.directions_plus = Matrix::Zero(at_base.level(1).multiplicity, 8);
    out.directions_minus = Matrix::Zero(at_base.level(-1).multiplicity, 8);

    for (int w = 0; w < 8; ++w) {
        const Vector state = basis.unit_state(enc.images[static_cast<std::size_t>(w)]);
        Vector residual = state;
        for (std::size_t c = 0; c < enc.level_orders.size(); ++c) {
            const int order = enc.level_orders[c];
            const Matrix& frame = at_base.level(order).frame;
            const Vector coeff = frame.adjoint() * state;
            out.projection_norms(w, static_cast<Eigen::Index>(c)) = coeff.norm();
            residual -= frame * coeff;
            if (order == 1 && coeff.norm() > 1e-14) {
                out.directions_plus.col(w) = coeff / coeff.norm();
            }
            if (order == -1 && coeff.norm() > 1e-14) {
                out.directions_minus.col(w) = coeff / coeff.norm();
            }
        }
        out.max_out_of_span = std::max(out.max_out_of_span, residual.norm());
    }
    return out;
}

// Worst-case leaked norm from the code words into the over-labelling pair
// span{|1002>, |2001>}, for a unitary given in the code_span_fock_states
// basis. Zero for block unitaries; generically nonzero otherwise.
inline double code_preservation_check(const Matrix& u) {
    if (u.rows() != 10 || u.cols() != 10) {
        throw ArityMismatch("code_preservation_check: need a 10x10 matrix on the span basis");
    }
    double worst = 0.0;
    for (int w = 0; w < 8; ++w) {
        const double leak = std::sqrt(std::norm(u(8, w)) + std::norm(u(9, w)));
        worst = std::max(worst, leak);
    }
    return worst;
}

} // namespace holo
