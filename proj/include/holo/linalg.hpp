#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <random>
#include <vector>

namespace holo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kImag{0.0, 1.0};

// Unitary polar factor of a square complex matrix (Loewdin orthogonalization).
// If smallest_singular is given it receives sigma_min of the input, which
// measures how far the input is from being singular.
inline Matrix polar_factor(const Matrix& a, double* smallest_singular = nullptr) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (smallest_singular) {
        *smallest_singular = svd.singularValues().size() > 0 ? svd.singularValues().minCoeff() : 0.0;
    }
    return svd.matrixU() * svd.matrixV().adjoint();
}

inline double unitarity_error(const Matrix& u) {
    return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).norm();
}

inline double hermiticity_error(const Matrix& a) { return (a - a.adjoint()).norm(); }

// exp(i * scale * h) for Hermitian h, computed spectrally; exactly unitary up
// to the eigensolver's roundoff.
inline Matrix expi_hermitian(const Matrix& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
        phases[k] = std::exp(kImag * (scale * es.eigenvalues()[k]));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Eigenphases of a unitary matrix, sorted ascending in (-pi, pi].
inline RealVector eigenphases(const Matrix& u) {
    Eigen::ComplexEigenSolver<Matrix> es(u, /*computeEigenvectors=*/false);
    std::vector<double> args(static_cast<std::size_t>(u.rows()));
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
        args[static_cast<std::size_t>(k)] = std::arg(es.eigenvalues()[k]);
    }
    std::sort(args.begin(), args.end());
    RealVector out(u.rows());
    for (Eigen::Index k = 0; k < u.rows(); ++k) out[k] = args[static_cast<std::size_t>(k)];
    return out;
}

// Haar-distributed random unitary via QR of a complex Gaussian matrix with
// the phase ambiguity of the QR factors fixed.
inline Matrix random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix z(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) z(i, j) = Complex(gauss(rng), gauss(rng));
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        Complex d = r(j, j);
        q.col(j) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
    }
    return q;
}

} // namespace holo
