#include <catch_amalgamated.hpp>

#include <array>
#include <random>

#include "holo/analytic.hpp"
#include "holo/loops.hpp"
#include "holo/transport.hpp"

using namespace holo;

namespace {

const FockBasis& tripod_basis() {
    static const FockBasis basis = FockBasis::enumerate_layer(2, 4);
    return basis;
}

FrameField dark_theta2_field() {
    return [](const CouplingPoint& p) {
        return dark_states_theta2(tripod_basis(), p.radius(2), p.phase(2), p.radius(3)).vectors;
    };
}

FrameField dark_real_field() {
    return [](const CouplingPoint& p) {
        return dark_states_real(tripod_basis(), p.couplings()[0].real(), p.couplings()[1].real(),
                                p.couplings()[2].real())
            .vectors;
    };
}

FrameField bright_real_field(int sign) {
    return [sign](const CouplingPoint& p) {
        return bright_states_real(tripod_basis(), p.couplings()[0].real(),
                                  p.couplings()[1].real(), p.couplings()[2].real(), sign)
            .vectors;
    };
}

CouplingPoint theta2_point(double r2, double theta2, double r3) {
    Vector kappa(3);
    kappa << Complex(0.0, 0.0), r2 * std::exp(kImag * theta2), Complex(r3, 0.0);
    return CouplingPoint(kappa);
}

CouplingPoint real_point(double r1, double r2, double r3) {
    return CouplingPoint::from_real((RealVector(3) << r1, r2, r3).finished());
}

ControlPath triangle_loop(double r3, int steps, int orientation = 1) {
    std::vector<Vector> vertices;
    auto vertex = [&](double r1, double r2) {
        Vector v(3);
        v << Complex(r1, 0.0), Complex(r2, 0.0), Complex(r3, 0.0);
        return v;
    };
    vertices.push_back(vertex(0.4, 0.3));
    vertices.push_back(vertex(1.2, 0.35));
    vertices.push_back(vertex(0.7, 1.1));
    return materialize(LoopSpec{PiecewiseLinearSpec{vertices}, orientation, steps});
}

} // namespace

TEST_CASE("numerical connection") {
    SECTION("theta2 component matches the printed diagonal") {
        std::mt19937_64 rng(41);
        std::uniform_real_distribution<double> radius(0.5, 1.5);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
        for (int trial = 0; trial < 5; ++trial) {
            const double r2 = radius(rng), r3 = radius(rng), th = angle(rng);
            const CouplingPoint p = theta2_point(r2, th, r3);
            const auto est =
                connection_numeric(tripod_basis(), p, {Coordinate::Phase, 2}, {0},
                                   dark_theta2_field(), 1e-5 * p.energy_scale());
            const Matrix expected = connection_theta2(r2, r3);
            REQUIRE((est.value - expected).norm() / expected.norm() < 1e-6);
            REQUIRE(est.discarded_hermitian < 1e-6);
        }
    }

    SECTION("radial components vanish in the theta2 chart") {
        const CouplingPoint p = theta2_point(0.9, 1.2, 1.1);
        for (int arm : {2, 3}) {
            const auto est = connection_numeric(tripod_basis(), p, {Coordinate::Radius, arm}, {0},
                                                dark_theta2_field(), 1e-5);
            REQUIRE(est.value.norm() < 1e-8);
        }
    }

    SECTION("real-chart dark components match the zeta/Sigma forms") {
        std::mt19937_64 rng(43);
        std::uniform_real_distribution<double> radius(0.5, 1.5);
        for (int trial = 0; trial < 5; ++trial) {
            const double r1 = radius(rng), r2 = radius(rng), r3 = radius(rng);
            const CouplingPoint p = real_point(r1, r2, r3);
            const auto expected = dark_connection_real(r1, r2, r3);

            const auto a1 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 1}, {0},
                                               dark_real_field(), 1e-5);
            REQUIRE((a1.value - expected.a_r1).norm() / expected.a_r1.norm() < 1e-6);

            const auto a2 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 2}, {0},
                                               dark_real_field(), 1e-5);
            REQUIRE((a2.value - expected.a_r2).norm() / expected.a_r2.norm() < 1e-6);

            const auto a3 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 3}, {0},
                                               dark_real_field(), 1e-5);
            REQUIRE(a3.value.norm() < 1e-8);
        }
    }

    SECTION("real-chart bright components match the sigma_y forms") {
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> radius(0.5, 1.5);
        for (int sign : {1, -1}) {
            const double r1 = radius(rng), r2 = radius(rng), r3 = radius(rng);
            const CouplingPoint p = real_point(r1, r2, r3);
            const auto expected = bright_connection_real(r1, r2, r3, sign);

            const auto a1 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 1}, {sign},
                                               bright_real_field(sign), 1e-5);
            REQUIRE((a1.value - expected.a_r1).norm() / expected.a_r1.norm() < 1e-6);

            const auto a3 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 3}, {sign},
                                               bright_real_field(sign), 1e-5);
            REQUIRE((a3.value - expected.a_r3).norm() / expected.a_r3.norm() < 1e-6);

            const auto a2 = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 2}, {sign},
                                               bright_real_field(sign), 1e-5);
            REQUIRE(a2.value.norm() < 1e-8);
        }
    }

    SECTION("output is anti-Hermitian by construction") {
        const CouplingPoint p = real_point(0.8, 0.6, 1.2);
        const auto est = connection_numeric(tripod_basis(), p, {Coordinate::Radius, 1}, {1},
                                            bright_real_field(1), 1e-5);
        REQUIRE((est.value + est.value.adjoint()).norm() < 1e-15);
    }

    SECTION("a frame from the wrong subspace is rejected") {
        const CouplingPoint p = real_point(0.8, 0.6, 1.2);
        REQUIRE_THROWS_AS(connection_numeric(tripod_basis(), p, {Coordinate::Radius, 1}, {0},
                                             [](const CouplingPoint& q) {
                                                 return bright_states_real(
                                                            tripod_basis(),
                                                            q.couplings()[0].real(),
                                                            q.couplings()[1].real(),
                                                            q.couplings()[2].real(), 1)
                                                     .vectors;
                                             },
                                             1e-5),
                          FrameMismatch);
    }
}

TEST_CASE("numerical curvature") {
    SECTION("bright curvature reproduces the closed-form components") {
        const double step = 3e-4;
        const std::vector<std::array<double, 3>> points = {
            {0.8, 0.6, 1.2}, {1.1, 0.9, 0.7}, {0.6, 1.3, 1.0}};
        for (int sign : {1, -1}) {
            for (const auto& [r1, r2, r3] : points) {
                const CouplingPoint p = real_point(r1, r2, r3);
                const Matrix frame = bright_states_real(tripod_basis(), r1, r2, r3, sign).vectors;
                const double rcube = std::pow(r1 * r1 + r2 * r2 + r3 * r3, 1.5);
                const Matrix sy = sigma_y_bright();

                const Matrix f12 =
                    curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 1},
                                      {Coordinate::Radius, 2}, {sign}, frame, step);
                const Matrix f12_expected = kImag * (r3 / rcube) * sy;
                REQUIRE((f12 - f12_expected).norm() / f12_expected.norm() < 1e-6);

                const Matrix f13 =
                    curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 1},
                                      {Coordinate::Radius, 3}, {sign}, frame, step);
                const Matrix f13_expected = -kImag * (r2 / rcube) * sy;
                REQUIRE((f13 - f13_expected).norm() / f13_expected.norm() < 1e-6);

                const Matrix f23 =
                    curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 2},
                                      {Coordinate::Radius, 3}, {sign}, frame, step);
                const Matrix f23_expected = kImag * (r1 / rcube) * sy;
                REQUIRE((f23 - f23_expected).norm() / f23_expected.norm() < 1e-6);
            }
        }
    }

    SECTION("antisymmetry under index swap") {
        const CouplingPoint p = real_point(0.9, 0.8, 1.1);
        const Matrix frame = bright_states_real(tripod_basis(), 0.9, 0.8, 1.1, 1).vectors;
        const Matrix fwd = curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 1},
                                             {Coordinate::Radius, 2}, {1}, frame, 3e-4);
        const Matrix bwd = curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 2},
                                             {Coordinate::Radius, 1}, {1}, frame, 3e-4);
        REQUIRE((fwd + bwd).norm() < 1e-8);
    }

    SECTION("dark curvature in the theta2 chart matches d(A_theta2)") {
        // F_{r2 theta2} = d/dr2 of the printed diagonal; the commutator term
        // vanishes because the chart's radial components are zero.
        const double r2 = 0.8, th = 0.7, r3 = 1.2;
        const CouplingPoint p = theta2_point(r2, th, r3);
        const Matrix frame = dark_states_theta2(tripod_basis(), r2, th, r3).vectors;
        const Matrix f = curvature_numeric(tripod_basis(), p, {Coordinate::Radius, 2},
                                           {Coordinate::Phase, 2}, {0}, frame, 3e-4);
        const double h = 1e-6;
        const Matrix expected =
            (connection_theta2(r2 + h, r3) - connection_theta2(r2 - h, r3)) / (2.0 * h);
        REQUIRE((f - expected).norm() < 1e-6);
    }
}

TEST_CASE("numerical holonomy") {
    SECTION("constant path transports trivially") {
        std::vector<CouplingPoint> samples(33, real_point(0.7, 0.5, 1.0));
        const auto path = make_path(samples, /*closed=*/true);
        const auto result = holonomy_numeric(tripod_basis(), path, {0});
        REQUIRE((result.unitary - Matrix::Identity(4, 4)).norm() < 1e-13);
    }

    SECTION("theta2 winding with equal radii gives diag(1,-1,1,-1)") {
        RealVector radii(3);
        radii << 0.0, 1.0, 1.0;
        // Transport orientation -1 corresponds to the printed closed forms.
        const auto loop = materialize(LoopSpec{ThetaWindingSpec{2, radii, 1}, -1, 8192});
        const auto result = holonomy_numeric(tripod_basis(), loop, {0});
        const Matrix in_analytic_frame = express_in_frame(
            result, dark_states_theta2(tripod_basis(), 1.0, 0.0, 1.0).vectors);
        const Matrix expected = holonomy_w1_dark(1, 1.0, 1.0).matrix;
        REQUIRE((in_analytic_frame - expected).norm() < 1e-6);
        REQUIRE(unitarity_error(result.unitary) < 1e-12);
    }

    SECTION("generic theta2 winding matches the printed diagonal phases") {
        const double r2 = 0.8, r3 = 1.25;
        RealVector radii(3);
        radii << 0.0, r2, r3;
        const auto loop = materialize(LoopSpec{ThetaWindingSpec{2, radii, 1}, -1, 8192});
        const auto result = holonomy_numeric(tripod_basis(), loop, {0});
        const Matrix got = express_in_frame(
            result, dark_states_theta2(tripod_basis(), r2, 0.0, r3).vectors);
        const Matrix expected = holonomy_w1_dark(1, r2, r3).matrix;
        REQUIRE((got - expected).norm() < 1e-6);
    }

    SECTION("real-chart triangle matches the W2 closed form at the quadrature phase") {
        const auto quad_loop = triangle_loop(0.9, 512, 1);
        const double phi0 = phi0_line_integral(quad_loop);
        const auto loop = triangle_loop(0.9, 4096, -1);
        const auto result = holonomy_numeric(tripod_basis(), loop, {0});
        const Matrix got = express_in_frame(
            result,
            dark_states_real(tripod_basis(), loop.samples.front().couplings()[0].real(),
                             loop.samples.front().couplings()[1].real(),
                             loop.samples.front().couplings()[2].real())
                .vectors);
        REQUIRE((got - holonomy_w2_dark(phi0).matrix).norm() < 1e-6);
    }

    SECTION("first-order convergence with step-doubling ratios in range") {
        RealVector radii(3);
        radii << 0.0, 1.0, 1.3;
        const Matrix expected = holonomy_w1_dark(1, 1.0, 1.3).matrix;
        const Matrix target = dark_states_theta2(tripod_basis(), 1.0, 0.0, 1.3).vectors;
        std::vector<double> errors;
        for (int steps : {512, 1024, 2048, 4096}) {
            const auto loop = materialize(LoopSpec{ThetaWindingSpec{2, radii, 1}, -1, steps});
            const auto result = holonomy_numeric(tripod_basis(), loop, {0});
            errors.push_back((express_in_frame(result, target) - expected).norm());
        }
        for (std::size_t k = 0; k + 1 < errors.size(); ++k) {
            const double ratio = errors[k] / errors[k + 1];
            REQUIRE(ratio > 1.7);
            REQUIRE(ratio < 4.3);
        }
    }

    SECTION("double traversal squares the holonomy") {
        RealVector radii(3);
        radii << 0.0, 0.9, 1.2;
        const auto once = materialize(LoopSpec{ThetaWindingSpec{2, radii, 1}, 1, 4096});
        const auto twice = materialize(LoopSpec{ThetaWindingSpec{2, radii, 2}, 1, 8192});
        const auto u1 = holonomy_numeric(tripod_basis(), once, {0});
        const auto u2 = holonomy_numeric(tripod_basis(), twice, {0});
        const Matrix u1_sq = express_in_frame(u2, u1.frame_start);
        REQUIRE((u1_sq - u1.unitary * u1.unitary).norm() < 5e-6);
    }

    SECTION("eigenphases are invariant under random re-gauging") {
        const auto loop = triangle_loop(0.9, 512, 1);
        const auto baseline = holonomy_numeric(tripod_basis(), loop, {0});
        const RealVector reference = eigenphases(baseline.unitary);

        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 5; ++trial) {
            TransportOptions opts;
            opts.regauge = [&rng](int, const Matrix& f) {
                return Matrix(f * random_unitary(static_cast<int>(f.cols()), rng));
            };
            const auto regauged = holonomy_numeric(tripod_basis(), loop, {0}, 0, opts);
            REQUIRE((eigenphases(regauged.unitary) - reference).norm() < 1e-8);
        }
    }

    SECTION("unitarity error stays within the estimate-based bound") {
        const auto loop = triangle_loop(1.0, 4096, 1);
        const auto result = holonomy_numeric(tripod_basis(), loop, {1});
        REQUIRE(unitarity_error(result.unitary) <= 10.0 * result.error_estimate + 1e-12);
        REQUIRE(result.error_estimate < 1e-2);
    }

    SECTION("coarse sampling of a fast loop is refused") {
        RealVector radii(3);
        radii << 0.0, 1.0, 1.0;
        // Eight windings over sixteen samples put consecutive dark frames at
        // a half turn, where the subspace overlap degenerates.
        const auto loop = materialize(LoopSpec{ThetaWindingSpec{2, radii, 8}, 1, 16});
        REQUIRE_THROWS_AS(holonomy_numeric(tripod_basis(), loop, {0}), StepTooCoarse);
    }

    SECTION("open paths are rejected") {
        std::vector<CouplingPoint> samples = {real_point(0.5, 0.5, 1.0), real_point(0.9, 0.5, 1.0),
                                              real_point(0.9, 0.9, 1.0)};
        const auto path = make_path(samples, /*closed=*/false);
        REQUIRE_THROWS_AS(holonomy_numeric(tripod_basis(), path, {0}), NotALoop);
    }
}

TEST_CASE("frame re-expression") {
    const auto loop = triangle_loop(0.9, 1024, 1);
    const auto result = holonomy_numeric(tripod_basis(), loop, {0});

    SECTION("identity re-expression is a no-op") {
        REQUIRE((express_in_frame(result, result.frame_start) - result.unitary).norm() < 1e-13);
    }

    SECTION("eigenphases are invariant under re-expression") {
        const Matrix target =
            dark_states_real(tripod_basis(), 0.4, 0.3, 0.9).vectors;
        const Matrix expressed = express_in_frame(result, target);
        REQUIRE((eigenphases(expressed) - eigenphases(result.unitary)).norm() < 1e-10);
    }

    SECTION("frames spanning another subspace are rejected") {
        const Matrix wrong =
            bright_states_real(tripod_basis(), 0.4, 0.3, 0.9, 1).vectors;
        Matrix padded(wrong.rows(), 4);
        padded.leftCols(2) = wrong;
        padded.rightCols(2) = bright_states_real(tripod_basis(), 0.4, 0.3, 0.9, -1).vectors;
        REQUIRE_THROWS_AS(express_in_frame(result, padded), FrameMismatch);
    }
}

TEST_CASE("degeneracy structure guard") {
    // A tolerant decomposition of two different layers disagrees in its
    // bucket pattern; the guard distinguishes exactly that situation.
    const auto basis2 = FockBasis::enumerate_layer(2, 4);
    const auto basis1 = FockBasis::enumerate_layer(1, 4);
    const CouplingPoint p = real_point(0.7, 0.8, 0.9);
    const auto a = decompose(build_hamiltonian(basis2, p), p);
    const auto b = decompose(build_hamiltonian(basis1, p), p);
    REQUIRE(a.multiplicities() != b.multiplicities());
}
