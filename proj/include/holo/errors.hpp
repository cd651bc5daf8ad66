#pragma once

#include <stdexcept>
#include <string>

namespace holo {

// Base class for all failure modes of the model and its numerics.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Layer construction with modes < 2 or negative photon number.
struct InvalidLayer : Error { using Error::Error; };

// Self-hop or out-of-range mode index in a ladder-operator matrix.
struct InvalidHop : Error { using Error::Error; };

// Basis/coupling dimension mismatch.
struct ArityMismatch : Error { using Error::Error; };

// Energy scale epsilon below tolerance; the pod is effectively off.
struct DecoupledSystem : Error { using Error::Error; };

// An eigenvalue sits away from every integer multiple of epsilon.
struct SpectralAnomaly : Error { using Error::Error; };

// Eigenspace order outside the admissible ladder.
struct InvalidOrder : Error { using Error::Error; };

// Closed-form state family evaluated where its chart degenerates.
struct SingularParametrization : Error { using Error::Error; };

// A line integral or holonomy was requested on an open path.
struct NotALoop : Error { using Error::Error; };

// Bucket multiplicities changed along a path or across a stencil.
struct DegeneracyCrossing : Error { using Error::Error; };

// Subspace rotated too far between consecutive samples.
struct StepTooCoarse : Error { using Error::Error; };

// Frames do not span the same subspace.
struct FrameMismatch : Error { using Error::Error; };

// Malformed loop specification.
struct InvalidSpec : Error { using Error::Error; };

// Plaquette target phase unreachable for the given parameters.
struct NoSolution : Error { using Error::Error; };

// A materialized path sample has epsilon below tolerance.
struct SingularSample : Error { using Error::Error; };

// Leakage out of the selected eigenspace exceeds the sanity bound.
struct NotAdiabatic : Error { using Error::Error; };

} // namespace holo
