#pragma once

#include <stdexcept>
#include <string>

namespace cws {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mesh construction
struct NonManifoldEdge : Error { using Error::Error; };
struct InconsistentOrientation : Error { using Error::Error; };
struct IsolatedVertex : Error { using Error::Error; };

// Geometry
struct DegenerateTriangle : Error { using Error::Error; };
struct CoincidentPoints : Error { using Error::Error; };
struct ZeroLengthEdge : Error { using Error::Error; };
struct TriangleInequalityViolated : Error { using Error::Error; };
struct SurfaceHasBoundary : Error { using Error::Error; };

// Constraints / solver
struct DuplicateRow : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct UnbalancedFlux : Error { using Error::Error; };
struct SingularConfiguration : Error { using Error::Error; };
struct MaxIterations : Error { using Error::Error; };
struct LineSearchFailure : Error { using Error::Error; };
struct SingularKKT : Error { using Error::Error; };

// Diagnostics
struct OpenChain : Error { using Error::Error; };
struct DegenerateSample : Error { using Error::Error; };

// IO
struct ParseError : Error { using Error::Error; };
struct NonTriangleFace : Error { using Error::Error; };
struct ValidationError : Error { using Error::Error; };

} // namespace cws
