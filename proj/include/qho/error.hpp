#pragma once

#include <stdexcept>
#include <string>

namespace qho {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QHO_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {}   \
    }

/// Gamma function evaluated at a non-positive integer.
QHO_DEFINE_ERROR(PoleError);
/// A series or iteration hit its term/iteration budget.
QHO_DEFINE_ERROR(NoConvergence);
/// Argument outside the supported domain.
QHO_DEFINE_ERROR(DomainError);
/// Integrand does not decay fast enough past the truncation radius.
QHO_DEFINE_ERROR(TailNotDecayed);
/// Integrable singularity at the origin of power <= -1.
QHO_DEFINE_ERROR(SingularityTooStrong);
/// Function violates the origin boundary condition of the requested transform.
QHO_DEFINE_ERROR(BoundaryViolation);
/// Grid too coarse (or too short) for the requested difference stencil.
QHO_DEFINE_ERROR(GridTooCoarse);
/// Grid does not reach far enough into the Gaussian tail.
QHO_DEFINE_ERROR(GridTooSmall);
/// Numerical inversion disagrees with the hypergeometric closed form.
QHO_DEFINE_ERROR(ClosedFormMismatch);
/// Parity extension is discontinuous at the origin.
QHO_DEFINE_ERROR(ParityMismatch);
/// Tridiagonal eigen-iteration did not converge.
QHO_DEFINE_ERROR(ConvergenceFailure);
/// Unknown built-in test function name.
QHO_DEFINE_ERROR(UnknownFunction);
/// File could not be written.
QHO_DEFINE_ERROR(IoError);

#undef QHO_DEFINE_ERROR

}  // namespace qho
