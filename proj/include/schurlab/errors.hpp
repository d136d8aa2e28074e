#pragma once

#include <stdexcept>
#include <string>

namespace schurlab {

// Exit-code families used by the CLI: validation (2), scale (3), internal (4).
enum class ErrorClass { Validation, Scale, Internal };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), cls_(cls), kind_(kind) {}
    ErrorClass error_class() const { return cls_; }
    const std::string& kind() const { return kind_; }

private:
    ErrorClass cls_;
    std::string kind_;
};

#define SCHURLAB_ERROR(Name, Cls)                                            \
    struct Name : Error {                                                    \
        explicit Name(const std::string& m) : Error(ErrorClass::Cls, #Name, m) {} \
    };

SCHURLAB_ERROR(ValidationError, Validation)
SCHURLAB_ERROR(CompositionMismatch, Validation)
SCHURLAB_ERROR(ParseError, Validation)
SCHURLAB_ERROR(NonInteger, Validation)
SCHURLAB_ERROR(NotInChevalleyImage, Validation)
SCHURLAB_ERROR(ScaleExceeded, Scale)
SCHURLAB_ERROR(ConsistencyFailure, Internal)
SCHURLAB_ERROR(InexactDivision, Internal)
SCHURLAB_ERROR(SymmetryViolation, Internal)
SCHURLAB_ERROR(RepresentativeDependence, Internal)
SCHURLAB_ERROR(TriangularityFailure, Internal)
SCHURLAB_ERROR(NoSolution, Internal)
SCHURLAB_ERROR(MonomialUnavailable, Internal)
SCHURLAB_ERROR(NotStabilized, Internal)

#undef SCHURLAB_ERROR

}  // namespace schurlab
