#pragma once

#include <stdexcept>
#include <string>

namespace fqm {

// Every library error carries a stable kind name used by the CLI error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define FQM_ERROR(Name)                                                      \
    struct Name : Error {                                                    \
        explicit Name(const std::string& what = #Name) : Error(#Name, what) {} \
    }

FQM_ERROR(DivisionByZero);
FQM_ERROR(NotCoprime);
FQM_ERROR(NotFound);
FQM_ERROR(ParseError);
FQM_ERROR(OutOfRange);
FQM_ERROR(NotTransitive);
FQM_ERROR(CapExceeded);
FQM_ERROR(NotInRing);
FQM_ERROR(ScaleExceeded);
FQM_ERROR(FactorizationFailed);
FQM_ERROR(NonCommutative);
FQM_ERROR(CoarseningFailed);
FQM_ERROR(SingularSystem);
FQM_ERROR(DimensionMismatch);
FQM_ERROR(ZeroNorm);
FQM_ERROR(IrrationalProbability);
FQM_ERROR(LengthMismatch);
FQM_ERROR(NotSuperset);
FQM_ERROR(NotConsequence);
FQM_ERROR(UnsupportedQ);
FQM_ERROR(DegreeMismatch);
FQM_ERROR(NotAntihomomorphism);
FQM_ERROR(NotRegular);
FQM_ERROR(NotEquivariant);
FQM_ERROR(BadPath);
FQM_ERROR(OutOfCone);
FQM_ERROR(ParityViolation);
FQM_ERROR(DomainError);
FQM_ERROR(UnknownFixture);

#undef FQM_ERROR

} // namespace fqm
