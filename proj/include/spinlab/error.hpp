#pragma once

#include <stdexcept>
#include <string>

namespace spinlab {

enum class ErrorKind {
    StructuralFailure,
    UnitConditionFailed,
    PrecisionExhausted,
    FNotSquarefree,
    RamifiedPrime,
    EvenPrime,
    GeneratorNotFound,
    NotAchievable,
    CeilingExceeded,
    EvenModulus,
    FactoringBudgetExceeded,
    EvenArgument,
    InconsistentCell,
    UnpopulatedCell,
    NotFundamental,
    DiscriminantMismatch,
    WrongResidueClass,
    BadModulus,
    ZeroSymbolEncountered,
    InsufficientWitnesses,
    ConfigError,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace spinlab
