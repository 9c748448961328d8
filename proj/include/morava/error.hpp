#pragma once

#include <stdexcept>
#include <string>

namespace morava {

// Three families, mapped to CLI exit codes 1, 2 and 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const { return 2; }
};

class InputError : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 1; }
};

class InvariantFailure : public Error {
public:
    using Error::Error;
    int exit_code() const override { return 2; }
};

class PrecisionExhausted : public Error {
public:
    explicit PrecisionExhausted(const std::string& what)
        : Error("PrecisionExhausted: " + what) {}
    int exit_code() const override { return 3; }
};

#define MORAVA_ERROR(Name, Base)                                        \
    class Name : public Base {                                          \
    public:                                                             \
        explicit Name(const std::string& what) : Base(#Name ": " + what) {} \
    }

MORAVA_ERROR(InvalidInput, InputError);
MORAVA_ERROR(CtxMismatch, InputError);
MORAVA_ERROR(IndexOutOfRange, InputError);
MORAVA_ERROR(BadParams, InputError);
MORAVA_ERROR(BadGroupOrder, InputError);
MORAVA_ERROR(UnknownGenerator, InputError);
MORAVA_ERROR(TooLarge, InputError);
MORAVA_ERROR(Unsupported, InputError);
MORAVA_ERROR(NonzeroConstant, InputError);
MORAVA_ERROR(NonUnit, InputError);
MORAVA_ERROR(NonUnitLinearTerm, InputError);
MORAVA_ERROR(NotWeierstrass, InputError);
MORAVA_ERROR(NotLocal, InputError);

MORAVA_ERROR(NotSymmetric, InvariantFailure);
MORAVA_ERROR(IntegralityFailure, InvariantFailure);
MORAVA_ERROR(DivisionFailure, InvariantFailure);
MORAVA_ERROR(InvariantViolation, InvariantFailure);
MORAVA_ERROR(ExactDivisionFailure, InvariantFailure);
MORAVA_ERROR(BasisFailure, InvariantFailure);
MORAVA_ERROR(NotInGammaInvariants, InvariantFailure);
MORAVA_ERROR(DigitNonvanishing, InvariantFailure);
MORAVA_ERROR(RelationFailure, InvariantFailure);
MORAVA_ERROR(ReductionFailure, InvariantFailure);
MORAVA_ERROR(SingularMt, InvariantFailure);
MORAVA_ERROR(WitnessNotFound, InvariantFailure);
MORAVA_ERROR(Mismatch, InvariantFailure);

#undef MORAVA_ERROR

}  // namespace morava
