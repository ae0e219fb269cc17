#pragma once

// Exception hierarchy for the toolkit. Every failure mode named in a module
// contract has its own type so callers (and the CLI exit-code mapping) can
// distinguish bad input syntax from a mathematical check that failed.

#include <stdexcept>
#include <string>

namespace kcm {

// Root of all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: bad rational literal, bad JSON shape, bad CLI usage.
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Dimension is not an even integer >= 4, or mismatched object dimensions.
struct BadDimension : Error {
    explicit BadDimension(const std::string& what) : Error(what) {}
};

// Sparse components assign conflicting values inside one Z2-symmetry orbit.
struct SymmetryConflict : Error {
    explicit SymmetryConflict(const std::string& what) : Error(what) {}
};

// Completed tensor violates the first Bianchi identity.
struct BianchiViolation : Error {
    explicit BianchiViolation(const std::string& what) : Error(what) {}
};

// Gram matrix of a projection basis is singular for the given inner product.
struct DegenerateGram : Error {
    explicit DegenerateGram(const std::string& what) : Error(what) {}
};

// Bilinear form argument is not in the required J-eigenspace.
struct BadThetaSymmetry : Error {
    explicit BadThetaSymmetry(const std::string& what) : Error(what) {}
};

// Model fails the Kaehler identity required by the operation.
struct NotKaehler : Error {
    explicit NotKaehler(const std::string& what) : Error(what) {}
};

// Operation defined for the other structure kind.
struct WrongKind : Error {
    explicit WrongKind(const std::string& what) : Error(what) {}
};

// Theta is not in the kernel of the linearized closedness operator.
struct NotInKernel : Error {
    explicit NotInKernel(const std::string& what) : Error(what) {}
};

// Series inversion requires a nonzero constant term.
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& what) : Error(what) {}
};

// Metric evaluated at a point is singular.
struct SingularMetric : Error {
    explicit SingularMetric(const std::string& what) : Error(what) {}
};

// Jet recursion's leading coefficient vanished; the scheme cannot proceed.
struct LeadingCoefficientDegenerate : Error {
    explicit LeadingCoefficientDegenerate(const std::string& what) : Error(what) {}
};

// Requested fixture name does not exist.
struct UnknownFixture : Error {
    explicit UnknownFixture(const std::string& what) : Error(what) {}
};

// A guaranteed-solvable internal system turned out inconsistent: a bug,
// not a user error. Thrown so tests fail loudly instead of silently.
struct InternalInvariantViolation : Error {
    explicit InternalInvariantViolation(const std::string& what) : Error(what) {}
};

} // namespace kcm
