#ifndef PARACR_ERRORS_HPP
#define PARACR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace paracr {

// Base class for everything this library throws on precondition violations.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// --- series ring ---
struct SpaceMismatch : Error {
    explicit SpaceMismatch(const std::string& msg) : Error("SpaceMismatch: " + msg) {}
};
struct NonUnitDivisor : Error {
    explicit NonUnitDivisor(const std::string& msg) : Error("NonUnitDivisor: " + msg) {}
};
struct UnknownVariable : Error {
    explicit UnknownVariable(const std::string& msg) : Error("UnknownVariable: " + msg) {}
};
struct NonzeroConstantSubstitution : Error {
    explicit NonzeroConstantSubstitution(const std::string& msg)
        : Error("NonzeroConstantSubstitution: " + msg) {}
};
struct SingularImplicit : Error {
    explicit SingularImplicit(const std::string& msg) : Error("SingularImplicit: " + msg) {}
};
struct NonzeroConstant : Error {
    explicit NonzeroConstant(const std::string& msg) : Error("NonzeroConstant: " + msg) {}
};

// --- parser ---
struct SyntaxError : Error {
    SyntaxError(const std::string& msg, std::size_t offset)
        : Error("SyntaxError at offset " + std::to_string(offset) + ": " + msg),
          offset(offset) {}
    std::size_t offset;
};

// --- submanifold / jets / pde / coframe ---
struct NotNormalized : Error {
    explicit NotNormalized(const std::string& msg) : Error("NotNormalized: " + msg) {}
};
struct RankMismatch : Error {
    explicit RankMismatch(const std::string& msg) : Error("RankMismatch: " + msg) {}
};
struct DegeneracyViolation : Error {
    explicit DegeneracyViolation(const std::string& msg) : Error("DegeneracyViolation: " + msg) {}
};
struct NotRankOne : Error {
    explicit NotRankOne(const std::string& msg) : Error("NotRankOne: " + msg) {}
};
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch: " + msg) {}
};
struct OrderTooHighForTruncation : Error {
    explicit OrderTooHighForTruncation(const std::string& msg)
        : Error("OrderTooHighForTruncation: " + msg) {}
};
struct DegenerateElimination : Error {
    explicit DegenerateElimination(const std::string& msg)
        : Error("DegenerateElimination: " + msg) {}
};
struct SingularJacobian : Error {
    explicit SingularJacobian(const std::string& msg) : Error("SingularJacobian: " + msg) {}
};
struct NonUnitDenominator : Error {
    explicit NonUnitDenominator(const std::string& msg) : Error("NonUnitDenominator: " + msg) {}
};
struct PrerequisiteIdentityFailed : Error {
    explicit PrerequisiteIdentityFailed(const std::string& msg)
        : Error("PrerequisiteIdentityFailed: " + msg) {}
};
struct InconclusiveTruncation : Error {
    explicit InconclusiveTruncation(const std::string& msg)
        : Error("InconclusiveTruncation: " + msg) {}
};

}  // namespace paracr

#endif
