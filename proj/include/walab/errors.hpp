#ifndef WALAB_ERRORS_HPP
#define WALAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace walab {

// Base for all domain errors raised by the library. The CLI maps these to
// exit code 1; anything else escaping is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct FieldMismatch : Error {
    explicit FieldMismatch(const std::string& msg) : Error(msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error(msg) {}
};

struct SingularBasis : Error {
    explicit SingularBasis(const std::string& msg) : Error(msg) {}
};

struct AlphabetMismatch : Error {
    explicit AlphabetMismatch(const std::string& msg) : Error(msg) {}
};

struct UnknownSymbol : Error {
    explicit UnknownSymbol(const std::string& msg) : Error(msg) {}
};

struct UnknownState : Error {
    explicit UnknownState(const std::string& msg) : Error(msg) {}
};

struct NotDeterministic : Error {
    explicit NotDeterministic(const std::string& msg) : Error(msg) {}
};

struct LengthMismatch : Error {
    explicit LengthMismatch(const std::string& msg) : Error(msg) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& msg) : Error(msg) {}
};

struct NotACounterexample : Error {
    explicit NotACounterexample(const std::string& msg) : Error(msg) {}
};

// An internal invariant the algorithm is supposed to maintain failed to
// hold. These abort the current operation loudly; they are never expected
// on well-formed inputs.
struct InvariantBreach : Error {
    explicit InvariantBreach(const std::string& msg) : Error(msg) {}
};

// Counterexample processing found no state violating the transition
// equations, contradicting the split-point argument.
struct NoViolatingState : InvariantBreach {
    explicit NoViolatingState(const std::string& msg) : InvariantBreach(msg) {}
};

// A state/experiment extension failed to grow the observation rank.
struct RankNotIncreased : InvariantBreach {
    explicit RankNotIncreased(const std::string& msg) : InvariantBreach(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace walab

#endif
