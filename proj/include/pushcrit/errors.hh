/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef PUSHCRIT_GUARD_ERRORS_HH
#define PUSHCRIT_GUARD_ERRORS_HH 1

#include <stdexcept>
#include <string>

namespace pushcrit
{
    class Error : public std::runtime_error
    {
        public:
            explicit Error(const std::string & what) : std::runtime_error(what) { }
    };

    class InvalidGraph : public Error
    {
        public:
            explicit InvalidGraph(const std::string & what) : Error("invalid graph: " + what) { }
    };

    class InvalidPushSet : public Error
    {
        public:
            explicit InvalidPushSet(const std::string & what) : Error("invalid push set: " + what) { }
    };

    class IncompatibleInput : public Error
    {
        public:
            explicit IncompatibleInput(const std::string & what) : Error("incompatible input: " + what) { }
    };

    class StructuralViolation : public Error
    {
        public:
            explicit StructuralViolation(const std::string & what) : Error("structural violation: " + what) { }
    };

    class UndefinedInput : public Error
    {
        public:
            explicit UndefinedInput(const std::string & what) : Error("undefined input: " + what) { }
    };

    class Unclassifiable : public Error
    {
        public:
            explicit Unclassifiable(const std::string & what) : Error("unclassifiable graph: " + what) { }
    };

    class ConfigurationError : public Error
    {
        public:
            explicit ConfigurationError(const std::string & what) : Error("configuration error: " + what) { }
    };

    class PreconditionError : public Error
    {
        public:
            explicit PreconditionError(const std::string & what) : Error("precondition violated: " + what) { }
    };

    class FixtureIntegrityError : public Error
    {
        public:
            explicit FixtureIntegrityError(const std::string & what) : Error("fixture integrity: " + what) { }
    };

    /// Thrown when a search runs out of its node budget or is cancelled.
    class BudgetExhausted : public Error
    {
        public:
            explicit BudgetExhausted(const std::string & what) : Error("budget exhausted: " + what) { }
    };

    class ParseError : public Error
    {
        private:
            int _line;

        public:
            ParseError(int line, const std::string & what) :
                Error("parse error on line " + std::to_string(line) + ": " + what),
                _line(line)
            {
            }

            [[nodiscard]] auto line() const -> int { return _line; }
    };
}

#endif
