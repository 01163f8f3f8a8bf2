#ifndef CONCAVE_FIELD_ERRORS_HPP
#define CONCAVE_FIELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace concave_field {

struct DomainError : std::invalid_argument {
    explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyEnsembleError : std::invalid_argument {
    explicit EmptyEnsembleError(const std::string& what) : std::invalid_argument(what) {}
};

struct NotSampleableError : std::logic_error {
    explicit NotSampleableError(const std::string& what) : std::logic_error(what) {}
};

struct UnsupportedError : std::logic_error {
    explicit UnsupportedError(const std::string& what) : std::logic_error(what) {}
};

struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

struct TruncationFailure : std::runtime_error {
    explicit TruncationFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NotConcaveError : std::runtime_error {
    explicit NotConcaveError(const std::string& what) : std::runtime_error(what) {}
};

struct PreconditionFailed : std::runtime_error {
    explicit PreconditionFailed(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::invalid_argument {
    explicit ParseError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace concave_field

#endif
