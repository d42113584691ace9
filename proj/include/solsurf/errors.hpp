#ifndef SOLSURF_ERRORS_HPP
#define SOLSURF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solsurf {

// Base for all library errors so callers can catch everything in one place.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotTraceless : Error {
    explicit NotTraceless(const std::string& msg) : Error(msg) {}
};

struct NonRealComponents : Error {
    explicit NonRealComponents(const std::string& msg) : Error(msg) {}
};

struct SingularMatrix : Error {
    explicit SingularMatrix(const std::string& msg) : Error(msg) {}
};

// Evaluation requested at a point excluded by the equation (t=0, x=0, lambda=0, ...).
struct SingularInput : Error {
    explicit SingularInput(const std::string& msg) : Error(msg) {}
};

struct StepSizeUnderflow : Error {
    explicit StepSizeUnderflow(const std::string& msg) : Error(msg) {}
};

struct NearAiryZero : Error {
    explicit NearAiryZero(const std::string& msg) : Error(msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct MissingRSolution : Error {
    explicit MissingRSolution(const std::string& msg) : Error(msg) {}
};

struct WrongParameterRegime : Error {
    explicit WrongParameterRegime(const std::string& msg) : Error(msg) {}
};

struct UnsupportedAlpha6 : Error {
    explicit UnsupportedAlpha6(const std::string& msg) : Error(msg) {}
};

struct DegenerateTangents : Error {
    explicit DegenerateTangents(const std::string& msg) : Error(msg) {}
};

struct IsotropicNormalError : Error {
    explicit IsotropicNormalError(const std::string& msg) : Error(msg) {}
};

struct AsymmetricMixedDerivatives : Error {
    explicit AsymmetricMixedDerivatives(const std::string& msg) : Error(msg) {}
};

struct DegenerateMetric : Error {
    explicit DegenerateMetric(const std::string& msg) : Error(msg) {}
};

// The supplied tangent field is not closed: a loop integral of dF does not vanish.
struct NonClosedForm : Error {
    explicit NonClosedForm(const std::string& msg) : Error(msg) {}
};

struct FrameOverflow : Error {
    explicit FrameOverflow(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace solsurf

#endif
