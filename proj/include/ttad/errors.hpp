#pragma once

#include <stdexcept>
#include <string>

namespace ttad {

enum class ErrorKind {
    Dimension,
    Bounds,
    Degenerate,
    Config,
    Structural,
    Sampling,
    Evaluation,
    Parse,
    Io,
};

/// Base of every error thrown by the library. `kind()` drives the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define TTAD_DEFINE_ERROR(Name, Kind)                                                      \
    class Name : public Error {                                                            \
    public:                                                                                \
        explicit Name(const std::string &what) : Error(ErrorKind::Kind, what) {}           \
    };

TTAD_DEFINE_ERROR(DimensionError, Dimension)
TTAD_DEFINE_ERROR(BoundsError, Bounds)
TTAD_DEFINE_ERROR(DegenerateInputError, Degenerate)
TTAD_DEFINE_ERROR(ConfigError, Config)
TTAD_DEFINE_ERROR(StructuralError, Structural)
TTAD_DEFINE_ERROR(SamplingError, Sampling)
TTAD_DEFINE_ERROR(EvaluationError, Evaluation)
TTAD_DEFINE_ERROR(ParseError, Parse)
TTAD_DEFINE_ERROR(IoError, Io)

#undef TTAD_DEFINE_ERROR

} // namespace ttad
