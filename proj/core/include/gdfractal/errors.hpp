#pragma once

#include <stdexcept>
#include <string>

namespace gdfractal {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct AbstractWithoutApprox : Error {
    explicit AbstractWithoutApprox(const std::string& name)
        : Error("abstract generator '" + name + "' has no numeric approximation") {}
};

struct NonRationalMatrix : Error {
    NonRationalMatrix() : Error("matrix entries are not all rational") {}
};

struct NotContractive : Error {
    NotContractive() : Error("spectral radius of the ratio matrix is not below 1") {}
};

struct NonRationalRatios : Error {
    NonRationalRatios()
        : Error("ratio magnitudes are not all rational; exact solve unavailable "
                "(use the numeric fallback)") {}
};

struct DepthTooLarge : Error {
    explicit DepthTooLarge(const std::string& detail)
        : Error("interval budget exceeded: " + detail) {}
};

struct BadDelta : Error {
    explicit BadDelta(const std::string& detail) : Error("bad gap width: " + detail) {}
};

struct MagnitudeSumMismatch : Error {
    explicit MagnitudeSumMismatch(const std::string& detail)
        : Error("ratio magnitudes do not sum to 1-(d-1)*delta: " + detail) {}
};

struct NotEqualGapFamily : Error {
    NotEqualGapFamily() : Error("system was not built by the equal-gap family constructor") {}
};

struct DegenerateHull : Error {
    explicit DegenerateHull(const std::string& detail)
        : Error("hull degenerates to a point: " + detail) {}
};

struct CircuitAvoidsU : Error {
    CircuitAvoidsU() : Error("a reachable circuit avoids the chosen vertex") {}
};

struct SeparationUnverified : Error {
    explicit SeparationUnverified(const std::string& detail)
        : Error("separation not verified: " + detail) {}
};

struct ThetaAbsent : Error {
    ThetaAbsent() : Error("theta does not occur in the gap catalog") {}
};

struct EmptyInput : Error {
    EmptyInput() : Error("empty interval set") {}
};

struct IndeterminateSign : Error {
    explicit IndeterminateSign(const std::string& detail)
        : Error("sign could not be certified at maximum precision: " + detail) {}
};

struct ParseError : Error {
    int line, col;
    ParseError(int line_, int col_, const std::string& message)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) +
                ": " + message),
          line(line_), col(col_) {}
};

struct ValidationError : Error {
    std::string path;
    ValidationError(const std::string& path_, const std::string& message)
        : Error("validation error at " + path_ + ": " + message), path(path_) {}
};

}  // namespace gdfractal
