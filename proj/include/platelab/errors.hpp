#pragma once

#include <stdexcept>
#include <string>

namespace platelab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct SingularMetric : Error {
    explicit SingularMetric(const std::string& msg) : Error("SingularMetric: " + msg) {}
};

struct EmptyInterior : Error {
    explicit EmptyInterior(const std::string& msg) : Error("EmptyInterior: " + msg) {}
};

struct IndefiniteMass : Error {
    explicit IndefiniteMass(const std::string& msg) : Error("IndefiniteMass: " + msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error("NoConvergence: " + msg) {}
};

struct InsufficientSpectrum : Error {
    explicit InsufficientSpectrum(const std::string& msg) : Error("InsufficientSpectrum: " + msg) {}
};

struct NotATranslator : Error {
    explicit NotATranslator(const std::string& msg) : Error("NotATranslator: " + msg) {}
};

struct VariantMismatch : Error {
    explicit VariantMismatch(const std::string& msg) : Error("VariantMismatch: " + msg) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& msg) : Error("ZeroVector: " + msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("ConfigError: " + msg) {}
};

}  // namespace platelab
