#pragma once

#include <stdexcept>
#include <string>

namespace kerrjc {

// Parameter or argument outside its documented domain.
class InvalidParameter : public std::invalid_argument {
public:
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

// Block spectrum too close to degenerate for the closed-form amplitudes;
// the eigendecomposition path must be used instead.
class DegenerateSpectrum : public std::runtime_error {
public:
    explicit DegenerateSpectrum(const std::string& what) : std::runtime_error(what) {}
};

// Atomic density matrix lacks the B = C structure the closed-form spectrum
// relies on. Indicates wrong upstream amplitudes.
class SymmetryViolation : public std::runtime_error {
public:
    explicit SymmetryViolation(const std::string& what) : std::runtime_error(what) {}
};

class StepTooLarge : public std::invalid_argument {
public:
    explicit StepTooLarge(const std::string& what) : std::invalid_argument(what) {}
};

class UnknownPreset : public std::invalid_argument {
public:
    explicit UnknownPreset(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace kerrjc
