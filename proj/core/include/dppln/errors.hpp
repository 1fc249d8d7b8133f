#pragma once

#include <stdexcept>
#include <string>

namespace dppln {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input or configuration that violates a documented invariant.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Wavelength or temperature outside the validated domain of a data set.
class OutOfRange : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Physically infeasible design; the CLI maps these to exit code 2.
class Infeasible : public Error {
public:
    using Error::Error;
};

class NoGuidedMode : public Infeasible {
public:
    NoGuidedMode(double wavelength_nm, std::string polarization, const std::string& detail);

    double wavelength_nm() const noexcept { return wavelength_nm_; }
    const std::string& polarization() const noexcept { return polarization_; }

private:
    double wavelength_nm_;
    std::string polarization_;
};

class NonPositiveFrequency : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class DegenerateModulation : public Infeasible {
public:
    using Infeasible::Infeasible;
};

class DegenerateGroupIndices : public Infeasible {
public:
    using Infeasible::Infeasible;
};

/// gamma requested with both process amplitudes zero.
class UndefinedGamma : public Error {
public:
    using Error::Error;
};

class FilterTooWide : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

}  // namespace dppln
