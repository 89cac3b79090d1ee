#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdr {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (config files, parameter invariants).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A solver could not produce a trustworthy result.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace qdr
