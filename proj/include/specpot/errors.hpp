#pragma once

#include <stdexcept>
#include <string>

namespace specpot {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// invalid physical parameters (rejected before any computation)
class ParamError : public Error {
public:
    using Error::Error;
};

// argument outside the mathematical domain of an operation
class DomainError : public Error {
public:
    using Error::Error;
};

// Gamma/Pochhammer evaluation at a pole
class PoleError : public Error {
public:
    using Error::Error;
};

// recursion coefficient B_n vanished while building the coefficient table
class DegenerateRecursionError : public Error {
public:
    using Error::Error;
};

// zero off-diagonal encountered while evaluating a polynomial sequence
class ZeroOffdiagError : public Error {
public:
    using Error::Error;
};

// eigensolver exceeded its iteration budget
class ConvergenceError : public Error {
public:
    using Error::Error;
};

// matrix function f evaluated to a non-finite value at an eigenvalue
class SingularityError : public Error {
public:
    using Error::Error;
};

// singular matrix / zero pivot in the closed-form inverse recursions
class SingularError : public Error {
public:
    using Error::Error;
};

// duplicate abscissas passed to the rational fit
class DegenerateNodesError : public Error {
public:
    using Error::Error;
};

// rational fit could not avoid a zero inverse-difference pivot
class PivotError : public Error {
public:
    using Error::Error;
};

// every quadrature node fell outside the coordinate-map range
class NoValidNodesError : public Error {
public:
    using Error::Error;
};

// two independent computation paths that must agree did not
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// malformed CLI/config input
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace specpot
