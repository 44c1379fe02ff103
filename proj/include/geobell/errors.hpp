#pragma once

#include <stdexcept>
#include <string>

namespace geobell {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimension : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class InvalidScenario : public Error {
public:
    using Error::Error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

// Raised when an exact search would exceed the configured model-count cap.
class Infeasible : public Error {
public:
    using Error::Error;
};

// An internal identity that should hold numerically did not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace geobell
