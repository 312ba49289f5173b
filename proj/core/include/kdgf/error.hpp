#pragma once

#include <stdexcept>
#include <string>

namespace kdgf {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad lengths, ranges, non-finite values).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// An iteration left the numerically meaningful range; usually the step size is too large.
class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, std::size_t step)
        : Error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

}  // namespace kdgf
