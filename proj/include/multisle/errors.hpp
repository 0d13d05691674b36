#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace multisle {

using cplx = std::complex<double>;

// Thrown when an algorithm fails to reach its accuracy target or hits a
// pole/degeneracy at runtime.  Precondition violations (bad arguments,
// out-of-range parameters) throw std::invalid_argument instead.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

using std::invalid_argument;

} // namespace multisle
