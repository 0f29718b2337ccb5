#pragma once

#include <stdexcept>
#include <string>

namespace netstress {

// Input data or configuration violates a documented contract.
// Maps to exit/status code 3 at the C boundary.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// I/O or internal failure. Maps to exit/status code 4 at the C boundary.
class RuntimeFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace netstress
