#ifndef THIRDQ_ERRORS_HPP
#define THIRDQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thirdq {

/// Invalid or inconsistent configuration (bad grid, cutoff too small, unknown key, ...).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The computation itself failed (NaN/Inf in the integrator, negative density, ...).
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Filesystem failures while emitting results.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace thirdq

#endif
