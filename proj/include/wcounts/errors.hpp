#pragma once

#include <stdexcept>
#include <string>

namespace wcounts {

// Base class for all toolkit errors. `module_name` identifies which
// subsystem rejected the input, so drivers can attribute failures.
class error : public std::runtime_error {
public:
    error(std::string module_name, const std::string& what_arg)
        : std::runtime_error("[" + module_name + "] " + what_arg),
          module_(std::move(module_name)) {}

    const std::string& module_name() const { return module_; }

private:
    std::string module_;
};

// Invalid input: bad type/rank pair, malformed config, precondition failure.
class validation_error : public error {
public:
    using error::error;
};

// Estimated work exceeds the configured budget. No partial results are kept.
class budget_error : public error {
public:
    using error::error;
};

// An iterative numeric procedure did not reach its tolerance.
class convergence_error : public error {
public:
    convergence_error(std::string module_name, const std::string& what_arg,
                      long double residual)
        : error(std::move(module_name), what_arg), residual_(residual) {}

    long double residual() const { return residual_; }

private:
    long double residual_;
};

// Exact integer arithmetic left the representable range. Results are never
// silently wrapped.
class overflow_error : public error {
public:
    using error::error;
};

} // namespace wcounts
