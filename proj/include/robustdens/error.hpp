#pragma once

#include <stdexcept>
#include <string>

namespace robustdens {

enum class ErrorKind {
    unknown_name,
    invalid_config,
    domain_error,
    quadrature_nonconvergence,
    iteration_cap_exceeded,
    unsupported_rule,
    unsupported_model,
    cdf_missing,
    theory_mode_required,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what);
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace robustdens
