#include "robustdens/error.hpp"

namespace robustdens {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::unknown_name: return "unknown-name";
    case ErrorKind::invalid_config: return "invalid-config";
    case ErrorKind::domain_error: return "domain-error";
    case ErrorKind::quadrature_nonconvergence: return "quadrature-nonconvergence";
    case ErrorKind::iteration_cap_exceeded: return "iteration-cap-exceeded";
    case ErrorKind::unsupported_rule: return "unsupported-rule";
    case ErrorKind::unsupported_model: return "unsupported-model";
    case ErrorKind::cdf_missing: return "cdf-missing";
    case ErrorKind::theory_mode_required: return "theory-mode-required";
    }
    return "error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
{
}

}  // namespace robustdens
