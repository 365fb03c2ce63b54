#include "kronlift/errors.hpp"

namespace kronlift {

const char* error_code(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Dimension: return "dimension_error";
    case ErrorKind::Domain: return "domain_error";
    case ErrorKind::Capacity: return "capacity_error";
    case ErrorKind::Numerical: return "numerical_failure";
    case ErrorKind::Singularity: return "singularity_error";
    case ErrorKind::DegenerateLift: return "degenerate_lift";
    case ErrorKind::Parse: return "parse_error";
    case ErrorKind::Io: return "io_error";
    case ErrorKind::Usage: return "usage_error";
    }
    return "unknown_error";
}

} // namespace kronlift
