#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral_bounds {

enum class ErrorKind {
    invalid_argument,
    degenerate_domain,
    not_applicable,
    out_of_range,
    overflow,
    below_threshold,
    infeasible_moment,
    numerical_breakdown,
};

inline std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::degenerate_domain: return "degenerate-domain";
    case ErrorKind::not_applicable: return "not-applicable";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::below_threshold: return "below-threshold";
    case ErrorKind::infeasible_moment: return "infeasible-moment";
    case ErrorKind::numerical_breakdown: return "numerical-breakdown";
    }
    return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

namespace detail {

inline void require(bool condition, ErrorKind kind, const std::string& message)
{
    if (!condition) {
        throw Error(kind, message);
    }
}

} // namespace detail

} // namespace spectral_bounds
