#ifndef PTCS_ERROR_HPP
#define PTCS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace ptcs {

/// A parameter violated a documented domain constraint (e.g. rho > 1).
class DomainError : public std::domain_error
{
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A computation could not produce a trustworthy result: a series failed to
/// converge, or an inverse trigonometric argument left its domain.
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ptcs

#endif // PTCS_ERROR_HPP
