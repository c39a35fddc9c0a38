#pragma once

#include <stdexcept>
#include <string>

namespace zsym {

/// Argument outside the documented domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A resource guard (term count, row budget, grid size) was exceeded.
class range_error : public std::range_error {
public:
    using std::range_error::range_error;
};

/// An iterative method failed to reach its target; carries the best result.
class convergence_error : public std::runtime_error {
public:
    convergence_error(const std::string& what, double best_error)
        : std::runtime_error(what), best_error_(best_error) {}

    double best_error() const noexcept { return best_error_; }

private:
    double best_error_;
};

} // namespace zsym
