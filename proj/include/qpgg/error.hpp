#pragma once

#include <stdexcept>
#include <string>

namespace qpgg {

/// An argument lies outside the domain of the operation (angle ranges,
/// non-positive beta, invalid chain size, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A value violates a type invariant it is supposed to carry, e.g. an
/// unnormalized two-qubit state handed to the payoff projection.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The finite-size estimate is undefined because the subleading transfer
/// matrix eigenvalue vanishes (zero coupling).
class DegenerateRegimeError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace qpgg
