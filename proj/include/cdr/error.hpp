#pragma once

#include <stdexcept>
#include <string>

namespace cdr {

/// Malformed or infeasible input (instances, arguments, files).
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Random instance generation could not satisfy its constraints.
class GenerationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A planner ran out of its node budget, time budget or re-planning rounds.
class PlanningError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cdr
