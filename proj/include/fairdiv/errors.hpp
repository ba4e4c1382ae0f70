#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Locations are reported 1-indexed, matching the file format.
struct NonPositiveWeightError : Error {
    int agent;
    explicit NonPositiveWeightError(int agent_)
        : Error("non-positive weight for agent " + std::to_string(agent_ + 1)), agent(agent_) {}
};

struct NegativeCostError : Error {
    int agent, item;
    NegativeCostError(int agent_, int item_)
        : Error("negative cost at (agent " + std::to_string(agent_ + 1) + ", item " +
                std::to_string(item_ + 1) + ")"),
          agent(agent_), item(item_) {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct ZeroTotalCostError : Error {
    int agent;
    explicit ZeroTotalCostError(int agent_)
        : Error("agent " + std::to_string(agent_ + 1) + " has zero total cost; cannot normalize"),
          agent(agent_) {}
};

struct NotBivaluedError : Error {
    using Error::Error;
};

struct InfeasibleParametersError : Error {
    using Error::Error;
};

struct WrongAgentCountError : Error {
    using Error::Error;
};

struct BudgetExceededError : Error {
    using Error::Error;
};

struct IncompleteAllocationError : Error {
    using Error::Error;
};

struct DivisionByZeroError : Error {
    using Error::Error;
};

struct InvalidSpecError : Error {
    using Error::Error;
};

// Signals a broken solver contract, never expected on valid input.
struct InvariantViolationError : Error {
    std::string name;
    int round;
    InvariantViolationError(std::string name_, int round_)
        : Error("invariant '" + name_ + "' violated in round " + std::to_string(round_)),
          name(std::move(name_)), round(round_) {}
};

}  // namespace fairdiv
