#pragma once

#include <stdexcept>
#include <string>

namespace paperfold {

/// Raised when a construction would exceed the configured cell budget.
struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace paperfold
