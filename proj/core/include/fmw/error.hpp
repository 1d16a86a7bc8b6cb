#pragma once

#include <stdexcept>
#include <string>

namespace fmw {

/// Malformed input: invariant violations, vocabulary mismatches, parse errors.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A cap or search budget was exhausted before the question was decided.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fmw
