#pragma once

#include <stdexcept>

namespace mallows {

// Thrown when a request exceeds a documented enumeration or game budget
// (exhaustive S_n sums, EF games, chain verification). The CLI maps this,
// like every other module error, to exit code 2.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mallows
