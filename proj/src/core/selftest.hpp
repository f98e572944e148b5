#pragma once

namespace vgl {

// Runs the built-in closed-form checks (one line per check unless quiet).
// Returns the number of failures.
int self_test(bool quiet);

}  // namespace vgl
