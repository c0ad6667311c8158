#pragma once

#include <stdexcept>

namespace photondm {

// Base class for every error thrown by this library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A caller broke an operation's contract (bad index, non-positive target, ...).
struct contract_violation : error {
  using error::error;
};

// A configuration object fails its own invariants (normalization, ranges, ...).
struct invalid_configuration : error {
  using error::error;
};

// The operation exists but is not defined for this parameter shape.
struct unsupported_configuration : error {
  using error::error;
};

// The closed form's regime preconditions do not hold; use the general operation.
struct closed_form_inapplicable : error {
  using error::error;
};

// A frontier was evaluated outside the valid range of its system or branch.
struct frontier_domain_error : error {
  using error::error;
};

// An iterative solver exhausted its step budget without converging.
struct solver_failure : error {
  using error::error;
};

// A guarded loop exceeded its attempt budget (e.g. resampling a pure-loss state).
struct non_termination_guard : error {
  using error::error;
};

// File output failed (unwritable path, rename failure, ...).
struct io_error : error {
  using error::error;
};

}  // namespace photondm
