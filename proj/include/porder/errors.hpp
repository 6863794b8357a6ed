#ifndef PORDER_ERRORS_HPP
#define PORDER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace porder {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A successor walk ran out of steps before reaching its target.
struct budget_error : error {
    using error::error;
};

// An operation required a total order and was handed a partial one,
// or required a capability (successor, precedes) the order lacks.
struct capability_error : error {
    using error::error;
};

// A fixed-width encoding could not fit its payload.
struct width_error : error {
    using error::error;
};

// A value or instance violated a construction's precondition.
struct validation_error : error {
    using error::error;
};

}  // namespace porder

#endif
