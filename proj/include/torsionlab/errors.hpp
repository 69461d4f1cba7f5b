#ifndef TORSIONLAB_ERRORS_HPP
#define TORSIONLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace torsionlab {

// A harness refused to run because a stated precondition failed
// (e.g. the model is not certified negative-torsion). CLI exit code 2.
struct precondition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation ran but could not meet its numerical contract
// (refinement floor hit, bracket not found, ...). CLI exit code 1.
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration file problems, with key/line diagnostics. CLI exit code 3.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace torsionlab

#endif
