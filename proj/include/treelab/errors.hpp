#pragma once
/// \file errors.hpp
/// Error taxonomy shared by the whole library.  Each class maps to a fixed
/// process exit code so command-line failures are machine-distinguishable.

#include <stdexcept>
#include <string>

namespace treelab {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A requested computation exceeds the configured work budget.  The request
/// is refused outright rather than attempted partially.  Exit code 1.
struct budget_refusal : error {
    using error::error;
    static constexpr int exit_code = 1;
};

/// Malformed or out-of-range input: unparsable files, invalid node strings,
/// parameters outside an operation's documented domain.  Exit code 2.
struct input_error : error {
    using error::error;
    static constexpr int exit_code = 2;
};

/// An internal guarantee failed to hold: a witness that the construction
/// promises always exists could not be found, or a uniqueness claim was
/// falsified.  Exit code 3.
struct contract_violation : error {
    using error::error;
    static constexpr int exit_code = 3;
};

} // namespace treelab
