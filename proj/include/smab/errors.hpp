#pragma once

#include <stdexcept>

namespace smab {

// Invalid experiment/environment/policy configuration (bad file, bad field, bad value).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// API misuse: a precondition the caller is responsible for was violated.
struct UsageError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace smab
