#pragma once

#include <stdexcept>
#include <string>

namespace ringstar {

// A trajectory left the finite range the model can represent (non-finite
// component or |x| beyond the guard). step/node are filled in where known,
// -1 otherwise.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(const std::string& what, long step = -1, long node = -1)
        : std::runtime_error(what), step_index(step), node_index(node) {}

    long step_index;
    long node_index;
};

// Invalid configuration. `field` holds the dotted path of the offending
// entry ("network.n_nodes"), empty when the problem is not tied to one field.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, std::string field_path = {})
        : std::runtime_error(field_path.empty() ? what : field_path + ": " + what),
          field(std::move(field_path)) {}

    std::string field;
};

// Series too short for the requested embedding.
class TooShort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Zero-variance series: correlations and relative tolerances are undefined.
class DegenerateSeries : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace ringstar
