#pragma once

#include <stdexcept>
#include <string>

namespace hct {

// A connected component of the intersection graph is too large for exact
// solving. Carries the offending size so callers can shrink the window or
// intensity instead of guessing.
struct ComponentTooLarge : std::runtime_error {
    int component_size;
    explicit ComponentTooLarge(int size)
        : std::runtime_error("component of size " + std::to_string(size) +
                             " exceeds the exact-solve cap"),
          component_size(size) {}
};

struct TooManyGrains : std::runtime_error {
    explicit TooManyGrains(std::size_t n)
        : std::runtime_error("brute force limited to 20 grains, got " + std::to_string(n)) {}
};

struct WindowTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadiusLawMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownGrainId : std::runtime_error {
    explicit UnknownGrainId(int id)
        : std::runtime_error("unknown grain id " + std::to_string(id)) {}
};

// Weight magnitudes exceed the representable exponent range of long double.
struct WeightRangeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Experiment configuration problems, with the offending line when parsed
// from a file (line == 0 for programmatic/CLI errors).
struct ConfigError : std::runtime_error {
    int line;
    std::string key;
    ConfigError(std::string message, int line_no = 0, std::string key_name = {})
        : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + message
                                         : message),
          line(line_no),
          key(std::move(key_name)) {}
};

}  // namespace hct
