#pragma once

#include <stdexcept>
#include <string>

namespace kravchuk {

/// Index outside 0..N (or a mode index outside 0..N).
class IndexError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Two objects anchored to different grids were combined.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A projected function returned a non-finite value at some node.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A constructed object failed its own post-construction check.
class ConstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite input or output in a numerical kernel.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace kravchuk
