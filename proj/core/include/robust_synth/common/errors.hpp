#pragma once

#include <stdexcept>
#include <string>

namespace robust_synth {

/// Malformed or inconsistent user input (formulas, configs, model dimensions).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A computation could not produce a usable result (budget exceeded,
/// invalid certificate, index mismatch between tables).
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace robust_synth
