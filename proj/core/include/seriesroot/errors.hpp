#pragma once

#include <stdexcept>
#include <string>

namespace seriesroot {

// Violated input contract: the caller asked for something the algorithms
// do not cover (wrong arity, missing origin fixing, degree too low, ...).
class precondition_error : public std::runtime_error {
 public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// The computation itself broke down (non-convergence, no annihilator found,
// singular stage system, ...).  Distinct from precondition_error so the CLI
// can map the two to different exit codes.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Extended-exponent arithmetic ran out of the 64-bit exponent range.
class saturation_error : public numerical_error {
 public:
  explicit saturation_error(const std::string& what) : numerical_error(what) {}
};

}  // namespace seriesroot
