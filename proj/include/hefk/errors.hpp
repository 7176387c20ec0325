#pragma once

#include <stdexcept>
#include <string>

namespace hefk {

// Agent or good index outside the instance.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Malformed instance, allocation or input file (wrong shape, overlap, negative
// value, ...).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A search or loop hit its configured resource limit. `lower_bound` carries
// the best proven bound when the operation has one (otherwise -1).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what, long long lower_bound = -1)
      : std::runtime_error(what), lower_bound_(lower_bound) {}

  long long lower_bound() const { return lower_bound_; }

 private:
  long long lower_bound_;
};

}  // namespace hefk
