#ifndef MATCHMAKER_ERROR_HPP
#define MATCHMAKER_ERROR_HPP

#include <stdexcept>
#include <string>

namespace matchmaker {

/// Bad or inconsistent input data. Maps to CLI exit status 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed result failed one of its own invariants. Maps to CLI exit status 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace matchmaker

#endif  // MATCHMAKER_ERROR_HPP
