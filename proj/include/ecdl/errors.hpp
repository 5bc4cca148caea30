#pragma once

#include <stdexcept>
#include <string>

namespace ecdl {

// Hard faults: caller contract violations or internal bugs. Modeled losses
// (bounded-quotient overflow, sharing overflow, exceptional group-shift
// inputs) are values in results, never exceptions.
struct domain_fault : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct size_limit_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct search_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct simulation_fault : std::logic_error {  // width overflow, broken invariant
  using std::logic_error::logic_error;
};

struct irreversible_fault : std::logic_error {  // backward action disagrees
  using std::logic_error::logic_error;
};

}  // namespace ecdl
