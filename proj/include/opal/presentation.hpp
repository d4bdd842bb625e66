#pragma once

#include <vector>

#include "opal/tuples.hpp"

namespace opal {

// An eventually periodic presentation of an order-preserving system: the
// level-n multiplicity tuple is prefix[n-1] for n <= len(prefix), after
// which the period cycles forever.
struct Presentation {
  std::vector<tuples::IntTuple> prefix;
  std::vector<tuples::IntTuple> period;  // nonempty

  bool operator==(const Presentation&) const = default;
};

// Throws std::invalid_argument on an empty period or malformed tuples.
void check_presentation(const Presentation& p);

}  // namespace opal
