#include "opal/presentation.hpp"

#include <stdexcept>

namespace opal {

void check_presentation(const Presentation& p) {
  if (p.period.empty())
    throw std::invalid_argument("presentation period must be nonempty");
  for (const auto& t : p.prefix) tuples::check_int_tuple(t);
  for (const auto& t : p.period) tuples::check_int_tuple(t);
}

}  // namespace opal
