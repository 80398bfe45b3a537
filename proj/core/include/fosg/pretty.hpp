#ifndef FOSG_PRETTY_HPP
#define FOSG_PRETTY_HPP

#include <string>

#include "fosg/formula.hpp"

namespace fosg {

// Concrete syntax, parseable back by the formula parser. Bound variables with
// the reserved "_" prefix are renamed to v1, v2, ... on the way out.
std::string to_string(const Formula& f);
std::string to_string(const Term& t);

} // namespace fosg

#endif
