#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace ratseries {

// Exact natural numbers. All coefficient arithmetic in the library is
// integral and unbounded; nothing here ever touches floating point.
using Nat = boost::multiprecision::cpp_int;

inline std::string nat_str(const Nat& n) { return n.str(); }

}  // namespace ratseries
