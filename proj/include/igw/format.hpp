#ifndef IGW_FORMAT_HPP
#define IGW_FORMAT_HPP

#include <string>

namespace igw {

// Shortest decimal form that round-trips a double, 17 significant digits.
std::string fmt17(double x);

} // namespace igw

#endif
