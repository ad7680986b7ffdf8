#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace dualres {

using Integer = boost::multiprecision::cpp_int;

} // namespace dualres
