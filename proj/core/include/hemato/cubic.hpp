#pragma once

#include <vector>

namespace hemato {

/// Real roots of z^3 + b1 z^2 + b2 z + b3, ascending, each polished by one
/// Newton step. Repeated roots may appear once or twice depending on rounding.
std::vector<double> real_cubic_roots(double b1, double b2, double b3);

}  // namespace hemato
