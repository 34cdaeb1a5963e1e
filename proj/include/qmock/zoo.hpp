#pragma once

#include <string>
#include <vector>

#include "qmock/series.hpp"

namespace qmock {

// Eulerian form of a named q-series; ids are listed in zoo_function_ids().
// Results are memoized per (id, D, window).  cutoff_window is the number of
// consecutive out-of-range summands required before the sum stops.
Series eulerian(const std::string& id, int D, const QExp& order, int cutoff_window = 4);

bool is_zoo_function(const std::string& id);
const std::vector<std::string>& zoo_function_ids();

// universal mock theta function g(x,q) = sum_n q^{n(n+1)} / ((x;q)_{n+1} (q/x;q)_{n+1})
Series universal_g(const Monomial& x, const Monomial& base, int D, const QExp& order);

} // namespace qmock
