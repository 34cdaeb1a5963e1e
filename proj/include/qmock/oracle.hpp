#pragma once

#include <string>

#include "qmock/blocks.hpp"

namespace qmock {
namespace oracle {

// f_{a,b,c} by plain quadrant enumeration with a generous fixed bound
Series oracle_hecke(const HeckeParams& p, const Monomial& x, const Monomial& y, const Monomial& base,
                    int D, const QExp& order);

// fbar_{a,b,c} likewise
Series oracle_false_hecke(const HeckeParams& p, const Monomial& x, const Monomial& y,
                          const Monomial& base, int D, const QExp& order);

// m(x,q,z) with an independently coded expansion of every bilateral term
Series oracle_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order);

// mbar(x,q,z) likewise
Series oracle_false_m(const Monomial& x, const Monomial& base, const Monomial& z, int D, const QExp& order);

// Eulerian forms summed with an independent Pochhammer routine
Series oracle_eulerian(const std::string& id, int D, const QExp& order);

// number of integer partitions (used to check 1/(q;q)_inf)
long long partition_count(int n);

} // namespace oracle
} // namespace qmock
