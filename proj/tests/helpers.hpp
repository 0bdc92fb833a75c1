#pragma once

#include <string>
#include <vector>

#include "doctest.h"
#include "piclat/suites.hpp"

namespace th {

using namespace piclat;

inline std::vector<long> fac(const FGAbGroup& g) {
    std::vector<long> v;
    for (const auto& f : g.factors) v.push_back(f.get_si());
    return v;
}

inline Rat frac(long a, long b) {
    Rat q(a, b);
    q.canonicalize();
    return q;
}

inline QVec qv(std::initializer_list<Rat> xs) { return QVec(xs); }

inline Pi1Element cls(const Group& g, const QVec& lift) { return pi1_class(g.datum, g.parts, lift); }
inline Pi1Element zero(const Group& g) { return cls(g, QVec(g.datum.dim())); }

}  // namespace th
