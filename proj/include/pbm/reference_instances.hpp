#pragma once

#include "rational.hpp"
#include "self_map.hpp"
#include "space.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace pbm::reference {

/// p(x,y) = (x-y)^2 + max{x,y} off the diagonal, p(1,1) = 0 and p(x,x) = x
/// otherwise, on {1,2,3,4}; declared coefficient 4.
inline FiniteSpace four_point_space()
{
    std::vector<std::vector<Rational>> table(4, std::vector<Rational>(4));
    for (int x = 1; x <= 4; ++x) {
        for (int y = 1; y <= 4; ++y) {
            int v = 0;
            if (x != y) v = (x - y) * (x - y) + std::max(x, y);
            else if (x != 1) v = x;
            table[x - 1][y - 1] = v;
        }
    }
    return FiniteSpace({"1", "2", "3", "4"}, table, Rational(4));
}

/// 1->1, 2->1, 3->2, 4->2: the map consistent with the worked contraction
/// factors and the uniqueness claim.
inline FiniteMap four_point_map() { return FiniteMap({0, 0, 1, 1}); }

/// The map exactly as printed (3 -> 3), which has two fixed points.
inline FiniteMap four_point_map_as_printed() { return FiniteMap({0, 0, 2, 1}); }

/// Printed value of p(1,3) in the worked table.
inline Rational four_point_printed_p13() { return 4; }

/// {a,b,c} with d(a,b) = d(b,c) = 1, d(a,c) = 2 and zero self-distances.
inline FiniteSpace three_point_chain()
{
    return FiniteSpace({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, Rational(1));
}

/// a->a, b->a, c->b
inline FiniteMap three_point_chain_map() { return FiniteMap({0, 0, 1}); }

/// Standard metric 0/1 on n labelled points.
inline FiniteSpace discrete_metric(const std::vector<std::string>& labels)
{
    std::vector<std::vector<Rational>> table(labels.size(), std::vector<Rational>(labels.size()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = 0; j < labels.size(); ++j) table[i][j] = i == j ? 0 : 1;
    return FiniteSpace(labels, table, Rational(1));
}

/// p(x,y) = |x-y|^k on [0,1] with the customary coefficient 2^k.
inline SampledSpace interval_space(double k = 2.0, std::size_t grid = 101)
{
    return SampledSpace::abs_diff_pow_k(0.0, 1.0, k, grid);
}

/// x -> e^(x - shift); a Banach contraction for |x-y|^k when shift > 1 + ln 2,
/// with constant e^(k (1 - shift)).
inline ExpShiftMap interval_map(double shift = 2.0) { return ExpShiftMap{shift}; }

} // namespace pbm::reference
