#pragma once

#include <pbm/pbm.hpp>

#include <string>
#include <vector>

namespace pbm::test {

inline std::size_t pt(const FiniteSpace& space, const std::string& label) { return space.index_of(label); }

inline std::vector<std::string> labels(const FiniteSpace& space, const std::vector<std::size_t>& points)
{
    std::vector<std::string> out;
    for (auto p : points) out.push_back(space.label(p));
    return out;
}

template <std::size_t N>
std::vector<std::string> labels(const FiniteSpace& space, const std::array<std::size_t, N>& points)
{
    return labels(space, std::vector<std::size_t>(points.begin(), points.end()));
}

inline std::vector<std::string> labels(const FiniteSpace& space, const std::pair<std::size_t, std::size_t>& p)
{
    return {space.label(p.first), space.label(p.second)};
}

inline Rational q(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// |x-y|^2 on {0,1,2}.
inline FiniteSpace squared_line()
{
    return FiniteSpace({"0", "1", "2"}, {{0, 1, 4}, {1, 0, 1}, {4, 1, 0}}, Rational(2));
}

} // namespace pbm::test
