#pragma once

#include "errors.hpp"
#include "space.hpp"

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace pbm {

/// A total self-map of a finite space, stored as an image table.
class FiniteMap {
public:
    FiniteMap() = default;

    explicit FiniteMap(std::vector<std::size_t> image) : image_(std::move(image)) {}

    FiniteMap(const FiniteSpace& space, std::vector<std::size_t> image) : image_(std::move(image))
    {
        validate(space);
    }

    static FiniteMap identity(std::size_t n)
    {
        std::vector<std::size_t> image(n);
        for (std::size_t i = 0; i < n; ++i) image[i] = i;
        return FiniteMap(std::move(image));
    }

    static FiniteMap constant(std::size_t n, std::size_t target)
    {
        return FiniteMap(std::vector<std::size_t>(n, target));
    }

    /// Throws unless the map is total on `space` with images inside it.
    void validate(const FiniteSpace& space) const
    {
        if (image_.size() != space.size())
            throw PreconditionError("map defines " + std::to_string(image_.size()) + " images for " +
                                    std::to_string(space.size()) + " points");
        for (std::size_t i = 0; i < image_.size(); ++i) {
            if (image_[i] >= space.size())
                throw PreconditionError("image of point " + space.label(i) + " lies outside the space");
        }
    }

    std::size_t operator()(std::size_t x) const { return image_[x]; }
    std::size_t size() const { return image_.size(); }
    const std::vector<std::size_t>& image() const { return image_; }

    /// this ∘ inner
    FiniteMap after(const FiniteMap& inner) const
    {
        std::vector<std::size_t> out(inner.size());
        for (std::size_t i = 0; i < inner.size(); ++i) out[i] = image_[inner(i)];
        return FiniteMap(std::move(out));
    }

    /// T^n; T^0 is the identity.
    FiniteMap power(unsigned n) const
    {
        FiniteMap result = identity(size());
        for (unsigned i = 0; i < n; ++i) result = after(result);
        return result;
    }

    friend bool operator==(const FiniteMap&, const FiniteMap&) = default;

private:
    std::vector<std::size_t> image_;
};

/// x ↦ e^(x - shift); the closed-form map of the interval examples.
struct ExpShiftMap {
    double shift;

    double operator()(double x) const { return std::exp(x - shift); }
};

/// Applies `map` n times.
template <class Map>
struct PowerMap {
    const Map& map;
    unsigned n;

    template <class Point>
    Point operator()(Point x) const
    {
        for (unsigned i = 0; i < n; ++i) x = map(x);
        return x;
    }
};

template <class Map>
PowerMap(const Map&, unsigned) -> PowerMap<Map>;

} // namespace pbm
