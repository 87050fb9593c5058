#pragma once

#include "errors.hpp"
#include "rational.hpp"

#include <cmath>
#include <concepts>
#include <cstddef>
#include <ranges>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pbm {

/// Anything the checks can scan: a set of points, a distance, a declared
/// coefficient and a comparison tolerance (zero for exact spaces).
template <class S>
concept PartialSpace = requires(const S& space, typename S::point_type x) {
    typename S::point_type;
    typename S::scalar_type;
    { S::is_exact } -> std::convertible_to<bool>;
    { space.points() };
    { space.distance(x, x) } -> std::convertible_to<typename S::scalar_type>;
    { space.declared_s() } -> std::convertible_to<typename S::scalar_type>;
    { space.tolerance() } -> std::convertible_to<typename S::scalar_type>;
};

template <class S>
using point_t = typename S::point_type;

template <class S>
using scalar_t = typename S::scalar_type;

/// A finite partial b-metric space with an exact rational distance table.
///
/// Construction rejects tables that are not square, not symmetric, or carry
/// negative entries; the axioms pm1, pm2 and pm4 are *not* enforced here so
/// that the checkers can report on arbitrary candidate tables.
class FiniteSpace {
public:
    using point_type = std::size_t;
    using scalar_type = Rational;
    static constexpr bool is_exact = true;

    FiniteSpace() = default;

    FiniteSpace(std::vector<std::string> labels, const std::vector<std::vector<Rational>>& table,
                Rational declared_s = 1)
        : labels_(std::move(labels)), declared_s_(std::move(declared_s))
    {
        const std::size_t n = labels_.size();
        if (n == 0) throw StructuralError("a space needs at least one point");
        if (table.size() != n)
            throw StructuralError("distance table has " + std::to_string(table.size()) + " rows for " +
                                  std::to_string(n) + " points");
        values_.reserve(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            if (table[i].size() != n)
                throw StructuralError("distance table row " + std::to_string(i) + " has " +
                                      std::to_string(table[i].size()) + " entries, expected " +
                                      std::to_string(n));
            for (std::size_t j = 0; j < n; ++j) values_.push_back(table[i][j]);
        }
        for (auto& v : values_) v.canonicalize();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (at(i, j) < 0)
                    throw StructuralError("negative distance p(" + labels_[i] + "," + labels_[j] + ")");
                if (at(i, j) != at(j, i))
                    throw StructuralError("asymmetric distance p(" + labels_[i] + "," + labels_[j] +
                                          ") != p(" + labels_[j] + "," + labels_[i] + ")");
            }
        }
        if (declared_s_ < 1) throw ParameterError("declared coefficient s must be >= 1");
        for (std::size_t i = 0; i < n; ++i) {
            if (!index_.emplace(labels_[i], i).second)
                throw StructuralError("duplicate point label '" + labels_[i] + "'");
        }
    }

    /// Unlabelled convenience constructor; points are named "0", "1", ...
    static FiniteSpace from_table(const std::vector<std::vector<Rational>>& table, Rational declared_s = 1)
    {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < table.size(); ++i) labels.push_back(std::to_string(i));
        return FiniteSpace(std::move(labels), table, std::move(declared_s));
    }

    std::size_t size() const { return labels_.size(); }
    auto points() const { return std::views::iota(std::size_t{0}, size()); }

    const Rational& distance(point_type x, point_type y) const { return at(x, y); }
    const Rational& operator()(point_type x, point_type y) const { return at(x, y); }

    const Rational& declared_s() const { return declared_s_; }
    Rational tolerance() const { return 0; }

    const std::string& label(point_type x) const { return labels_.at(x); }
    const std::vector<std::string>& labels() const { return labels_; }

    point_type index_of(const std::string& label) const
    {
        auto it = index_.find(label);
        if (it == index_.end()) throw PreconditionError("unknown point '" + label + "'");
        return it->second;
    }

    std::vector<std::vector<Rational>> table() const
    {
        std::vector<std::vector<Rational>> rows(size(), std::vector<Rational>(size()));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j) rows[i][j] = at(i, j);
        return rows;
    }

    FiniteSpace with_declared_s(Rational s) const
    {
        FiniteSpace copy = *this;
        if (s < 1) throw ParameterError("declared coefficient s must be >= 1");
        copy.declared_s_ = std::move(s);
        return copy;
    }

    friend bool operator==(const FiniteSpace& a, const FiniteSpace& b)
    {
        return a.labels_ == b.labels_ && a.values_ == b.values_ && a.declared_s_ == b.declared_s_;
    }

private:
    const Rational& at(point_type x, point_type y) const { return values_[x * labels_.size() + y]; }

    std::vector<std::string> labels_;
    std::vector<Rational> values_;
    Rational declared_s_ = 1;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Built-in closed-form distances for function-backed spaces.
enum class Formula { abs_diff_pow_k };

/// A function-backed space on a real interval, checked on a uniform grid.
/// Every verdict computed on such a space is a sampled one.
class SampledSpace {
public:
    using point_type = double;
    using scalar_type = double;
    static constexpr bool is_exact = false;

    SampledSpace(double lo, double hi, std::size_t grid, double k, double declared_s, double tol = 1e-12)
        : lo_(lo), hi_(hi), grid_(grid), k_(k), declared_s_(declared_s), tol_(tol)
    {
        if (!(lo < hi)) throw ParameterError("interval requires lo < hi");
        if (grid < 2) throw ParameterError("sampling grid needs at least 2 points");
        if (!(k > 0)) throw ParameterError("exponent k must be positive");
        if (!(declared_s >= 1)) throw ParameterError("declared coefficient s must be >= 1");
        if (!(tol >= 0)) throw ParameterError("tolerance must be non-negative");
    }

    /// p(x,y) = |x-y|^k on [lo,hi]; a partial b-metric with s = 2^(k-1)
    /// (2^k is the customary, looser constant).
    static SampledSpace abs_diff_pow_k(double lo, double hi, double k, std::size_t grid, double tol = 1e-12)
    {
        return SampledSpace(lo, hi, grid, k, std::pow(2.0, k), tol);
    }

    std::vector<double> points() const
    {
        std::vector<double> pts(grid_);
        for (std::size_t i = 0; i < grid_; ++i)
            pts[i] = lo_ + (hi_ - lo_) * static_cast<double>(i) / static_cast<double>(grid_ - 1);
        return pts;
    }

    double distance(double x, double y) const { return std::pow(std::abs(x - y), k_); }
    double operator()(double x, double y) const { return distance(x, y); }

    double declared_s() const { return declared_s_; }
    double tolerance() const { return tol_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t grid() const { return grid_; }
    double k() const { return k_; }
    Formula formula() const { return Formula::abs_diff_pow_k; }

    bool contains(double x) const { return x >= lo_ - tol_ && x <= hi_ + tol_; }

    SampledSpace with_declared_s(double s) const
    {
        SampledSpace copy = *this;
        if (!(s >= 1)) throw ParameterError("declared coefficient s must be >= 1");
        copy.declared_s_ = s;
        return copy;
    }

private:
    double lo_;
    double hi_;
    std::size_t grid_;
    double k_;
    double declared_s_;
    double tol_;
};

/// Two metrics on the same point set.
struct MetricPair {
    FiniteSpace first;
    FiniteSpace second;

    MetricPair(FiniteSpace a, FiniteSpace b) : first(std::move(a)), second(std::move(b))
    {
        if (first.labels() != second.labels())
            throw PreconditionError("metric pair must share an identical point set");
    }
};

} // namespace pbm
