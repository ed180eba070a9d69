#pragma once

#include <set>
#include <utility>
#include <vector>

#include "polynomial.hpp"

namespace hts {

struct SamplePoint {
    Rational x;
    Rational y;
};

// Unique polynomial of degree < points.size() through all points (Newton form,
// then expanded). Exact.
inline Polynomial interpolate(const std::vector<SamplePoint>& points) {
    const std::size_t n = points.size();
    {
        std::set<Rational> seen;
        for (const auto& p : points) {
            if (!seen.insert(p.x).second) {
                throw DomainError("interpolate: duplicate abscissa " + to_string(p.x));
            }
        }
    }
    if (n == 0) return {};

    std::vector<Rational> dd(n);
    for (std::size_t i = 0; i < n; ++i) dd[i] = points[i].y;
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = n - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].x - points[i - level].x);
            if (i == level) break;
        }
    }

    // Horner on the Newton basis: c0 + (λ−x0)(c1 + (λ−x1)(c2 + ...)).
    std::vector<Rational> acc{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;) {
        // acc ← acc·(λ − x_i) + dd[i]
        std::vector<Rational> next(acc.size() + 1);
        for (std::size_t j = 0; j < acc.size(); ++j) {
            next[j + 1] += acc[j];
            next[j] -= acc[j] * points[i].x;
        }
        next[0] += dd[i];
        acc = std::move(next);
    }
    return Polynomial(std::move(acc));
}

}  // namespace hts
