#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace reslab::detail {

// Chebyshev nodes of the first kind on [-r, r]; none at 0 for even counts
inline std::vector<double> chebyshev_nodes(double r, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = r * std::cos(std::numbers::pi * (i + 0.5) / n);
    return x;
}

// monomial coefficients in u of the interpolant through values at chebyshev_nodes(r, n)
template <class V>
std::vector<V> chebyshev_to_monomials(const std::vector<V>& values, double r) {
    const int n = static_cast<int>(values.size());
    std::vector<V> cheb(n);
    for (int k = 0; k < n; ++k) {
        V acc = 0;
        for (int i = 0; i < n; ++i) acc += values[i] * std::cos(std::numbers::pi * k * (i + 0.5) / n);
        cheb[k] = acc * ((k == 0 ? 1.0 : 2.0) / n);
    }
    std::vector<V> mono(n, V(0));
    std::vector<double> prev(n, 0.0), cur(n, 0.0), next(n, 0.0);
    prev[0] = 1;
    for (int j = 0; j < n; ++j) mono[j] += cheb[0] * prev[j];
    if (n > 1) {
        cur[1] = 1;
        for (int j = 0; j < n; ++j) mono[j] += cheb[1] * cur[j];
    }
    for (int k = 2; k < n; ++k) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int j = 0; j + 1 < n; ++j) next[j + 1] += 2 * cur[j];
        for (int j = 0; j < n; ++j) next[j] -= prev[j];
        for (int j = 0; j < n; ++j) mono[j] += cheb[k] * next[j];
        std::swap(prev, cur);
        std::swap(cur, next);
    }
    double scale = 1;
    for (int j = 0; j < n; ++j) {
        mono[j] /= scale;
        scale *= r;
    }
    return mono;
}

}  // namespace reslab::detail
