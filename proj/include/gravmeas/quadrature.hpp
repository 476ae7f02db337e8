#pragma once

#include <cstddef>
#include <vector>

namespace gravmeas::quad {

// Composite Simpson over uniformly sampled values; odd interval counts close
// with the 3/8 rule on the last three cells (trapezoid for a single cell).
// Fourth order on smooth integrands.
template <typename V>
V integrate_samples(const std::vector<V>& f, double h) {
    const size_t n = f.size();
    const size_t intervals = n - 1;
    V acc = V(0.0);
    if (intervals == 1) return (h / 2.0) * (f[0] + f[1]);
    size_t m = intervals;
    bool tail38 = false;
    if (intervals % 2 != 0) {
        m = intervals - 3;
        tail38 = true;
    }
    for (size_t i = 0; i + 2 <= m; i += 2)
        acc += (h / 3.0) * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
    if (tail38) {
        const size_t k = m;
        acc += (3.0 * h / 8.0) * (f[k] + 3.0 * f[k + 1] + 3.0 * f[k + 2] + f[k + 3]);
    }
    return acc;
}

// Node weights reproducing integrate_samples as a weighted sum.
inline std::vector<double> sample_weights(size_t n, double h) {
    std::vector<double> w(n, 0.0);
    const size_t intervals = n - 1;
    if (intervals == 1) {
        w[0] = w[1] = h / 2.0;
        return w;
    }
    size_t m = intervals;
    bool tail38 = false;
    if (intervals % 2 != 0) {
        m = intervals - 3;
        tail38 = true;
    }
    for (size_t i = 0; i + 2 <= m; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (tail38) {
        w[m] += 3.0 * h / 8.0;
        w[m + 1] += 9.0 * h / 8.0;
        w[m + 2] += 9.0 * h / 8.0;
        w[m + 3] += 3.0 * h / 8.0;
    }
    return w;
}

// Cumulative integral P[k] over [t0, tk]; even k is plain Simpson, odd k
// closes the last cell with the local quadratic through three neighbours.
template <typename V>
std::vector<V> integrate_prefix(const std::vector<V>& f, double h) {
    const size_t n = f.size();
    std::vector<V> p(n, V(0.0));
    for (size_t k = 2; k < n; k += 2)
        p[k] = p[k - 2] + (h / 3.0) * (f[k - 2] + 4.0 * f[k - 1] + f[k]);
    if (n > 2) p[1] = (h / 12.0) * (5.0 * f[0] + 8.0 * f[1] - f[2]);
    for (size_t k = 3; k < n; k += 2)
        p[k] = p[k - 1] + (h / 12.0) * (-f[k - 2] + 8.0 * f[k - 1] + 5.0 * f[k]);
    return p;
}

}  // namespace gravmeas::quad
