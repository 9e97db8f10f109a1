#pragma once

#include <algorithm>

namespace qcurve::numerics {

template <typename V>
std::size_t QuinticHermite<V>::interval(double x) const {
    if (t_.size() < 2) return 0;
    const auto it = std::upper_bound(t_.begin(), t_.end(), x);
    std::size_t i = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
    return std::min(i, t_.size() - 2);
}

template <typename V>
V QuinticHermite<V>::eval(double x, int order) const {
    const std::size_t i = interval(x);
    const double h = t_[i + 1] - t_[i];
    const double u = (x - t_[i]) / h;
    HermiteWeights b;
    double scale = 1.0;
    switch (order) {
        case 0: b = quintic_hermite_basis(u); break;
        case 1: b = quintic_hermite_basis_du(u); scale = 1.0 / h; break;
        default: b = quintic_hermite_basis_du2(u); scale = 1.0 / (h * h); break;
    }
    V r = b.w[0] * f_[i];
    r += (b.w[1] * h) * df_[i];
    r += (b.w[2] * h * h) * d2f_[i];
    r += b.w[3] * f_[i + 1];
    r += (b.w[4] * h) * df_[i + 1];
    r += (b.w[5] * h * h) * d2f_[i + 1];
    return scale * r;
}

}  // namespace qcurve::numerics
