#include "latflow/vec.hpp"

#include <utility>

namespace latflow {

double MatN::det() const {
    // LU with partial pivoting on a scratch copy.
    std::array<double, 16> a = m;
    auto e = [&](int i, int j) -> double& { return a[j * 4 + i]; };
    double sign = 1.0;
    for (int k = 0; k < dim; ++k) {
        int piv = k;
        for (int i = k + 1; i < dim; ++i)
            if (std::abs(e(i, k)) > std::abs(e(piv, k))) piv = i;
        if (piv != k) {
            for (int j = 0; j < dim; ++j) std::swap(e(k, j), e(piv, j));
            sign = -sign;
        }
        if (e(k, k) == 0.0) return 0.0;
        for (int i = k + 1; i < dim; ++i) {
            const double f = e(i, k) / e(k, k);
            for (int j = k; j < dim; ++j) e(i, j) -= f * e(k, j);
        }
    }
    double d = sign;
    for (int k = 0; k < dim; ++k) d *= e(k, k);
    return d;
}

MatN MatN::inverse() const {
    std::array<double, 16> a = m;
    MatN inv = MatN::identity(dim);
    auto e = [&](int i, int j) -> double& { return a[j * 4 + i]; };
    for (int k = 0; k < dim; ++k) {
        int piv = k;
        for (int i = k + 1; i < dim; ++i)
            if (std::abs(e(i, k)) > std::abs(e(piv, k))) piv = i;
        if (std::abs(e(piv, k)) < 1e-300) throw std::domain_error("MatN::inverse: singular matrix");
        if (piv != k)
            for (int j = 0; j < dim; ++j) {
                std::swap(e(k, j), e(piv, j));
                std::swap(inv.at(k, j), inv.at(piv, j));
            }
        const double p = e(k, k);
        for (int j = 0; j < dim; ++j) {
            e(k, j) /= p;
            inv.at(k, j) /= p;
        }
        for (int i = 0; i < dim; ++i) {
            if (i == k) continue;
            const double f = e(i, k);
            if (f == 0.0) continue;
            for (int j = 0; j < dim; ++j) {
                e(i, j) -= f * e(k, j);
                inv.at(i, j) -= f * inv.at(k, j);
            }
        }
    }
    return inv;
}

}  // namespace latflow
