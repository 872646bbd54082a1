#include "latflow/lattice.hpp"

#include <algorithm>

#include "latflow/errors.hpp"
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace latflow {

namespace {

// Integer column operations mirrored onto the transform T, so that at any
// point the working columns equal original_basis * T.
struct ReductionState {
    MatN b;                              // working basis
    std::array<std::array<long long, 4>, 4> t{};  // t[j] = column j of T

    explicit ReductionState(const MatN& basis) : b(basis) {
        for (int j = 0; j < basis.dim; ++j) t[j][j] = 1;
    }
    void axpy(int dst, long long m, int src) {  // col_dst -= m * col_src
        for (int i = 0; i < b.dim; ++i) b.at(i, dst) -= static_cast<double>(m) * b.at(i, src);
        for (int i = 0; i < b.dim; ++i) t[dst][i] -= m * t[src][i];
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < b.dim; ++k) std::swap(b.at(k, i), b.at(k, j));
        std::swap(t[i], t[j]);
    }
    double col_norm2(int j) const {
        double s = 0.0;
        for (int i = 0; i < b.dim; ++i) s += b.at(i, j) * b.at(i, j);
        return s;
    }
    double col_dot(int i, int j) const {
        double s = 0.0;
        for (int k = 0; k < b.dim; ++k) s += b.at(k, i) * b.at(k, j);
        return s;
    }
};

// Lagrange reduction in 2D; pairwise size-reduction sweeps in 3D/4D. Either
// way the result generates the same lattice and is well conditioned enough
// to keep the enumeration box small.
ReductionState reduce_basis(const MatN& basis) {
    ReductionState st(basis);
    const int d = basis.dim;
    if (d == 2) {
        if (st.col_norm2(0) < st.col_norm2(1)) st.swap_cols(0, 1);
        for (int iter = 0; iter < 64; ++iter) {
            const auto m = static_cast<long long>(std::llround(st.col_dot(0, 1) / st.col_norm2(1)));
            if (m != 0) st.axpy(0, m, 1);
            if (st.col_norm2(0) >= st.col_norm2(1)) break;
            st.swap_cols(0, 1);
        }
        if (st.col_norm2(0) < st.col_norm2(1)) st.swap_cols(0, 1);
        return st;
    }
    for (int sweep = 0; sweep < 64; ++sweep) {
        bool changed = false;
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                if (j == k) continue;
                const auto m =
                    static_cast<long long>(std::llround(st.col_dot(j, k) / st.col_norm2(k)));
                if (m != 0) {
                    st.axpy(j, m, k);
                    changed = true;
                }
            }
        // Keep columns sorted by length so reductions use the shortest pivots.
        for (int j = 0; j + 1 < d; ++j)
            for (int k = j + 1; k < d; ++k)
                if (st.col_norm2(k) < st.col_norm2(j)) {
                    st.swap_cols(j, k);
                    changed = true;
                }
        if (!changed) break;
    }
    return st;
}

}  // namespace

Lattice Lattice::from_basis(const MatN& b) {
    if (b.dim < 2 || b.dim > 4) throw std::invalid_argument("lattice dimension must be 2, 3, or 4");
    const double d = std::abs(b.det());
    if (!(d > 1e-12)) throw std::invalid_argument("lattice basis is singular or too ill conditioned");
    return Lattice{b, d};
}

Lattice Lattice::from_basis2(const Mat2& b) { return from_basis(MatN::from_mat2(b)); }

Mat2 Lattice::basis2() const {
    if (basis.dim != 2) throw std::invalid_argument("basis2 requires a 2D lattice");
    return Mat2{basis.at(0, 0), basis.at(0, 1), basis.at(1, 0), basis.at(1, 1)};
}

ShortestVectorResult shortest_vector(const Lattice& lattice, const NormDescriptor& norm) {
    const int d = lattice.dim();
    if (norm.dim != d) throw std::invalid_argument("norm and lattice dimensions differ");

    const ReductionState st = reduce_basis(lattice.basis);
    const MatN inv = st.b.inverse();

    // Upper bound for the minimum: the best reduced column.
    double best = 0.0;
    for (int j = 0; j < d; ++j) {
        const auto c = st.b.col(j);
        const double v = norm.evaluate(std::span<const double>(c.data(), d));
        if (j == 0 || v < best) best = v;
    }

    // Any candidate with norm <= best has Euclidean length <= best / kappa1,
    // hence integer coordinate |a_i| <= |row_i(B^-1)| * best / kappa1.
    const double reach = best / norm.equivalence_constants().lower;
    std::array<long long, 4> bound{};
    double box = 1.0;
    for (int i = 0; i < d; ++i) {
        double row2 = 0.0;
        for (int j = 0; j < d; ++j) row2 += inv.at(i, j) * inv.at(i, j);
        bound[i] = static_cast<long long>(std::ceil(reach * std::sqrt(row2) - 1e-12)) + 1;
        box *= static_cast<double>(2 * bound[i] + 1);
    }
    if (box > 5e7) throw NumericError("shortest_vector: basis too skewed to enumerate");

    ShortestVectorResult res;
    res.length = std::numeric_limits<double>::infinity();
    std::array<long long, 4> a{};
    for (int i = 0; i < d; ++i) a[i] = -bound[i];
    while (true) {
        // Half-space dedup: keep representatives whose first nonzero entry is positive.
        int first = -1;
        for (int i = 0; i < d; ++i)
            if (a[i] != 0) {
                first = i;
                break;
            }
        if (first >= 0 && a[first] > 0) {
            std::array<double, 4> pt{};
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) pt[i] += st.b.at(i, j) * static_cast<double>(a[j]);
            const double v = norm.evaluate(std::span<const double>(pt.data(), d));
            if (v < res.length) {
                res.length = v;
                res.point = pt;
                for (int i = 0; i < d; ++i) {
                    long long c = 0;
                    for (int j = 0; j < d; ++j) c += st.t[j][i] * a[j];
                    res.coeffs[i] = c;
                }
            }
        }
        int k = 0;
        while (k < d && a[k] == bound[k]) {
            a[k] = -bound[k];
            ++k;
        }
        if (k == d) break;
        ++a[k];
    }
    return res;
}

double delta(const Lattice& lattice, const NormDescriptor& norm, double critical_det) {
    if (!(critical_det > 0.0)) throw std::invalid_argument("critical determinant must be positive");
    const double d = static_cast<double>(lattice.dim());
    const double lambda1 = shortest_vector(lattice, norm).length;
    return std::pow(critical_det, 1.0 / d) * lambda1 / std::pow(lattice.covol, 1.0 / d);
}

bool in_target(const Lattice& lattice, const NormDescriptor& norm, double critical_det, double r) {
    if (r > 1.0 + 1e-9) return false;
    return delta(lattice, norm, critical_det) >= r;
}

}  // namespace latflow
