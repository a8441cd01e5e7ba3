#include "tcent/gf2.hpp"

#include <algorithm>

namespace tcent::gf2 {

bool Basis::insert(std::uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    int piv = std::countr_zero(v);
    // Clear the new pivot from existing rows to keep reduction canonical.
    for (auto& r : rows_)
        if ((r >> piv) & 1u) r ^= v;
    rows_.push_back(v);
    pivots_.push_back(piv);
    return true;
}

std::uint64_t Basis::reduce(std::uint64_t v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k)
        if ((v >> pivots_[k]) & 1u) v ^= rows_[k];
    return v;
}

int rank(const std::vector<std::uint64_t>& rows) {
    Basis b;
    for (auto r : rows) b.insert(r);
    return b.dim();
}

std::vector<int> pivot_positions(const std::vector<std::uint64_t>& rows) {
    Basis b;
    for (auto r : rows) b.insert(r);
    auto piv = b.pivots();
    std::sort(piv.begin(), piv.end());
    return piv;
}

std::vector<std::uint64_t> kernel_basis(const std::vector<std::uint64_t>& rows, int n_cols) {
    // Row-reduce the constraint matrix, tracking pivot columns, then read the
    // kernel off the free columns.
    std::vector<std::uint64_t> red;   // reduced rows
    std::vector<int> piv;             // pivot column of red[k]
    for (auto r : rows) {
        for (std::size_t k = 0; k < red.size(); ++k)
            if ((r >> piv[k]) & 1u) r ^= red[k];
        if (r == 0) continue;
        int p = std::countr_zero(r);
        for (std::size_t k = 0; k < red.size(); ++k)
            if ((red[k] >> p) & 1u) red[k] ^= r;
        red.push_back(r);
        piv.push_back(p);
    }
    std::vector<bool> is_pivot(n_cols, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<std::uint64_t> kernel;
    for (int f = 0; f < n_cols; ++f) {
        if (is_pivot[f]) continue;
        std::uint64_t x = std::uint64_t(1) << f;
        // x_p must cancel the free column's contribution in each pivot row.
        for (std::size_t k = 0; k < red.size(); ++k)
            if ((red[k] >> f) & 1u) x |= std::uint64_t(1) << piv[k];
        kernel.push_back(x);
    }
    return kernel;
}

std::vector<int> free_positions(const Basis& basis, int n_cols) {
    std::vector<bool> is_pivot(n_cols, false);
    for (int p : basis.pivots()) is_pivot[p] = true;
    std::vector<int> free;
    for (int i = 0; i < n_cols; ++i)
        if (!is_pivot[i]) free.push_back(i);
    return free;
}

std::uint64_t pack_bits(std::uint64_t v, const std::vector<int>& positions) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < positions.size(); ++k)
        out |= ((v >> positions[k]) & 1u) << k;
    return out;
}

std::uint64_t unpack_bits(std::uint64_t packed, const std::vector<int>& positions) {
    std::uint64_t out = 0;
    for (std::size_t k = 0; k < positions.size(); ++k)
        out |= ((packed >> k) & 1u) << positions[k];
    return out;
}

} // namespace tcent::gf2
