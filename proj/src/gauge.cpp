#include "tcent/gauge.hpp"

#include <bit>

#include "tcent/util.hpp"

namespace tcent {

std::uint64_t group_edge_mask(const TorusLattice& lat, std::uint32_t gen_mask) {
    std::uint64_t m = 0;
    while (gen_mask) {
        int s = std::countr_zero(gen_mask);
        gen_mask &= gen_mask - 1;
        m ^= lat.star_mask(s);
    }
    return m;
}

std::vector<GroupElement> enumerate_group(const TorusLattice& lat) {
    if (lat.L() > 4)
        throw CapacityError("enumerate_group: 2^(L^2-1) elements exceed the L <= 4 guard; "
                            "use the coset accumulators / closed forms instead");
    int ng = n_generators(lat);
    std::size_t n = std::size_t(1) << ng;
    std::vector<GroupElement> out(n);
    out[0] = {0, 0, 0};
    for (std::size_t m = 1; m < n; ++m) {
        // Incremental XOR off the previous element sharing all but the lowest bit.
        int s = std::countr_zero(m);
        std::uint64_t edges = out[m & (m - 1)].edge_mask ^ lat.star_mask(s);
        out[m] = {static_cast<std::uint32_t>(m), edges, std::popcount(edges)};
    }
    return out;
}

SubgroupSpec subgroup_spec(const TorusLattice& lat, const Bipartition& bip) {
    if (bip.a_mask == 0 || bip.a_mask == lat.all_edges_mask())
        throw DomainError("subgroup_spec: bipartition must be proper");
    SubgroupSpec spec;
    spec.a_mask = bip.a_mask;
    int ng = n_generators(lat);

    for (int v = 0; v < lat.n_vertices(); ++v) {
        std::uint64_t in_a = lat.star_mask(v) & bip.a_mask;
        if (in_a == lat.star_mask(v))
            spec.interior_a_stars.push_back(v);
        else if (in_a == 0)
            spec.interior_b_stars.push_back(v);
    }

    // G_A = generator masks whose flipped edges avoid B. One parity
    // constraint per B edge: the set of stars containing that edge.
    auto side_kernel = [&](std::uint64_t avoid_mask) {
        std::vector<std::uint64_t> constraints;
        while (avoid_mask) {
            int e = std::countr_zero(avoid_mask);
            avoid_mask &= avoid_mask - 1;
            std::uint64_t row = 0;
            for (int s = 0; s < ng; ++s)
                if ((lat.star_mask(s) >> e) & 1u) row |= std::uint64_t(1) << s;
            constraints.push_back(row);
        }
        return gf2::kernel_basis(constraints, ng);
    };
    std::uint64_t b_mask = lat.all_edges_mask() & ~bip.a_mask;
    for (auto v : side_kernel(b_mask)) {
        spec.ga_basis.push_back(static_cast<std::uint32_t>(v));
        spec.ga_basis_edges.push_back(group_edge_mask(lat, static_cast<std::uint32_t>(v)));
    }
    for (auto v : side_kernel(bip.a_mask)) {
        spec.gb_basis.push_back(static_cast<std::uint32_t>(v));
        spec.gb_basis_edges.push_back(group_edge_mask(lat, static_cast<std::uint32_t>(v)));
    }
    spec.dim_ga = static_cast<int>(spec.ga_basis.size());
    spec.dim_gb = static_cast<int>(spec.gb_basis.size());

    // Z_A: pivots of the star-support matrix restricted to A columns. The
    // quotient kernel (A-supported z-strings orthogonal to every star) is
    // spanned by plaquettes and, for wrapping subsystems, z-logicals inside A;
    // subsets of the pivot edges hit each surviving class exactly once.
    std::vector<std::uint64_t> star_rows_on_a;
    for (int v = 0; v < lat.n_vertices(); ++v)
        star_rows_on_a.push_back(lat.star_mask(v) & bip.a_mask);
    spec.za_pivot_edges = gf2::pivot_positions(star_rows_on_a);
    spec.dim_za = static_cast<int>(spec.za_pivot_edges.size());
    return spec;
}

double subgroup_alternating_sum(const SubgroupSpec& spec, Side side, std::uint64_t z_mask) {
    const auto& edges = (side == Side::A) ? spec.ga_basis_edges : spec.gb_basis_edges;
    for (auto m : edges)
        if (overlap_parity(m, z_mask)) return 0.0;
    return std::ldexp(1.0, static_cast<int>(edges.size()));
}

CosetIndexer::CosetIndexer(const TorusLattice& lat, const SubgroupSpec& spec) {
    for (auto v : spec.ga_basis) joint_.insert(v);
    for (auto v : spec.gb_basis) joint_.insert(v);
    free_ = gf2::free_positions(joint_, n_generators(lat));
}

std::size_t CosetIndexer::index(std::uint32_t gen_mask) const {
    // The reduced form has support only on free positions, and equals for two
    // masks exactly when they differ by an element of G_A x G_B.
    return gf2::pack_bits(joint_.reduce(gen_mask), free_);
}

std::vector<GroupElement> CosetIndexer::representatives(const TorusLattice& lat) const {
    std::vector<GroupElement> reps(n_cosets());
    for (std::size_t q = 0; q < reps.size(); ++q) {
        auto gm = static_cast<std::uint32_t>(gf2::unpack_bits(q, free_));
        std::uint64_t em = group_edge_mask(lat, gm);
        reps[q] = {gm, em, std::popcount(em)};
    }
    return reps;
}

std::vector<GroupElement> coset_representatives(const TorusLattice& lat, const SubgroupSpec& spec) {
    return CosetIndexer(lat, spec).representatives(lat);
}

} // namespace tcent
