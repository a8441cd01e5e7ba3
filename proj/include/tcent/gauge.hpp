// The star group G on a torus: all products of star operators modulo the
// global relation (product of all stars = identity). Elements are encoded by
// generator masks over the first L^2 - 1 stars; the map to flipped-edge masks
// is injective. Subgroup data for a bipartition (edge-supported subgroups
// G_A, G_B, the reduced z-string family Z_A) is computed with GF(2) kernels
// so it stays correct for arbitrary, even wrapping or disconnected, subsystems.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "tcent/gf2.hpp"
#include "tcent/lattice.hpp"

namespace tcent {

struct GroupElement {
    std::uint32_t gen_mask = 0;  // bit s = star s applied, s < L^2 - 1
    std::uint64_t edge_mask = 0; // edges flipped by the element
    int length = 0;              // flipped-spin count L(g) = popcount(edge_mask)
};

// Number of independent star generators.
inline int n_generators(const TorusLattice& lat) { return lat.n_vertices() - 1; }

// Flipped-edge mask of a generator mask.
std::uint64_t group_edge_mask(const TorusLattice& lat, std::uint32_t gen_mask);

inline int loop_length(std::uint64_t edge_mask) { return std::popcount(edge_mask); }
inline int overlap_parity(std::uint64_t a, std::uint64_t b) { return std::popcount(a & b) & 1; }

// All 2^(L^2-1) elements, identity first, then in generator-mask order.
// Guarded at L <= 4; larger tori must use the coset accumulators that never
// materialize the group.
std::vector<GroupElement> enumerate_group(const TorusLattice& lat);

struct SubgroupSpec {
    std::uint64_t a_mask = 0;
    // Interior star ids (all four edges on one side). These generate G_A/G_B
    // for subsystems with connected complements; the kernel bases below are
    // authoritative in general.
    std::vector<int> interior_a_stars, interior_b_stars;
    // Kernel bases in generator-mask space: G_A = span(ga_basis) etc.
    std::vector<std::uint32_t> ga_basis, gb_basis;
    // Flipped-edge masks of the basis vectors, same order.
    std::vector<std::uint64_t> ga_basis_edges, gb_basis_edges;
    // Z_A: single z-flips on these pivot edges generate the quotient of
    // A-supported z-strings by the subgroup acting as identity on the sector;
    // the 2^dim_za subsets enumerate Z_A without repetition.
    std::vector<int> za_pivot_edges;
    int dim_ga = 0, dim_gb = 0, dim_za = 0; // log2 subgroup sizes

    double size_ga() const { return std::ldexp(1.0, dim_ga); }
    double size_gb() const { return std::ldexp(1.0, dim_gb); }
    double size_za() const { return std::ldexp(1.0, dim_za); }
};

SubgroupSpec subgroup_spec(const TorusLattice& lat, const Bipartition& bip);

// Sum of (-1)^{overlap(Phi(g), z)} over g in the chosen subgroup: zero when
// z has odd overlap with any basis element's edge mask, else the subgroup size.
enum class Side { A, B };
double subgroup_alternating_sum(const SubgroupSpec& spec, Side side, std::uint64_t z_mask);

// Canonical coset indexing for G / (G_A x G_B).
class CosetIndexer {
  public:
    CosetIndexer(const TorusLattice& lat, const SubgroupSpec& spec);
    std::size_t n_cosets() const { return std::size_t(1) << free_.size(); }
    std::size_t index(std::uint32_t gen_mask) const;
    // One representative per coset, indexed consistently with index().
    std::vector<GroupElement> representatives(const TorusLattice& lat) const;

  private:
    gf2::Basis joint_;       // span of ga_basis and gb_basis
    std::vector<int> free_;  // generator positions not pivoted by the span
};

std::vector<GroupElement> coset_representatives(const TorusLattice& lat, const SubgroupSpec& spec);

} // namespace tcent
