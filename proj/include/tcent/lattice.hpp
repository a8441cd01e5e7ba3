// Square-lattice torus with spins on edges. Edge indexing, star and
// plaquette masks, non-contractible z-loop masks, bipartition helpers.
//
// Edge id = 2*(row*L + col) + orientation, orientation 0 = horizontal
// (from vertex (row,col) to (row,col+1)), 1 = vertical (to (row+1,col)).
// All coordinates wrap mod L. Edge sets are uint64_t bitmasks, so L <= 5.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tcent {

class TorusLattice {
  public:
    explicit TorusLattice(int L);

    int L() const { return L_; }
    int n_edges() const { return 2 * L_ * L_; }
    int n_vertices() const { return L_ * L_; }

    int edge_id(int row, int col, int orientation) const;
    // Star operator support at vertex v = row*L + col: the four incident edges.
    std::uint64_t star_mask(int v) const { return stars_[v]; }
    // Plaquette support for the cell whose top-left vertex is p = row*L + col.
    std::uint64_t plaquette_mask(int p) const { return plaquettes_[p]; }
    // Closed non-contractible sigma^z loops: all horizontal edges of one
    // vertex row (winds in x), all vertical edges of one column (winds in y).
    // These commute with every star and label the topological sector.
    std::uint64_t zloop_row(int row) const;
    std::uint64_t zloop_col(int col) const;
    std::uint64_t all_edges_mask() const { return all_edges_; }

  private:
    int L_;
    std::uint64_t all_edges_;
    std::vector<std::uint64_t> stars_, plaquettes_;
};

struct Bipartition {
    std::uint64_t a_mask = 0; // edges in subsystem A
    std::string label;        // comma-free description used in CSV output
};

enum class SubsystemKind { Thin, Bulk };

// Star census of a bipartition: interior-A stars have all four edges in A,
// interior-B stars none, boundary stars some but not all.
struct BipartitionClass {
    int n_a = 0;
    int n_b = 0;
    int n_boundary = 0;
    SubsystemKind kind = SubsystemKind::Thin; // Thin iff n_a == 0
};

BipartitionClass classify_bipartition(const TorusLattice& lat, const Bipartition& bip);

Bipartition make_plaquette_bipartition(const TorusLattice& lat, int p);
// Union of the edge sets of two stars (7 edges when the stars are adjacent).
Bipartition make_two_star_bipartition(const TorusLattice& lat, int v1, int v2);
Bipartition make_edges_bipartition(const TorusLattice& lat, const std::vector<int>& edges);
Bipartition make_mask_bipartition(const TorusLattice& lat, std::uint64_t a_mask);
Bipartition complement_bipartition(const TorusLattice& lat, const Bipartition& bip);

// Parses "plaquette:P", "two_star:V1-V2", "edges:E1-E2-...", "mask:HEX".
Bipartition parse_bipartition(const TorusLattice& lat, const std::string& text);

} // namespace tcent
