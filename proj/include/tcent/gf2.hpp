// GF(2) linear algebra on bitmask-encoded vectors (one uint64_t per vector,
// bit i = coordinate i). Everything the group/coset machinery needs: reduced
// bases, ranks, parity-constraint kernels, pivot extraction.
#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace tcent::gf2 {

inline int parity(std::uint64_t v) { return std::popcount(v) & 1; }

// Reduced (RREF-like) basis: every stored row owns a distinct pivot bit and
// that pivot bit is cleared from all other rows, so reduce() is canonical.
class Basis {
  public:
    // Reduces v against the basis and inserts the remainder if nonzero.
    // Returns true when the basis grew.
    bool insert(std::uint64_t v);
    // Canonical representative of v modulo the span (zero iff v in span).
    std::uint64_t reduce(std::uint64_t v) const;
    bool contains(std::uint64_t v) const { return reduce(v) == 0; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

  private:
    std::vector<std::uint64_t> rows_;
    std::vector<int> pivots_; // pivot bit index of rows_[k]
};

int rank(const std::vector<std::uint64_t>& rows);

// Pivot bit positions (ascending) of the row space of `rows`.
std::vector<int> pivot_positions(const std::vector<std::uint64_t>& rows);

// Kernel basis of the parity map x -> (parity(rows[j] & x))_j on n columns:
// all x in F_2^n with even overlap against every row.
std::vector<std::uint64_t> kernel_basis(const std::vector<std::uint64_t>& rows, int n_cols);

// Bit positions (ascending) in [0, n_cols) that are not pivots of the span;
// unit vectors there complete the span to the full space.
std::vector<int> free_positions(const Basis& basis, int n_cols);

// Packs the bits of v found at `positions` (ascending) into a dense integer.
std::uint64_t pack_bits(std::uint64_t v, const std::vector<int>& positions);

// Inverse of pack_bits: spreads the low bits of `packed` to `positions`.
std::uint64_t unpack_bits(std::uint64_t packed, const std::vector<int>& positions);

} // namespace tcent::gf2
