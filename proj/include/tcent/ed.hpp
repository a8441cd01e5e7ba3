// Brute-force exact diagonalization of small perturbed toric-code tori and a
// site-based cluster-stabilizer model. Supplies ground states with
// topological-sector selection, entanglement spectra, and Renyi entropies;
// this is the ground-truth oracle the closed-form modules are tested against.
//
// Two bases are supported. The full computational z-basis (dimension
// 2^n_qubits, capacity-guarded at 18 qubits) works for every perturbation,
// including the gauge-breaking ones. The gauge-reduced basis spans the
// plaquette-fixed sector with both non-contractible z-loop labels +1: basis
// states are g|all-up> indexed by the star-generator mask of g, dimension
// 2^(L^2-1), valid only for perturbations that commute with every plaquette.
#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tcent/lattice.hpp"

namespace tcent {

// Rectangular vertex torus (lx columns by ly rows) with spins on the
// 2*lx*ly edges. Edge id = 2*(row*lx + col) + orientation, orientation
// 0 = horizontal (toward col+1), 1 = vertical (toward row+1); coordinates
// wrap. RectTorus(L, L) matches TorusLattice(L) mask for mask.
class RectTorus {
  public:
    RectTorus(int lx, int ly);

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int n_vertices() const { return lx_ * ly_; }
    int n_edges() const { return 2 * lx_ * ly_; }

    int edge_id(int row, int col, int orientation) const;
    std::uint64_t star_mask(int v) const { return stars_[static_cast<std::size_t>(v)]; }
    std::uint64_t plaquette_mask(int p) const { return plaquettes_[static_cast<std::size_t>(p)]; }
    // Non-contractible sigma^z loops labelling the topological sector.
    std::uint64_t zloop_row(int row) const;
    std::uint64_t zloop_col(int col) const;
    // Edge displaced by a whole lattice vector (same orientation).
    int shifted_edge(int e, int drow, int dcol) const;

  private:
    int lx_, ly_;
    std::vector<std::uint64_t> stars_, plaquettes_;
};

// One product of Pauli operators with a real coefficient:
//   coeff * prod_{i in x_mask} sigma^x_i * prod_{j in z_mask} sigma^z_j.
// The masks are disjoint in every model built here, so each term is
// Hermitian as written and acts on a z-basis state |b> as
//   (-1)^{popcount(b & z_mask)} |b ^ x_mask>.
struct PauliTerm {
    double coeff = 0.0;
    std::uint64_t x_mask = 0;
    std::uint64_t z_mask = 0;
};

enum class PerturbationKind {
    ExpStar,    // sum_s exp(-lambda * sum_{i in s} sigma^z_i), gauge invariant
    RowField,   // -lambda * sum over horizontal edges of sigma^z, gauge invariant
    EdgeIsing,  // -sum_{i, mu in {x,y}} (lambda_x XX + lambda_z ZZ) on edge pairs (i, i+mu)
    Cluster,    // site model: -sum_i (neighbors' z's)*x_i - lambda*sum_{i,mu}(XX + 0.5 ZZ)
};

struct Perturbation {
    PerturbationKind kind = PerturbationKind::RowField;
    double lambda = 0.0;    // ExpStar / RowField / Cluster strength
    double lambda_x = 0.0;  // EdgeIsing XX coupling
    double lambda_z = 0.0;  // EdgeIsing ZZ coupling
};

Perturbation exp_star_perturbation(double lambda);
Perturbation row_field_perturbation(double lambda);
Perturbation edge_ising_perturbation(double lambda_x, double lambda_z);
Perturbation cluster_perturbation(double lambda);

enum class EdBasis { Full, Gauge };

// Geometry plus perturbation plus basis choice. For edge models (ExpStar,
// RowField, EdgeIsing) lx/ly are vertex-grid dimensions and the qubits are
// the 2*lx*ly edges; for Cluster they are site-grid dimensions and the
// qubits are the lx*ly sites themselves. The gauge basis additionally
// requires a square torus (lx == ly) and a gauge-invariant perturbation.
struct HamiltonianSpec {
    int lx = 2;
    int ly = 2;
    Perturbation pert;
    EdBasis basis = EdBasis::Full;
};

// Built operator. Full basis: complete Pauli term list (kept for inspection
// and exact commutator checks) with all diagonal terms folded into a dense
// diagonal vector and the flip terms separated for the matvec. Gauge basis:
// star flips act as single-generator-bit flips (the dependent star flips all
// bits) with coefficient -1, and every remaining term is diagonal.
struct Hamiltonian {
    HamiltonianSpec spec;
    int n_qubits = 0;     // physical qubits (edges or sites)
    int n_generators = 0; // gauge basis only: L^2 - 1
    Eigen::Index dim = 0;

    std::vector<PauliTerm> terms;    // full basis: every term of H
    std::vector<PauliTerm> offdiag;  // full basis: terms with x_mask != 0
    std::vector<std::uint32_t> gauge_flips; // gauge basis: generator-mask flips
    Eigen::VectorXd diagonal;        // diagonal part in the active basis

    void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const; // y = H x
    Eigen::MatrixXd dense() const;   // guarded at dim <= 4096
};

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec);

// Expectation targets for the two non-contractible sigma^z loop operators
// that label the topological sector. A target of 0 leaves that label
// unconstrained (it neither gates eligibility nor enters the score); the
// expectation is still reported. Models without such sectors (the cluster
// model) disable selection and require a non-degenerate ground state.
struct SectorSelector {
    bool use_sectors = true;
    std::uint64_t w1_mask = 0;
    std::uint64_t w2_mask = 0;
    double target_w1 = 1.0;
    double target_w2 = 1.0;
};

// Both loop labels +1: the sector containing the all-up base state. For the
// edge Ising model on a non-square lattice the label whose conjugate loop
// fits in the length-2 direction is left unconstrained (it is identically
// zero there for any nonzero coupling).
SectorSelector positive_loop_sector(const HamiltonianSpec& spec);

struct EdOptions {
    int n_eigenpairs = 8;          // size of the computed low-energy block
    double tol = 1e-10;            // iterative-solver residual tolerance
    int max_iterations = 4000;
    std::uint64_t seed = 0x5eed1234abcd77ULL;
    double block_window = 0.5;     // energy window above E0 scanned for sector candidates
    double degeneracy_tol = 1e-8;  // eigenvalues closer than this form one degenerate cluster
    double tie_threshold = 1e-6;   // score tie that makes sector selection ambiguous
    double min_loop_expectation = 0.5;
    bool force_iterative = false;  // test hook: use the iterative path below the dense cutoff
};

struct EigenPairs {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns match values
};

// Lowest eigenpairs of the built operator: dense solve up to dimension 2048,
// locally optimal block preconditioned conjugate gradient (block 8) above.
EigenPairs lowest_eigenpairs(const Hamiltonian& h, int nev, const EdOptions& opts = {});

struct GroundStateResult {
    Eigen::VectorXd psi;   // normalized, expressed in the Hamiltonian's basis
    double energy = 0.0;
    double w1 = 0.0;       // loop expectations of the selected state; exactly 1
    double w2 = 0.0;       //   in the gauge basis, left at 0 for the cluster model
    double min_plaquette = 0.0;       // min_p <B_p>; as above
    std::vector<double> low_energies; // computed low-energy block, ascending
};

// Lowest state in the requested sector. Candidates are the eigenvectors
// within block_window of the bottom of the spectrum, visited as degenerate
// clusters in energy order; each cluster is rotated to definite loop labels
// and the first cluster with a candidate matching the target signs selects
// the one maximizing |<W1>| + |<W2>| over the constrained labels. Ties
// within tie_threshold and plaquette or loop expectations below
// min_loop_expectation raise a domain error instead of a silent choice.
GroundStateResult ground_state(const Hamiltonian& h, const SectorSelector& sector,
                               const EdOptions& opts = {});

struct EntanglementSpectrum {
    Eigen::VectorXd values; // sorted descending, clipped at -1e-12 then max(., 0)
};

int support_size(const EntanglementSpectrum& spec, double threshold = 1e-10);

// Reduced-density-matrix spectrum of a pure state in the full z-basis over
// n_qubits qubits; a_mask selects the qubits kept in A. Internally works on
// the smaller side of the cut (the nonzero spectrum is side-symmetric).
EntanglementSpectrum entanglement_spectrum_full(const Eigen::VectorXd& psi, int n_qubits,
                                                std::uint64_t a_mask);

// Same for a gauge-basis state (indexed by star-generator mask); a_mask is
// an edge mask. Exploits sparsity: only 2^(L^2-1) basis states are occupied,
// so the reduced matrix is accumulated from B-side collision buckets.
EntanglementSpectrum entanglement_spectrum_gauge(const Eigen::VectorXd& psi,
                                                 const TorusLattice& lat, std::uint64_t a_mask);

// Dispatch on the Hamiltonian's basis.
EntanglementSpectrum entanglement_spectrum(const Hamiltonian& h, const Eigen::VectorXd& psi,
                                           std::uint64_t a_mask);

// (1/(1-alpha)) log sum nu^alpha with the alpha = 0 (log support size,
// threshold 1e-10) and alpha = 1 (von Neumann) limits; natural logarithm.
double renyi_from_spectrum(const EntanglementSpectrum& nu, double alpha);

// Expand a gauge-basis state to the full z-basis (dimension 2^(2L^2)).
Eigen::VectorXd to_full_state(const Eigen::VectorXd& gauge_psi, const TorusLattice& lat);

// <psi| prod_{j in z_mask} sigma^z_j |psi> for a full-basis state.
double diagonal_z_expectation(const Eigen::VectorXd& psi, std::uint64_t z_mask);
// <psi| prod_{i in x_mask} sigma^x_i |psi> for a full-basis state.
double x_string_expectation(const Eigen::VectorXd& psi, std::uint64_t x_mask);
// <psi| (prod of stars in gen_mask) * (prod_{j in z_mask} sigma^z_j) |psi>
// for a gauge-basis state.
double gauge_expectation(const Eigen::VectorXd& gauge_psi, const TorusLattice& lat,
                         std::uint32_t gen_mask, std::uint64_t z_mask);

// Contiguous block of sites on an nx-by-ny site torus (cluster bipartitions).
std::uint64_t site_block_mask(int nx, int ny, int row0, int col0, int height, int width);

} // namespace tcent
