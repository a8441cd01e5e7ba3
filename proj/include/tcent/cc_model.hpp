// Closed-form entanglement data for the deformed toric-code ground state
// whose amplitudes are exp((lambda/2) sum_i sigma_z_i(g)) on the loop basis.
// Since sum_i sigma_z_i(g) = N - 2 L(g), the probability weight of g is
// exp(-lambda E_g) with E_g = 2 L(g): the weight exponent carries twice the
// flipped-spin count (amplitude squared). All partition sums, derivatives,
// and asymptotics below use that convention so they describe the same state
// the constructor builds, at the same lambda. The critical coupling of the
// associated 2D Ising measure then sits at ln(1+sqrt(2))/2 = 0.4407, matching
// the known transition point of this deformation.
#pragma once

#include <cstdint>
#include <vector>

#include "tcent/gauge.hpp"
#include "tcent/lattice.hpp"

namespace tcent {

// Per-coset accumulators of the group sums. w is constant on each coset of
// G_A x G_B, so every quantity reduces to one pass over the group with
// O(|Q|) storage.
class CCPartitionData {
  public:
    CCPartitionData(const TorusLattice& lat, const Bipartition& bip, double lambda,
                    double e_shift = 0.0);

    double lambda() const { return lambda_; }
    double Z() const { return z_; }
    // w(lambda, g) for the coset containing gen_mask.
    double w_of(std::uint32_t gen_mask) const;
    //  Ztilde(alpha) = sum_g exp(-lambda E_g) w^(alpha-1) = sum_q w_q^alpha.
    double Ztilde(double alpha) const;

    std::size_t n_cosets() const { return w_.size(); }
    int dim_ga() const { return spec_.dim_ga; }
    int dim_gb() const { return spec_.dim_gb; }
    const std::vector<double>& coset_weights() const { return w_; }

    double renyi(double alpha) const;
    double renyi_derivative(double alpha) const;
    void small_lambda_coeffs(double& c1, double& c2) const;

  private:
    double lambda_;
    SubgroupSpec spec_;
    CosetIndexer indexer_;
    std::vector<double> w_;   // per coset: sum exp(-lambda E)
    std::vector<double> we_;  // per coset: sum E exp(-lambda E)
    std::vector<double> se_;  // per coset: sum E
    double z_ = 0, ze_ = 0;   // totals of w_, we_
    double sum_e_ = 0, sum_e2_ = 0;
};

// Ground-state vector over the gauge-sector basis indexed by generator mask;
// amplitude at g proportional to exp(-lambda L(g)).
std::vector<double> construct_cc_state(const TorusLattice& lat, double lambda);

// S_alpha = (1/(1-alpha)) log(Ztilde/Z^alpha); alpha = 1 via the explicit
// eigenvalues w_q/Z (von Neumann), alpha = 0 gives log of the coset count.
double renyi_cc(const TorusLattice& lat, const Bipartition& bip, double lambda, double alpha);

// Analytic d/dlambda of renyi_cc, the three-average form.
double renyi_derivative_cc(const TorusLattice& lat, const Bipartition& bip, double lambda,
                           double alpha);

// Leading coefficients of d/dlambda S_alpha = lambda (C1 alpha + C2) + O(lambda^2)
// around the flat point; both are <= 0 for every bipartition.
void small_lambda_coeffs(const TorusLattice& lat, const Bipartition& bip, double& c1, double& c2);

// Two-branch closed form of d/dlambda S_alpha deep in the polarized phase,
// organized in powers of v = exp(-8 lambda) (the weight of one length-4 loop).
// Valid for lambda >= cc_large_lambda_min; alpha = 1 excluded.
inline constexpr double cc_large_lambda_min = 2.0;
double large_lambda_derivative(const TorusLattice& lat, const Bipartition& bip, double lambda,
                               double alpha);

} // namespace tcent
