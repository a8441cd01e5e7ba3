// Exact solution of the periodic transverse-field Ising chain
//   H = -sum_j tau^z_j - lambda sum_j tau^x_j tau^x_{j+1}
// in its even-parity (antiperiodic fermion) ground sector, via the
// Jordan-Wigner / Majorana covariance representation. Arbitrary ordered
// Pauli strings are evaluated by Wick's theorem as Pfaffians.
#pragma once

#include <Eigen/Dense>
#include <vector>

namespace tcent {

// One Pauli factor of an ordered product (leftmost factor first).
struct PauliFactor {
    int site = 0;
    char op = 'x'; // 'x', 'y', or 'z'
};
using PauliString = std::vector<PauliFactor>;

struct ChainSolution {
    int L = 0;
    double lambda = 0.0;
    double e0 = 0.0;   // ground-state energy of the even-parity sector
    Eigen::MatrixXd m; // 2L x 2L real antisymmetric M_pq = -(i/2) <gamma_p gamma_q>
};

// Majorana index convention: gamma_{2j} = a_j, gamma_{2j+1} = b_j with
// tau^z_j = -i a_j b_j, tau^x_j = (prod_{l<j} tau^z_l) a_j.
ChainSolution solve_chain(int L, double lambda);

// Absolute difference of the two lowest levels of the full chain spectrum,
// minimized over both parity sectors via the exact momentum-mode energies.
double energy_gap(int L, double lambda);

// <ordered product> in the even-sector ground state. Strings with an odd
// number of x/y factors (or odd y count after same-site merging) vanish
// identically by parity and hermiticity and return exactly 0.
double pauli_string_expectation(const ChainSolution& sol, const PauliString& str);

// <tau^x_0 tau^x_1>.
double nn_xx_correlator(const ChainSolution& sol);

// Thermodynamic-limit nearest-neighbour xx correlator
//   T(lambda) = (1/pi) Int_0^pi [cos p (cos p - 1/lambda) + sin^2 p]
//                         / sqrt((1/lambda - cos p)^2 + sin^2 p) dp,
// evaluated by adaptive Gauss-Kronrod quadrature. Requires lambda > 0.
double nn_xx_correlator_thermo(double lambda);

// Pfaffian of a real skew-symmetric matrix (Parlett-Reid tridiagonalization
// with partial pivoting); the argument is consumed as workspace.
double pfaffian(Eigen::MatrixXd a);

} // namespace tcent
