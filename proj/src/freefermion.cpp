// Covariance-matrix solution of the periodic Ising chain and Wick evaluation
// of ordered Pauli strings.
#include "tcent/freefermion.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "tcent/util.hpp"

namespace tcent {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};
constexpr double pi = std::numbers::pi;

double mode_energy(double lambda, double k) {
    return 2.0 * std::sqrt(1.0 + lambda * lambda - 2.0 * lambda * std::cos(k));
}

// Multiply single-site Paulis: out = p1 * p2 (p1 applied after p2 in operator
// order, i.e. the product string reads p1 p2). Returns the phase.
cd merge_paulis(char p1, char p2, char& out) {
    if (p1 == 'i') {
        out = p2;
        return 1.0;
    }
    if (p2 == 'i') {
        out = p1;
        return 1.0;
    }
    if (p1 == p2) {
        out = 'i';
        return 1.0;
    }
    // xy = iz and cyclic; reversed order picks up the conjugate phase.
    const auto cyc = [](char a, char b) { return (a == 'x' && b == 'y') || (a == 'y' && b == 'z') || (a == 'z' && b == 'x'); };
    if (cyc(p1, p2)) {
        out = static_cast<char>('x' + 'y' + 'z' - p1 - p2);
        return I;
    }
    out = static_cast<char>('x' + 'y' + 'z' - p1 - p2);
    return -I;
}

} // namespace

ChainSolution solve_chain(int L, double lambda) {
    if (L < 2) throw DomainError("solve_chain: L >= 2 required");
    if (lambda < 0.0) throw DomainError("solve_chain: lambda >= 0 required");
    const int n = 2 * L;
    // H = (i/4) gamma^T C gamma; gamma_{2j} = a_j, gamma_{2j+1} = b_j.
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < L; ++j) {
        c(2 * j, 2 * j + 1) += 2.0; // -tau^z_j = i a_j b_j
    }
    for (int j = 0; j + 1 < L; ++j) {
        c(2 * j + 1, 2 * j + 2) += 2.0 * lambda; // -lambda tau^x_j tau^x_{j+1} = i lambda b_j a_{j+1}
    }
    // Boundary bond carries the opposite sign in the even-parity sector
    // (antiperiodic fermions).
    c(2 * L - 1, 0) += -2.0 * lambda;
    // Entries above were written once per ordered pair; antisymmetrize.
    c -= Eigen::MatrixXd(c.transpose()).eval();

    // Hermitian iC has eigenvalues in +/- pairs; the ground state fills all
    // positive modes: <gamma_p gamma_q> = 2 (U+ U+^dagger)_pq.
    Eigen::MatrixXcd ic = I * c.cast<cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ic);
    if (es.info() != Eigen::Success) throw std::runtime_error("solve_chain: eigensolver failed");
    double e0 = 0.0;
    int n_pos = 0;
    for (int i = 0; i < n; ++i) {
        e0 -= 0.25 * std::abs(es.eigenvalues()(i));
        if (es.eigenvalues()(i) > 0.0) ++n_pos;
    }
    Eigen::MatrixXcd upos(n, n_pos);
    int col = 0;
    for (int i = 0; i < n; ++i)
        if (es.eigenvalues()(i) > 0.0) upos.col(col++) = es.eigenvectors().col(i);
    Eigen::MatrixXcd g = 2.0 * (upos * upos.adjoint());
    // M = -(i/2)(<gamma gamma> - 1) is real antisymmetric.
    Eigen::MatrixXcd mc = -0.5 * I * (g - Eigen::MatrixXcd::Identity(n, n));
    ChainSolution sol;
    sol.L = L;
    sol.lambda = lambda;
    sol.e0 = e0;
    sol.m = mc.real();
    if (mc.imag().cwiseAbs().maxCoeff() > 1e-10)
        throw std::runtime_error("solve_chain: covariance not real");
    return sol;
}

double energy_gap(int L, double lambda) {
    if (L < 2) throw DomainError("energy_gap: L >= 2 required");
    if (lambda < 0.0) throw DomainError("energy_gap: lambda >= 0 required");
    std::vector<double> levels;

    // Even-parity sector: antiperiodic momenta, excitations in pairs.
    std::vector<double> eps_ap(L);
    for (int m = 0; m < L; ++m) eps_ap[m] = mode_energy(lambda, (2.0 * m + 1.0) * pi / L);
    std::sort(eps_ap.begin(), eps_ap.end());
    double base_ap = 0.0;
    for (double e : eps_ap) base_ap -= 0.5 * e;
    levels.push_back(base_ap);
    for (int i = 0; i < std::min<int>(3, L); ++i)
        for (int j = i + 1; j < std::min<int>(3, L); ++j) levels.push_back(base_ap + eps_ap[i] + eps_ap[j]);

    // Odd-parity sector: periodic momenta. k = 0 (and k = pi for even L) are
    // unpaired modes with signed single-fermion energies.
    const double xi0 = 2.0 * (1.0 - lambda);
    const double xipi = 2.0 * (1.0 + lambda);
    const bool has_pi = (L % 2 == 0);
    std::vector<double> eps_p;
    for (int m = 1; m < L; ++m) {
        if (has_pi && m == L / 2) continue;
        eps_p.push_back(mode_energy(lambda, 2.0 * m * pi / L));
    }
    std::sort(eps_p.begin(), eps_p.end());
    double base_p = -0.5 * xi0 - (has_pi ? 0.5 * xipi : 0.0);
    for (double e : eps_p) base_p -= 0.5 * e;
    for (int n0 = 0; n0 <= 1; ++n0) {
        for (int npi = 0; npi <= (has_pi ? 1 : 0); ++npi) {
            for (int q = 0; q <= std::min<int>(2, static_cast<int>(eps_p.size())); ++q) {
                if ((n0 + npi + q) % 2 == 0) continue; // physical states are parity-odd here
                double e = base_p + n0 * xi0 + npi * xipi;
                for (int i = 0; i < q; ++i) e += eps_p[i];
                levels.push_back(e);
            }
        }
    }

    std::sort(levels.begin(), levels.end());
    return std::abs(levels[1] - levels[0]);
}

double pauli_string_expectation(const ChainSolution& sol, const PauliString& str) {
    // Merge factors per site. The string is an ordered product with the
    // leftmost factor first, so later factors multiply from the right.
    std::map<int, char> net;
    cd phase = 1.0;
    for (const auto& f : str) {
        if (f.op != 'x' && f.op != 'y' && f.op != 'z')
            throw DomainError("pauli_string_expectation: op must be x, y, or z");
        int s = ((f.site % sol.L) + sol.L) % sol.L;
        auto [it, fresh] = net.try_emplace(s, f.op);
        if (!fresh) {
            char out;
            phase *= merge_paulis(it->second, f.op, out);
            it->second = out;
        }
    }
    int n_xy = 0, n_y = 0;
    for (auto& [s, p] : net) {
        if (p == 'x' || p == 'y') ++n_xy;
        if (p == 'y') ++n_y;
    }
    if (n_xy % 2 != 0) return 0.0; // parity superselection
    if (n_y % 2 != 0) return 0.0;  // hermitian string with odd y count is traceless here

    // Expand into a Majorana monomial over the window [s_min, s_max]. String
    // tails below the window appear an even number of times and cancel.
    if (net.empty()) return 1.0;
    const int s_min = net.begin()->first;
    std::vector<int> mono; // Majorana index 2*(site - s_min) + (0:a, 1:b)
    for (auto& [s, p] : net) {
        if (p == 'i') continue;
        if (p == 'x' || p == 'y') {
            for (int l = s_min; l < s; ++l) {
                phase *= -I; // tau^z_l = -i a_l b_l
                mono.push_back(2 * (l - s_min));
                mono.push_back(2 * (l - s_min) + 1);
            }
            mono.push_back(2 * (s - s_min) + (p == 'x' ? 0 : 1));
        } else {
            phase *= -I;
            mono.push_back(2 * (s - s_min));
            mono.push_back(2 * (s - s_min) + 1);
        }
    }

    // Normal-order by adjacent transpositions; equal neighbours square to 1.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < mono.size();) {
            if (mono[i] == mono[i + 1]) {
                mono.erase(mono.begin() + static_cast<std::ptrdiff_t>(i), mono.begin() + static_cast<std::ptrdiff_t>(i) + 2);
                changed = true;
                if (i > 0) --i;
            } else if (mono[i] > mono[i + 1]) {
                std::swap(mono[i], mono[i + 1]);
                phase = -phase;
                changed = true;
                ++i;
            } else {
                ++i;
            }
        }
    }

    if (mono.empty()) {
        if (std::abs(phase.imag()) > 1e-12)
            throw std::runtime_error("pauli_string_expectation: residual phase");
        return phase.real();
    }
    if (mono.size() % 2 != 0) return 0.0;

    // Wick: <g_1 ... g_2m> = Pf(<g_k g_l>) = i^m Pf(2 M_sub).
    const auto m2 = static_cast<Eigen::Index>(mono.size());
    Eigen::MatrixXd sub(m2, m2);
    for (Eigen::Index r = 0; r < m2; ++r) {
        for (Eigen::Index cidx = 0; cidx < m2; ++cidx) {
            // Global Majorana indices wrap sites modulo L.
            int gr = (2 * (mono[static_cast<std::size_t>(r)] / 2 + s_min) % (2 * sol.L)) + mono[static_cast<std::size_t>(r)] % 2;
            int gc = (2 * (mono[static_cast<std::size_t>(cidx)] / 2 + s_min) % (2 * sol.L)) + mono[static_cast<std::size_t>(cidx)] % 2;
            sub(r, cidx) = 2.0 * sol.m(gr, gc);
        }
    }
    static constexpr cd ipow[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    cd val = phase * ipow[(m2 / 2) % 4] * pfaffian(std::move(sub));
    if (std::abs(val.imag()) > 1e-9)
        throw std::runtime_error("pauli_string_expectation: expectation not real");
    return val.real();
}

double nn_xx_correlator(const ChainSolution& sol) {
    return pauli_string_expectation(sol, {{0, 'x'}, {1, 'x'}});
}

double nn_xx_correlator_thermo(double lambda) {
    if (lambda <= 0.0) throw DomainError("nn_xx_correlator_thermo: lambda > 0 required");
    const double inv = 1.0 / lambda;
    auto f = [inv](double p) {
        const double cp = std::cos(p), sp = std::sin(p);
        const double num = cp * (cp - inv) + sp * sp;
        const double den = std::sqrt((inv - cp) * (inv - cp) + sp * sp);
        return num / den;
    };
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    double val = gauss_kronrod<double, 61>::integrate(f, 0.0, pi, 12, 1e-12, &err);
    return val / pi;
}

} // namespace tcent
