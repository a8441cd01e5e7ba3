// Named validation suites behind the command-line tool: independent
// cross-checks of the closed-form routes against exact diagonalization and a
// dense chain reference that never touches the fermionic solver.
#include "tcent/scan.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tcent/cc_model.hpp"
#include "tcent/ed.hpp"
#include "tcent/freefermion.hpp"
#include "tcent/rowfield.hpp"
#include "tcent/util.hpp"

namespace tcent {

namespace {

using cd = std::complex<double>;

// Short form for check names; observed/tol columns keep full precision.
std::string label(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

class Reporter {
  public:
    Reporter(std::ostream& out, const std::string& suite, const std::string& seed) : out_(out) {
        out_ << "suite " << suite << "\n";
        out_ << "seed " << seed << "\n";
    }
    void check(const std::string& name, double observed, double tol) {
        ++n_;
        const bool ok = observed <= tol;
        if (!ok) ++fail_;
        out_ << "check " << name << " observed " << format_double(observed) << " tol "
             << format_double(tol) << (ok ? " PASS" : " FAIL") << "\n";
    }
    void note(const std::string& text) { out_ << "note " << text << "\n"; }
    int finish() {
        out_ << "result " << (fail_ == 0 ? "PASS" : "FAIL") << " (" << (n_ - fail_) << "/" << n_
             << ")\n";
        return fail_;
    }

  private:
    std::ostream& out_;
    int n_ = 0, fail_ = 0;
};

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double spectrum_power_sum(const EntanglementSpectrum& s, int n) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) sum += std::pow(s.values[i], n);
    return sum;
}

Eigen::VectorXd random_state(Eigen::Index dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = g(rng);
    v.normalize();
    return v;
}

GaugeAmplitudeFn state_oracle(const Eigen::VectorXd& psi, const TorusLattice& lat) {
    return [&psi, &lat](std::uint32_t g, std::uint64_t z) {
        return gauge_expectation(psi, lat, g, z);
    };
}

// ---- dense chain reference (independent of the covariance-matrix solver) --

// H = -sum_j tau^z_j - lambda sum_j tau^x_j tau^x_{j+1} on a ring of L sites
// in the tau^z product basis; bit j set means tau^z_j = -1.
Eigen::MatrixXd dense_chain_hamiltonian(int L, double lambda) {
    const int n = 1 << L;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
    for (int s = 0; s < n; ++s) {
        double diag = 0.0;
        for (int j = 0; j < L; ++j) diag -= (s >> j & 1) ? -1.0 : 1.0;
        h(s, s) += diag;
        for (int j = 0; j < L; ++j) {
            const int k = (j + 1) % L;
            h(s ^ (1 << j) ^ (1 << k), s) -= lambda;
        }
    }
    return h;
}

// Lowest eigenvector with even spin-flip parity (prod tau^z = +1).
Eigen::VectorXd dense_chain_even_ground_state(int L, double lambda) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_chain_hamiltonian(L, lambda));
    const int n = 1 << L;
    for (int i = 0; i < n; ++i) {
        const Eigen::VectorXd& v = es.eigenvectors().col(i);
        double parity = 0.0;
        for (int s = 0; s < n; ++s) {
            const double w = v[s] * v[s];
            parity += (std::popcount(static_cast<unsigned>(s)) % 2 == 0) ? w : -w;
        }
        if (parity > 0.999) return v;
    }
    throw DomainError("dense_chain_even_ground_state: no even-parity level found");
}

// <psi| F_1 F_2 ... F_k |psi> for an ordered string (leftmost factor first).
double dense_chain_string_expectation(const Eigen::VectorXd& psi, int L, const PauliString& str) {
    const int n = 1 << L;
    Eigen::VectorXcd v = psi.cast<cd>();
    for (auto it = str.rbegin(); it != str.rend(); ++it) {
        const int site = ((it->site % L) + L) % L;
        const int bit = 1 << site;
        Eigen::VectorXcd out(n);
        for (int s = 0; s < n; ++s) {
            switch (it->op) {
                case 'x': out[s ^ bit] = v[s]; break;
                case 'y': out[s ^ bit] = (s & bit) ? cd(0, -1) * v[s] : cd(0, 1) * v[s]; break;
                case 'z': out[s] = (s & bit) ? -v[s] : v[s]; break;
                default: throw DomainError("dense_chain_string_expectation: bad op");
            }
        }
        v = std::move(out);
    }
    const cd value = psi.cast<cd>().dot(v);
    return value.real();
}

// ---- distribution generators for the majorization suite ----------------

std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& v : p) {
        v = e(rng);
        sum += v;
    }
    for (auto& v : p) v /= sum;
    return p;
}

std::vector<double> mix_toward_uniform(const std::vector<double>& q, double theta) {
    std::vector<double> p(q.size());
    const double u = 1.0 / static_cast<double>(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = (1.0 - theta) * q[i] + theta * u;
    return p;
}

// ---- suites --------------------------------------------------------------

int suite_oracle_v1(std::ostream& out) {
    Reporter rep(out, "oracle-v1", "none");
    const TorusLattice lat(2);
    const std::vector<double> alphas = {0.1, 0.5, 2.0, 5.0};
    for (const std::string& bip_text : {std::string("two_star:0-1"), std::string("plaquette:0")}) {
        const Bipartition bip = parse_bipartition(lat, bip_text);
        for (double lambda : {0.1, 0.3, 0.6}) {
            const CCPartitionData data(lat, bip, lambda);
            std::vector<double> nu = data.coset_weights();
            for (auto& w : nu) w /= data.Z();
            std::sort(nu.begin(), nu.end(), std::greater<>());

            const Eigen::VectorXd full = to_full_state(to_eigen(construct_cc_state(lat, lambda)), lat);
            const auto spec = entanglement_spectrum_full(full, lat.n_edges(), bip.a_mask);

            double spectrum_err = 0.0;
            for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
                const double reference =
                    i < static_cast<Eigen::Index>(nu.size()) ? nu[static_cast<std::size_t>(i)] : 0.0;
                spectrum_err = std::max(spectrum_err, std::abs(spec.values[i] - reference));
            }
            rep.check("coset-spectrum(" + bip_text + ",lambda=" + label(lambda) + ")",
                      spectrum_err, 1e-9);

            double renyi_err = 0.0;
            for (double alpha : alphas)
                renyi_err = std::max(renyi_err,
                                     std::abs(data.renyi(alpha) - renyi_from_spectrum(spec, alpha)));
            rep.check("renyi(" + bip_text + ",lambda=" + label(lambda) + ")", renyi_err, 1e-9);
        }
    }
    return rep.finish();
}

int suite_oracle_v2(std::ostream& out) {
    Reporter rep(out, "oracle-v2", "none");

    // Finite-torus two-star purity against exact diagonalization (L = 3).
    {
        const TorusLattice lat(3);
        const Bipartition bip = make_two_star_bipartition(lat, 0, 1);
        for (double lambda : {0.3, 1.2}) {
            HamiltonianSpec spec;
            spec.lx = spec.ly = 3;
            spec.pert = row_field_perturbation(lambda);
            spec.basis = EdBasis::Gauge;
            const Hamiltonian h = build_hamiltonian(spec);
            const GroundStateResult gs = ground_state(h, positive_loop_sector(spec));
            const auto ed = entanglement_spectrum_gauge(gs.psi, lat, bip.a_mask);
            rep.check("two-star-purity(L=3,lambda=" + label(lambda) + ")",
                      std::abs(two_star_purity_finite(3, lambda) - spectrum_power_sum(ed, 2)), 1e-9);
        }
    }

    // Single-plaquette diagonal against exact diagonalization (L = 4).
    {
        const double lambda = 0.45;
        const TorusLattice lat(4);
        HamiltonianSpec spec;
        spec.lx = spec.ly = 4;
        spec.pert = row_field_perturbation(lambda);
        spec.basis = EdBasis::Gauge;
        const Hamiltonian h = build_hamiltonian(spec);
        const GroundStateResult gs = ground_state(h, positive_loop_sector(spec));
        const auto ed = entanglement_spectrum_gauge(gs.psi, lat, lat.plaquette_mask(5));

        auto diag = plaquette_rdm_diagonal(nn_xx_correlator(solve_chain(4, lambda)));
        std::sort(diag.begin(), diag.end(), std::greater<>());
        double top_err = 0.0;
        for (int i = 0; i < 8; ++i)
            top_err = std::max(top_err, std::abs(ed.values[i] - diag[static_cast<std::size_t>(i)]));
        rep.check("plaquette-diagonal-top8(L=4,lambda=0.45)", top_err, 1e-7);
        double tail = 0.0;
        for (Eigen::Index i = 8; i < ed.values.size(); ++i) tail = std::max(tail, ed.values[i]);
        rep.check("plaquette-diagonal-tail(L=4,lambda=0.45)", tail, 1e-8);
    }

    // Merged pseudospin strings against the dense chain reference (L = 6).
    {
        const int L = 6;
        const double lambda = 0.8;
        const ChainSolution sol = solve_chain(L, lambda);
        const Eigen::VectorXd psi = dense_chain_even_ground_state(L, lambda);
        const std::vector<PauliString> strings = {
            {{1, 'z'}, {2, 'z'}, {1, 'x'}, {2, 'x'}},
            {{1, 'z'}, {2, 'z'}, {0, 'x'}, {3, 'x'}},
            {{1, 'z'}, {2, 'z'}, {0, 'x'}, {1, 'x'}, {2, 'x'}, {3, 'x'}},
            {{0, 'x'}, {1, 'z'}, {3, 'x'}},
            {{0, 'z'}, {1, 'x'}, {2, 'x'}},
            {{1, 'z'}, {1, 'x'}, {2, 'x'}}, // single y after merge: vanishes
        };
        double err = 0.0;
        for (const auto& str : strings)
            err = std::max(err, std::abs(pauli_string_expectation(sol, str) -
                                         dense_chain_string_expectation(psi, L, str)));
        rep.check("merged-strings(L=6,lambda=0.8)", err, 1e-9);
    }

    // Thermodynamic nearest-neighbour correlator at the critical coupling.
    rep.check("critical-correlator", std::abs(nn_xx_correlator_thermo(1.0) - 2.0 / M_PI), 1e-6);

    return rep.finish();
}

int suite_gauge_formulas(std::ostream& out) {
    const std::uint64_t seed = 1337;
    Reporter rep(out, "gauge-formulas", std::to_string(seed));

    const TorusLattice lat(2);
    const Eigen::Index dim = Eigen::Index(1) << n_generators(lat);
    for (const Bipartition& bip :
         {make_two_star_bipartition(lat, 0, 1), make_plaquette_bipartition(lat, 0)}) {
        double purity_err = 0.0, renyi3_err = 0.0;
        for (int i = 0; i < 10; ++i) {
            const Eigen::VectorXd psi = random_state(dim, seed + static_cast<std::uint64_t>(i));
            const auto oracle = state_oracle(psi, lat);
            const auto spec = entanglement_spectrum_gauge(psi, lat, bip.a_mask);
            purity_err = std::max(purity_err, std::abs(purity_gauge_formula(oracle, lat, bip) -
                                                       spectrum_power_sum(spec, 2)));
            renyi3_err = std::max(renyi3_err, std::abs(renyi_n_gauge_formula(oracle, lat, bip, 3) -
                                                       spectrum_power_sum(spec, 3)));
        }
        rep.check("group-sum-purity(" + bip.label + ",10 states)", purity_err, 1e-9);
        rep.check("group-sum-renyi3(" + bip.label + ",10 states)", renyi3_err, 1e-9);
    }

    // Closed-form two-star purity: the corrected transcription must match the
    // automated enumeration; the literal printed form is reported for the
    // record but does not gate the suite.
    const TwoStarPurityReport mid = two_star_purity_report(0.5);
    rep.check("two-star-closed-form(lambda=0.5)", std::abs(mid.corrected - mid.automated), 1e-11);
    rep.note("literal transcription at lambda=0.5: literal " + format_double(mid.literal) +
             " vs enumeration " + format_double(mid.automated));
    const TwoStarPurityReport weak = two_star_purity_report(1e-3);
    rep.note("literal transcription at lambda->0: literal -> 3/128 (" +
             format_double(weak.literal) + "), enumeration -> 4/128 (" +
             format_double(weak.automated) + ")");
    rep.note("the single-star block carries weight 2 and the last correlator enters squared");

    return rep.finish();
}

int suite_majorization(std::ostream& out) {
    const std::uint64_t seed = 424242;
    Reporter rep(out, "majorization", std::to_string(seed));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> size_dist(2, 12);
    std::uniform_real_distribution<double> theta_dist(0.05, 0.95);

    const int pairs = 1000;
    int reflexive = 0, mixing = 0, transitivity = 0, permutation = 0;
    int uniform_bottom = 0, point_top = 0, antisymmetry = 0, schur = 0;
    for (int t = 0; t < pairs; ++t) {
        const std::size_t n = size_dist(rng);
        const std::vector<double> q = dirichlet(n, rng);
        const std::vector<double> p = mix_toward_uniform(q, theta_dist(rng));
        const std::vector<double> r = mix_toward_uniform(p, theta_dist(rng));

        if (!majorizes(q, q)) ++reflexive;
        if (!majorizes(p, q) || !majorizes(r, p)) ++mixing;
        if (!majorizes(r, q)) ++transitivity;

        std::vector<double> shuffled = p;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        if (majorizes(shuffled, q) != majorizes(p, q) || !majorizes(shuffled, p) ||
            !majorizes(p, shuffled))
            ++permutation;

        if (!majorizes(std::vector<double>(n, 1.0 / static_cast<double>(n)), q)) ++uniform_bottom;
        if (!majorizes(q, {1.0})) ++point_top;

        if (majorizes(q, p)) {
            // mutual domination forces equality of the sorted distributions
            std::vector<double> ps = p, qs = q;
            std::sort(ps.begin(), ps.end());
            std::sort(qs.begin(), qs.end());
            for (std::size_t i = 0; i < n; ++i)
                if (std::abs(ps[i] - qs[i]) > 1e-9) {
                    ++antisymmetry;
                    break;
                }
        }

        if (!schur_concavity_check(p, q) || !schur_concavity_check(r, q) ||
            !schur_concavity_check(q, dirichlet(size_dist(rng), rng)))
            ++schur;
    }
    rep.note(std::to_string(pairs) + " generated pairs per law");
    rep.check("reflexivity-violations", reflexive, 0);
    rep.check("mixing-monotonicity-violations", mixing, 0);
    rep.check("transitivity-violations", transitivity, 0);
    rep.check("permutation-invariance-violations", permutation, 0);
    rep.check("uniform-bottom-violations", uniform_bottom, 0);
    rep.check("point-mass-top-violations", point_top, 0);
    rep.check("antisymmetry-violations", antisymmetry, 0);
    rep.check("schur-concavity-violations", schur, 0);
    return rep.finish();
}

int suite_pfaffian(std::ostream& out) {
    const std::uint64_t seed = 905;
    Reporter rep(out, "pfaffian", std::to_string(seed));

    const std::vector<PauliString> strings = {
        {{0, 'x'}, {1, 'x'}},
        {{0, 'x'}, {3, 'x'}},
        {{0, 'z'}},
        {{0, 'z'}, {4, 'z'}},
        {{0, 'x'}, {1, 'y'}, {2, 'y'}, {3, 'x'}},
        {{0, 'x'}, {1, 'z'}, {2, 'x'}},
        {{0, 'x'}, {1, 'x'}, {2, 'x'}}, // odd x count: vanishes by parity
        {{2, 'y'}, {3, 'y'}},
    };
    for (const auto& [L, lambda] : std::vector<std::pair<int, double>>{{8, 0.5}, {8, 1.3}, {10, 0.9}}) {
        const ChainSolution sol = solve_chain(L, lambda);
        const Eigen::VectorXd psi = dense_chain_even_ground_state(L, lambda);
        double err = 0.0;
        for (const auto& str : strings)
            err = std::max(err, std::abs(pauli_string_expectation(sol, str) -
                                         dense_chain_string_expectation(psi, L, str)));
        rep.check("wick-strings(L=" + std::to_string(L) + ",lambda=" + label(lambda) + ")",
                  err, 1e-9);
    }

    // Pfaffian identity Pf(A)^2 = det(A) on seeded skew-symmetric matrices.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    double identity_err = 0.0;
    for (int n : {2, 4, 6, 8, 12})
        for (int trial = 0; trial < 3; ++trial) {
            Eigen::MatrixXd a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) a(i, j) = g(rng);
            a = ((a - a.transpose()) / 2.0).eval();
            const double pf = pfaffian(a);
            const double det = a.determinant();
            identity_err =
                std::max(identity_err, std::abs(pf * pf - det) / std::max(1.0, std::abs(det)));
        }
    rep.check("pfaffian-squared-vs-determinant", identity_err, 1e-9);

    Eigen::MatrixXd odd(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) odd(i, j) = g(rng);
    odd = ((odd - odd.transpose()) / 2.0).eval();
    rep.check("odd-dimension-pfaffian", std::abs(pfaffian(odd)), 0.0);

    return rep.finish();
}

} // namespace

int run_validation_suite(const std::string& suite, std::ostream& out) {
    if (suite == "oracle-v1") return suite_oracle_v1(out);
    if (suite == "oracle-v2") return suite_oracle_v2(out);
    if (suite == "gauge-formulas") return suite_gauge_formulas(out);
    if (suite == "majorization") return suite_majorization(out);
    if (suite == "pfaffian") return suite_pfaffian(out);
    throw ConfigError("unknown validation suite '" + suite +
                      "' (oracle-v1, oracle-v2, gauge-formulas, majorization, pfaffian)");
}

} // namespace tcent
