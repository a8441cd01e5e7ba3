// Row-chain evaluation of entanglement quantities for the row-field model.
#include "tcent/rowfield.hpp"

#include <cmath>
#include <map>

#include "tcent/util.hpp"

namespace tcent {

namespace {

// z-string edge mask of a z-family element encoded by pivot-subset bits.
std::uint64_t pivot_subset_mask(const std::vector<int>& pivots, std::uint64_t bits) {
    std::uint64_t z = 0;
    for (std::size_t j = 0; j < pivots.size(); ++j)
        if (bits >> j & 1) z |= std::uint64_t(1) << pivots[j];
    return z;
}

// G_A element (generator mask) encoded by basis-subset bits.
std::uint32_t ga_subset_mask(const std::vector<std::uint32_t>& basis, std::uint32_t bits) {
    std::uint32_t g = 0;
    for (std::size_t j = 0; j < basis.size(); ++j)
        if (bits >> j & 1) g ^= basis[j];
    return g;
}

// The thermodynamic evaluation embeds the two-star subsystem in a strip of
// three rows wide enough that no string wraps, then reads expectations off a
// long chain; the finite variant uses the torus rows themselves.
struct TwoStarSetup {
    RectTorus lat;
    std::vector<int> stars;   // the two adjoining stars, same row
    std::vector<int> a_edges; // their seven-edge union, ascending
};

TwoStarSetup two_star_setup(const RectTorus& lat, int v1, int v2) {
    TwoStarSetup s{lat, {v1, v2}, {}};
    const std::uint64_t a_mask = lat.star_mask(v1) | lat.star_mask(v2);
    for (int e = 0; e < lat.n_edges(); ++e)
        if (a_mask >> e & 1) s.a_edges.push_back(e);
    if (s.a_edges.size() != 7)
        throw DomainError("two_star_setup: the stars must be adjacent and share one edge");
    return s;
}

// 2^-7 sum over the four star products and all 2^7 z subsets of <g z>^2.
double two_star_sum(const TwoStarSetup& s, const ChainSolution& sol) {
    double sum = 0.0;
    for (int gi = 0; gi < 4; ++gi) {
        std::vector<int> stars;
        if (gi & 1) stars.push_back(s.stars[0]);
        if (gi & 2) stars.push_back(s.stars[1]);
        for (std::uint32_t zi = 0; zi < (1u << 7); ++zi) {
            std::uint64_t z = 0;
            for (int b = 0; b < 7; ++b)
                if (zi >> b & 1) z |= std::uint64_t(1) << s.a_edges[b];
            const double v = tau_product_expectation(sol, sigma_string_to_tau(s.lat, z, stars));
            sum += v * v;
        }
    }
    return std::ldexp(sum, -7);
}

} // namespace

TauStringProduct sigma_string_to_tau(const RectTorus& lat, std::uint64_t z_edges,
                                     const std::vector<int>& stars) {
    if (lat.n_edges() < 64 && (z_edges >> lat.n_edges()) != 0)
        throw DomainError("sigma_string_to_tau: edge mask outside the lattice");
    const int lx = lat.lx(), ly = lat.ly();
    std::map<int, PauliString> rows;
    for (int s : stars) {
        if (s < 0 || s >= lat.n_vertices())
            throw DomainError("sigma_string_to_tau: star id outside the lattice");
        rows[s / lx].push_back({s % lx, 'z'});
    }
    for (int e = 0; e < lat.n_edges(); ++e) {
        if (!(z_edges >> e & 1)) continue;
        const int cell = e / 2, row = cell / lx, col = cell % lx;
        if (e % 2 == 0) {
            auto& str = rows[row];
            str.push_back({col, 'x'});
            str.push_back({(col + 1) % lx, 'x'});
        } else {
            rows[row].push_back({col, 'x'});
            rows[(row + 1) % ly].push_back({col, 'x'});
        }
    }
    TauStringProduct out;
    out.rows.reserve(rows.size());
    for (auto& [r, str] : rows) out.rows.emplace_back(r, std::move(str));
    return out;
}

double tau_product_expectation(const ChainSolution& sol, const TauStringProduct& prod) {
    double val = 1.0;
    for (const auto& [row, str] : prod.rows) {
        val *= pauli_string_expectation(sol, str);
        if (val == 0.0) return 0.0;
    }
    return val;
}

std::array<double, 8> plaquette_rdm_diagonal(double T) {
    if (!(T >= 0.0 && T <= 1.0))
        throw DomainError("plaquette_rdm_diagonal: T in [0, 1] required");
    std::array<double, 8> diag{};
    for (int b = 0; b < 8; ++b) {
        const double s1 = (b & 1) ? -1.0 : 1.0;
        const double s3 = (b & 4) ? -1.0 : 1.0;
        diag[static_cast<std::size_t>(b)] = 0.125 * (1.0 + s1 * T) * (1.0 + s3 * T);
    }
    return diag;
}

double plaquette_renyi(double lambda, double alpha) {
    if (!(lambda > 0.0)) throw DomainError("plaquette_renyi: lambda > 0 required");
    if (!(alpha >= 0.0)) throw DomainError("plaquette_renyi: alpha >= 0 required");
    const double T = nn_xx_correlator_thermo(lambda);
    if (std::abs(alpha - 1.0) < 1e-9) {
        double s = 0.0;
        for (double nu : plaquette_rdm_diagonal(T))
            if (nu > 0.0) s -= nu * std::log(nu);
        return s;
    }
    const double sum = 2.0 * std::pow(1.0 + T, 2.0 * alpha) +
                       2.0 * std::pow(1.0 - T, 2.0 * alpha) +
                       4.0 * std::pow(1.0 - T * T, alpha);
    return (std::log(sum) - 3.0 * alpha * std::log(2.0)) / (1.0 - alpha);
}

double purity_gauge_formula(const GaugeAmplitudeFn& f, const TorusLattice& lat,
                            const Bipartition& bip) {
    const SubgroupSpec sub = subgroup_spec(lat, bip);
    if (sub.dim_ga + sub.dim_za > 26)
        throw CapacityError("purity_gauge_formula: group sum exceeds the term budget");
    double sum = 0.0;
    for (std::uint64_t zi = 0; zi < (std::uint64_t(1) << sub.dim_za); ++zi) {
        const std::uint64_t z = pivot_subset_mask(sub.za_pivot_edges, zi);
        for (std::uint32_t gi = 0; gi < (1u << sub.dim_ga); ++gi) {
            const double a = f(ga_subset_mask(sub.ga_basis, gi), z);
            sum += a * a;
        }
    }
    return std::ldexp(sum, sub.dim_gb - n_generators(lat));
}

double renyi_n_gauge_formula(const GaugeAmplitudeFn& f, const TorusLattice& lat,
                             const Bipartition& bip, int n) {
    if (n < 2) throw DomainError("renyi_n_gauge_formula: n >= 2 required");
    const SubgroupSpec sub = subgroup_spec(lat, bip);
    const int bits = sub.dim_ga + sub.dim_za;
    if (bits * (n - 1) > 26)
        throw CapacityError("renyi_n_gauge_formula: group sum exceeds the term budget");

    const std::size_t n_ga = std::size_t(1) << sub.dim_ga;
    const std::size_t n_za = std::size_t(1) << sub.dim_za;
    std::vector<std::uint32_t> gs(n_ga);
    std::vector<std::uint64_t> g_edges(n_ga), zs(n_za);
    for (std::size_t i = 0; i < n_ga; ++i) {
        gs[i] = ga_subset_mask(sub.ga_basis, static_cast<std::uint32_t>(i));
        g_edges[i] = group_edge_mask(lat, gs[i]);
    }
    for (std::size_t i = 0; i < n_za; ++i) zs[i] = pivot_subset_mask(sub.za_pivot_edges, i);

    const int m = n - 1;
    std::vector<std::size_t> gi(static_cast<std::size_t>(m), 0), zi(static_cast<std::size_t>(m), 0);
    double total = 0.0;
    while (true) {
        std::uint64_t z_all = 0;
        for (int k = 0; k < m; ++k) z_all ^= zs[zi[static_cast<std::size_t>(k)]];
        double prod = f(gs[gi[0]], z_all);
        for (int k = 1; k < m && prod != 0.0; ++k) {
            const std::size_t a = gi[static_cast<std::size_t>(k - 1)], b = zi[static_cast<std::size_t>(k - 1)];
            const double sgn = overlap_parity(g_edges[a], zs[b]) ? -1.0 : 1.0;
            prod *= sgn * f(gs[gi[static_cast<std::size_t>(k)]] ^ gs[a], zs[b]);
        }
        if (prod != 0.0) {
            const std::size_t a = gi[static_cast<std::size_t>(m - 1)], b = zi[static_cast<std::size_t>(m - 1)];
            const double sgn = overlap_parity(g_edges[a], zs[b]) ? -1.0 : 1.0;
            prod *= sgn * f(gs[a], zs[b]);
        }
        total += prod;

        // Odometer over the 2(n-1) summation digits.
        int k = 0;
        for (; k < m; ++k) {
            if (++gi[static_cast<std::size_t>(k)] < n_ga) break;
            gi[static_cast<std::size_t>(k)] = 0;
            if (++zi[static_cast<std::size_t>(k)] < n_za) break;
            zi[static_cast<std::size_t>(k)] = 0;
        }
        if (k == m) break;
    }
    return total * std::ldexp(1.0, (sub.dim_gb - n_generators(lat)) * m);
}

double two_star_purity(double lambda, const TwoStarOptions& opts) {
    if (lambda < 0.0) throw DomainError("two_star_purity: lambda >= 0 required");
    if (opts.chain_sites < 16)
        throw DomainError("two_star_purity: chain_sites >= 16 required");
    const RectTorus strip(8, 3);
    const TwoStarSetup s = two_star_setup(strip, 1 * 8 + 3, 1 * 8 + 4);
    return two_star_sum(s, solve_chain(opts.chain_sites, lambda));
}

double two_star_purity_finite(int L, double lambda) {
    if (L < 3 || L > 5) throw DomainError("two_star_purity_finite: 3 <= L <= 5 required");
    if (lambda < 0.0) throw DomainError("two_star_purity_finite: lambda >= 0 required");
    const RectTorus torus(L, L);
    const TwoStarSetup s = two_star_setup(torus, 0, 1);
    return two_star_sum(s, solve_chain(L, lambda));
}

TwoStarPurityReport two_star_purity_report(double lambda, const TwoStarOptions& opts) {
    if (lambda < 0.0) throw DomainError("two_star_purity_report: lambda >= 0 required");
    if (opts.chain_sites < 16)
        throw DomainError("two_star_purity_report: chain_sites >= 16 required");
    const ChainSolution sol = solve_chain(opts.chain_sites, lambda);

    TwoStarPurityReport r;
    r.lambda = lambda;
    const RectTorus strip(8, 3);
    r.automated = two_star_sum(two_star_setup(strip, 1 * 8 + 3, 1 * 8 + 4), sol);

    const auto ev = [&sol](const PauliString& str) { return pauli_string_expectation(sol, str); };
    r.x12 = ev({{0, 'x'}, {1, 'x'}});
    r.x13 = ev({{0, 'x'}, {2, 'x'}});
    r.x14 = ev({{0, 'x'}, {3, 'x'}});
    r.x1234 = ev({{0, 'x'}, {1, 'x'}, {2, 'x'}, {3, 'x'}});
    r.z2 = ev({{0, 'z'}});
    r.x1z2x3 = ev({{0, 'x'}, {1, 'z'}, {2, 'x'}});
    r.z2x3x4 = ev({{0, 'z'}, {1, 'x'}, {2, 'x'}});
    r.x1z2x4 = ev({{0, 'x'}, {1, 'z'}, {3, 'x'}});
    r.z2z3 = ev({{0, 'z'}, {1, 'z'}});
    r.z2z3x2x3 = ev({{1, 'z'}, {2, 'z'}, {1, 'x'}, {2, 'x'}});
    r.z2z3x1x4 = ev({{1, 'z'}, {2, 'z'}, {0, 'x'}, {3, 'x'}});
    r.z2z3x1x2x3x4 = ev({{1, 'z'}, {2, 'z'}, {0, 'x'}, {1, 'x'}, {2, 'x'}, {3, 'x'}});

    const auto sq = [](double v) { return v * v; };
    const double no_star = 1.0 + 3.0 * sq(r.x12) + 2.0 * sq(r.x13) + sq(r.x14) + sq(r.x1234);
    const double one_star = sq(r.z2) + sq(r.x1z2x3) + sq(r.z2x3x4) + sq(r.x1z2x4);
    const double two_star = sq(r.z2z3) + sq(r.z2z3x2x3) + sq(r.z2z3x1x4);
    const double pref = std::ldexp(sq(1.0 + sq(r.x12)), -7);
    r.corrected = pref * (no_star + 2.0 * one_star + two_star + sq(r.z2z3x1x2x3x4));
    r.literal = pref * (no_star + one_star + two_star + r.z2z3x1x2x3x4);
    return r;
}

} // namespace tcent
