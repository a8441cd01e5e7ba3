// Majorization laws, sign-map stencils, dLOCC region tests, and splitting
// index detection, exercised on synthetic surfaces, closed-form sources, and
// a small exact-diagonalization surface.
#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "tcent/cc_model.hpp"
#include "tcent/convertibility.hpp"
#include "tcent/ed.hpp"
#include "tcent/rowfield.hpp"
#include "tcent/util.hpp"

using namespace tcent;

namespace {

RenyiSurface make_surface(std::vector<double> params, std::vector<double> alphas,
                          const std::function<double(double, double)>& f,
                          SurfaceSource source = SurfaceSource::Cc) {
    RenyiSurface s;
    s.parameter_grid = std::move(params);
    s.alpha_grid = std::move(alphas);
    s.source = source;
    s.values.resize(static_cast<Eigen::Index>(s.parameter_grid.size()),
                    static_cast<Eigen::Index>(s.alpha_grid.size()));
    for (Eigen::Index i = 0; i < s.values.rows(); ++i)
        for (Eigen::Index j = 0; j < s.values.cols(); ++j)
            s.values(i, j) = f(s.parameter_grid[static_cast<std::size_t>(i)],
                               s.alpha_grid[static_cast<std::size_t>(j)]);
    return s;
}

std::vector<double> dirichlet(std::size_t n, std::mt19937_64& rng) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> p(n);
    double sum = 0.0;
    for (auto& x : p) sum += (x = e(rng));
    for (auto& x : p) x /= sum;
    return p;
}

// theta q + (1 - theta) uniform is a doubly stochastic image of q, hence
// majorized by q.
std::vector<double> mix_toward_uniform(const std::vector<double>& q, double theta) {
    std::vector<double> p(q.size());
    const double u = (1.0 - theta) / static_cast<double>(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) p[i] = theta * q[i] + u;
    return p;
}

// Entanglement spectra of the row-field ground state across the vertically
// adjacent two-star cut, cached per coupling; levels below the eigensolver
// floor are dropped before any Renyi evaluation.
class BulkTwoStarSource {
  public:
    const std::vector<double>& spectrum(double lambda) {
        auto it = cache_.find(lambda);
        if (it != cache_.end()) return it->second;
        HamiltonianSpec spec;
        spec.lx = spec.ly = 4;
        spec.pert = row_field_perturbation(lambda);
        spec.basis = EdBasis::Gauge;
        const Hamiltonian h = build_hamiltonian(spec);
        const GroundStateResult gs = ground_state(h, positive_loop_sector(spec));
        const TorusLattice lat(4);
        const Bipartition bip = make_two_star_bipartition(lat, 0, 4);
        const auto ed = entanglement_spectrum_gauge(gs.psi, lat, bip.a_mask);
        std::vector<double> kept;
        for (Eigen::Index i = 0; i < ed.values.size(); ++i)
            if (ed.values[i] > 1e-10) kept.push_back(ed.values[i]);
        return cache_.emplace(lambda, std::move(kept)).first->second;
    }

    double renyi(double lambda, double alpha) { return distribution_renyi(spectrum(lambda), alpha); }

  private:
    std::map<double, std::vector<double>> cache_;
};

} // namespace

TEST_SUITE_BEGIN("convertibility");

TEST_CASE("majorization on the worked examples") {
    CHECK(majorizes({0.5, 0.5}, {1.0, 0.0}));
    CHECK(majorizes({0.5, 0.3, 0.2}, {0.6, 0.4})); // shorter vector zero-padded
    const std::vector<double> p = {0.5, 0.4, 0.1};
    const std::vector<double> q = {0.55, 0.25, 0.2};
    CHECK_FALSE(majorizes(p, q)); // 0.5 + 0.4 > 0.55 + 0.25
    CHECK_FALSE(majorizes(q, p)); // 0.55 > 0.5
    CHECK(majorizes(p, p));
    CHECK_THROWS_AS(bool(majorizes({0.5, 0.4}, {1.0, 0.0})), DomainError);
    CHECK_THROWS_AS(bool(majorizes({1.2, -0.2}, {1.0, 0.0})), DomainError);
    CHECK_THROWS_AS(bool(majorizes({}, {1.0})), DomainError);
}

TEST_CASE("majorization partial-order laws") {
    std::mt19937_64 rng(20260813);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    std::uniform_real_distribution<double> theta(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const auto q = dirichlet(size(rng), rng);
        // reflexive
        CHECK(majorizes(q, q));
        // permutations are equivalent: majorization both ways
        auto perm = q;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(majorizes(perm, q));
        CHECK(majorizes(q, perm));
        // transitive along a doubly stochastic chain r < p < q
        const auto p = mix_toward_uniform(q, theta(rng));
        const auto r = mix_toward_uniform(p, theta(rng));
        CHECK(majorizes(p, q));
        CHECK(majorizes(r, p));
        CHECK(majorizes(r, q));
        // antisymmetry up to permutation
        if (majorizes(q, p)) {
            auto qs = q, ps = p;
            std::sort(qs.begin(), qs.end());
            std::sort(ps.begin(), ps.end());
            for (std::size_t i = 0; i < qs.size(); ++i) CHECK(std::abs(qs[i] - ps[i]) < 1e-12);
        }
        // the uniform vector is majorized by everything of that size
        CHECK(majorizes(std::vector<double>(q.size(), 1.0 / static_cast<double>(q.size())), q));
    }
}

TEST_CASE("renyi entropies of distributions") {
    const std::vector<double> u8(8, 0.125);
    for (double alpha : {0.0, 0.5, 1.0, 2.0, 10.0})
        CHECK(distribution_renyi(u8, alpha) == doctest::Approx(std::log(8.0)).epsilon(1e-12));
    CHECK(distribution_renyi({1.0, 0.0}, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(distribution_renyi({1.0, 0.0}, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
    const std::vector<double> p = {0.7, 0.2, 0.1};
    CHECK(distribution_renyi(p, 1.0) ==
          doctest::Approx(-(0.7 * std::log(0.7) + 0.2 * std::log(0.2) + 0.1 * std::log(0.1)))
              .epsilon(1e-12));
    CHECK(distribution_renyi(p, 2.0) ==
          doctest::Approx(-std::log(0.49 + 0.04 + 0.01)).epsilon(1e-12));
    CHECK_THROWS_AS(distribution_renyi(p, -0.5), DomainError);
}

TEST_CASE("schur concavity implication") {
    // uniform over the support of q is majorized by q and maximizes entropy
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const auto q = dirichlet(6, rng);
        const std::vector<double> u(6, 1.0 / 6.0);
        CHECK(majorizes(u, q));
        CHECK(schur_concavity_check(u, q));
    }
    // random majorizing pairs across the default alpha grid
    std::uniform_int_distribution<std::size_t> size(2, 10);
    std::uniform_real_distribution<double> theta(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const auto q = dirichlet(size(rng), rng);
        const auto p = mix_toward_uniform(q, theta(rng));
        CHECK(schur_concavity_check(p, q));
        CHECK(schur_concavity_check(p, q, {0.1, 0.5, 1.0, 2.0, 10.0}));
    }
    // incomparable pair: vacuously true in both directions
    CHECK(schur_concavity_check({0.5, 0.4, 0.1}, {0.55, 0.25, 0.2}));
    CHECK(schur_concavity_check({0.55, 0.25, 0.2}, {0.5, 0.4, 0.1}));
}

TEST_CASE("sign map stencils, dead zone, and grid reversal") {
    const std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5};
    const std::vector<double> alphas = {0.5, 1.0, 2.0, 3.0};

    // slopes of both signs plus an exactly flat column
    const auto wedge = make_surface(lambdas, alphas,
                                    [](double l, double a) { return (2.0 - a) * l; });
    const SignMap sm = sign_map(wedge, 1e-8);
    for (int i = 0; i < 5; ++i) {
        CHECK(sm.signs(i, 0) == 1);
        CHECK(sm.signs(i, 1) == 1);
        CHECK(sm.signs(i, 2) == 0);
        CHECK(sm.signs(i, 3) == -1);
    }

    // constant surface maps to all zeros
    const auto flat = make_surface(lambdas, alphas, [](double, double a) { return 3.0 - a; });
    CHECK(sign_map(flat, 1e-8).signs.isZero());

    // the dead zone absorbs sub-epsilon slopes
    const auto faint = make_surface(lambdas, alphas,
                                    [](double l, double a) { return -1e-10 * l * (4.0 - a); });
    CHECK(sign_map(faint, 1e-8).signs.isZero());
    CHECK((sign_map(faint, 1e-12).signs.array() == -1).all());

    // reversing the grid flips every sign (uniform spacing keeps magnitudes)
    const auto bumpy = make_surface(lambdas, alphas, [](double l, double a) {
        return std::sin(7.0 * l) * (1.0 + 0.3 * a) - a;
    });
    RenyiSurface reversed = bumpy;
    reversed.values = bumpy.values.colwise().reverse().eval();
    const SignMap fwd = sign_map(bumpy, 1e-8);
    const SignMap rev = sign_map(reversed, 1e-8);
    for (Eigen::Index i = 0; i < fwd.signs.rows(); ++i)
        for (Eigen::Index j = 0; j < fwd.signs.cols(); ++j)
            CHECK(rev.signs(fwd.signs.rows() - 1 - i, j) == -fwd.signs(i, j));

    // guards
    const auto tiny = make_surface({0.1, 0.2}, alphas, [](double, double) { return 1.0; });
    CHECK_THROWS_AS(sign_map(tiny, 1e-8), DomainError);
    CHECK_THROWS_AS(sign_map(wedge, -1.0), DomainError);
    auto bad = wedge;
    bad.values(0, 1) = bad.values(0, 0) + 1.0; // increases with alpha
    CHECK_THROWS_AS(sign_map(bad, 1e-8), DomainError);
    CHECK_THROWS_AS(validate_surface(bad), DomainError);
}

TEST_CASE("deformed-state surfaces are non-increasing in both phases") {
    const TorusLattice lat(3);
    const std::vector<double> to_phase = {0.01, 0.06, 0.11, 0.16, 0.21, 0.26, 0.3};
    const std::vector<double> para_phase = {2.0, 2.5, 3.0, 3.5, 4.0};
    for (const Bipartition& bip :
         {make_two_star_bipartition(lat, 0, 1), make_plaquette_bipartition(lat, 0)}) {
        for (const auto& grid : {to_phase, para_phase}) {
            const auto surf = make_surface(grid, dlocc_alpha_grid(),
                                           [&](double l, double a) { return renyi_cc(lat, bip, l, a); },
                                           SurfaceSource::Cc);
            validate_surface(surf);
            const SignMap sm = sign_map(surf, default_epsilon(SurfaceSource::Cc));
            CHECK((sm.signs.array() <= 0).all());
            CHECK(is_dlocc_region(surf, grid.front(), grid.back(),
                                  default_epsilon(SurfaceSource::Cc)));
            // no sign change anywhere: the splitting index is absent
            const auto eval = [&](double l, double a) { return renyi_cc(lat, bip, l, a); };
            CHECK_FALSE(
                detect_alpha_c(sm, static_cast<int>(grid.size()) / 2, eval).has_value());
        }
    }
}

TEST_CASE("finite differences reproduce the analytic derivative sign") {
    const TorusLattice lat(3);
    const Bipartition bip = make_two_star_bipartition(lat, 0, 1);
    const std::vector<double> grid = {0.05, 0.1, 0.15, 0.2, 0.25, 0.3};
    const double eps = default_epsilon(SurfaceSource::Cc);
    const auto surf = make_surface(grid, dlocc_alpha_grid(),
                                   [&](double l, double a) { return renyi_cc(lat, bip, l, a); },
                                   SurfaceSource::Cc);
    const SignMap sm = sign_map(surf, eps);
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        for (std::size_t j = 0; j < dlocc_alpha_grid().size(); ++j) {
            const double d = renyi_derivative_cc(lat, bip, grid[i], dlocc_alpha_grid()[j]);
            if (std::abs(d) > 2 * eps)
                CHECK(sm.signs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
                      (d > 0 ? 1 : -1));
        }
}

TEST_CASE("splitting index detection") {
    const std::vector<double> lambdas = {0.1, 0.2, 0.3, 0.4, 0.5};
    const double alpha_c_true = 1.37;
    const auto split = [&](double l, double a) { return (alpha_c_true - a) * l; };
    const auto surf = make_surface(lambdas, dlocc_alpha_grid(), split);
    const SignMap sm = sign_map(surf, 1e-10);
    for (int i = 0; i < 5; ++i) {
        const auto ac = detect_alpha_c(sm, i, split);
        REQUIRE(bool(ac.has_value()));
        CHECK(std::abs(*ac - alpha_c_true) <= 1e-2);
    }
    // reversed orientation: derivative goes from negative to positive (the
    // -10a term keeps the surface ordered in alpha without touching d/dl)
    const auto split_up = [&](double l, double a) { return (a - alpha_c_true) * l - 10.0 * a; };
    const auto surf_up = make_surface(lambdas, {0.5, 1.0, 2.0, 3.0}, split_up);
    const SignMap sm_up = sign_map(surf_up, 1e-10);
    const auto ac_up = detect_alpha_c(sm_up, 2, split_up);
    REQUIRE(bool(ac_up.has_value()));
    CHECK(std::abs(*ac_up - alpha_c_true) <= 1e-2);

    // uniform column: absent
    const auto mono = make_surface(lambdas, {0.5, 1.0, 2.0}, [](double l, double a) {
        return -l * (1.0 + a);
    });
    CHECK_FALSE(bool(detect_alpha_c(sign_map(mono, 1e-10), 1,
                                    [](double l, double a) { return -l * (1.0 + a); })
                         .has_value()));

    // two sign changes over alpha: reported as an error
    const auto wiggle = [](double l, double a) { return std::sin(3.0 * a) * l * 1e-3; };
    auto wsurf = make_surface(lambdas, {0.5, 1.5, 2.5}, wiggle);
    // make the surface alpha-ordered while keeping the derivative wiggle
    for (Eigen::Index i = 0; i < wsurf.values.rows(); ++i)
        for (Eigen::Index j = 0; j < wsurf.values.cols(); ++j)
            wsurf.values(i, j) -= 0.1 * static_cast<double>(j);
    const SignMap wsm = sign_map(wsurf, 1e-10);
    CHECK_THROWS_AS(detect_alpha_c(wsm, 2, [&](double l, double a) { return wiggle(l, a); }),
                    MultiCrossingError);

    // guards
    CHECK_THROWS_AS(detect_alpha_c(sm, -1, split), DomainError);
    CHECK_THROWS_AS(detect_alpha_c(sm, 99, split), DomainError);
    CHECK_THROWS_AS(detect_alpha_c(sm, 0, SurfacePointFn{}), DomainError);
}

TEST_CASE("thin-cut surface is a dLOCC region in each phase") {
    const std::vector<double> to_phase = {0.15, 0.3, 0.45, 0.6, 0.75, 0.9};
    const std::vector<double> para_phase = {1.15, 1.5, 2.0, 2.5, 3.0};
    for (const auto& grid : {to_phase, para_phase}) {
        const auto surf = make_surface(grid, dlocc_alpha_grid(),
                                       [](double l, double a) { return plaquette_renyi(l, a); },
                                       SurfaceSource::Rowfield);
        validate_surface(surf);
        const double eps = default_epsilon(SurfaceSource::Rowfield);
        CHECK((sign_map(surf, eps).signs.array() <= 0).all());
        CHECK(is_dlocc_region(surf, grid.front(), grid.back(), eps));
    }
}

TEST_CASE("bulk two-star surface splits near zero coupling") {
    BulkTwoStarSource source;
    const std::vector<double> grid = {0.06, 0.12, 0.18};
    const std::vector<double> alphas = {0.1, 0.4, 1.0, 2.0};
    const auto surf = make_surface(grid, alphas,
                                   [&](double l, double a) { return source.renyi(l, a); },
                                   SurfaceSource::Ed);
    validate_surface(surf);
    const double eps = default_epsilon(SurfaceSource::Ed);
    const SignMap sm = sign_map(surf, eps);
    // small-alpha entropies grow toward the critical point while S_2 falls
    for (int i = 0; i < 3; ++i) {
        CHECK(sm.signs(i, 0) == 1);
        CHECK(sm.signs(i, 3) == -1);
    }
    CHECK_FALSE(is_dlocc_region(surf, grid.front(), grid.back(), eps));
    const auto ac = detect_alpha_c(sm, 1, [&](double l, double a) { return source.renyi(l, a); });
    REQUIRE(bool(ac.has_value()));
    CHECK(*ac > 0.1);
    CHECK(*ac < 2.0);
}

TEST_CASE("region guards") {
    const auto surf = make_surface({0.1, 0.2, 0.3, 0.4}, {0.5, 1.0, 2.0},
                                   [](double l, double a) { return -l * a; });
    CHECK_THROWS_AS(bool(is_dlocc_region(surf, 0.0, 0.5, 1e-8)), DomainError);
    CHECK_THROWS_AS(bool(is_dlocc_region(surf, 0.1, 0.2, 1e-8)), DomainError);
    CHECK_THROWS_AS(bool(is_dlocc_region(surf, 0.3, 0.2, 1e-8)), DomainError);
    CHECK(is_dlocc_region(surf, 0.1, 0.4, 1e-8));
}

TEST_SUITE_END();
