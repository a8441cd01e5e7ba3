#include "tcent/convertibility.hpp"

#include <algorithm>
#include <cmath>

namespace tcent {

namespace {

constexpr double kNormTol = 1e-9;       // distributions must sum to 1 this closely
constexpr double kPartialSumSlack = 1e-12;
constexpr double kAlphaCWidth = 1e-2;   // bisection bracket target
constexpr double kSupportCut = 1e-12;   // alpha = 0 support threshold

void require_increasing(const std::vector<double>& g, const char* what) {
    if (g.empty()) throw DomainError(std::string(what) + ": empty grid");
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i] > g[i - 1])) throw DomainError(std::string(what) + ": grid must be strictly increasing");
}

// Validates and returns the entries sorted in descending order.
std::vector<double> sorted_distribution(const std::vector<double>& p, const char* what) {
    if (p.empty()) throw DomainError(std::string(what) + ": empty distribution");
    KahanSum sum;
    std::vector<double> s;
    s.reserve(p.size());
    for (double x : p) {
        if (x < -kNormTol) throw DomainError(std::string(what) + ": negative entry");
        s.push_back(std::max(x, 0.0));
        sum.add(x);
    }
    if (std::abs(sum.value() - 1.0) > kNormTol)
        throw DomainError(std::string(what) + ": entries must sum to 1");
    std::sort(s.begin(), s.end(), std::greater<>());
    return s;
}

int dead_zone_sign(double d, double epsilon) {
    if (std::abs(d) < epsilon) return 0;
    return d > 0 ? 1 : -1;
}

// The declared stencil at one parameter index, as a slope.
double stencil_slope(const std::vector<double>& grid,
                     const std::function<double(int)>& value_at, int i) {
    const int n = static_cast<int>(grid.size());
    if (i > 0 && i < n - 1)
        return (value_at(i + 1) - value_at(i - 1)) / (grid[i + 1] - grid[i - 1]);
    if (i == 0) return (value_at(1) - value_at(0)) / (grid[1] - grid[0]);
    return (value_at(n - 1) - value_at(n - 2)) / (grid[n - 1] - grid[n - 2]);
}

} // namespace

void validate_surface(const RenyiSurface& s, double tol) {
    require_increasing(s.parameter_grid, "validate_surface(parameter)");
    require_increasing(s.alpha_grid, "validate_surface(alpha)");
    if (s.alpha_grid.front() < 0.0)
        throw DomainError("validate_surface: alpha must be nonnegative");
    const auto np = static_cast<Eigen::Index>(s.parameter_grid.size());
    const auto na = static_cast<Eigen::Index>(s.alpha_grid.size());
    if (s.values.rows() != np || s.values.cols() != na)
        throw DomainError("validate_surface: value matrix does not match the grids");
    for (Eigen::Index i = 0; i < np; ++i)
        for (Eigen::Index j = 1; j < na; ++j)
            if (s.values(i, j) > s.values(i, j - 1) + tol)
                throw DomainError("validate_surface: entries increase with alpha at a grid point");
}

double default_epsilon(SurfaceSource source) {
    switch (source) {
    case SurfaceSource::Cc:
    case SurfaceSource::Rowfield:
        return 1e-8;
    case SurfaceSource::Ed:
    case SurfaceSource::Cluster:
        return 1e-6;
    }
    throw DomainError("default_epsilon: unknown source");
}

const std::vector<double>& dlocc_alpha_grid() {
    static const std::vector<double> grid = {0.05, 0.1, 0.2, 0.4, 0.6,
                                             0.8,  1.0, 1.3, 2.0, 3.0,
                                             5.0,  10.0};
    return grid;
}

double distribution_renyi(const std::vector<double>& p, double alpha) {
    if (alpha < 0) throw DomainError("distribution_renyi: alpha must be nonnegative");
    const auto s = sorted_distribution(p, "distribution_renyi");
    if (alpha == 0.0) {
        std::size_t k = 0;
        for (double v : s)
            if (v > kSupportCut) ++k;
        if (k == 0) throw DomainError("distribution_renyi: empty support");
        return std::log(static_cast<double>(k));
    }
    KahanSum acc;
    if (std::abs(alpha - 1.0) < 1e-12) {
        for (double v : s)
            if (v > 0.0) acc.add(-v * std::log(v));
        return acc.value();
    }
    for (double v : s)
        if (v > 0.0) acc.add(std::pow(v, alpha));
    return std::log(acc.value()) / (1.0 - alpha);
}

bool majorizes(const std::vector<double>& p, const std::vector<double>& q) {
    auto ps = sorted_distribution(p, "majorizes(p)");
    auto qs = sorted_distribution(q, "majorizes(q)");
    const std::size_t n = std::max(ps.size(), qs.size());
    ps.resize(n, 0.0);
    qs.resize(n, 0.0);
    KahanSum psum, qsum;
    for (std::size_t k = 0; k < n; ++k) {
        psum.add(ps[k]);
        qsum.add(qs[k]);
        if (qsum.value() + kPartialSumSlack < psum.value()) return false;
    }
    return true;
}

bool schur_concavity_check(const std::vector<double>& p, const std::vector<double>& q,
                           const std::vector<double>& alphas) {
    static const std::vector<double> fallback = {0.1, 0.5, 1.0, 2.0, 10.0};
    if (!majorizes(p, q)) return true; // no ordering, nothing to assert
    const auto& grid = alphas.empty() ? fallback : alphas;
    for (double alpha : grid)
        if (distribution_renyi(p, alpha) < distribution_renyi(q, alpha) - kNormTol) return false;
    return true;
}

SignMap sign_map(const RenyiSurface& surface, double epsilon) {
    validate_surface(surface);
    if (epsilon < 0) throw DomainError("sign_map: epsilon must be nonnegative");
    const int np = static_cast<int>(surface.parameter_grid.size());
    const int na = static_cast<int>(surface.alpha_grid.size());
    if (np < 3) throw DomainError("sign_map: need at least 3 parameter points");
    SignMap out;
    out.parameter_grid = surface.parameter_grid;
    out.alpha_grid = surface.alpha_grid;
    out.epsilon = epsilon;
    out.signs.resize(np, na);
    for (int j = 0; j < na; ++j) {
        const auto column = [&](int i) { return surface.values(i, j); };
        for (int i = 0; i < np; ++i)
            out.signs(i, j) = dead_zone_sign(stencil_slope(surface.parameter_grid, column, i), epsilon);
    }
    return out;
}

std::optional<double> detect_alpha_c(const SignMap& signs, int parameter_index,
                                     const SurfacePointFn& evaluate) {
    const int np = static_cast<int>(signs.parameter_grid.size());
    const int na = static_cast<int>(signs.alpha_grid.size());
    if (parameter_index < 0 || parameter_index >= np)
        throw DomainError("detect_alpha_c: parameter index out of range");
    if (!evaluate) throw DomainError("detect_alpha_c: evaluator required");

    // Locate sign changes between consecutive nonzero entries of the column.
    int crossings = 0;
    int prev_sign = 0, lo_sign = 0;
    double prev_alpha = 0.0, lo = 0.0, hi = 0.0;
    for (int j = 0; j < na; ++j) {
        const int s = signs.signs(parameter_index, j);
        if (s == 0) continue;
        const double alpha = signs.alpha_grid[static_cast<std::size_t>(j)];
        if (prev_sign != 0 && s != prev_sign && ++crossings == 1) {
            lo = prev_alpha;
            lo_sign = prev_sign;
            hi = alpha;
        }
        prev_sign = s;
        prev_alpha = alpha;
    }
    if (crossings == 0) return std::nullopt;
    if (crossings > 1) throw MultiCrossingError("detect_alpha_c: multiple sign changes over alpha");

    // Derivative sign at an off-grid alpha, same stencil and dead zone.
    const auto sign_at = [&](double alpha) {
        const auto value_at = [&](int i) {
            return evaluate(signs.parameter_grid[static_cast<std::size_t>(i)], alpha);
        };
        return dead_zone_sign(stencil_slope(signs.parameter_grid, value_at, parameter_index),
                              signs.epsilon);
    };

    while (hi - lo > kAlphaCWidth) {
        const double mid = 0.5 * (lo + hi);
        const int s = sign_at(mid);
        if (s == 0) return mid; // inside the dead zone: the crossing itself
        if (s == lo_sign)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

bool is_dlocc_region(const RenyiSurface& surface, double param_lo, double param_hi,
                     double epsilon) {
    validate_surface(surface);
    if (!(param_lo <= param_hi)) throw DomainError("is_dlocc_region: empty range");
    if (param_lo < surface.parameter_grid.front() - 1e-12 ||
        param_hi > surface.parameter_grid.back() + 1e-12)
        throw DomainError("is_dlocc_region: sub-range outside the grid");

    RenyiSurface restricted;
    restricted.alpha_grid = surface.alpha_grid;
    restricted.source = surface.source;
    restricted.bipartition = surface.bipartition;
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < surface.parameter_grid.size(); ++i) {
        const double x = surface.parameter_grid[i];
        if (x >= param_lo - 1e-12 && x <= param_hi + 1e-12) {
            restricted.parameter_grid.push_back(x);
            rows.push_back(static_cast<Eigen::Index>(i));
        }
    }
    if (rows.size() < 3) throw DomainError("is_dlocc_region: need at least 3 points in range");
    restricted.values.resize(static_cast<Eigen::Index>(rows.size()), surface.values.cols());
    for (std::size_t r = 0; r < rows.size(); ++r)
        restricted.values.row(static_cast<Eigen::Index>(r)) = surface.values.row(rows[r]);

    const SignMap sm = sign_map(restricted, epsilon);
    int seen = 0;
    for (Eigen::Index i = 0; i < sm.signs.rows(); ++i)
        for (Eigen::Index j = 0; j < sm.signs.cols(); ++j) {
            const int s = sm.signs(i, j);
            if (s == 0) continue;
            if (seen == 0)
                seen = s;
            else if (s != seen)
                return false;
        }
    return true;
}

} // namespace tcent
