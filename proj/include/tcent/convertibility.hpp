// Majorization and differential-LOCC diagnostics over Renyi-entropy
// surfaces: sign maps of the coupling derivative, constant-sign (dLOCC)
// region tests, and detection of the Renyi index where the derivative
// changes sign (the splitting index alpha_c).
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcent/util.hpp"

namespace tcent {

enum class SurfaceSource { Cc, Rowfield, Ed, Cluster };

// S_alpha over a one-dimensional parameter scan. For two-coupling models the
// parameter is the radial coordinate along the scanned direction.
struct RenyiSurface {
    std::vector<double> parameter_grid; // strictly increasing scan coordinate
    std::vector<double> alpha_grid;     // strictly increasing, nonnegative
    Eigen::MatrixXd values;             // (parameter x alpha) entries S_alpha
    SurfaceSource source = SurfaceSource::Ed;
    std::string bipartition;            // label of the cut the surface describes
};

// Structural checks plus the ordering relation: at every grid point the
// entries must be non-increasing in alpha (within tol). Throws DomainError.
void validate_surface(const RenyiSurface& s, double tol = 1e-9);

// Sign of d/dparameter S_alpha at every grid point, from the declared
// stencil only: central differences in the interior, one-sided at the two
// ends, with |derivative| < epsilon mapped to 0.
struct SignMap {
    std::vector<double> parameter_grid;
    std::vector<double> alpha_grid;
    Eigen::MatrixXi signs; // (parameter x alpha) entries in {-1, 0, +1}
    double epsilon = 0.0;
};

// Dead-zone width: closed-form sources are limited by roundoff, eigensolver
// sources by the solver tolerance.
double default_epsilon(SurfaceSource source);

// Default Renyi indices for convertibility scans; brackets the splitting
// neighborhood around alpha ~ 1.3 on both sides.
const std::vector<double>& dlocc_alpha_grid();

// Renyi entropy of a probability vector (same normalization rules as
// majorizes); alpha = 1 is Shannon, alpha = 0 counts entries above 1e-12.
double distribution_renyi(const std::vector<double>& p, double alpha);

// p is majorized by q: every leading partial sum of sorted-descending q
// dominates the corresponding partial sum of p. The shorter vector is
// zero-padded. Inputs must each sum to 1 within 1e-9.
bool majorizes(const std::vector<double>& p, const std::vector<double>& q);

// If majorizes(p, q), verifies S_alpha(p) >= S_alpha(q) for every alpha in
// `alphas` (empty selects {0.1, 0.5, 1, 2, 10}); vacuously true otherwise.
bool schur_concavity_check(const std::vector<double>& p, const std::vector<double>& q,
                           const std::vector<double>& alphas = {});

// Requires at least 3 parameter points.
SignMap sign_map(const RenyiSurface& surface, double epsilon);

// Raised when a sign-map column changes sign more than once over alpha; the
// caller reports the condition rather than resolving it.
struct MultiCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Point evaluator S(parameter, alpha) used to refine alpha_c off the grid.
using SurfacePointFn = std::function<double(double parameter, double alpha)>;

// Splitting index at one parameter point: locates the single sign change of
// the column over alpha, then bisects, recomputing the derivative sign at
// midpoint alphas through `evaluate` with the same stencil and dead zone,
// until the bracket is narrower than 1e-2. Returns nullopt when the column
// has no sign change; throws MultiCrossingError on more than one.
std::optional<double> detect_alpha_c(const SignMap& signs, int parameter_index,
                                     const SurfacePointFn& evaluate);

// True iff the derivative sign is constant (zeros ignored) across every
// alpha and every grid point inside [param_lo, param_hi]. The sign map is
// recomputed on the restricted grid, which must contain at least 3 points.
bool is_dlocc_region(const RenyiSurface& surface, double param_lo, double param_hi,
                     double epsilon);

} // namespace tcent
