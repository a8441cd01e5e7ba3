#include "tcent/ed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "tcent/gauge.hpp"
#include "tcent/util.hpp"

namespace tcent {

namespace {

constexpr double kSupportThreshold = 1e-10;

inline int parity_sign(std::uint64_t bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

} // namespace

// ---------------------------------------------------------------------------
// RectTorus

RectTorus::RectTorus(int lx, int ly) : lx_(lx), ly_(ly) {
    if (lx < 2 || ly < 2) throw DomainError("RectTorus: both dimensions must be >= 2");
    if (2 * lx * ly > 64) throw CapacityError("RectTorus: more than 64 edges");
    stars_.resize(static_cast<std::size_t>(n_vertices()));
    plaquettes_.resize(static_cast<std::size_t>(n_vertices()));
    for (int r = 0; r < ly_; ++r) {
        for (int c = 0; c < lx_; ++c) {
            const int v = r * lx_ + c;
            std::uint64_t star = 0;
            star |= std::uint64_t{1} << edge_id(r, c, 0);
            star |= std::uint64_t{1} << edge_id(r, c - 1, 0);
            star |= std::uint64_t{1} << edge_id(r, c, 1);
            star |= std::uint64_t{1} << edge_id(r - 1, c, 1);
            stars_[static_cast<std::size_t>(v)] = star;
            std::uint64_t plaq = 0;
            plaq |= std::uint64_t{1} << edge_id(r, c, 0);
            plaq |= std::uint64_t{1} << edge_id(r + 1, c, 0);
            plaq |= std::uint64_t{1} << edge_id(r, c, 1);
            plaq |= std::uint64_t{1} << edge_id(r, c + 1, 1);
            plaquettes_[static_cast<std::size_t>(v)] = plaq;
        }
    }
}

int RectTorus::edge_id(int row, int col, int orientation) const {
    row = ((row % ly_) + ly_) % ly_;
    col = ((col % lx_) + lx_) % lx_;
    return 2 * (row * lx_ + col) + orientation;
}

std::uint64_t RectTorus::zloop_row(int row) const {
    std::uint64_t m = 0;
    for (int c = 0; c < lx_; ++c) m |= std::uint64_t{1} << edge_id(row, c, 0);
    return m;
}

std::uint64_t RectTorus::zloop_col(int col) const {
    std::uint64_t m = 0;
    for (int r = 0; r < ly_; ++r) m |= std::uint64_t{1} << edge_id(r, col, 1);
    return m;
}

int RectTorus::shifted_edge(int e, int drow, int dcol) const {
    const int o = e & 1;
    const int cell = e >> 1;
    const int r = cell / lx_;
    const int c = cell % lx_;
    return edge_id(r + drow, c + dcol, o);
}

// ---------------------------------------------------------------------------
// Perturbation factories

Perturbation exp_star_perturbation(double lambda) {
    Perturbation p;
    p.kind = PerturbationKind::ExpStar;
    p.lambda = lambda;
    return p;
}

Perturbation row_field_perturbation(double lambda) {
    Perturbation p;
    p.kind = PerturbationKind::RowField;
    p.lambda = lambda;
    return p;
}

Perturbation edge_ising_perturbation(double lambda_x, double lambda_z) {
    Perturbation p;
    p.kind = PerturbationKind::EdgeIsing;
    p.lambda_x = lambda_x;
    p.lambda_z = lambda_z;
    return p;
}

Perturbation cluster_perturbation(double lambda) {
    Perturbation p;
    p.kind = PerturbationKind::Cluster;
    p.lambda = lambda;
    return p;
}

// ---------------------------------------------------------------------------
// Hamiltonian assembly

namespace {

void push_term(std::vector<PauliTerm>& terms, double coeff, std::uint64_t x, std::uint64_t z) {
    if (coeff == 0.0) return;
    terms.push_back(PauliTerm{coeff, x, z});
}

// Expand exp(-lambda * sum_{i in star} sigma^z_i) exactly into its sixteen
// diagonal Pauli strings: prod_i (cosh(lambda) I - sinh(lambda) sigma^z_i).
void push_exp_star_terms(std::vector<PauliTerm>& terms, double lambda, std::uint64_t star) {
    const double ch = std::cosh(lambda);
    const double sh = std::sinh(lambda);
    std::uint64_t sub = 0;
    for (;;) {
        const int k = std::popcount(sub);
        const double coeff =
            std::pow(ch, 4 - k) * ((k & 1) ? -std::pow(sh, k) : std::pow(sh, k));
        push_term(terms, coeff, 0, sub);
        sub = (sub - star) & star; // next subset of the star edges
        if (sub == 0) break;
    }
}

std::vector<PauliTerm> full_basis_terms(const HamiltonianSpec& spec) {
    std::vector<PauliTerm> terms;
    if (spec.pert.kind == PerturbationKind::Cluster) {
        const int nx = spec.lx, ny = spec.ly;
        auto site = [nx, ny](int r, int c) {
            r = ((r % ny) + ny) % ny;
            c = ((c % nx) + nx) % nx;
            return r * nx + c;
        };
        for (int r = 0; r < ny; ++r) {
            for (int c = 0; c < nx; ++c) {
                const std::uint64_t xi = std::uint64_t{1} << site(r, c);
                std::uint64_t znbr = 0;
                znbr ^= std::uint64_t{1} << site(r, c - 1);
                znbr ^= std::uint64_t{1} << site(r, c + 1);
                znbr ^= std::uint64_t{1} << site(r - 1, c);
                znbr ^= std::uint64_t{1} << site(r + 1, c);
                push_term(terms, -1.0, xi, znbr);
                for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
                    const std::uint64_t pair = xi | (std::uint64_t{1} << site(r + dr, c + dc));
                    push_term(terms, -spec.pert.lambda, pair, 0);
                    push_term(terms, -0.5 * spec.pert.lambda, 0, pair);
                }
            }
        }
        return terms;
    }
    const RectTorus rt(spec.lx, spec.ly);
    for (int v = 0; v < rt.n_vertices(); ++v) push_term(terms, -1.0, rt.star_mask(v), 0);
    for (int p = 0; p < rt.n_vertices(); ++p) push_term(terms, -1.0, 0, rt.plaquette_mask(p));
    switch (spec.pert.kind) {
        case PerturbationKind::ExpStar:
            for (int v = 0; v < rt.n_vertices(); ++v)
                push_exp_star_terms(terms, spec.pert.lambda, rt.star_mask(v));
            break;
        case PerturbationKind::RowField:
            for (int r = 0; r < rt.ly(); ++r)
                for (int c = 0; c < rt.lx(); ++c)
                    push_term(terms, -spec.pert.lambda, 0, std::uint64_t{1} << rt.edge_id(r, c, 0));
            break;
        case PerturbationKind::EdgeIsing:
            for (int e = 0; e < rt.n_edges(); ++e) {
                for (auto [dr, dc] : {std::pair{0, 1}, std::pair{1, 0}}) {
                    const std::uint64_t pair =
                        (std::uint64_t{1} << e) | (std::uint64_t{1} << rt.shifted_edge(e, dr, dc));
                    push_term(terms, -spec.pert.lambda_x, pair, 0);
                    push_term(terms, -spec.pert.lambda_z, 0, pair);
                }
            }
            break;
        case PerturbationKind::Cluster:
            break; // handled above
    }
    return terms;
}

} // namespace

Hamiltonian build_hamiltonian(const HamiltonianSpec& spec) {
    if (spec.lx < 2 || spec.ly < 2)
        throw DomainError("build_hamiltonian: both lattice dimensions must be >= 2");
    Hamiltonian h;
    h.spec = spec;

    if (spec.basis == EdBasis::Gauge) {
        if (spec.pert.kind != PerturbationKind::ExpStar &&
            spec.pert.kind != PerturbationKind::RowField)
            throw DomainError("build_hamiltonian: gauge basis requires a perturbation that "
                              "commutes with every plaquette");
        if (spec.lx != spec.ly)
            throw DomainError("build_hamiltonian: gauge basis requires a square torus");
        const int L = spec.lx;
        const int ng = L * L - 1;
        if (ng > 15) throw CapacityError("build_hamiltonian: gauge basis limited to L <= 4");
        const TorusLattice lat(L);
        h.n_qubits = lat.n_edges();
        h.n_generators = ng;
        h.dim = Eigen::Index{1} << ng;

        for (int s = 0; s < ng; ++s) h.gauge_flips.push_back(std::uint32_t{1} << s);
        // The dependent star is the product of all the others.
        h.gauge_flips.push_back((std::uint32_t{1} << ng) - 1);

        std::uint64_t horiz = 0;
        for (int r = 0; r < L; ++r) horiz |= lat.zloop_row(r);
        double expv[5];
        for (int k = 0; k <= 4; ++k) expv[k] = std::exp(-spec.pert.lambda * (4.0 - 2.0 * k));

        h.diagonal = Eigen::VectorXd::Zero(h.dim);
        std::vector<std::uint64_t> edge(static_cast<std::size_t>(h.dim));
        edge[0] = 0;
        const double plaq_const = -static_cast<double>(L * L);
        for (std::uint64_t m = 0; m < static_cast<std::uint64_t>(h.dim); ++m) {
            if (m) edge[m] = edge[m & (m - 1)] ^ lat.star_mask(std::countr_zero(m));
            double d = plaq_const;
            if (spec.pert.kind == PerturbationKind::ExpStar) {
                for (int v = 0; v < L * L; ++v)
                    d += expv[std::popcount(edge[m] & lat.star_mask(v))];
            } else {
                const int down = std::popcount(edge[m] & horiz);
                d += -spec.pert.lambda * static_cast<double>(L * L - 2 * down);
            }
            h.diagonal[static_cast<Eigen::Index>(m)] = d;
        }
        return h;
    }

    // Full computational basis.
    h.n_qubits = spec.pert.kind == PerturbationKind::Cluster ? spec.lx * spec.ly
                                                             : 2 * spec.lx * spec.ly;
    if (h.n_qubits > 18) throw CapacityError("build_hamiltonian: full basis limited to 18 qubits");
    h.dim = Eigen::Index{1} << h.n_qubits;
    h.terms = full_basis_terms(spec);
    h.diagonal = Eigen::VectorXd::Zero(h.dim);
    for (const auto& t : h.terms) {
        if (t.x_mask != 0) {
            h.offdiag.push_back(t);
            continue;
        }
        for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(h.dim); ++b)
            h.diagonal[static_cast<Eigen::Index>(b)] += t.coeff * parity_sign(b & t.z_mask);
    }
    return h;
}

void Hamiltonian::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
    if (x.size() != dim) throw DomainError("Hamiltonian::apply: dimension mismatch");
    y.resize(dim);
    const auto n = static_cast<std::uint64_t>(dim);
    auto run = [&](std::uint64_t lo, std::uint64_t hi) {
        if (spec.basis == EdBasis::Gauge) {
            for (std::uint64_t m = lo; m < hi; ++m) {
                double acc = diagonal[static_cast<Eigen::Index>(m)] * x[static_cast<Eigen::Index>(m)];
                for (const std::uint32_t f : gauge_flips)
                    acc -= x[static_cast<Eigen::Index>(m ^ f)];
                y[static_cast<Eigen::Index>(m)] = acc;
            }
        } else {
            for (std::uint64_t b = lo; b < hi; ++b) {
                double acc = diagonal[static_cast<Eigen::Index>(b)] * x[static_cast<Eigen::Index>(b)];
                for (const auto& t : offdiag) {
                    const std::uint64_t src = b ^ t.x_mask;
                    acc += t.coeff * parity_sign(src & t.z_mask) * x[static_cast<Eigen::Index>(src)];
                }
                y[static_cast<Eigen::Index>(b)] = acc;
            }
        }
    };
    if (n >= (std::uint64_t{1} << 14)) {
        const unsigned threads = default_thread_count();
        const std::uint64_t chunks = threads * 4;
        const std::uint64_t step = (n + chunks - 1) / chunks;
        parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t i) {
            const std::uint64_t lo = static_cast<std::uint64_t>(i) * step;
            run(lo, std::min(n, lo + step));
        });
    } else {
        run(0, n);
    }
}

Eigen::MatrixXd Hamiltonian::dense() const {
    if (dim > 4096) throw CapacityError("Hamiltonian::dense: dimension above 4096");
    Eigen::MatrixXd m(dim, dim);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim), col;
    for (Eigen::Index j = 0; j < dim; ++j) {
        e[j] = 1.0;
        apply(e, col);
        m.col(j) = col;
        e[j] = 0.0;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Eigensolvers

namespace {

Eigen::MatrixXd apply_block(const Hamiltonian& h, const Eigen::MatrixXd& x) {
    Eigen::MatrixXd out(x.rows(), x.cols());
    Eigen::VectorXd col;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        h.apply(x.col(j), col);
        out.col(j) = col;
    }
    return out;
}

// Twice-iterated modified Gram-Schmidt of the columns of m against ext and
// against each other; columns whose norm shrinks below droptol times the
// original are dropped.
Eigen::MatrixXd orthonormalize_against(const Eigen::MatrixXd& ext, const Eigen::MatrixXd& m,
                                       double droptol = 1e-8) {
    std::vector<Eigen::VectorXd> kept;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        Eigen::VectorXd v = m.col(j);
        const double orig = v.norm();
        if (!(orig > 0.0)) continue;
        for (int pass = 0; pass < 2; ++pass) {
            if (ext.cols() > 0) v -= ext * (ext.transpose() * v);
            for (const auto& q : kept) v -= q * q.dot(v);
        }
        const double n = v.norm();
        if (n < droptol * orig) continue;
        kept.push_back(v / n);
    }
    Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t i = 0; i < kept.size(); ++i)
        out.col(static_cast<Eigen::Index>(i)) = kept[i];
    return out;
}

// Locally optimal block preconditioned conjugate gradient for the lowest
// eigenpairs of a symmetric operator (no preconditioner; the desk-scale
// models are gapped and well conditioned). The search block carries a few
// guard vectors beyond the requested count; convergence is enforced on the
// requested pairs only.
EigenPairs lobpcg_lowest(const Hamiltonian& h, int nev, const EdOptions& opts) {
    const Eigen::Index dim = h.dim;
    const int m = std::min<Eigen::Index>(std::max(nev, 8) + 4, dim / 2);
    if (m < nev) throw CapacityError("lobpcg: dimension too small for the requested block");

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd x(dim, m);
    for (Eigen::Index j = 0; j < m; ++j)
        for (Eigen::Index i = 0; i < dim; ++i) x(i, j) = gauss(rng);
    x = orthonormalize_against(Eigen::MatrixXd(dim, 0), x);
    Eigen::MatrixXd ax = apply_block(h, x);
    Eigen::MatrixXd p(dim, 0);

    Eigen::VectorXd lam = Eigen::VectorXd::Zero(m);
    for (int it = 0; it < opts.max_iterations; ++it) {
        // Rayleigh-Ritz inside the current block.
        Eigen::MatrixXd c = x.transpose() * ax;
        c = 0.5 * (c + c.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
        x = (x * es.eigenvectors()).eval();
        ax = (ax * es.eigenvectors()).eval();
        lam = es.eigenvalues();

        Eigen::MatrixXd r = ax - x * lam.asDiagonal();
        bool done = true;
        for (int i = 0; i < nev; ++i)
            if (r.col(i).norm() > opts.tol * std::max(1.0, std::abs(lam[i]))) {
                done = false;
                break;
            }
        if (done) return EigenPairs{lam.head(nev), x.leftCols(nev)};

        Eigen::MatrixXd rp(dim, r.cols() + p.cols());
        rp.leftCols(r.cols()) = r;
        if (p.cols() > 0) rp.rightCols(p.cols()) = p;
        const Eigen::MatrixXd e = orthonormalize_against(x, rp);
        if (e.cols() == 0)
            throw std::runtime_error("lobpcg: search space collapsed before convergence");
        const Eigen::MatrixXd ae = apply_block(h, e);

        Eigen::MatrixXd s(dim, m + e.cols());
        s << x, e;
        Eigen::MatrixXd as(dim, m + e.cols());
        as << ax, ae;
        Eigen::MatrixXd g = s.transpose() * as;
        g = 0.5 * (g + g.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esg(g);
        const Eigen::MatrixXd y = esg.eigenvectors().leftCols(m);

        x = s * y;
        ax = as * y;
        p = e * y.bottomRows(e.cols());
        if ((it + 1) % 64 == 0) ax = apply_block(h, x); // clear accumulated drift
    }
    throw std::runtime_error("lobpcg: no convergence within the iteration limit");
}

} // namespace

EigenPairs lowest_eigenpairs(const Hamiltonian& h, int nev, const EdOptions& opts) {
    if (nev < 1) throw DomainError("lowest_eigenpairs: nev must be positive");
    nev = static_cast<int>(std::min<Eigen::Index>(nev, h.dim));
    if (h.dim <= 2048 && !opts.force_iterative) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.dense());
        return EigenPairs{es.eigenvalues().head(nev), es.eigenvectors().leftCols(nev)};
    }
    return lobpcg_lowest(h, nev, opts);
}

// ---------------------------------------------------------------------------
// Sector selection

SectorSelector positive_loop_sector(const HamiltonianSpec& spec) {
    SectorSelector sel;
    if (spec.pert.kind == PerturbationKind::Cluster) {
        sel.use_sectors = false;
        return sel;
    }
    const RectTorus rt(spec.lx, spec.ly);
    sel.w1_mask = rt.zloop_row(0);
    sel.w2_mask = rt.zloop_col(0);
    if (spec.pert.kind == PerturbationKind::EdgeIsing && spec.lx != spec.ly) {
        // On a lattice with one direction of length 2 the same-orientation
        // neighbor pairs wrap into noncontractible X loops that enter the
        // Hamiltonian at first order and destroy the conjugate Z-loop label
        // (its expectation is identically zero for any nonzero coupling).
        // Leave that label unconstrained; the other one survives.
        if (spec.lx == 2) sel.target_w2 = 0; // two columns: column-loop label dies
        if (spec.ly == 2) sel.target_w1 = 0; // two rows: row-loop label dies
    }
    return sel;
}

double diagonal_z_expectation(const Eigen::VectorXd& psi, std::uint64_t z_mask) {
    KahanSum acc;
    for (Eigen::Index b = 0; b < psi.size(); ++b)
        acc.add(psi[b] * psi[b] * parity_sign(static_cast<std::uint64_t>(b) & z_mask));
    return acc.value();
}

double x_string_expectation(const Eigen::VectorXd& psi, std::uint64_t x_mask) {
    KahanSum acc;
    for (Eigen::Index b = 0; b < psi.size(); ++b)
        acc.add(psi[static_cast<Eigen::Index>(static_cast<std::uint64_t>(b) ^ x_mask)] * psi[b]);
    return acc.value();
}

double gauge_expectation(const Eigen::VectorXd& gauge_psi, const TorusLattice& lat,
                         std::uint32_t gen_mask, std::uint64_t z_mask) {
    const int ng = n_generators(lat);
    const auto dim = std::uint64_t{1} << ng;
    if (gauge_psi.size() != static_cast<Eigen::Index>(dim))
        throw DomainError("gauge_expectation: state size does not match the lattice");
    if (gen_mask >= (std::uint32_t{1} << ng))
        throw DomainError("gauge_expectation: generator mask out of range");
    KahanSum acc;
    std::vector<std::uint64_t> edge(static_cast<std::size_t>(dim));
    edge[0] = 0;
    for (std::uint64_t m = 0; m < dim; ++m) {
        if (m) edge[m] = edge[m & (m - 1)] ^ lat.star_mask(std::countr_zero(m));
        acc.add(gauge_psi[static_cast<Eigen::Index>(m ^ gen_mask)] *
                gauge_psi[static_cast<Eigen::Index>(m)] * parity_sign(edge[m] & z_mask));
    }
    return acc.value();
}

namespace {

double rayleigh(const Hamiltonian& h, const Eigen::VectorXd& v) {
    Eigen::VectorXd hv;
    h.apply(v, hv);
    return v.dot(hv);
}

// Fill the loop-label and plaquette diagnostics of a selected full-basis
// state. The cluster model lives on a site lattice, so the edge-lattice
// diagnostics stay at their defaults there.
GroundStateResult finalize_full_basis(const Hamiltonian& h, const SectorSelector& sector,
                                      const EdOptions& opts, GroundStateResult out) {
    if (h.spec.pert.kind == PerturbationKind::Cluster) return out;
    out.w1 = diagonal_z_expectation(out.psi, sector.w1_mask);
    out.w2 = diagonal_z_expectation(out.psi, sector.w2_mask);
    const RectTorus rt(h.spec.lx, h.spec.ly);
    double minp = 1.0;
    for (int p = 0; p < rt.n_vertices(); ++p)
        minp = std::min(minp, diagonal_z_expectation(out.psi, rt.plaquette_mask(p)));
    out.min_plaquette = minp;
    if (minp < opts.min_loop_expectation)
        throw DomainError("ground_state: plaquette expectations collapsed; the state left "
                          "the gauge sector");
    return out;
}

} // namespace

GroundStateResult ground_state(const Hamiltonian& h, const SectorSelector& sector,
                               const EdOptions& opts) {
    const int nev = static_cast<int>(std::min<Eigen::Index>(opts.n_eigenpairs, h.dim));
    EigenPairs pairs = lowest_eigenpairs(h, nev, opts);
    GroundStateResult out;
    out.low_energies.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());

    if (h.spec.basis == EdBasis::Gauge) {
        // The gauge basis spans exactly the sector with both loop labels +1.
        if (sector.use_sectors && (sector.target_w1 < 0 || sector.target_w2 < 0))
            throw DomainError("ground_state: gauge basis fixes both loop labels to +1");
        out.psi = pairs.vectors.col(0);
        out.energy = pairs.values[0];
        out.w1 = out.w2 = 1.0;
        out.min_plaquette = 1.0;
        return out;
    }

    if (!sector.use_sectors) {
        if (pairs.values.size() >= 2 && pairs.values[1] - pairs.values[0] < opts.degeneracy_tol)
            throw DomainError("ground_state: degenerate ground state without sector targets");
        out.psi = pairs.vectors.col(0);
        out.energy = pairs.values[0];
        return finalize_full_basis(h, sector, opts, std::move(out));
    }

    // Candidate block: everything within block_window of the bottom, split
    // into numerically degenerate clusters.
    int block = 1;
    while (block < pairs.values.size() &&
           pairs.values[block] - pairs.values[0] <= opts.block_window)
        ++block;
    if (block == pairs.values.size() && block < h.dim)
        throw DomainError("ground_state: low-energy block exceeds the computed band; "
                          "raise n_eigenpairs");

    struct Candidate {
        Eigen::VectorXd v;
        double w1, w2, score;
    };
    // Clusters are visited in energy order; the first one containing a
    // candidate that matches the targets wins, so a higher-lying state can
    // never shadow an eligible lower one however extreme its labels.
    std::vector<Candidate> eligible;
    int start = 0;
    while (start < block && eligible.empty()) {
        int stop = start + 1;
        while (stop < block && pairs.values[stop] - pairs.values[stop - 1] < opts.degeneracy_tol)
            ++stop;
        const int k = stop - start;
        Eigen::MatrixXd basis = pairs.vectors.middleCols(start, k);
        if (k > 1) {
            // Rotate the degenerate cluster to definite loop labels. The
            // weighted sum separates the four (w1, w2) sign combinations.
            Eigen::MatrixXd w1m(k, k), w2m(k, k);
            for (int i = 0; i < k; ++i) {
                Eigen::VectorXd s1(basis.rows()), s2(basis.rows());
                for (Eigen::Index b = 0; b < basis.rows(); ++b) {
                    s1[b] = basis(b, i) * parity_sign(static_cast<std::uint64_t>(b) & sector.w1_mask);
                    s2[b] = basis(b, i) * parity_sign(static_cast<std::uint64_t>(b) & sector.w2_mask);
                }
                for (int j = 0; j < k; ++j) {
                    w1m(i, j) = s1.dot(basis.col(j));
                    w2m(i, j) = s2.dot(basis.col(j));
                }
            }
            Eigen::MatrixXd joint = w1m + 2.0 * w2m;
            joint = 0.5 * (joint + joint.transpose()).eval();
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(joint);
            basis = (basis * es.eigenvectors()).eval();
        }
        for (int i = 0; i < k; ++i) {
            Candidate c;
            c.v = basis.col(i);
            c.w1 = diagonal_z_expectation(c.v, sector.w1_mask);
            c.w2 = diagonal_z_expectation(c.v, sector.w2_mask);
            // A zero target leaves that loop label unconstrained: it neither
            // gates eligibility nor contributes to the selection score.
            c.score = (sector.target_w1 != 0 ? std::abs(c.w1) : 0.0) +
                      (sector.target_w2 != 0 ? std::abs(c.w2) : 0.0);
            const bool ok1 =
                sector.target_w1 == 0 || c.w1 * sector.target_w1 >= opts.min_loop_expectation;
            const bool ok2 =
                sector.target_w2 == 0 || c.w2 * sector.target_w2 >= opts.min_loop_expectation;
            if (ok1 && ok2) eligible.push_back(std::move(c));
        }
        start = stop;
    }

    if (eligible.empty())
        throw DomainError("ground_state: no low-energy state matches the loop-sector targets");
    std::sort(eligible.begin(), eligible.end(),
              [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    if (eligible.size() >= 2 && eligible[0].score - eligible[1].score < opts.tie_threshold)
        throw DomainError("ground_state: ambiguous sector selection (tied loop expectations)");

    out.psi = eligible[0].v;
    out.energy = rayleigh(h, out.psi);
    return finalize_full_basis(h, sector, opts, std::move(out));
}

// ---------------------------------------------------------------------------
// Entanglement spectra

namespace {

EntanglementSpectrum spectrum_from_rho(Eigen::MatrixXd& rho) {
    rho = 0.5 * (rho + rho.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho);
    Eigen::VectorXd vals = es.eigenvalues().reverse();
    for (Eigen::Index i = 0; i < vals.size(); ++i)
        vals[i] = std::max(std::max(vals[i], -1e-12), 0.0);
    return EntanglementSpectrum{vals};
}

} // namespace

int support_size(const EntanglementSpectrum& spec, double threshold) {
    int n = 0;
    for (Eigen::Index i = 0; i < spec.values.size(); ++i)
        if (spec.values[i] > threshold) ++n;
    return n;
}

EntanglementSpectrum entanglement_spectrum_full(const Eigen::VectorXd& psi, int n_qubits,
                                                std::uint64_t a_mask) {
    if (n_qubits < 2 || n_qubits > 24)
        throw DomainError("entanglement_spectrum_full: unsupported qubit count");
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw DomainError("entanglement_spectrum_full: state size mismatch");
    const std::uint64_t all = dim - 1;
    a_mask &= all;
    if (a_mask == 0 || a_mask == all)
        throw DomainError("entanglement_spectrum_full: bipartition must be proper");
    if (2 * std::popcount(a_mask) > n_qubits) a_mask ^= all; // nonzero spectrum is side-symmetric

    const int na = std::popcount(a_mask);
    const int nb = n_qubits - na;
    const Eigen::Index dima = Eigen::Index{1} << na;
    const Eigen::Index dimb = Eigen::Index{1} << nb;

    std::vector<std::uint32_t> aadd(static_cast<std::size_t>(n_qubits)),
        badd(static_cast<std::size_t>(n_qubits));
    {
        int ia = 0, ib = 0;
        for (int q = 0; q < n_qubits; ++q) {
            if ((a_mask >> q) & 1)
                aadd[static_cast<std::size_t>(q)] = std::uint32_t{1} << ia++;
            else
                badd[static_cast<std::size_t>(q)] = std::uint32_t{1} << ib++;
        }
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dima, dimb);
    std::vector<std::uint32_t> ia(static_cast<std::size_t>(dim)), ib(static_cast<std::size_t>(dim));
    ia[0] = ib[0] = 0;
    for (std::uint64_t b = 1; b < dim; ++b) {
        const std::uint64_t prev = b & (b - 1);
        const int q = std::countr_zero(b);
        ia[b] = ia[prev] | aadd[static_cast<std::size_t>(q)];
        ib[b] = ib[prev] | badd[static_cast<std::size_t>(q)];
    }
    for (std::uint64_t b = 0; b < dim; ++b)
        m(ia[b], ib[b]) = psi[static_cast<Eigen::Index>(b)];
    Eigen::MatrixXd rho = m * m.transpose();
    return spectrum_from_rho(rho);
}

EntanglementSpectrum entanglement_spectrum_gauge(const Eigen::VectorXd& psi,
                                                 const TorusLattice& lat, std::uint64_t a_mask) {
    const int ng = n_generators(lat);
    const std::uint64_t dim = std::uint64_t{1} << ng;
    if (psi.size() != static_cast<Eigen::Index>(dim))
        throw DomainError("entanglement_spectrum_gauge: state size mismatch");
    const std::uint64_t all = lat.all_edges_mask();
    a_mask &= all;
    if (a_mask == 0 || a_mask == all)
        throw DomainError("entanglement_spectrum_gauge: bipartition must be proper");
    if (2 * std::popcount(a_mask) > lat.n_edges()) a_mask ^= all;

    const int na = std::popcount(a_mask);
    if (na > 12) throw CapacityError("entanglement_spectrum_gauge: reduced side above 12 edges");
    std::vector<int> apos(static_cast<std::size_t>(lat.n_edges()), 0);
    {
        int next = 0;
        for (int e = 0; e < lat.n_edges(); ++e)
            if ((a_mask >> e) & 1) apos[static_cast<std::size_t>(e)] = next++;
    }
    // Occupied basis states bucketed by their configuration on the traced
    // side; each bucket contributes a rank-one update to the reduced matrix.
    std::vector<std::tuple<std::uint64_t, std::uint32_t, double>> entries;
    entries.reserve(static_cast<std::size_t>(dim));
    std::vector<std::uint64_t> edge(static_cast<std::size_t>(dim));
    edge[0] = 0;
    for (std::uint64_t m = 0; m < dim; ++m) {
        if (m) edge[m] = edge[m & (m - 1)] ^ lat.star_mask(std::countr_zero(m));
        std::uint32_t x = 0;
        std::uint64_t bits = edge[m] & a_mask;
        while (bits) {
            x |= std::uint32_t{1} << apos[static_cast<std::size_t>(std::countr_zero(bits))];
            bits &= bits - 1;
        }
        entries.emplace_back(edge[m] & ~a_mask, x, psi[static_cast<Eigen::Index>(m)]);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& l, const auto& r) { return std::get<0>(l) < std::get<0>(r); });

    const Eigen::Index dima = Eigen::Index{1} << na;
    Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dima, dima);
    std::size_t i = 0;
    while (i < entries.size()) {
        std::size_t j = i;
        while (j < entries.size() && std::get<0>(entries[j]) == std::get<0>(entries[i])) ++j;
        for (std::size_t p = i; p < j; ++p)
            for (std::size_t q = i; q < j; ++q)
                rho(std::get<1>(entries[p]), std::get<1>(entries[q])) +=
                    std::get<2>(entries[p]) * std::get<2>(entries[q]);
        i = j;
    }
    return spectrum_from_rho(rho);
}

EntanglementSpectrum entanglement_spectrum(const Hamiltonian& h, const Eigen::VectorXd& psi,
                                           std::uint64_t a_mask) {
    if (h.spec.basis == EdBasis::Gauge)
        return entanglement_spectrum_gauge(psi, TorusLattice(h.spec.lx), a_mask);
    return entanglement_spectrum_full(psi, h.n_qubits, a_mask);
}

double renyi_from_spectrum(const EntanglementSpectrum& nu, double alpha) {
    if (alpha < 0) throw DomainError("renyi_from_spectrum: alpha must be nonnegative");
    if (alpha == 0.0) {
        const int k = support_size(nu, kSupportThreshold);
        if (k == 0) throw DomainError("renyi_from_spectrum: empty spectrum");
        return std::log(static_cast<double>(k));
    }
    KahanSum acc;
    if (std::abs(alpha - 1.0) < 1e-12) {
        for (Eigen::Index i = 0; i < nu.values.size(); ++i) {
            const double v = nu.values[i];
            if (v > 0.0) acc.add(-v * std::log(v));
        }
        return acc.value();
    }
    for (Eigen::Index i = 0; i < nu.values.size(); ++i) {
        const double v = nu.values[i];
        if (v > 0.0) acc.add(std::pow(v, alpha));
    }
    return std::log(acc.value()) / (1.0 - alpha);
}

Eigen::VectorXd to_full_state(const Eigen::VectorXd& gauge_psi, const TorusLattice& lat) {
    if (2 * lat.L() * lat.L() > 20)
        throw CapacityError("to_full_state: expansion limited to L <= 3");
    const int ng = n_generators(lat);
    const std::uint64_t dim = std::uint64_t{1} << ng;
    if (gauge_psi.size() != static_cast<Eigen::Index>(dim))
        throw DomainError("to_full_state: state size mismatch");
    Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index{1} << lat.n_edges());
    std::vector<std::uint64_t> edge(static_cast<std::size_t>(dim));
    edge[0] = 0;
    for (std::uint64_t m = 0; m < dim; ++m) {
        if (m) edge[m] = edge[m & (m - 1)] ^ lat.star_mask(std::countr_zero(m));
        full[static_cast<Eigen::Index>(edge[m])] = gauge_psi[static_cast<Eigen::Index>(m)];
    }
    return full;
}

std::uint64_t site_block_mask(int nx, int ny, int row0, int col0, int height, int width) {
    if (nx < 1 || ny < 1 || height < 1 || width < 1 || height > ny || width > nx)
        throw DomainError("site_block_mask: invalid block");
    std::uint64_t mask = 0;
    for (int i = 0; i < height; ++i)
        for (int j = 0; j < width; ++j) {
            const int r = ((row0 + i) % ny + ny) % ny;
            const int c = ((col0 + j) % nx + nx) % nx;
            mask |= std::uint64_t{1} << (r * nx + c);
        }
    return mask;
}

} // namespace tcent
