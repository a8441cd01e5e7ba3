// Group sweeps behind the closed-form Renyi data of the deformed toric code.
#include "tcent/cc_model.hpp"

#include <bit>
#include <cmath>
#include <cstddef>

#include "tcent/util.hpp"

namespace tcent {

CCPartitionData::CCPartitionData(const TorusLattice& lat, const Bipartition& bip, double lambda,
                                 double e_shift)
    : lambda_(lambda),
      spec_(subgroup_spec(lat, bip)),
      indexer_(lat, spec_) {
    if (lat.L() > 4) throw CapacityError("CCPartitionData: group sweep needs L <= 4");
    const int ng = n_generators(lat);
    const std::size_t n_q = indexer_.n_cosets();
    w_.assign(n_q, 0.0);
    we_.assign(n_q, 0.0);
    se_.assign(n_q, 0.0);
    std::vector<KahanSum> w_acc(n_q), we_acc(n_q), se_acc(n_q);
    KahanSum e_acc, e2_acc;
    // One pass over G; edge masks built incrementally from a previous element.
    const std::uint64_t n_elems = std::uint64_t{1} << ng;
    std::vector<std::uint64_t> edge(n_elems);
    edge[0] = 0;
    for (std::uint64_t m = 1; m < n_elems; ++m) {
        const int lowest = std::countr_zero(m);
        edge[m] = edge[m & (m - 1)] ^ lat.star_mask(lowest);
        // star L^2-1 never appears: generators are the first L^2-1 stars.
    }
    for (std::uint64_t m = 0; m < n_elems; ++m) {
        const double e = 2.0 * static_cast<double>(std::popcount(edge[m])) + e_shift;
        const double x = std::exp(-lambda * e);
        const std::size_t q = indexer_.index(static_cast<std::uint32_t>(m));
        w_acc[q].add(x);
        we_acc[q].add(e * x);
        se_acc[q].add(e);
        e_acc.add(e);
        e2_acc.add(e * e);
    }
    KahanSum z_acc, ze_acc;
    for (std::size_t q = 0; q < n_q; ++q) {
        w_[q] = w_acc[q].value();
        we_[q] = we_acc[q].value();
        se_[q] = se_acc[q].value();
        z_acc.add(w_[q]);
        ze_acc.add(we_[q]);
    }
    z_ = z_acc.value();
    ze_ = ze_acc.value();
    sum_e_ = e_acc.value();
    sum_e2_ = e2_acc.value();
}

double CCPartitionData::w_of(std::uint32_t gen_mask) const {
    return w_[indexer_.index(gen_mask)];
}

double CCPartitionData::Ztilde(double alpha) const {
    KahanSum acc;
    for (double wq : w_) acc.add(std::pow(wq, alpha));
    return acc.value();
}

double CCPartitionData::renyi(double alpha) const {
    if (alpha < 0.0) throw DomainError("renyi_cc: alpha must be >= 0");
    if (alpha == 1.0) {
        // von Neumann over the explicit spectrum nu_q = w_q / Z.
        KahanSum acc;
        for (double wq : w_) {
            const double nu = wq / z_;
            if (nu > 0.0) acc.add(-nu * std::log(nu));
        }
        return acc.value();
    }
    return (std::log(Ztilde(alpha)) - alpha * std::log(z_)) / (1.0 - alpha);
}

double CCPartitionData::renyi_derivative(double alpha) const {
    if (alpha < 0.0) throw DomainError("renyi_derivative_cc: alpha must be >= 0");
    if (alpha == 1.0) {
        // d/dlambda of -sum nu log nu with nu_q = w_q/Z,
        // nu_q' = (-we_q Z + w_q ze) / Z^2 (note dw/dlambda = -we).
        KahanSum acc;
        for (std::size_t q = 0; q < w_.size(); ++q) {
            const double nu = w_[q] / z_;
            if (nu <= 0.0) continue;
            const double nu_prime = (-we_[q] * z_ + w_[q] * ze_) / (z_ * z_);
            acc.add(-nu_prime * std::log(nu));
        }
        return acc.value();
    }
    // <<E>_w>_Ztilde + alpha/(1-alpha) <E>_Z - 1/(1-alpha) <E>_Ztilde.
    // The first and third averages coincide because w is coset-constant;
    // both reduce to sum_q we_q w_q^(alpha-1) / Ztilde.
    const double zt = Ztilde(alpha);
    KahanSum t_acc;
    for (std::size_t q = 0; q < w_.size(); ++q)
        t_acc.add(we_[q] * std::pow(w_[q], alpha - 1.0));
    const double t_w = t_acc.value() / zt;
    const double mean_z = ze_ / z_;
    return t_w + alpha / (1.0 - alpha) * mean_z - t_w / (1.0 - alpha);
}

void CCPartitionData::small_lambda_coeffs(double& c1, double& c2) const {
    // Around lambda = 0: d/dlambda S_alpha = lambda (C1 alpha + C2) with
    //   C1 = (sum_g E)^2/|G|^2 - sum_q S_q^2 / (|G| |G_A||G_B|),
    //   C2 = -sum_g E^2/|G| + sum_q S_q^2 / (|G| |G_A||G_B|),
    // where S_q = sum_{g in q} E_g. Cauchy-Schwarz makes both <= 0.
    const double n_group = std::ldexp(1.0, dim_ga() + dim_gb()) * static_cast<double>(w_.size());
    const double n_sub = std::ldexp(1.0, dim_ga() + dim_gb());
    KahanSum sq_acc;
    for (double sq : se_) sq_acc.add(sq * sq);
    const double sum_sq2 = sq_acc.value();
    const double mean_term = sum_sq2 / (n_group * n_sub);
    c1 = (sum_e_ / n_group) * (sum_e_ / n_group) - mean_term;
    c2 = -sum_e2_ / n_group + mean_term;
}

std::vector<double> construct_cc_state(const TorusLattice& lat, double lambda) {
    if (lat.L() > 3) throw CapacityError("construct_cc_state: L <= 3 required");
    const int ng = n_generators(lat);
    const std::uint64_t n = std::uint64_t{1} << ng;
    std::vector<double> psi(n);
    std::vector<std::uint64_t> edge(n);
    edge[0] = 0;
    KahanSum norm2;
    for (std::uint64_t m = 0; m < n; ++m) {
        if (m) edge[m] = edge[m & (m - 1)] ^ lat.star_mask(std::countr_zero(m));
        psi[m] = std::exp(-lambda * static_cast<double>(std::popcount(edge[m])));
        norm2.add(psi[m] * psi[m]);
    }
    const double inv = 1.0 / std::sqrt(norm2.value());
    for (auto& a : psi) a *= inv;
    return psi;
}

double renyi_cc(const TorusLattice& lat, const Bipartition& bip, double lambda, double alpha) {
    return CCPartitionData(lat, bip, lambda).renyi(alpha);
}

double renyi_derivative_cc(const TorusLattice& lat, const Bipartition& bip, double lambda,
                           double alpha) {
    return CCPartitionData(lat, bip, lambda).renyi_derivative(alpha);
}

void small_lambda_coeffs(const TorusLattice& lat, const Bipartition& bip, double& c1, double& c2) {
    if (lat.L() > 3) throw CapacityError("small_lambda_coeffs: L <= 3 required");
    CCPartitionData(lat, bip, 0.0).small_lambda_coeffs(c1, c2);
}

double large_lambda_derivative(const TorusLattice& lat, const Bipartition& bip, double lambda,
                               double alpha) {
    if (alpha == 1.0) throw DomainError("large_lambda_derivative: alpha = 1 not covered");
    if (alpha < 0.0) throw DomainError("large_lambda_derivative: alpha must be >= 0");
    if (lambda < cc_large_lambda_min)
        throw DomainError("large_lambda_derivative: below validity threshold lambda >= 2");
    const SubgroupSpec spec = subgroup_spec(lat, bip);
    const double l2 = static_cast<double>(lat.n_vertices());
    const double n_ab = static_cast<double>(spec.dim_ga + spec.dim_gb);
    const double n_boundary = l2 - n_ab; // one coset per boundary star at this order
    const double v = std::exp(-8.0 * lambda);
    if (alpha > 1.0) {
        // Cosets with w = v drop out at relative order v^(alpha-1).
        const double num = (l2 - n_ab) + (alpha - 1.0) * n_ab * l2 * v;
        const double den = (1.0 + l2 * v) * (1.0 + alpha * n_ab * v);
        return 8.0 * alpha * v / (1.0 - alpha) * num / den;
    }
    // alpha < 1: the boundary-star cosets contribute at order v^alpha > v.
    const double va = std::exp(-8.0 * lambda * alpha);
    const double num = (l2 - n_ab) * v - n_boundary * va;
    const double den = (1.0 + l2 * v) * (1.0 + alpha * n_ab * v + n_boundary * va);
    return 8.0 * alpha / (1.0 - alpha) * num / den;
}

} // namespace tcent
