#include "tcent/lattice.hpp"

#include <bit>
#include <charconv>
#include <sstream>

#include "tcent/util.hpp"

namespace tcent {

TorusLattice::TorusLattice(int L) : L_(L) {
    if (L < 2) throw DomainError("TorusLattice: L must be >= 2");
    if (2 * L * L > 64) throw CapacityError("TorusLattice: edge masks need 2*L*L <= 64 bits (L <= 5)");
    all_edges_ = (n_edges() == 64) ? ~std::uint64_t(0) : ((std::uint64_t(1) << n_edges()) - 1);
    stars_.resize(n_vertices());
    plaquettes_.resize(n_vertices());
    auto bit = [&](int r, int c, int o) {
        return std::uint64_t(1) << edge_id((r + L_) % L_, (c + L_) % L_, o);
    };
    for (int r = 0; r < L_; ++r) {
        for (int c = 0; c < L_; ++c) {
            int v = r * L_ + c;
            stars_[v] = bit(r, c, 0) | bit(r, c - 1, 0) | bit(r, c, 1) | bit(r - 1, c, 1);
            plaquettes_[v] = bit(r, c, 0) | bit(r + 1, c, 0) | bit(r, c, 1) | bit(r, c + 1, 1);
        }
    }
}

int TorusLattice::edge_id(int row, int col, int orientation) const {
    return 2 * (row * L_ + col) + orientation;
}

std::uint64_t TorusLattice::zloop_row(int row) const {
    std::uint64_t m = 0;
    for (int c = 0; c < L_; ++c) m |= std::uint64_t(1) << edge_id(row, c, 0);
    return m;
}

std::uint64_t TorusLattice::zloop_col(int col) const {
    std::uint64_t m = 0;
    for (int r = 0; r < L_; ++r) m |= std::uint64_t(1) << edge_id(r, col, 1);
    return m;
}

BipartitionClass classify_bipartition(const TorusLattice& lat, const Bipartition& bip) {
    BipartitionClass out;
    for (int v = 0; v < lat.n_vertices(); ++v) {
        std::uint64_t in_a = lat.star_mask(v) & bip.a_mask;
        if (in_a == lat.star_mask(v))
            ++out.n_a;
        else if (in_a == 0)
            ++out.n_b;
        else
            ++out.n_boundary;
    }
    out.kind = (out.n_a == 0) ? SubsystemKind::Thin : SubsystemKind::Bulk;
    return out;
}

Bipartition make_plaquette_bipartition(const TorusLattice& lat, int p) {
    if (p < 0 || p >= lat.n_vertices()) throw DomainError("plaquette index out of range");
    return {lat.plaquette_mask(p), "plaquette:" + std::to_string(p)};
}

Bipartition make_two_star_bipartition(const TorusLattice& lat, int v1, int v2) {
    if (v1 < 0 || v1 >= lat.n_vertices() || v2 < 0 || v2 >= lat.n_vertices() || v1 == v2)
        throw DomainError("two_star: need two distinct vertices in range");
    return {lat.star_mask(v1) | lat.star_mask(v2),
            "two_star:" + std::to_string(v1) + "-" + std::to_string(v2)};
}

Bipartition make_edges_bipartition(const TorusLattice& lat, const std::vector<int>& edges) {
    std::uint64_t m = 0;
    std::string label = "edges:";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i] < 0 || edges[i] >= lat.n_edges()) throw DomainError("edge index out of range");
        m |= std::uint64_t(1) << edges[i];
        label += (i ? "-" : "") + std::to_string(edges[i]);
    }
    if (m == 0 || m == lat.all_edges_mask()) throw DomainError("bipartition must be proper (nonempty A and B)");
    return {m, label};
}

Bipartition make_mask_bipartition(const TorusLattice& lat, std::uint64_t a_mask) {
    if ((a_mask & ~lat.all_edges_mask()) != 0) throw DomainError("mask has bits outside the edge range");
    if (a_mask == 0 || a_mask == lat.all_edges_mask()) throw DomainError("bipartition must be proper (nonempty A and B)");
    char buf[24];
    std::snprintf(buf, sizeof buf, "mask:%llx", static_cast<unsigned long long>(a_mask));
    return {a_mask, buf};
}

Bipartition complement_bipartition(const TorusLattice& lat, const Bipartition& bip) {
    Bipartition out = make_mask_bipartition(lat, lat.all_edges_mask() & ~bip.a_mask);
    out.label = "complement-of-" + bip.label;
    return out;
}

Bipartition parse_bipartition(const TorusLattice& lat, const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("bipartition: expected KIND:ARGS, got '" + text + "'");
    std::string kind = text.substr(0, colon), args = text.substr(colon + 1);
    auto parse_ints = [&](char sep) {
        std::vector<int> vals;
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, sep)) {
            int v = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (ec != std::errc() || p != tok.data() + tok.size())
                throw ConfigError("bipartition: bad integer '" + tok + "'");
            vals.push_back(v);
        }
        return vals;
    };
    try {
        if (kind == "plaquette") {
            auto v = parse_ints('-');
            if (v.size() != 1) throw ConfigError("plaquette: expected one index");
            return make_plaquette_bipartition(lat, v[0]);
        }
        if (kind == "two_star") {
            auto v = parse_ints('-');
            if (v.size() != 2) throw ConfigError("two_star: expected V1-V2");
            return make_two_star_bipartition(lat, v[0], v[1]);
        }
        if (kind == "edges") return make_edges_bipartition(lat, parse_ints('-'));
        if (kind == "mask") {
            std::uint64_t m = 0;
            auto [p, ec] = std::from_chars(args.data(), args.data() + args.size(), m, 16);
            if (ec != std::errc() || p != args.data() + args.size())
                throw ConfigError("mask: bad hex '" + args + "'");
            return make_mask_bipartition(lat, m);
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("bipartition: ") + e.what());
    }
    throw ConfigError("bipartition: unknown kind '" + kind + "'");
}

} // namespace tcent
