// Torus geometry: incidence structure, loops, bipartition handling.
#include <doctest.h>

#include <bit>

#include "tcent/lattice.hpp"
#include "tcent/util.hpp"

using namespace tcent;

TEST_SUITE_BEGIN("lattice");

TEST_CASE("edge and operator counts") {
    for (int L = 2; L <= 5; ++L) {
        TorusLattice lat(L);
        CHECK(lat.n_edges() == 2 * L * L);
        CHECK(lat.n_vertices() == L * L);
        for (int v = 0; v < lat.n_vertices(); ++v) CHECK(std::popcount(lat.star_mask(v)) == 4);
        for (int p = 0; p < lat.n_vertices(); ++p) CHECK(std::popcount(lat.plaquette_mask(p)) == 4);
        CHECK(std::popcount(lat.all_edges_mask()) == lat.n_edges());
    }
    CHECK_THROWS_AS(TorusLattice(1), DomainError);
    CHECK_THROWS_AS(TorusLattice(6), CapacityError);
}

TEST_CASE("every edge belongs to exactly two stars and two plaquettes") {
    for (int L = 2; L <= 4; ++L) {
        TorusLattice lat(L);
        for (int e = 0; e < lat.n_edges(); ++e) {
            int s_count = 0, p_count = 0;
            for (int v = 0; v < lat.n_vertices(); ++v) {
                if (lat.star_mask(v) >> e & 1) ++s_count;
                if (lat.plaquette_mask(v) >> e & 1) ++p_count;
            }
            CHECK(s_count == 2);
            CHECK(p_count == 2);
        }
        // hence the product of all stars flips nothing
        std::uint64_t acc = 0;
        for (int v = 0; v < lat.n_vertices(); ++v) acc ^= lat.star_mask(v);
        CHECK(acc == 0);
    }
}

TEST_CASE("stars commute with plaquettes and z-loops") {
    for (int L = 2; L <= 4; ++L) {
        TorusLattice lat(L);
        for (int v = 0; v < lat.n_vertices(); ++v) {
            for (int p = 0; p < lat.n_vertices(); ++p)
                CHECK(std::popcount(lat.star_mask(v) & lat.plaquette_mask(p)) % 2 == 0);
            for (int r = 0; r < L; ++r) {
                CHECK(std::popcount(lat.star_mask(v) & lat.zloop_row(r)) % 2 == 0);
                CHECK(std::popcount(lat.star_mask(v) & lat.zloop_col(r)) % 2 == 0);
            }
        }
        for (int r = 0; r < L; ++r) {
            CHECK(std::popcount(lat.zloop_row(r)) == L);
            CHECK(std::popcount(lat.zloop_col(r)) == L);
        }
        // the row loops tile the horizontal edges, the column loops the vertical
        std::uint64_t rows_acc = 0, cols_acc = 0;
        for (int r = 0; r < L; ++r) {
            CHECK((rows_acc & lat.zloop_row(r)) == 0);
            CHECK((cols_acc & lat.zloop_col(r)) == 0);
            rows_acc |= lat.zloop_row(r);
            cols_acc |= lat.zloop_col(r);
        }
        CHECK((rows_acc | cols_acc) == lat.all_edges_mask());
        CHECK((rows_acc & cols_acc) == 0);
    }
}

TEST_CASE("edge ids cover the lattice without collision") {
    TorusLattice lat(3);
    std::uint64_t seen = 0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            for (int o = 0; o < 2; ++o) {
                int e = lat.edge_id(r, c, o);
                CHECK(e >= 0);
                CHECK(e < lat.n_edges());
                CHECK_FALSE(bool((seen >> e) & 1));
                seen |= 1ull << e;
            }
    CHECK(seen == lat.all_edges_mask());
}

TEST_CASE("bipartition classification") {
    TorusLattice lat(3);
    auto plaq = make_plaquette_bipartition(lat, 0);
    auto pc = classify_bipartition(lat, plaq);
    CHECK(pc.kind == SubsystemKind::Thin);
    CHECK(pc.n_a == 0);
    CHECK(pc.n_boundary == 4);
    CHECK(pc.n_b == 5);

    auto two = make_two_star_bipartition(lat, 0, 1);
    CHECK(std::popcount(two.a_mask) == 7);
    auto tc = classify_bipartition(lat, two);
    CHECK(tc.kind == SubsystemKind::Bulk);
    CHECK(tc.n_a == 2);
    CHECK(tc.n_a + tc.n_b + tc.n_boundary == lat.n_vertices());

    auto comp = complement_bipartition(lat, two);
    CHECK((comp.a_mask ^ two.a_mask) == lat.all_edges_mask());
    auto cc = classify_bipartition(lat, comp);
    CHECK(cc.n_a == tc.n_b);
    CHECK(cc.n_b == tc.n_a);
}

TEST_CASE("bipartition parsing") {
    TorusLattice lat(3);
    CHECK(parse_bipartition(lat, "plaquette:2").a_mask == make_plaquette_bipartition(lat, 2).a_mask);
    CHECK(parse_bipartition(lat, "two_star:0-1").a_mask == make_two_star_bipartition(lat, 0, 1).a_mask);
    CHECK(parse_bipartition(lat, "edges:0-5-7").a_mask == ((1ull << 0) | (1ull << 5) | (1ull << 7)));
    CHECK(parse_bipartition(lat, "mask:2a").a_mask == 0x2a);
    CHECK_THROWS_AS(parse_bipartition(lat, "bogus:1"), ConfigError);
    CHECK_THROWS_AS(parse_bipartition(lat, "plaquette:99"), ConfigError);
    for (const auto& label : {parse_bipartition(lat, "two_star:0-1").label, parse_bipartition(lat, "mask:2a").label})
        CHECK(label.find(',') == std::string::npos);
}

TEST_SUITE_END();
