#include <doctest.h>

#include <numbers>
#include <set>

#include "triwalk/lattice.hpp"

using namespace triwalk;

TEST_CASE("lattice spec rejects degenerate sides") {
    CHECK_THROWS_AS(LatticeSpec(1), std::invalid_argument);
    CHECK_THROWS_AS(LatticeSpec(0), std::invalid_argument);
    CHECK(LatticeSpec(2).n_sites == 4);
    CHECK(LatticeSpec(6).n_sites == 36);
}

TEST_CASE("flat index is the row-major bijection") {
    LatticeSpec spec(5);
    std::set<int> seen;
    for (int n1 = 0; n1 < 5; ++n1)
        for (int n2 = 0; n2 < 5; ++n2) {
            const SiteIndex s = make_site(spec, n1, n2);
            CHECK(s.flat == n1 * 5 + n2);
            const SiteIndex back = site_from_flat(spec, s.flat);
            CHECK(back.n1 == n1);
            CHECK(back.n2 == n2);
            seen.insert(s.flat);
        }
    CHECK(seen.size() == 25);
    CHECK_THROWS_AS(make_site(spec, 5, 0), std::out_of_range);
    CHECK_THROWS_AS(make_site(spec, 0, -1), std::out_of_range);
    CHECK_THROWS_AS(site_from_flat(spec, 25), std::out_of_range);
}

TEST_CASE("neighbor displacement rules") {
    LatticeSpec spec(6);
    const SiteIndex s = make_site(spec, 2, 3);
    const SiteIndex n0 = neighbor(spec, s, 0);
    CHECK(n0.n1 == 3);
    CHECK(n0.n2 == 3);

    // wrap of both coordinates
    const SiteIndex w = neighbor(spec, make_site(spec, 5, 0), 1);
    CHECK(w.n1 == 0);
    CHECK(w.n2 == 5);

    // j and j+3 are inverse displacements
    const SiteIndex back = neighbor(spec, n0, 3);
    CHECK(back.flat == s.flat);
}

TEST_CASE("opposite direction is an involution") {
    for (int j = 0; j < kNumDirections; ++j) {
        CHECK(opposite_direction(opposite_direction(j)) == j);
        CHECK(opposite_direction(j) != j);
    }
}

TEST_CASE("displacements j and j+3 are mutual inverses on every site") {
    for (int side : {2, 3, 5}) {
        LatticeSpec spec(side);
        for (int flat = 0; flat < spec.n_sites; ++flat)
            for (int j = 0; j < 6; ++j) {
                const SiteIndex s = site_from_flat(spec, flat);
                const SiteIndex there = neighbor(spec, s, j);
                const SiteIndex back = neighbor(spec, there, opposite_direction(j));
                CHECK(back.flat == flat);
            }
    }
}

TEST_CASE("neighbor is a bijection for each fixed direction") {
    LatticeSpec spec(4);
    for (int j = 0; j < 6; ++j) {
        std::set<int> image;
        for (int flat = 0; flat < spec.n_sites; ++flat)
            image.insert(neighbor(spec, site_from_flat(spec, flat), j).flat);
        CHECK(image.size() == static_cast<std::size_t>(spec.n_sites));
    }
}

TEST_CASE("alternating-direction triangles close") {
    LatticeSpec spec(5);
    for (int flat = 0; flat < spec.n_sites; ++flat) {
        const SiteIndex s = site_from_flat(spec, flat);
        SiteIndex a = neighbor(spec, neighbor(spec, neighbor(spec, s, 0), 2), 4);
        CHECK(a.flat == flat);
        SiteIndex b = neighbor(spec, neighbor(spec, neighbor(spec, s, 1), 3), 5);
        CHECK(b.flat == flat);
    }
}

TEST_CASE("wavevector enumeration") {
    LatticeSpec spec2(2);
    const auto ks2 = enumerate_wavevectors(spec2);
    REQUIRE(ks2.size() == 4);
    CHECK(ks2[0].k1 == 0);
    CHECK(ks2[0].k2 == 0);
    std::set<std::pair<int, int>> seen;
    for (const auto& k : ks2) seen.insert({k.k1, k.k2});
    CHECK(seen.size() == 4);

    LatticeSpec spec6(6);
    const auto ks6 = enumerate_wavevectors(spec6);
    REQUIRE(ks6.size() == 36);
    int nonzero = 0;
    for (const auto& k : ks6) {
        CHECK(k.ktilde1 >= 0.0);
        CHECK(k.ktilde1 < 2.0 * std::numbers::pi);
        if (k.k1 != 0 || k.k2 != 0) ++nonzero;
        if (k.k1 == 3 && k.k2 == 0) {
            CHECK(k.ktilde1 == doctest::Approx(std::numbers::pi).epsilon(1e-15));
            CHECK(k.ktilde2 == 0.0);
        }
    }
    CHECK(nonzero == 35);
}
