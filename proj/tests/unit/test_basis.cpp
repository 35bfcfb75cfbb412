#include <doctest.h>

#include "wpdj/basis.hpp"
#include "wpdj/errors.hpp"
#include "wpdj/units.hpp"

using namespace wpdj;

TEST_CASE("index_to_bits expands MSB first") {
    CHECK(index_to_bits(5, 3) == "101");
    CHECK(index_to_bits(0, 3) == "000");
    CHECK(index_to_bits(7, 3) == "111");
    CHECK_THROWS_AS(index_to_bits(8, 3), DomainError);
    CHECK_THROWS_AS(index_to_bits(0, 0), DomainError);
}

TEST_CASE("index_to_bits round-trips and is injective") {
    for (int n = 1; n <= 10; ++n) {
        for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
            const std::string bits = index_to_bits(k, n);
            CHECK(bits.size() == static_cast<std::size_t>(n));
            // an exact inverse on every index makes the map injective
            CHECK(bits_to_index(bits) == k);
        }
    }
    CHECK_THROWS_AS(bits_to_index("10x"), DomainError);
}

TEST_CASE("term_energy closed form") {
    SpectroscopicConstants zero{1.0, 0.0, 1.0, 0.0, 0.0};

    SUBCASE("all constants zero terms") {
        // omega_e and B_e must stay positive; kill their contributions via v, J
        SpectroscopicConstants c{1.0, 0.0, 1.0, 0.0, 0.0};
        // at v=0, J=0: E = 0.5 omega_e
        CHECK(term_energy(c, 0, 0) == doctest::Approx(0.5));
    }
    SUBCASE("pure rotational term") {
        SpectroscopicConstants c{1e-12, 0.0, 1.0, 0.0, 0.0};
        CHECK(term_energy(c, 0, 17) == doctest::Approx(306.0).epsilon(1e-9)); // 17*18
    }
    SUBCASE("hand-evaluated full expansion") {
        // 255*13.5 - 1.6*13.5^2 + (0.5 - 0.005*13.5)*17*18 = 3283.245
        SpectroscopicConstants c{255.0, 1.6, 0.50, 0.005, 0.0};
        CHECK(term_energy(c, 13, 17) == doctest::Approx(3283.245).epsilon(1e-12));
    }
    SUBCASE("validity and domain errors") {
        SpectroscopicConstants c{255.0, 1.6, 0.5, 1.0, 0.0};
        CHECK_THROWS_AS(term_energy(c, 1, 0), ModelValidityError); // B_eff = 0.5 - 1.5
        CHECK_THROWS_AS(term_energy(zero, -1, 0), DomainError);
        CHECK_THROWS_AS(term_energy(zero, 0, -1), DomainError);
    }
}

TEST_CASE("default basis matches the three-qubit level table") {
    const LevelBasis basis = default_basis(SpectroscopicConstants{});
    REQUIRE(basis.size() == 8);
    CHECK(basis.qubit_count() == 3);

    const std::pair<int, int> expected[8] = {{13, 17}, {13, 19}, {14, 17}, {14, 19},
                                             {15, 17}, {15, 19}, {16, 17}, {16, 19}};
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(basis.level_for_index(k).v == expected[k].first);
        CHECK(basis.level_for_index(k).J == expected[k].second);
    }
    CHECK(basis.level_for_index(2).v == 14);
    CHECK(basis.level_for_index(2).J == 17);
    CHECK(basis.level_for_index(0).v == 13);
    CHECK(basis.level_for_index(6).v == 16);
    CHECK_THROWS_AS(basis.level_for_index(8), DomainError);
}

TEST_CASE("default basis invariants") {
    const SpectroscopicConstants constants{};
    const LevelBasis basis = default_basis(constants);

    SUBCASE("bijection over the eight (v, J) pairs") {
        for (std::size_t k = 0; k < 8; ++k) {
            const auto& level = basis.level_for_index(k);
            std::size_t found = 0, where = 9;
            for (std::size_t j = 0; j < 8; ++j) {
                const auto& other = basis.level_for_index(j);
                if (other.v == level.v && other.J == level.J) {
                    ++found;
                    where = j;
                }
            }
            CHECK(found == 1);
            CHECK(where == k);
        }
    }

    SUBCASE("rotational splitting below vibrational spacing") {
        for (std::size_t k = 0; k + 2 < 8; k += 2) {
            const double j_split = basis.level_for_index(k + 1).energy_cm -
                                   basis.level_for_index(k).energy_cm;
            const double v_split = basis.level_for_index(k + 2).energy_cm -
                                   basis.level_for_index(k).energy_cm;
            CHECK(j_split > 0.0);
            CHECK(j_split < v_split);
        }
    }

    SUBCASE("energy strictly increasing with v up to the sanity cap") {
        for (int J : {17, 19}) {
            for (int v = 0; v < 100; ++v) {
                CHECK(term_energy(constants, v + 1, J) > term_energy(constants, v, J));
            }
        }
    }
}

TEST_CASE("level basis rejects malformed registers") {
    SpectroscopicConstants c{};
    CHECK_THROWS_AS(LevelBasis({{13, 17, 0.0}}), DomainError);                  // odd
    CHECK_THROWS_AS(LevelBasis({{13, 17, 0.0}, {13, 17, 1.0}}), DomainError);   // duplicate
    CHECK(LevelBasis({{13, 17, 0.0}, {13, 19, 1.0}}).qubit_count() == 1);
    CHECK(default_basis(c, 6).qubit_count() == 0); // six levels: not a qubit register
}

TEST_CASE("wavenumber to angular frequency conversion") {
    CHECK(cm1_to_rad_per_ps(1.0) == doctest::Approx(0.1883651567308853).epsilon(1e-15));
    CHECK(cm1_to_rad_per_ps(0.0) == 0.0);
}
