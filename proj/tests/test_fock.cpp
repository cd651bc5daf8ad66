#include <catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "holo/fock.hpp"

using namespace holo;

namespace {

// Independent oracle: enumerate layer occupations recursively, without any
// ordering or indexing machinery shared with FockBasis.
void collect_compositions(int remaining, int slots, std::vector<int>& prefix,
                          std::set<std::vector<int>>& out) {
    if (slots == 1) {
        prefix.push_back(remaining);
        out.insert(prefix);
        prefix.pop_back();
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        prefix.push_back(n);
        collect_compositions(remaining - n, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

std::set<std::vector<int>> layer_oracle(int photons, int modes) {
    std::set<std::vector<int>> out;
    std::vector<int> prefix;
    collect_compositions(photons, modes, prefix, out);
    return out;
}

} // namespace

TEST_CASE("layer enumeration") {
    SECTION("two photons over the tripod layer match the printed list") {
        const auto basis = FockBasis::enumerate_layer(2, 4);
        REQUIRE(basis.size() == 10);
        const std::set<std::vector<int>> expected = {
            {1, 1, 0, 0}, {0, 1, 1, 0}, {1, 0, 1, 0}, {0, 0, 1, 1}, {0, 1, 0, 1},
            {1, 0, 0, 1}, {2, 0, 0, 0}, {0, 2, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 2}};
        std::set<std::vector<int>> got;
        for (int k = 0; k < basis.size(); ++k) got.insert(basis.state(k));
        REQUIRE(got == expected);
    }

    SECTION("empty layer is exactly the vacuum") {
        const auto basis = FockBasis::enumerate_layer(0, 5);
        REQUIRE(basis.size() == 1);
        REQUIRE(basis.state(0) == OccupationVector{0, 0, 0, 0, 0});
    }

    SECTION("three photons over four modes, against the recursive oracle") {
        const auto oracle = layer_oracle(3, 4);
        REQUIRE(oracle.size() == 20);
        const auto basis = FockBasis::enumerate_layer(3, 4);
        REQUIRE(basis.size() == 20);
        for (int k = 0; k < basis.size(); ++k) REQUIRE(oracle.count(basis.state(k)) == 1);
    }

    SECTION("every occupation sums to N and indexing round-trips") {
        const auto basis = FockBasis::enumerate_layer(3, 5);
        for (int k = 0; k < basis.size(); ++k) {
            const auto& occ = basis.state(k);
            int total = 0;
            for (int n : occ) total += n;
            REQUIRE(total == 3);
            REQUIRE(basis.index_of(occ) == k);
        }
    }

    SECTION("descending lexicographic order is deterministic") {
        const auto basis = FockBasis::enumerate_layer(2, 4);
        REQUIRE(basis.state(0) == OccupationVector{2, 0, 0, 0});
        REQUIRE(basis.state(basis.size() - 1) == OccupationVector{0, 0, 0, 2});
        for (int k = 0; k + 1 < basis.size(); ++k) {
            REQUIRE(basis.state(k) > basis.state(k + 1));
        }
    }

    SECTION("layer sizes obey the Pascal recurrence") {
        for (int n = 1; n <= 4; ++n) {
            for (int m = 3; m <= 6; ++m) {
                const int full = FockBasis::enumerate_layer(n, m).size();
                const int fewer_modes = FockBasis::enumerate_layer(n, m - 1).size();
                const int fewer_photons = FockBasis::enumerate_layer(n - 1, m).size();
                REQUIRE(full == fewer_modes + fewer_photons);
            }
        }
    }

    SECTION("invalid layers are rejected") {
        REQUIRE_THROWS_AS(FockBasis::enumerate_layer(-1, 4), InvalidLayer);
        REQUIRE_THROWS_AS(FockBasis::enumerate_layer(2, 1), InvalidLayer);
    }
}

TEST_CASE("hop matrices") {
    const auto basis = FockBasis::enumerate_layer(2, 4);

    SECTION("single photon moves with unit amplitude") {
        const Matrix hop = basis.hop_matrix(1, 4);
        const int in = basis.index_of({1, 0, 1, 0});
        const int out = basis.index_of({0, 0, 1, 1});
        REQUIRE_THAT(std::abs(hop(out, in) - Complex(1.0, 0.0)), Catch::Matchers::WithinAbs(0.0, 1e-15));
        REQUIRE_THAT(hop.col(in).norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));
    }

    SECTION("bosonic enhancement factor sqrt(2)") {
        const Matrix hop = basis.hop_matrix(1, 4);
        const int in = basis.index_of({2, 0, 0, 0});
        const int out = basis.index_of({1, 0, 0, 1});
        REQUIRE_THAT(std::abs(hop(out, in)), Catch::Matchers::WithinAbs(std::sqrt(2.0), 1e-15));
    }

    SECTION("annihilation of an empty mode gives the zero column") {
        const Matrix hop = basis.hop_matrix(1, 4);
        const int in = basis.index_of({0, 1, 1, 0});
        REQUIRE(hop.col(in).norm() == 0.0);
    }

    SECTION("hop(s,t) is the adjoint of hop(t,s)") {
        for (int s = 1; s <= 4; ++s) {
            for (int t = 1; t <= 4; ++t) {
                if (s == t) continue;
                REQUIRE((basis.hop_matrix(s, t) - basis.hop_matrix(t, s).adjoint()).norm() == 0.0);
            }
        }
    }

    SECTION("hops conserve the layer") {
        const Matrix hop = basis.hop_matrix(2, 4);
        for (int k = 0; k < basis.size(); ++k) {
            for (int j = 0; j < basis.size(); ++j) {
                if (std::abs(hop(j, k)) > 0.0) {
                    int total = 0;
                    for (int n : basis.state(j)) total += n;
                    REQUIRE(total == 2);
                }
            }
        }
    }

    SECTION("self-hops and bad indices are rejected") {
        REQUIRE_THROWS_AS(basis.hop_matrix(2, 2), InvalidHop);
        REQUIRE_THROWS_AS(basis.hop_matrix(0, 2), InvalidHop);
        REQUIRE_THROWS_AS(basis.hop_matrix(1, 5), InvalidHop);
    }
}
