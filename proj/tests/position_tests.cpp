#include <algorithm>
#include <stdexcept>

#include "doctest.h"
#include "misere/Position.hpp"
#include "test_support.hpp"

using namespace misere;
using testsupport::count_substr;
using testsupport::random_pool;

TEST_SUITE("positions") {

TEST_CASE("interning assigns one id per structure") {
    const PositionId z = build({}, {});
    CHECK(z == zero());
    CHECK(build({}, {}) == z);
    const PositionId s = build({z}, {z});
    CHECK(s == star());
    CHECK(build({z, z}, {z}) == s);

    const PositionId a = build({z, s}, {});
    const PositionId b = build({s, z, s}, {});
    CHECK(a == b);
    const Position& stored = fetch(a);
    CHECK(stored.left.size() == 2);
    CHECK(std::is_sorted(stored.left.begin(), stored.left.end()));
}

TEST_CASE("option ids must already exist") {
    const auto bogus = static_cast<PositionId>(store_size());
    CHECK_THROWS_AS(build({bogus}, {}), std::out_of_range);
    CHECK_THROWS_AS(build({}, {bogus}), std::out_of_range);
    CHECK_THROWS_AS(fetch(bogus), std::out_of_range);
}

TEST_CASE("named positions match their defining trees") {
    const PositionId z = zero();
    const PositionId s = star();
    CHECK(named(NamedPosition::Zero) == z);
    CHECK(named(NamedPosition::Star) == s);
    CHECK(named(NamedPosition::StarN, 1) == s);
    CHECK(named(NamedPosition::StarN, 2) == build({z, s}, {z, s}));
    CHECK(named(NamedPosition::One) == build({z}, {}));
    CHECK(named(NamedPosition::OneBar) == build({}, {z}));
    CHECK(named(NamedPosition::Sigma) == build({s}, {}));
    CHECK(named(NamedPosition::SigmaBar) == build({}, {s}));
    CHECK(named(NamedPosition::Rho) == build({s}, {z}));
    CHECK(named(NamedPosition::RhoBar) == build({z}, {s}));
    CHECK(named(NamedPosition::Tau) == build({s}, {s}));
    CHECK(named(NamedPosition::TauN, 0) == s);
    CHECK(named(NamedPosition::TauN, 1) == named(NamedPosition::Tau));
    const PositionId tau1 = named(NamedPosition::Tau);
    CHECK(named(NamedPosition::TauN, 2) == build({tau1}, {tau1}));

    const PositionId rho = named(NamedPosition::Rho);
    CHECK(named(NamedPosition::Eta) == build({build({z}, {rho})}, {s}));
    const PositionId rho_bar = named(NamedPosition::RhoBar);
    CHECK(named(NamedPosition::Theta) == build({build({s}, {rho})}, {build({rho_bar}, {s})}));

    CHECK_THROWS_AS(named(NamedPosition::StarN, 0), std::invalid_argument);
    CHECK_THROWS_AS(named(NamedPosition::TauN, -1), std::invalid_argument);
    CHECK_THROWS_AS(named(NamedPosition::Rho, 2), std::invalid_argument);
}

TEST_CASE("profiles of the named positions") {
    const StructuralProfile& z = profile(zero());
    CHECK(z.birthday == 0);
    CHECK(z.impartial);
    CHECK(z.all_small);
    CHECK(z.binary);
    CHECK(z.ab_rank == 0);
    CHECK(z.left_end);
    CHECK(z.right_end);

    const StructuralProfile& s = profile(star());
    CHECK(s.birthday == 1);
    CHECK(s.impartial);
    CHECK(s.all_small);
    CHECK(s.binary);
    CHECK(s.ab_rank == 1);
    CHECK_FALSE(s.left_end);
    CHECK_FALSE(s.right_end);

    const StructuralProfile& one = profile(named(NamedPosition::One));
    CHECK(one.birthday == 1);
    CHECK_FALSE(one.impartial);
    CHECK_FALSE(one.all_small);
    CHECK(one.binary);
    CHECK_FALSE(one.ab_rank.has_value());
    CHECK_FALSE(one.left_end);
    CHECK(one.right_end);

    const StructuralProfile& rho = profile(named(NamedPosition::Rho));
    CHECK(rho.birthday == 2);
    CHECK_FALSE(rho.impartial);
    CHECK(rho.all_small);
    CHECK(rho.ab_rank == 2);

    const StructuralProfile& tau = profile(named(NamedPosition::Tau));
    CHECK(tau.birthday == 2);
    CHECK(tau.impartial);
    CHECK(tau.ab_rank == 2);

    CHECK(profile(named(NamedPosition::Sigma)).all_small == false);
    CHECK_FALSE(profile(named(NamedPosition::Sigma)).ab_rank.has_value());

    CHECK(profile(named(NamedPosition::Eta)).birthday == 4);
    CHECK(profile(named(NamedPosition::Eta)).ab_rank == 4);
    CHECK(profile(named(NamedPosition::Theta)).birthday == 4);
    CHECK(profile(named(NamedPosition::Theta)).ab_rank == 4);

    const StructuralProfile& star3 = profile(named(NamedPosition::StarN, 3));
    CHECK(star3.birthday == 3);
    CHECK(star3.impartial);
    CHECK_FALSE(star3.binary);
    CHECK_FALSE(star3.ab_rank.has_value());

    CHECK(profile(named(NamedPosition::TauN, 5)).ab_rank == 6);
}

TEST_CASE("conjugation is an involution that mirrors structure") {
    const auto pool = random_pool(0xC0117u, 250);
    for (PositionId p : pool) {
        const PositionId c = conjugate(p);
        CHECK(conjugate(c) == p);
        const StructuralProfile& pp = profile(p);
        const StructuralProfile& pc = profile(c);
        CHECK(pp.birthday == pc.birthday);
        CHECK(pp.all_small == pc.all_small);
        CHECK(pp.binary == pc.binary);
        CHECK(pp.left_end == pc.right_end);
        CHECK(pp.right_end == pc.left_end);
        if (pp.impartial) CHECK(c == p);

        std::vector<PositionId> mirrored;
        for (PositionId r : fetch(p).right) mirrored.push_back(conjugate(r));
        std::sort(mirrored.begin(), mirrored.end());
        mirrored.erase(std::unique(mirrored.begin(), mirrored.end()), mirrored.end());
        CHECK(fetch(c).left == mirrored);
    }
}

TEST_CASE("options strictly decrease birthday") {
    const auto pool = random_pool(0xB1237u, 250);
    for (PositionId p : pool) {
        const int day = profile(p).birthday;
        for (PositionId l : fetch(p).left) CHECK(profile(l).birthday < day);
        for (PositionId r : fetch(p).right) CHECK(profile(r).birthday < day);
    }
}

TEST_CASE("every option of a low rank position has low rank") {
    const auto pool = testsupport::random_ab_pool(0xAB999u, 200, 9);
    for (PositionId p : pool) {
        const auto rank = profile(p).ab_rank;
        REQUIRE(rank.has_value());
        const Position& pos = fetch(p);
        for (PositionId option : pos.left) CHECK(*profile(option).ab_rank <= *rank);
        for (PositionId option : pos.right) CHECK(*profile(option).ab_rank <= *rank);
    }
}

TEST_CASE("structural keys identify positions") {
    const auto pool = random_pool(0x51AB3u, 120);
    for (std::size_t i = 0; i < pool.size(); i += 7) {
        for (std::size_t j = 0; j < pool.size(); j += 5) {
            const bool same_key = structural_key(pool[i]) == structural_key(pool[j]);
            CHECK(same_key == (pool[i] == pool[j]));
        }
    }
    CHECK(structural_key(zero()) == "{|}");
    CHECK(structural_key(star()) == "{{|}|{|}}");
}

TEST_CASE("structural order is strict and total") {
    const auto pool = random_pool(0x0BDE5u, 80);
    for (std::size_t i = 0; i < pool.size(); i += 3) {
        for (std::size_t j = 0; j < pool.size(); j += 3) {
            const PositionId a = pool[i];
            const PositionId b = pool[j];
            if (a == b) {
                CHECK_FALSE(structural_less(a, b));
            } else {
                CHECK(structural_less(a, b) != structural_less(b, a));
            }
        }
    }
}

TEST_CASE("adjoint follows the end rules") {
    const PositionId z = zero();
    const PositionId s = star();
    const PositionId tau = named(NamedPosition::Tau);
    CHECK(adjoint(z) == s);
    CHECK(adjoint(s) == tau);
    CHECK(adjoint(named(NamedPosition::One)) == named(NamedPosition::RhoBar));
    CHECK(adjoint(named(NamedPosition::OneBar)) == named(NamedPosition::Rho));
    CHECK(adjoint(named(NamedPosition::Sigma)) == build({z}, {tau}));
    CHECK(adjoint(named(NamedPosition::Rho)) == build({s}, {tau}));
    CHECK(adjoint(tau) == build({tau}, {tau}));
}

TEST_CASE("alternating sum compilation") {
    const PositionId z = zero();
    const PositionId s = star();
    const PositionId star2 = named(NamedPosition::StarN, 2);
    const PositionId sigma = named(NamedPosition::Sigma);
    const PositionId sigma_bar = named(NamedPosition::SigmaBar);

    CHECK_THROWS_AS(alt_sum(SumKind::Disjunctive, z, z), std::invalid_argument);

    CHECK(alt_sum(SumKind::SeqJoin, z, s) == s);
    CHECK(alt_sum(SumKind::SeqJoin, s, z) == s);
    CHECK(alt_sum(SumKind::Ordinal, z, z) == z);
    CHECK(alt_sum(SumKind::And, s, s) == s);
    // Either option of star strands the opponent's reply in the other
    // component, so every move from star-or-star leads to a dead end.
    CHECK(alt_sum(SumKind::Or, s, s) == s);
    CHECK(alt_sum(SumKind::Or, z, s) == z);
    CHECK(alt_sum(SumKind::DisAnd, z, star2) == star2);
    CHECK(alt_sum(SumKind::DisOr, star2, z) == star2);
    CHECK(alt_sum(SumKind::DisAnd, sigma_bar, sigma) == named(NamedPosition::Tau));

    const PositionId one = named(NamedPosition::One);
    CHECK(alt_sum(SumKind::Ordinal, one, z) == one);
    CHECK(alt_sum(SumKind::Ordinal, one, one) == build({z, one}, {}));
}

TEST_CASE("all-small components give all-small compounds") {
    const auto pool = testsupport::random_all_small_pool(0xA775Au, 60, 2, 5);
    const SumKind kinds[] = {SumKind::And, SumKind::Or, SumKind::DisAnd,
                             SumKind::DisOr, SumKind::SeqJoin, SumKind::Ordinal};
    for (std::size_t i = 0; i < pool.size(); i += 4) {
        for (std::size_t j = 1; j < pool.size(); j += 5) {
            for (SumKind kind : kinds) {
                CHECK(profile(alt_sum(kind, pool[i], pool[j])).all_small);
            }
        }
    }
}

TEST_CASE("dot export lists each subposition once") {
    const std::string dot = to_dot(named(NamedPosition::Rho));
    CHECK(dot.rfind("digraph position {", 0) == 0);
    CHECK(count_substr(dot, "label=\"{|}\"") == 1);
    CHECK(count_substr(dot, "[label=\"L\"]") == 2);
    CHECK(count_substr(dot, "[label=\"R\"]") == 2);
    CHECK(count_substr(dot, " -> ") == 4);
}

}  // TEST_SUITE
