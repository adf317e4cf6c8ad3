#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "misere/Expression.hpp"
#include "misere/Outcome.hpp"
#include "misere/Position.hpp"
#include "misere/Quotient.hpp"
#include "misere/StarAlgebra.hpp"
#include "test_support.hpp"

using namespace misere;

TEST_SUITE("star algebra") {

TEST_CASE("star-built classification of the named positions") {
    CHECK(is_star_built(star()));
    CHECK(is_star_built(named(NamedPosition::Sigma)));
    CHECK(is_star_built(named(NamedPosition::SigmaBar)));
    CHECK(is_star_built(named(NamedPosition::Tau)));
    CHECK_FALSE(is_star_built(zero()));
    CHECK_FALSE(is_star_built(named(NamedPosition::Rho)));
    CHECK_FALSE(is_star_built(named(NamedPosition::One)));
    CHECK_FALSE(is_star_built(named(NamedPosition::StarN, 2)));
    CHECK_FALSE(is_star_built(named(NamedPosition::Eta)));
}

TEST_CASE("images collapse onto the two-element monoid") {
    CHECK(star_image(zero()) == StarImage::One);
    CHECK(star_image(star()) == StarImage::A);
    CHECK(star_image(named(NamedPosition::Tau)) == StarImage::One);
    CHECK(star_image(named(NamedPosition::Sigma)) == StarImage::One);
    CHECK_THROWS_AS(star_image(named(NamedPosition::Rho)), std::invalid_argument);
    CHECK_THROWS_AS(star_image(named(NamedPosition::One)), std::invalid_argument);
}

TEST_CASE("sum outcomes via image multiplication") {
    const PositionId sigma = named(NamedPosition::Sigma);
    const PositionId l_tau4 = build({named(NamedPosition::TauN, 4)}, {});
    std::vector<PositionId> big(8, sigma);
    big.insert(big.end(), 3, l_tau4);
    CHECK(sum_outcome_via_star(big) == Outcome::N);
    CHECK(misere_outcome(make_sum(big)) == Outcome::N);

    CHECK(sum_outcome_via_star({star(), star()}) == Outcome::N);
    CHECK(sum_outcome_via_star({sigma, star()}) == Outcome::P);
    CHECK(misere_outcome(make_sum({sigma, star()})) == Outcome::P);

    CHECK_THROWS_AS(sum_outcome_via_star({named(NamedPosition::Rho)}), std::invalid_argument);
}

TEST_CASE("enumeration by birthday") {
    CHECK(enumerate_star_built(0).empty());
    CHECK(enumerate_star_built(1) == std::vector<PositionId>{star()});

    const std::vector<PositionId> day2 = enumerate_star_built(2);
    CHECK(std::set<PositionId>(day2.begin(), day2.end()) ==
          std::set<PositionId>{named(NamedPosition::Sigma), named(NamedPosition::SigmaBar),
                               named(NamedPosition::Tau)});

    const std::vector<PositionId> day3 = enumerate_star_built(3);
    CHECK(day3.size() == 224);
    const std::set<PositionId> day3_set(day3.begin(), day3.end());
    for (PositionId p : day3) {
        CHECK(profile(p).birthday == 3);
        CHECK(is_star_built(p));
        CHECK(day3_set.count(conjugate(p)) == 1);
    }

    CHECK_THROWS_AS(enumerate_star_built(4), std::length_error);
    CHECK_THROWS_AS(enumerate_star_built(4, 4), std::length_error);
}

TEST_CASE("random sums agree with the direct outcome computation") {
    std::vector<PositionId> pool = {star()};
    for (int day = 2; day <= 3; ++day) {
        const std::vector<PositionId> born = enumerate_star_built(day);
        pool.insert(pool.end(), born.begin(), born.end());
    }
    std::mt19937 rng(0x57a7b1u);
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> size_dist(0, 6);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<PositionId> components;
        const int size = size_dist(rng);
        for (int i = 0; i < size; ++i) {
            components.push_back(pool[pick(rng)]);
        }
        CHECK(sum_outcome_via_star(components) == misere_outcome(make_sum(components)));
    }
}

TEST_CASE("star-built positions pass the isomorphism conditions") {
    std::vector<PositionId> sample = enumerate_star_built(2);
    const std::vector<PositionId> day3 = enumerate_star_built(3);
    std::mt19937 rng(0x57a7c2u);
    std::uniform_int_distribution<std::size_t> pick(0, day3.size() - 1);
    for (int i = 0; i < 6; ++i) {
        sample.push_back(day3[pick(rng)]);
    }
    sample.push_back(star());
    for (PositionId p : sample) {
        CAPTURE(format_position(p));
        CHECK(star_iso_check({p}, 5).passes);
        CHECK(is_star_built(conjugate(p)));
        if (misere_outcome(p) == Outcome::P) {
            CHECK(is_star_built(build({p}, {})));
        }
    }
}

TEST_CASE("isomorphism check rejects the known non-examples") {
    const StarIsoReport ok = star_iso_check(
        {named(NamedPosition::Sigma), named(NamedPosition::SigmaBar)}, 6);
    CHECK(ok.passes);
    CHECK_FALSE(ok.violation.has_value());

    const StarIsoReport rho = star_iso_check({named(NamedPosition::Rho)}, 6);
    CHECK_FALSE(rho.passes);
    REQUIRE(rho.violation.has_value());
    CHECK(rho.violation->condition == 2);
    CHECK(rho.violation->element.components ==
          std::vector<PositionId>{named(NamedPosition::Rho)});
    CHECK(misere_outcome(rho.violation->element) == Outcome::L);

    const StarIsoReport zero_only = star_iso_check({zero()}, 6);
    CHECK_FALSE(zero_only.passes);
    REQUIRE(zero_only.violation.has_value());
    CHECK(zero_only.violation->condition == 1);

    const StarIsoReport star2 = star_iso_check({named(NamedPosition::StarN, 2)}, 6);
    CHECK_FALSE(star2.passes);
    REQUIRE(star2.violation.has_value());
    CHECK(star2.violation->condition == 3);
    CHECK(star2.violation->element.components ==
          std::vector<PositionId>{named(NamedPosition::StarN, 2)});
    REQUIRE(star2.violation->option.has_value());
    CHECK(star2.violation->option->components.empty());
}

TEST_CASE("left ends of all-small positions with a lone zero right move vanish") {
    const std::vector<PositionId> cores = {
        star(),
        named(NamedPosition::Rho),
        build({zero(), star()}, {zero()}),
        build({named(NamedPosition::Tau)}, {zero()}),
    };
    for (PositionId core : cores) {
        CAPTURE(format_position(core));
        REQUIRE(profile(core).all_small);
        REQUIRE(fetch(core).right == std::vector<PositionId>{zero()});
        const PositionId left_end = build({core}, {});
        const ClosureBase cb = option_closure({left_end});
        CHECK(verify_relation(make_sum({left_end}), make_sum({}), cb, 5).holds);
    }
}

}  // TEST_SUITE
