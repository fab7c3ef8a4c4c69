#include <doctest.h>

#include <algorithm>
#include <random>

#include "pstomo/analysis.hpp"
#include "pstomo/constructions.hpp"
#include "pstomo/reconstruction.hpp"

using namespace pstomo;

namespace {

Inverter make_psic2d_inverter(const TwoDConstructionParams& params, const Povm& povm) {
    return [&params, &povm](const OutcomeDistribution& probs) {
        const auto report = invert_psic_2d(probs, params, &povm);
        return InversionOutcome{report.state, report.residual, !report.ok()};
    };
}

Inverter make_rank1_inverter(const RankOneConstructionParams& params, const Povm& povm) {
    return [&params, &povm](const OutcomeDistribution& probs) {
        const auto report = invert_rank_one_3dm2(probs, params, &povm);
        return InversionOutcome{report.state, report.residual, !report.ok()};
    };
}

}  // namespace

TEST_CASE("frame_rank") {
    SUBCASE("tetrahedral is IC with rank 4") {
        const FrameReport r = frame_rank(build_tetrahedral());
        CHECK(r.frame_rank == 4);
        CHECK(r.dim_hermitian == 4);
        CHECK(r.is_ic);
    }
    SUBCASE("trine is rank 3, not IC") {
        const FrameReport r = frame_rank(build_trine());
        CHECK(r.frame_rank == 3);
        CHECK_FALSE(r.is_ic);
    }
    SUBCASE("2D construction at D=4 is rank-deficient") {
        const FrameReport r = frame_rank(build_psic_2d(TwoDConstructionParams::defaults(4)));
        CHECK(r.frame_rank <= 8);
        CHECK_FALSE(r.is_ic);
    }
    SUBCASE("complementary bases have at most 2D-1 independent elements") {
        for (Eigen::Index d = 2; d <= 6; ++d) {
            const FrameReport r = frame_rank(build_complementary_bases(d));
            CHECK(r.frame_rank <= 2 * static_cast<int>(d) - 1);
        }
    }
    SUBCASE("permutation invariance") {
        const Povm povm = build_rank_one_3dm2(RankOneConstructionParams::defaults(3));
        const FrameReport base = frame_rank(povm);
        std::vector<std::size_t> order(povm.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::mt19937_64 rng(3);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<HermitianOperator> elements;
        std::vector<std::string> labels;
        for (std::size_t i : order) {
            elements.push_back(povm.element(i));
            labels.push_back(povm.label(i));
        }
        const FrameReport shuffled = frame_rank(Povm(std::move(elements), std::move(labels)));
        CHECK(shuffled.frame_rank == base.frame_rank);
        CHECK((shuffled.singular_values - base.singular_values).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("certify_psic") {
    SUBCASE("2D construction, D=3") {
        const auto params = TwoDConstructionParams::defaults(3);
        const Povm povm = build_psic_2d(params);
        const auto stats = certify_psic(povm, make_psic2d_inverter(params, povm), 1000, 12);
        CHECK(stats.successes >= 990);
        CHECK(stats.silent_failures == 0);
        CHECK(stats.passed());
    }
    SUBCASE("rank-one construction, D=2 tetrahedral") {
        const auto params = RankOneConstructionParams::defaults(2);
        const Povm povm = build_rank_one_3dm2(params);
        const auto stats = certify_psic(povm, make_rank1_inverter(params, povm), 1000, 13);
        CHECK(stats.successes >= 990);
        CHECK(stats.silent_failures == 0);
        CHECK(stats.passed());
    }
    SUBCASE("null inverter on the trine fails certification") {
        const Povm trine = build_trine();
        const Inverter null_inverter = [](const OutcomeDistribution&) {
            return InversionOutcome{PureState::basis(2, 0), 0.0, false};
        };
        const auto stats = certify_psic(trine, null_inverter, 200, 14);
        CHECK_FALSE(stats.passed());
        CHECK(stats.silent_failures > 0);
    }
}

TEST_CASE("trine_reflection") {
    SUBCASE("pole swap and equatorial fixed points") {
        const PureState south = trine_reflection(PureState::basis(2, 0));
        CHECK(bloch_of_state(south).z == doctest::Approx(-1.0));

        const PureState equatorial = state_of_bloch({1.0, 0.0, 0.0});
        CHECK(fidelity(trine_reflection(equatorial), equatorial) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("frozen (0.6, 0, 0.8) example") {
        const Povm trine = build_trine();
        const PureState psi = state_of_bloch({0.6, 0.0, 0.8});
        const PureState mirror = trine_reflection(psi);
        const RealVector pa = probabilities(trine, psi).values;
        const RealVector pb = probabilities(trine, mirror).values;
        CHECK((pa - pb).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(fidelity(psi, mirror) < 0.99);
    }
    SUBCASE("probabilities always preserved") {
        const Povm trine = build_trine();
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const PureState psi = random_pure_state(2, 500 + seed);
            const RealVector pa = probabilities(trine, psi).values;
            const RealVector pb = probabilities(trine, trine_reflection(psi)).values;
            CHECK((pa - pb).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SUBCASE("dimension check") {
        CHECK_THROWS_AS(trine_reflection(PureState::basis(3, 0)), DimensionMismatch);
    }
}

TEST_CASE("find_ambiguity") {
    SUBCASE("rediscovers the trine reflection") {
        const Povm trine = build_trine();
        const PureState target = state_of_bloch({0.6, 0.0, 0.8});
        const auto witness = find_ambiguity(trine, target, 50, 21);
        REQUIRE(witness.has_value());
        CHECK(witness->prob_gap < 1e-12);
        const BlochVector b = bloch_of_state(witness->state_b);
        CHECK(std::abs(b.x - 0.6) < 1e-5);
        CHECK(std::abs(b.y) < 1e-5);
        CHECK(std::abs(b.z + 0.8) < 1e-5);
    }
    SUBCASE("IC tetrahedral POVM yields no witness") {
        const Povm tetra = build_tetrahedral();
        const PureState target = random_pure_state(2, 77);
        CHECK_FALSE(find_ambiguity(tetra, target, 10, 22).has_value());
    }
    SUBCASE("amalgamated complementary bases at D=3 are ambiguous") {
        const Povm povm = amalgamate_last_pair(build_complementary_bases(3));
        const PureState target = random_pure_state(3, 99);
        const auto witness = find_ambiguity(povm, target, 50, 23);
        REQUIRE(witness.has_value());
        CHECK(witness->prob_gap <= 1e-8);
        CHECK(witness->infidelity >= 1e-3);
        // independent verification of the witness pair
        const RealVector pa = probabilities(povm, witness->state_a).values;
        const RealVector pb = probabilities(povm, witness->state_b).values;
        CHECK((pa - pb).cwiseAbs().maxCoeff() <= 1e-8);
    }
}
