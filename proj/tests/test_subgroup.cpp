// SPDX-FileCopyrightText: 2026 The Larch authors
//
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "larch/warp/subgroup.hpp"
#include "larch/warp/warp_context.hpp"
#include "support/oracles.hpp"

using namespace larch;


TEST_CASE("make_subgroup matches the worked mask examples")
{
    auto view = make_subgroup(13, 8, 32);
    CHECK(view.rank == 5);
    CHECK(view.lane_offset == 8);
    CHECK(view.mask.bits == 0x0000FF00u);

    view = make_subgroup(0, 32, 32);
    CHECK(view.rank == 0);
    CHECK(view.lane_offset == 0);
    CHECK(view.mask.bits == 0xFFFFFFFFu);

    view = make_subgroup(37, 16, 64);
    CHECK(view.rank == 5);
    CHECK(view.lane_offset == 32);
    CHECK(view.mask.bits == 0x0000FFFF00000000ull);
}


TEST_CASE("make_subgroup agrees with lane enumeration")
{
    for (int warp : {4, 8, 16, 32, 64}) {
        for (int size = 1; size <= warp; size *= 2) {
            for (int tid = 0; tid < 3 * warp; ++tid) {
                auto view = make_subgroup(tid, size, warp);
                auto oracle = test::subgroup_oracle(tid, size, warp);
                CAPTURE(warp);
                CAPTURE(size);
                CAPTURE(tid);
                REQUIRE(view.rank == oracle.rank);
                REQUIRE(view.lane_offset == oracle.lane_offset);
                REQUIRE(view.mask.bits == oracle.mask);
                REQUIRE(popcnt(view.mask) == size);
                REQUIRE(view.lane_offset % size == 0);
            }
        }
    }
}


TEST_CASE("make_subgroup rejects bad parameters")
{
    CHECK_THROWS_AS(make_subgroup(0, 3, 32), ConfigurationError);
    CHECK_THROWS_AS(make_subgroup(0, 64, 32), ConfigurationError);
    CHECK_THROWS_AS(make_subgroup(-1, 4, 32), ConfigurationError);
    CHECK_THROWS_AS(make_subgroup(0, 4, 24), ConfigurationError);
}


TEST_CASE("subgroup masks partition the warp")
{
    for (int warp : {4, 8, 16, 32, 64}) {
        for (int size = 1; size <= warp; size *= 2) {
            std::uint64_t seen = 0;
            for (int first = 0; first < warp; first += size) {
                auto view = make_subgroup(first, size, warp);
                CHECK((seen & view.mask.bits) == 0);  // pairwise disjoint
                seen |= view.mask.bits;
            }
            CHECK(seen == full_lane_bits(warp));
        }
    }
}


TEST_CASE("popcnt overloads agree on 32 and 64 bit inputs")
{
    CHECK(popcnt(std::uint32_t{0x0000FF00u}) == 8);
    CHECK(popcnt(std::uint64_t{0}) == 0);
    CHECK(popcnt(std::uint64_t{0x0000FFFF00000000ull}) == 16);
    CHECK(popcnt(std::uint32_t{0xFFFFFFFFu}) ==
          popcnt(std::uint64_t{0xFFFFFFFFull}));
}


TEST_CASE("shfl broadcasts the source rank's value")
{
    auto view = make_subgroup(0, 4, 32);
    std::vector<double> values{10, 20, 30, 40};
    auto result = shfl<double>(view, values, 2);
    for (auto v : result) {
        CHECK(v == 30);
    }

    auto single = make_subgroup(7, 1, 32);
    std::vector<double> own{42.5};
    CHECK(shfl<double>(single, own, 0)[0] == 42.5);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(-1, 1);
    auto big = make_subgroup(8, 8, 32);
    std::vector<double> random_vals(8);
    for (auto& v : random_vals) {
        v = dist(rng);
    }
    for (int src = 0; src < 8; ++src) {
        auto got = shfl<double>(big, random_vals, src);
        auto want = test::shfl_oracle<double>(random_vals, src);
        CHECK(got == want);
    }
}


TEST_CASE("shfl rejects out-of-range sources and wrong value counts")
{
    auto view = make_subgroup(0, 4, 32);
    std::vector<double> values{1, 2, 3, 4};
    CHECK_THROWS_AS(shfl<double>(view, values, 4), CollectiveUsageError);
    CHECK_THROWS_AS(shfl<double>(view, values, -1), CollectiveUsageError);
    std::vector<double> short_values{1, 2};
    CHECK_THROWS_AS(shfl<double>(view, short_values, 0),
                    CollectiveUsageError);
}


TEST_CASE("shfl_xor permutes by rank xor bitmask")
{
    auto view = make_subgroup(0, 4, 16);
    std::vector<double> values{1, 2, 3, 4};
    CHECK(shfl_xor<double>(view, values, 1) ==
          std::vector<double>{2, 1, 4, 3});
    CHECK(shfl_xor<double>(view, values, 0) == values);

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(-1, 1);
    auto big = make_subgroup(0, 8, 32);
    std::vector<double> random_vals(8);
    for (auto& v : random_vals) {
        v = dist(rng);
    }
    for (int bitmask : {1, 2, 4}) {
        auto got = shfl_xor<double>(big, random_vals, bitmask);
        auto want = test::shfl_xor_oracle<double>(random_vals, bitmask);
        CHECK(got == want);
    }
}


TEST_CASE("shfl_xor applied twice is the identity")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int size : {2, 4, 8, 16, 32}) {
        auto view = make_subgroup(0, size, 32);
        std::vector<double> values(size);
        for (auto& v : values) {
            v = dist(rng);
        }
        for (int bitmask = 0; bitmask < size; ++bitmask) {
            auto once = shfl_xor<double>(view, values, bitmask);
            auto twice = shfl_xor<double>(view, once, bitmask);
            CHECK(twice == values);
        }
    }
}


TEST_CASE("ballot masks and shifts the warp-wide word")
{
    // Subwarp of tids 4..7 in a warp of 8; predicate true at tids 5, 7.
    auto view = make_subgroup(4, 4, 8);
    std::vector<std::uint8_t> preds(8, 0);
    preds[5] = 1;
    preds[7] = 1;
    CHECK(view.mask.bits == 0b11110000u);
    CHECK(ballot(view, preds) == 0b1010u);

    std::fill(preds.begin(), preds.end(), 0);
    CHECK(ballot(view, preds) == 0);

    std::fill(preds.begin(), preds.end(), 1);
    CHECK(ballot(view, preds) == 0b1111u);
}


TEST_CASE("any and all are the paper's ballot realizations")
{
    std::mt19937_64 rng(17);
    for (int warp : {8, 16, 32}) {
        for (int size = 1; size <= warp; size *= 2) {
            for (int trial = 0; trial < 50; ++trial) {
                std::vector<std::uint8_t> preds(warp);
                for (auto& p : preds) {
                    p = rng() & 1;
                }
                for (int first = 0; first < warp; first += size) {
                    auto view = make_subgroup(first, size, warp);
                    auto word = ballot(view, preds);
                    CHECK(word == test::ballot_oracle(preds, first, size));
                    CHECK(any(view, preds) ==
                          test::any_oracle(preds, first, size));
                    CHECK(all(view, preds) ==
                          test::all_oracle(preds, first, size));
                    // The realization identities themselves.
                    CHECK(any(view, preds) == (word != 0));
                    CHECK(all(view, preds) ==
                          (word == (std::uint64_t{1} << size) - 1));
                }
            }
        }
    }
}


TEST_CASE("ballot ignores predicates outside the subgroup")
{
    std::mt19937_64 rng(23);
    const int warp = 32, size = 8;
    std::vector<std::uint8_t> preds(warp);
    for (auto& p : preds) {
        p = rng() & 1;
    }
    auto view = make_subgroup(8, size, warp);
    auto base = ballot(view, preds);
    auto base_any = any(view, preds);
    auto base_all = all(view, preds);
    for (int lane = 0; lane < warp; ++lane) {
        if (lane >= view.lane_offset && lane < view.lane_offset + size) {
            continue;
        }
        auto flipped = preds;
        flipped[lane] ^= 1;
        CHECK(ballot(view, flipped) == base);
        CHECK(any(view, flipped) == base_any);
        CHECK(all(view, flipped) == base_all);
    }
}


TEST_CASE("subgroup_reduce_sum matches the sequential fold")
{
    auto view = make_subgroup(0, 8, 32);
    std::vector<double> values{1, 2, 3, 4, 5, 6, 7, 8};
    for (auto v : subgroup_reduce_sum<double>(view, values)) {
        CHECK(v == 36);
    }

    auto single = make_subgroup(0, 1, 32);
    std::vector<double> one{-3.25};
    CHECK(subgroup_reduce_sum<double>(single, one)[0] == -3.25);

    auto quad = make_subgroup(0, 4, 32);
    std::vector<double> mostly_zero{1.5, 0, 0, 0};
    for (auto v : subgroup_reduce_sum<double>(quad, mostly_zero)) {
        CHECK(v == 1.5);
    }

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int size : {2, 4, 8, 16, 32, 64}) {
        auto sg = make_subgroup(0, size, 64);
        std::vector<double> random_vals(size);
        for (auto& v : random_vals) {
            v = dist(rng);
        }
        auto want = test::sum_oracle<double>(random_vals);
        for (auto got : subgroup_reduce_sum<double>(sg, random_vals)) {
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}


TEST_CASE("context detects divergent collectives")
{
    WarpContext ctx(8);
    auto view = make_subgroup(0, 4, 8);
    std::vector<double> values{1, 2, 3, 4};
    std::vector<std::uint8_t> preds(8, 1);

    CHECK_NOTHROW(ctx.shfl<double>(view, values, 0));
    ctx.set_active(2, false);
    CHECK_THROWS_AS(ctx.shfl<double>(view, values, 0), ConvergenceError);
    CHECK_THROWS_AS(ctx.ballot(view, preds), ConvergenceError);
    CHECK_THROWS_AS(ctx.reduce_sum<double>(view, values), ConvergenceError);

    // The sibling subgroup is still converged.
    auto other = make_subgroup(4, 4, 8);
    CHECK_NOTHROW(ctx.shfl<double>(other, values, 1));
}


TEST_CASE("context rejects views from a different warp shape")
{
    WarpContext ctx(8);
    auto foreign = make_subgroup(0, 4, 16);
    std::vector<double> values{1, 2, 3, 4};
    CHECK_THROWS_AS(ctx.shfl<double>(foreign, values, 0),
                    CollectiveUsageError);
}


TEST_CASE("exhaustive ballot check for small warps")
{
    for (int warp : {4, 8}) {
        const auto total = std::uint64_t{1} << warp;
        std::vector<std::uint8_t> preds(warp);
        for (std::uint64_t bits = 0; bits < total; ++bits) {
            for (int lane = 0; lane < warp; ++lane) {
                preds[lane] = (bits >> lane) & 1;
            }
            for (int size = 1; size <= warp; size *= 2) {
                for (int first = 0; first < warp; first += size) {
                    auto view = make_subgroup(first, size, warp);
                    REQUIRE(ballot(view, preds) ==
                            test::ballot_oracle(preds, first, size));
                }
            }
        }
    }
}
