#include <catch_amalgamated.hpp>

#include <random>

#include "ecz/core.hpp"

using namespace ecz;

TEST_CASE("predict extrapolates the slope of the last two samples") {
    CHECK(predict({0, 0}) == 0);
    CHECK(predict({100, 100}) == 100);
    CHECK(predict({10, 5}) == 15);
    // overshoot beyond the sample range is expected
    CHECK(predict({2047, -2048}) == 6142);
    CHECK(predict({-2048, 2047}) == -6143);
}

TEST_CASE("compute_error subtracts the estimate and shifts history") {
    SECTION("all-zero stream") {
        auto [e, next] = compute_error({0, 0}, 0);
        CHECK(e == 0);
        CHECK(next == PredictorState{0, 0});
    }
    SECTION("running signal") {
        auto [e, next] = compute_error({940, 935}, 943);
        CHECK(e == -2);
        CHECK(next == PredictorState{943, 940});
    }
    SECTION("extreme error at width 12") {
        auto [e, next] = compute_error({-2048, 2047}, 2047);
        CHECK(e == 8190);
        CHECK(e == max_error(12));
        CHECK(next == PredictorState{2047, -2048});
    }
}

TEST_CASE("error bound is exact: exhaustive scan at width 8") {
    int32_t worst = 0;
    for (int32_t x1 = -128; x1 <= 127; ++x1)
        for (int32_t x2 = -128; x2 <= 127; ++x2) {
            const int32_t estimate = predict({x1, x2});
            // extremes in x are at the range ends; scanning both is enough,
            // but the full scan is cheap
            for (int32_t x = -128; x <= 127; ++x) {
                const int32_t e = x - estimate;
                worst = std::max(worst, std::abs(e));
            }
        }
    CHECK(worst == max_error(8));
    CHECK(worst == (1 << 9) - 2);
    // every reachable error still classifies
    CHECK(classify_width(worst) == WidthClass::full);
    CHECK(classify_width(-worst) == WidthClass::full);
}

TEST_CASE("reconstruct inverts compute_error") {
    SECTION("zero state") {
        auto [x, next] = reconstruct({0, 0}, 0, 12);
        CHECK(x == 0);
        CHECK(next == PredictorState{0, 0});
    }
    SECTION("spec point") {
        auto [x, next] = reconstruct({943, 940}, 5, 12);
        CHECK(x == 951);
        CHECK(next == PredictorState{951, 943});
    }
    SECTION("round trip over random states, all widths") {
        std::mt19937 rng(7);
        for (int width : {8, 11, 12}) {
            const int32_t lo = sample_min(width), hi = sample_max(width);
            std::uniform_int_distribution<int32_t> dist(lo, hi);
            for (int i = 0; i < 20000; ++i) {
                PredictorState s{dist(rng), dist(rng)};
                const int32_t x = dist(rng);
                auto [e, s_enc] = compute_error(s, x);
                auto [x_dec, s_dec] = reconstruct(s, e, width);
                REQUIRE(x_dec == x);
                REQUIRE(s_enc == s_dec);
            }
        }
    }
    SECTION("out-of-range result is corruption, not clamping") {
        REQUIRE_THROWS_MATCHES(reconstruct({2047, 0}, 0, 12), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == ErrorCode::range_corruption;
                               }));
    }
}

TEST_CASE("classify_width picks the smallest fitting class") {
    CHECK(classify_width(0) == WidthClass::w2);
    CHECK(classify_width(-2) == WidthClass::w2);
    CHECK(classify_width(1) == WidthClass::w2);
    CHECK(classify_width(2) == WidthClass::w3);
    CHECK(classify_width(-4) == WidthClass::w3);
    CHECK(classify_width(15) == WidthClass::w5);
    CHECK(classify_width(-64) == WidthClass::w7);
    CHECK(classify_width(63) == WidthClass::w7);
    CHECK(classify_width(64) == WidthClass::full);
    CHECK(classify_width(-8190) == WidthClass::full);
}

TEST_CASE("classify_width agrees with the two's complement ranges") {
    for (int32_t e = -600; e <= 600; ++e) {
        const WidthClass w = classify_width(e);
        const auto in = [e](int bits) {
            return e >= -(1 << (bits - 1)) && e <= (1 << (bits - 1)) - 1;
        };
        switch (w) {
            case WidthClass::w2: REQUIRE(in(2)); break;
            case WidthClass::w3: REQUIRE((in(3) && !in(2))); break;
            case WidthClass::w5: REQUIRE((in(5) && !in(3))); break;
            case WidthClass::w7: REQUIRE((in(7) && !in(5))); break;
            case WidthClass::full: REQUIRE(!in(7)); break;
        }
    }
}

TEST_CASE("sample range helpers") {
    CHECK(sample_min(12) == -2048);
    CHECK(sample_max(12) == 2047);
    CHECK(in_sample_range(2047, 12));
    CHECK_FALSE(in_sample_range(2048, 12));
    CHECK_FALSE(in_sample_range(-2049, 12));
    CHECK(valid_sample_width(8));
    CHECK(valid_sample_width(12));
    CHECK_FALSE(valid_sample_width(7));
    CHECK_FALSE(valid_sample_width(13));
}
