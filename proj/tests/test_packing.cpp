#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "ecz/packing.hpp"
#include "oracles.hpp"

using namespace ecz;

namespace {

// representative error per class, alternating sign by position
int32_t class_error(WidthClass w, int i) {
    switch (w) {
        case WidthClass::w2: return i % 2 ? -2 : 1;
        case WidthClass::w3: return i % 2 ? -4 : 3;
        case WidthClass::w5: return i % 2 ? -16 : 15;
        case WidthClass::w7: return i % 2 ? -64 : 63;
        case WidthClass::full: return i % 2 ? -8190 : 8190;
    }
    return 0;
}

PendingEntry entry(WidthClass w, int i, bool forced = false) {
    PendingEntry e;
    e.error = forced ? 0 : class_error(w, i);
    e.width = w;
    e.raw = 100 + i;
    e.forced = forced;
    return e;
}

PendingBuffer make_buffer(const std::vector<PendingEntry>& entries) {
    PendingBuffer b;
    for (const auto& e : entries) b.push(e);
    return b;
}

// Independent restatement of the rule ladder on width classes only.
// Returns the frame type letter and consumed count.
std::pair<char, int> expected_rule(const std::vector<WidthClass>& w, const std::vector<bool>& forced,
                                   bool flush) {
    const auto at_most = [&](int n, WidthClass limit) {
        if (static_cast<int>(w.size()) < n) return false;
        for (int i = 0; i < n; ++i)
            if (forced[i] || static_cast<int>(w[i]) > static_cast<int>(limit)) return false;
        return true;
    };
    if (w.size() < 6 && !flush) return {'-', 0};
    if (w.empty()) return {'-', 0};
    if (at_most(6, WidthClass::w2)) return {'D', 6};
    if (at_most(4, WidthClass::w3)) return {'C', 4};
    if (at_most(3, WidthClass::w5)) return {'A', 3};
    if (at_most(2, WidthClass::w7)) return {'B', 2};
    return {'E', 1};
}

}  // namespace

TEST_CASE("pack_step spec points") {
    SECTION("six w2 entries pack as one D frame") {
        PendingBuffer b = make_buffer({
            {0, WidthClass::w2, 10, false},
            {1, WidthClass::w2, 11, false},
            {-1, WidthClass::w2, 12, false},
            {-2, WidthClass::w2, 13, false},
            {0, WidthClass::w2, 14, false},
            {1, WidthClass::w2, 15, false},
        });
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::D);
        CHECK(r->consumed == 6);
        CHECK(r->word == 0x01E1);
        CHECK(b.empty());
    }
    SECTION("a wide sixth entry disables D; C takes the first four") {
        PendingBuffer b = make_buffer({entry(WidthClass::w2, 0), entry(WidthClass::w2, 1),
                                       entry(WidthClass::w2, 2), entry(WidthClass::w2, 3),
                                       entry(WidthClass::w2, 4), entry(WidthClass::w7, 5)});
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::C);
        CHECK(r->consumed == 4);
        CHECK(b.size() == 2);
    }
    SECTION("single full entry flushes as type E with the raw sample") {
        PendingBuffer b;
        b.push({8000, WidthClass::full, 1234, false});
        const auto r = pack_step(b, true, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::E);
        CHECK(r->consumed == 1);
        CHECK(r->word == 0x34D2);
    }
}

TEST_CASE("pack_step waits for a full buffer unless flushing") {
    PendingBuffer b;
    for (int i = 0; i < 5; ++i) b.push(entry(WidthClass::w2, i));
    CHECK_FALSE(pack_step(b, false, 12).has_value());
    CHECK(b.size() == 5);
    PendingBuffer empty;
    CHECK_FALSE(pack_step(empty, false, 12).has_value());
    CHECK_FALSE(pack_step(empty, true, 12).has_value());
}

TEST_CASE("priority order is D, C, A, B, then E") {
    SECTION("all six fit 3 bits but not 2: C wins over A and B") {
        std::vector<PendingEntry> es;
        for (int i = 0; i < 6; ++i) es.push_back(entry(WidthClass::w3, i));
        PendingBuffer b = make_buffer(es);
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::C);
    }
    SECTION("first three fit 5 bits: A beats B") {
        PendingBuffer b = make_buffer({entry(WidthClass::w5, 0), entry(WidthClass::w5, 1),
                                       entry(WidthClass::w5, 2), entry(WidthClass::w7, 3),
                                       entry(WidthClass::w7, 4), entry(WidthClass::w7, 5)});
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::A);
        CHECK(r->consumed == 3);
    }
    SECTION("two w7 entries pack as B") {
        PendingBuffer b = make_buffer({entry(WidthClass::w7, 0), entry(WidthClass::w7, 1),
                                       entry(WidthClass::w2, 2), entry(WidthClass::w2, 3),
                                       entry(WidthClass::w2, 4), entry(WidthClass::w2, 5)});
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::B);
        CHECK(r->consumed == 2);
    }
    SECTION("forced entry fits nothing even with a tiny error") {
        PendingBuffer b = make_buffer({entry(WidthClass::w7, 0), entry(WidthClass::full, 1, true),
                                       entry(WidthClass::w2, 2), entry(WidthClass::w2, 3),
                                       entry(WidthClass::w2, 4), entry(WidthClass::w2, 5)});
        // B would need the second entry to fit 7 bits; the forced entry blocks it
        const auto r = pack_step(b, false, 12);
        REQUIRE(r.has_value());
        CHECK(r->type == FrameType::E);
        CHECK(r->consumed == 1);
        CHECK(decode_frame(r->word).values[0] == 100);  // raw of the oldest entry
    }
}

TEST_CASE("pack_step agrees with the rule table on every width-class tuple") {
    // exhaustive over class tuples for buffer lengths 1..6, one forced variant
    const WidthClass classes[] = {WidthClass::w2, WidthClass::w3, WidthClass::w5, WidthClass::w7,
                                  WidthClass::full};
    for (int len = 1; len <= 6; ++len) {
        int combos = 1;
        for (int i = 0; i < len; ++i) combos *= 5;
        for (int pick = 0; pick < combos; ++pick) {
            std::vector<WidthClass> ws;
            std::vector<bool> forced;
            int p = pick;
            for (int i = 0; i < len; ++i) {
                ws.push_back(classes[p % 5]);
                forced.push_back(false);
                p /= 5;
            }
            for (bool flush : {false, true}) {
                std::vector<PendingEntry> es;
                for (int i = 0; i < len; ++i) es.push_back(entry(ws[i], i));
                PendingBuffer b = make_buffer(es);
                const auto r = pack_step(b, flush, 12);
                const auto [type, consumed] = expected_rule(ws, forced, flush);
                if (type == '-') {
                    REQUIRE_FALSE(r.has_value());
                } else {
                    REQUIRE(r.has_value());
                    REQUIRE(frame_type_name(r->type) == type);
                    REQUIRE(r->consumed == consumed);
                }
            }
        }
    }
}

TEST_CASE("flush always makes progress on a nonempty buffer") {
    std::mt19937 rng(23);
    const WidthClass classes[] = {WidthClass::w2, WidthClass::w3, WidthClass::w5, WidthClass::w7,
                                  WidthClass::full};
    for (int trial = 0; trial < 5000; ++trial) {
        const int len = 1 + static_cast<int>(rng() % 6);
        std::vector<PendingEntry> es;
        for (int i = 0; i < len; ++i) {
            const bool forced = rng() % 8 == 0;
            es.push_back(entry(classes[rng() % 5], i, forced));
        }
        PendingBuffer b = make_buffer(es);
        int total = 0;
        while (!b.empty()) {
            const auto r = pack_step(b, true, 12);
            REQUIRE(r.has_value());
            REQUIRE(r->consumed >= 1);
            total += r->consumed;
        }
        REQUIRE(total == len);
    }
}

TEST_CASE("pending buffer rejects a seventh entry") {
    PendingBuffer b;
    for (int i = 0; i < 6; ++i) b.push(entry(WidthClass::w2, i));
    REQUIRE_THROWS_AS(b.push(entry(WidthClass::w2, 6)), Error);
}
