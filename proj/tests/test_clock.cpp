#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "tihsim/clock.hpp"

using namespace tihsim;
using namespace tihsim::clk;

TEST_CASE("cycle period formula") {
    CHECK(clock_period_i64(4) == 40);
    CHECK(clock_period_i64(6) == 144);
    for (int n = 4; n <= 12; ++n) {
        std::int64_t longseg = std::int64_t(n - 2) * (2 * n - 5);
        std::int64_t shortseg = 2 * std::int64_t(n - 2);
        CHECK(4 * longseg + 4 * shortseg == clock_period_i64(n));
    }
}

TEST_CASE("time zero advances the 1-pointer one cell right") {
    ClockConfig c = time_zero(6, 2);
    REQUIRE(well_formed(c));
    StepResult r = step_forward(c);
    REQUIRE(r.kind == StepKind::Next);
    CHECK(pointer_cell_t1(r.next) == 1);
    CHECK(r.next.track1[0] == t1::Filled);
    CHECK(r.next.track2 == c.track2);
    CHECK(r.next.track3 == c.track3);
}

TEST_CASE("2-pointer at the right end over a right pointer is illegal") {
    int n = 6, cells = n - 2;
    ClockConfig c;
    c.track1.assign(size_t(cells), t1::Filled);
    c.track1[size_t(cells - 1)] = t1::ptr(2, true);
    c.track2.assign(size_t(cells), t23::Filled);
    c.track2[size_t(cells - 1)] = t23::R;
    c.track3.assign(size_t(cells), t23::Dead);
    c.track3[0] = t23::R;
    REQUIRE(well_formed(c));
    StepResult r = step_forward(c);
    CHECK(r.kind == StepKind::Illegal);
}

TEST_CASE("tracks 1 and 2 return to time zero after p(N) steps") {
    for (int n : {4, 5, 6}) {
        for (int timer = 0; timer <= n - 3; ++timer) {
            ClockConfig c = time_zero(n, timer);
            ClockConfig cur = c;
            std::int64_t p = clock_period_i64(n);
            for (std::int64_t i = 0; i < p; ++i) {
                StepResult r = step_forward(cur);
                REQUIRE(r.kind == StepKind::Next);
                cur = r.next;
            }
            CHECK(cur.track1 == c.track1);
            CHECK(cur.track2 == c.track2);
            if (timer == 0) {
                CHECK(cur.track3 == c.track3);  // single-cycle clock
            } else {
                CHECK(cur.track3 != c.track3);  // hour hand advanced
            }
            CHECK(timer_length(cur) == timer);
        }
    }
}

TEST_CASE("classification of simple cases") {
    CHECK(classify(time_zero(6, 2)) == ConfigClass::Correct);

    // 4-pointer while track 2 is away from time zero
    int cells = 4;
    ClockConfig c;
    c.track1.assign(size_t(cells), t1::Blank);
    c.track1[0] = t1::ptr(4, true);
    c.track2.assign(size_t(cells), t23::Blank);
    c.track2[0] = t23::Filled;
    c.track2[1] = t23::R;
    c.track3.assign(size_t(cells), t23::Dead);
    c.track3[0] = t23::R;
    REQUIRE(well_formed(c));
    CHECK(classify(c) == ConfigClass::Incorrect);

    ClockConfig bad = time_zero(6, 1);
    bad.track1[2] = t1::ptr(3, false);  // two pointers
    CHECK(classify(bad) == ConfigClass::NotWellFormed);
}

TEST_CASE("correct configurations are counted by the closed form") {
    for (int n : {4, 5}) {
        for (int timer = 0; timer <= n - 3; ++timer) {
            std::int64_t count = 0;
            for (const ClockConfig& c : enumerate_wellformed(n, timer))
                if (classify(c) == ConfigClass::Correct) ++count;
            CHECK(count == (2 * timer + 1) * clock_period_i64(n));
        }
    }
}

TEST_CASE("graph structure at small sizes") {
    GraphReport r = build_graph(5, 0);
    CHECK(r.cycle_length == clock_period_i64(5));
    CHECK(r.cycle_length == 84);
    CHECK(r.ok());

    r = build_graph(5, 2);
    CHECK(r.cycle_length == 5 * clock_period_i64(5));
    CHECK(r.ok());

    for (int n : {4, 6}) {
        for (int timer = 0; timer <= n - 3; ++timer) {
            GraphReport rep = build_graph(n, timer);
            INFO("N=" << n << " T=" << timer);
            CHECK(rep.ok());
            CHECK(rep.max_incorrect_path <= clock_period_i64(n));
        }
    }
}

TEST_CASE("closure: stepping a well-formed configuration stays well-formed") {
    for (const ClockConfig& c : enumerate_wellformed(5, 1)) {
        StepResult r = step_forward(c);
        if (r.kind == StepKind::Next) REQUIRE(well_formed(r.next));
    }
}

TEST_CASE("rule table has unique names and a paper cross-reference") {
    std::set<std::string> names;
    for (const ClockRule& r : clock_rules()) {
        CHECK(names.insert(r.name).second);
        CHECK_FALSE(r.paper_name.empty());
        CHECK(r.family >= 1);
        CHECK(r.family <= 8);
    }
    CHECK(clock_rules().size() > 40);
}
