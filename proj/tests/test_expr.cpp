#include "doctest.h"

#include "koszulx/expr.hpp"
#include "koszulx/blowup.hpp"

#include <cstdint>

using namespace kx;

namespace {

struct Rng {
    std::uint64_t state = 0xfeedfacecafebeefULL;
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

}  // namespace

TEST_CASE("parse basic forms") {
    CHECK(parse_element(2, "e[1,2]").str() == "1*e[1,2]");
    CHECK(parse_element(2, "x[1,0]").str() == "1*x[1,0]");
    CHECK(parse_element(2, "-1*e[2]*x[1,0]+1*e[1]*x[0,1]").str() == "-1*e[2]*x[1,0]+1*e[1]*x[0,1]");
    CHECK(parse_element(3, "-1*e[1,3]*x[0,4,0]").str() == "-1*e[1,3]*x[0,4,0]");
    CHECK(parse_element(2, "0").is_zero());
    CHECK(parse_element(2, "e[]").str() == "1*e[]");
    CHECK(parse_element(2, "  e[1] * x[0,2] ").str() == "1*e[1]*x[0,2]");
}

TEST_CASE("e-lists normalize with a sign, repeats vanish") {
    CHECK(parse_element(3, "e[2,1]").str() == "-1*e[1,2]");
    CHECK(parse_element(3, "e[3,1,2]").str() == "1*e[1,2,3]");
    CHECK(parse_element(3, "e[1,1]").is_zero());
}

TEST_CASE("a-generators expand through the connecting map") {
    CHECK(parse_element(3, "a[1,2]").str() == generator(3, {1, 2}).rep.str());
    CHECK(parse_element(3, "a[1,2]*a[2,3]").str() == multiply(generator(3, {1, 2}), generator(3, {2, 3})).rep.str());
    CHECK(parse_element(2, "a[1,2]*a[1,2]").is_zero());
    CHECK(parse_element(3, "a[2,3]*x[1,0,0] - a[1,3]*x[0,1,0] + a[1,2]*x[0,0,1]").is_zero());
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_element(2, "e[1,2"), ParseError);
    CHECK_THROWS_AS(parse_element(2, "x[1]"), ParseError);
    CHECK_THROWS_AS(parse_element(2, "a[1]"), ParseError);
    CHECK_THROWS_AS(parse_element(2, "a[2,1]"), ParseError);
    CHECK_THROWS_AS(parse_element(2, "e[1] + "), ParseError);
    CHECK_THROWS_AS(parse_element(2, "q[1]"), ParseError);
    CHECK_THROWS_AS(parse_element(2, ""), ParseError);
    CHECK_THROWS_AS(parse_element(2, "e[1] e[2]"), ParseError);
    try {
        parse_element(2, "e[1,2");
    } catch (const ParseError& e) {
        CHECK(e.position > 0);
    }
}

TEST_CASE("round trip: parse o print = identity on canonical forms") {
    Rng rng;
    for (int trial = 0; trial < 120; ++trial) {
        int n = rng.range(1, 4);
        BigradedElement x;
        int terms = rng.range(0, 4);
        for (int t = 0; t < terms; ++t) {
            std::vector<int> subset;
            for (int i = 1; i <= n; ++i)
                if (rng.range(0, 1)) subset.push_back(i);
            ExponentVector a(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)] = rng.range(0, 3);
            x.add_term(make_index(n, subset, a), Scalar::integer(rng.range(-9, 9)));
        }
        std::string printed = print_element(x);
        CHECK(parse_element(n, printed) == x);
        CHECK(print_element(parse_element(n, printed)) == printed);
    }
}
