#include "doctest.h"

#include "koszulx/matrix.hpp"

#include <algorithm>
#include <numeric>

using namespace kx;

namespace {

SparseMatrix from_ints(int rows, int cols, const std::vector<std::vector<long long>>& a) {
    SparseMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (a[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0)
                m.set(r, c, Scalar::integer(a[static_cast<size_t>(r)][static_cast<size_t>(c)]));
    return m;
}

// Independent SNF oracle: d1*...*dk = gcd of all k x k minors.
Integer gcd_of_minors(const std::vector<std::vector<long long>>& a, int k) {
    int rows = static_cast<int>(a.size());
    int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> ridx(static_cast<size_t>(rows)), cidx(static_cast<size_t>(cols));
    std::iota(ridx.begin(), ridx.end(), 0);
    std::iota(cidx.begin(), cidx.end(), 0);
    Integer g = 0;
    std::vector<int> rs, cs;
    std::function<Integer(std::vector<int>&, std::vector<int>&)> det = [&](std::vector<int>& r, std::vector<int>& c) {
        size_t n = r.size();
        if (n == 1) return Integer(a[static_cast<size_t>(r[0])][static_cast<size_t>(c[0])]);
        Integer d = 0;
        for (size_t j = 0; j < n; ++j) {
            std::vector<int> r2(r.begin() + 1, r.end());
            std::vector<int> c2;
            for (size_t jj = 0; jj < n; ++jj)
                if (jj != j) c2.push_back(c[jj]);
            Integer sub = det(r2, c2);
            Integer term = Integer(a[static_cast<size_t>(r[0])][static_cast<size_t>(c[j])]) * sub;
            d += (j % 2 == 0) ? term : -term;
        }
        return d;
    };
    std::function<void(size_t, size_t)> choose_cols = [&](size_t start, size_t need) {
        if (need == 0) {
            g = gcd(g, det(rs, cs));
            return;
        }
        for (size_t i = start; i + need <= static_cast<size_t>(cols); ++i) {
            cs.push_back(static_cast<int>(i));
            choose_cols(i + 1, need - 1);
            cs.pop_back();
        }
    };
    std::function<void(size_t, size_t)> choose_rows = [&](size_t start, size_t need) {
        if (need == 0) {
            choose_cols(0, static_cast<size_t>(k));
            return;
        }
        for (size_t i = start; i + need <= static_cast<size_t>(rows); ++i) {
            rs.push_back(static_cast<int>(i));
            choose_rows(i + 1, need - 1);
            rs.pop_back();
        }
    };
    choose_rows(0, static_cast<size_t>(k));
    return g < 0 ? -g : g;
}

struct Rng {
    std::uint64_t state = 12345;
    std::uint64_t next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

}  // namespace

TEST_CASE("smith normal form spec examples") {
    CHECK(smith_normal_form(from_ints(2, 2, {{1, 0}, {0, 1}})).divisors == std::vector<Integer>{1, 1});
    CHECK(smith_normal_form(from_ints(3, 2, {{0, 0}, {0, 0}, {0, 0}})).divisors.empty());
    CHECK(smith_normal_form(from_ints(3, 2, {{0, 0}, {0, 0}, {0, 0}})).rank == 0);

    // diag(2,3): oracle d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    std::vector<std::vector<long long>> d23 = {{2, 0}, {0, 3}};
    Integer m1 = gcd_of_minors(d23, 1);
    Integer m2 = gcd_of_minors(d23, 2);
    CHECK(m1 == 1);
    CHECK(m2 == 6);
    auto snf = smith_normal_form(from_ints(2, 2, d23));
    REQUIRE(snf.rank == 2);
    CHECK(snf.divisors[0] == m1);
    CHECK(snf.divisors[1] * snf.divisors[0] == m2);
}

TEST_CASE("snf divisors invariant under row/column permutation") {
    Rng rng;
    for (int trial = 0; trial < 25; ++trial) {
        int rows = rng.range(1, 5), cols = rng.range(1, 5);
        std::vector<std::vector<long long>> a(static_cast<size_t>(rows), std::vector<long long>(static_cast<size_t>(cols)));
        for (auto& row : a)
            for (auto& v : row) v = rng.range(-4, 4);
        auto base = smith_normal_form(from_ints(rows, cols, a));
        auto shuffled = a;
        for (int k = 0; k < 4; ++k) {
            std::swap(shuffled[static_cast<size_t>(rng.range(0, rows - 1))],
                      shuffled[static_cast<size_t>(rng.range(0, rows - 1))]);
            int c1 = rng.range(0, cols - 1), c2 = rng.range(0, cols - 1);
            for (auto& row : shuffled) std::swap(row[static_cast<size_t>(c1)], row[static_cast<size_t>(c2)]);
        }
        auto perm = smith_normal_form(from_ints(rows, cols, shuffled));
        CHECK(base.divisors == perm.divisors);
    }
}

TEST_CASE("snf against gcd-of-minors oracle on random matrices") {
    Rng rng;
    rng.state = 777;
    for (int trial = 0; trial < 15; ++trial) {
        int rows = rng.range(1, 4), cols = rng.range(1, 4);
        std::vector<std::vector<long long>> a(static_cast<size_t>(rows), std::vector<long long>(static_cast<size_t>(cols)));
        for (auto& row : a)
            for (auto& v : row) v = rng.range(-6, 6);
        auto snf = smith_normal_form(from_ints(rows, cols, a));
        Integer prod = 1;
        for (int k = 1; k <= snf.rank; ++k) {
            prod *= snf.divisors[static_cast<size_t>(k - 1)];
            CHECK(prod == gcd_of_minors(a, k));
        }
        if (snf.rank < std::min(rows, cols)) CHECK(gcd_of_minors(a, snf.rank + 1) == 0);
        for (int k = 1; k < snf.rank; ++k)
            CHECK(snf.divisors[static_cast<size_t>(k)] % snf.divisors[static_cast<size_t>(k - 1)] == 0);
    }
}

TEST_CASE("rank_and_kernel spec examples") {
    auto id3 = rank_and_kernel(from_ints(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
    CHECK(id3.rank == 3);
    CHECK(id3.kernel.empty());

    auto sym = rank_and_kernel(from_ints(2, 2, {{1, 1}, {1, 1}}));
    CHECK(sym.rank == 1);
    REQUIRE(sym.kernel.size() == 1);
    CHECK(sym.kernel[0][0] == Scalar::rational(Rational(-1)));
    CHECK(sym.kernel[0][1] == Scalar::rational(Rational(1)));

    // Matrix of the differential on Lambda^2 (x) J/J^2 for n = 2: single
    // column e1^e2 with image (-1, +1) in basis (e2 (x) x1, e1 (x) x2).
    auto lam = rank_and_kernel(from_ints(2, 1, {{-1}, {1}}));
    CHECK(lam.rank == 1);
    CHECK(lam.kernel.empty());
}

TEST_CASE("rank + kernel size = column count, and kernel vectors annihilate") {
    Rng rng;
    rng.state = 4242;
    for (int trial = 0; trial < 25; ++trial) {
        int rows = rng.range(1, 6), cols = rng.range(1, 6);
        SparseMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                int v = rng.range(-2, 2);
                if (v != 0) m.set(r, c, Scalar::integer(v));
            }
        auto rk = rank_and_kernel(m);
        CHECK(rk.rank + static_cast<int>(rk.kernel.size()) == cols);
        for (const auto& v : rk.kernel) {
            auto img = m.apply(v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("rational and prime field ranks agree when snf divisors are all 1") {
    Rng rng;
    rng.state = 999;
    for (int trial = 0; trial < 30; ++trial) {
        int rows = rng.range(1, 5), cols = rng.range(1, 5);
        SparseMatrix m(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                int v = rng.range(-1, 1);
                if (v != 0) m.set(r, c, Scalar::integer(v));
            }
        auto snf = smith_normal_form(m);
        bool all_one = true;
        for (const auto& d : snf.divisors) all_one = all_one && d == 1;
        if (!all_one) continue;
        int rq = rank_and_kernel(m).rank;
        for (std::int64_t p : {2, 3, 5}) {
            SparseMatrix mp(rows, cols);
            for (const auto& [rc, v] : m.entries)
                mp.set(rc.first, rc.second, Scalar::mod(static_cast<std::int64_t>(v.as_integer()), p));
            CHECK(rank_and_kernel(mp).rank == rq);
        }
    }
}

TEST_CASE("integer kernel is a kernel and is unimodular-complete") {
    auto m = from_ints(1, 2, {{1, 1}});
    auto ker = integer_kernel(m);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0][0] * 1 + ker[0][1] * 1 == 0);
    Integer g = gcd(ker[0][0], ker[0][1]);
    CHECK((g == 1 || g == -1));
}

TEST_CASE("solve_rational finds witnesses and detects inconsistency") {
    auto m = from_ints(2, 2, {{1, 1}, {0, 1}});
    auto x = solve_rational(m, {Rational(3), Rational(1)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rational(2));
    CHECK((*x)[1] == Rational(1));
    auto bad = solve_rational(from_ints(2, 1, {{1}, {1}}), {Rational(0), Rational(1)});
    CHECK(!bad.has_value());
}

TEST_CASE("primitive integer scaling") {
    auto v = primitive_integer({make_rational(Integer(1), Integer(2)), make_rational(Integer(-3), Integer(4))});
    CHECK(v == std::vector<Integer>{2, -3});
    auto z = primitive_integer({Rational(0), Rational(0)});
    CHECK(z == std::vector<Integer>{0, 0});
}

TEST_CASE("sparse matrix algebra") {
    auto a = from_ints(2, 2, {{1, 2}, {0, 1}});
    auto b = from_ints(2, 2, {{1, 0}, {3, 1}});
    auto ab = a * b;
    CHECK(ab.at(0, 0) == Scalar::integer(7));
    CHECK(ab.at(0, 1) == Scalar::integer(2));
    CHECK(ab.at(1, 0) == Scalar::integer(3));
    CHECK((a + (-a)).is_zero());
    CHECK_THROWS(a.set(5, 0, Scalar::integer(1)));
}
