#include "doctest.h"

#include "koszulx/blowup.hpp"

using namespace kx;

namespace {

BigradedElement xmono(int n, const ExponentVector& b) { return BigradedElement::single(make_index(n, {}, b)); }

int binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long v = 1;
    for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
    return static_cast<int>(v);
}

}  // namespace

TEST_CASE("generators") {
    CHECK(generator(2, {1, 2}).rep.str() == "-1*e[2]*x[1,0]+1*e[1]*x[0,1]");
    CHECK(generator(3, {1, 2, 3}).rep.str() == "1*e[2,3]*x[1,0,0]-1*e[1,3]*x[0,1,0]+1*e[1,2]*x[0,0,1]");
    CHECK(generator(4, {2, 3, 4}).rep.str() ==
          "1*e[3,4]*x[0,1,0,0]-1*e[2,4]*x[0,0,1,0]+1*e[2,3]*x[0,0,0,1]");
    BlowupClass a = generator(3, {1, 2});
    CHECK(a.k == 1);
    CHECK(a.s == 1);
    CHECK(a.member);
    CHECK_THROWS(generator(3, {1}));
    CHECK_THROWS(generator(3, {2, 1}));
}

TEST_CASE("a12 . a23 = -x2 . a123") {
    BlowupClass lhs = multiply(generator(3, {1, 2}), generator(3, {2, 3}));
    BigradedElement rhs = -multiply_twisted(xmono(3, {0, 1, 0}), generator(3, {1, 2, 3}).rep);
    CHECK(lhs.rep == rhs);
    CHECK(lhs.member);
    // expanded right side as printed
    CHECK(lhs.rep.str() == "-1*e[2,3]*x[1,1,0]+1*e[1,3]*x[0,2,0]-1*e[1,2]*x[0,1,1]");
    // unit and nilpotency
    BlowupClass sq = multiply(generator(2, {1, 2}), generator(2, {1, 2}));
    CHECK(sq.rep.is_zero());
}

TEST_CASE("relations certified by the delta^2 = 0 mechanism") {
    // right combination a23 x1 - a13 x2 + a12 x3 = 0
    std::vector<std::pair<Polynomial, GeneratorLabel>> r3 = {
        {poly_var(3, 1), {2, 3}}, {poly_neg(poly_var(3, 2)), {1, 3}}, {poly_var(3, 3), {1, 2}}};
    CHECK(relation_check(3, r3, Side::right).is_zero());
    // n = 4 analogue
    std::vector<std::pair<Polynomial, GeneratorLabel>> r4 = {{poly_var(4, 1), {2, 3, 4}},
                                                             {poly_neg(poly_var(4, 2)), {1, 3, 4}},
                                                             {poly_var(4, 3), {1, 2, 4}},
                                                             {poly_neg(poly_var(4, 4)), {1, 2, 3}}};
    CHECK(relation_check(4, r4, Side::right).is_zero());
    // these are delta^2 applied to e123 and e1234
    CHECK(delta(delta(BigradedElement::single(make_index(3, {1, 2, 3}, {0, 0, 0})))).is_zero());
    CHECK(delta(delta(BigradedElement::single(make_index(4, {1, 2, 3, 4}, {0, 0, 0, 0})))).is_zero());
    // a single term is not a relation
    std::vector<std::pair<Polynomial, GeneratorLabel>> single = {{poly_constant(3, Scalar::integer(1)), {1, 2}}};
    CHECK(!relation_check(3, single, Side::right).is_zero());
    // inhomogeneous input errors
    std::vector<std::pair<Polynomial, GeneratorLabel>> bad = {{poly_var(3, 1), {2, 3}},
                                                              {poly_constant(3, Scalar::integer(1)), {1, 3}}};
    CHECK_THROWS(relation_check(3, bad, Side::right));
}

TEST_CASE("the paper's displayed all-plus combinations evaluate to nonzero") {
    // x1 a23 + x2 a13 + x3 a12 under the artifact's conventions
    std::vector<std::pair<Polynomial, GeneratorLabel>> plus3 = {
        {poly_var(3, 1), {2, 3}}, {poly_var(3, 2), {1, 3}}, {poly_var(3, 3), {1, 2}}};
    BigradedElement left = relation_check(3, plus3, Side::left);
    BigradedElement right = relation_check(3, plus3, Side::right);
    CHECK(!left.is_zero());
    CHECK(!right.is_zero());
}

TEST_CASE("a123 . a234 expands to zero while x2 x3 a1234 does not") {
    BlowupClass lhs = multiply(generator(4, {1, 2, 3}), generator(4, {2, 3, 4}));
    CHECK(lhs.rep.is_zero());
    BigradedElement rhs = multiply_twisted(xmono(4, {0, 1, 1, 0}), generator(4, {1, 2, 3, 4}).rep);
    CHECK(!rhs.is_zero());
}

TEST_CASE("membership") {
    CHECK(membership(generator(3, {1, 2}).rep).member);
    // e1 (x) x1 is not a cycle: delta = x1^2
    Membership m = membership(BigradedElement::single(make_index(2, {1}, {1, 0})));
    CHECK(!m.member);
    CHECK(m.certificate.str() == "1*x[2,0]");
    // degree-0 column-2 monomial is a cycle
    CHECK(membership(xmono(2, {1, 1})).member);
}

TEST_CASE("membership is preserved by products") {
    // delta is a (-1)^p derivation for the twisted product, so products of
    // cycles are cycles; exhaustively for n <= 3, |a| <= 2 on cycle pairs
    for (int n = 2; n <= 3; ++n)
        for (int s = 1; s <= 2; ++s) {
            TorTable t = tor_power(n, s);
            for (const auto& row : t.rows)
                for (const auto& u : row.basis)
                    for (const auto& row2 : t.rows)
                        for (const auto& v : row2.basis) {
                            BigradedElement prod = multiply_twisted(u.rep, v.rep);
                            if (!prod.is_zero()) CHECK(delta(prod).is_zero());
                        }
        }
}

TEST_CASE("delta is a (-1)^p derivation for the twisted product") {
    for (int n = 2; n <= 3; ++n) {
        std::vector<KoszulIndex> labels;
        for (int k = 0; k <= n; ++k)
            for (int s = 0; s <= 2; ++s)
                for (const auto& [m, labs] : layer_blocks(n, k, s))
                    for (const auto& idx : labs) labels.push_back(idx);
        for (const auto& u : labels)
            for (const auto& v : labels) {
                BigradedElement eu = BigradedElement::single(u), ev = BigradedElement::single(v);
                BigradedElement lhs = delta(multiply_twisted(eu, ev));
                BigradedElement rhs = multiply_twisted(delta(eu), ev) +
                                      multiply_twisted(eu, delta(ev)).scaled(Scalar::integer(sign_pow(u.p())));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("left and right polynomial actions differ by (-1)^{k|b|}") {
    BlowupClass a12 = generator(3, {1, 2});  // k = 1
    BigradedElement x2 = xmono(3, {0, 1, 0});
    CHECK(multiply_twisted(x2, a12.rep) == -multiply_twisted(a12.rep, x2));
    BlowupClass a123 = generator(3, {1, 2, 3});  // k = 2
    CHECK(multiply_twisted(x2, a123.rep) == multiply_twisted(a123.rep, x2));
}

TEST_CASE("bigraded anticommutation on generator pairs") {
    // u v = (-1)^{k_u p_v + l_u q_v} v u with (k_u, l_u) the bidegree of u
    for (int n = 2; n <= 3; ++n) {
        std::vector<KoszulIndex> gens;
        for (int i = 1; i <= n; ++i) {
            gens.push_back(make_index(n, {i}, exp_zero(n)));
            gens.push_back(make_index(n, {}, exp_unit(n, i)));
        }
        for (const auto& u : gens)
            for (const auto& v : gens) {
                BigradedElement eu = BigradedElement::single(u), ev = BigradedElement::single(v);
                long long cross = static_cast<long long>(u.p()) * v.p() + static_cast<long long>(u.q()) * v.q();
                CHECK(multiply_twisted(eu, ev) ==
                      multiply_twisted(ev, eu).scaled(Scalar::integer(sign_pow(cross))));
            }
    }
}

TEST_CASE("generation_check") {
    GenerationReport g221 = generation_check(2, 2, 1);
    CHECK(g221.ok);
    CHECK(g221.tor_rank == 2);
    CHECK(g221.span_rank == 2);
    CHECK(!g221.spanning.empty());

    // n = 3, s = 1, k = 2: {a123} spans rank 1
    GenerationReport g312 = generation_check(3, 1, 2);
    CHECK(g312.ok);
    CHECK(g312.tor_rank == 1);

    // k > n-1: rank 0 on both sides
    GenerationReport big = generation_check(2, 1, 3);
    CHECK(big.ok);
    CHECK(big.tor_rank == 0);
    CHECK(big.span_rank == 0);

    // full range n <= 3, s <= 3
    for (int n = 2; n <= 3; ++n)
        for (int s = 1; s <= 3; ++s)
            for (int k = 1; k <= n - 1; ++k) CHECK(generation_check(n, s, k).ok);
}

TEST_CASE("n = 2 blowup ranks match Lambda_E(a12) (x) P") {
    // bidegree (k, s) rank: 1 at k = 0 with s+1 monomials; a12-multiples at
    // k = 1 with s monomials
    for (int s = 0; s <= 4; ++s) {
        TorTable t = tor_power(2, s);
        CHECK(t.rows[0].rank == s + 1);       // x^b, |b| = s
        CHECK(t.rows[1].rank == (s >= 1 ? s : 0));  // x^b . a12, |b| = s-1
        CHECK(t.rows[2].rank == 0);
        // a12^2 = 0
        BlowupClass sq = multiply(generator(2, {1, 2}), generator(2, {1, 2}));
        CHECK(sq.rep.is_zero());
    }
}

TEST_CASE("every generator lies in ker delta and in the canonical tor_power basis") {
    for (int n = 2; n <= 4; ++n) {
        TorTable t = tor_power(n, 1);
        std::vector<GeneratorLabel> labels;
        std::function<void(GeneratorLabel&, int)> rec = [&](GeneratorLabel& cur, int from) {
            if (cur.size() >= 2) labels.push_back(cur);
            for (int i = from; i <= n; ++i) {
                cur.push_back(i);
                rec(cur, i + 1);
                cur.pop_back();
            }
        };
        GeneratorLabel cur;
        rec(cur, 1);
        for (const auto& label : labels) {
            BlowupClass a = generator(n, label);
            CHECK(delta(a.rep).is_zero());
            bool in_basis = false;
            for (const auto& cls : t.rows[static_cast<size_t>(a.k)].basis)
                if (cls.rep == a.rep) in_basis = true;
            CHECK(in_basis);
        }
    }
}

TEST_CASE("gr_algebra columns reproduce tor_graded") {
    GrAlgebra g = gr_algebra(2, 3);
    for (int s = 0; s <= 3; ++s) {
        TorTable t = tor_graded(2, s);
        for (int k = 0; k <= 2; ++k)
            CHECK(g.column_ranks[static_cast<size_t>(s)][static_cast<size_t>(k)] ==
                  t.rows[static_cast<size_t>(k)].rank);
    }
    // n = 1: Lambda(e1) (x) E[x1] with e1 x1 = -x1 e1
    BigradedElement e1 = BigradedElement::single(make_index(1, {1}, {0}));
    BigradedElement x1 = BigradedElement::single(make_index(1, {}, {1}));
    CHECK(multiply_twisted(e1, x1) == -multiply_twisted(x1, e1));
    GrAlgebra g1 = gr_algebra(1, 2);
    CHECK(g1.column_ranks[0] == std::vector<int>{1, 1});
    // x1 and x2 commute
    BigradedElement y1 = BigradedElement::single(make_index(2, {}, {1, 0}));
    BigradedElement y2 = BigradedElement::single(make_index(2, {}, {0, 1}));
    CHECK(multiply_twisted(y1, y2) == multiply_twisted(y2, y1));
    (void)binom;
}
