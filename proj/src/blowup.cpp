#include "koszulx/blowup.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace kx {

BlowupClass generator(int n, const GeneratorLabel& label) {
    if (label.size() < 2) throw std::invalid_argument("generator: label needs at least two indices");
    int prev = 0;
    for (int i : label) {
        if (i <= prev || i > n) throw std::invalid_argument("generator: indices must be strictly increasing in 1..n");
        prev = i;
    }
    BigradedElement e = BigradedElement::single(make_index(n, label, exp_zero(n)));
    BlowupClass out;
    out.rep = delta(e);
    out.k = static_cast<int>(label.size()) - 1;
    out.s = 1;
    out.member = true;  // delta o delta = 0
    return out;
}

BlowupClass multiply(const BlowupClass& u, const BlowupClass& v) {
    BlowupClass out;
    out.rep = multiply_twisted(u.rep, v.rep);
    out.k = u.k + v.k;
    out.s = u.s + v.s;
    out.member = u.member && v.member && delta(out.rep).is_zero();
    return out;
}

BigradedElement relation_check(int n, const std::vector<std::pair<Polynomial, GeneratorLabel>>& terms, Side side) {
    BigradedElement acc;
    int k = -1, s = -1;
    for (const auto& [f, label] : terms) {
        if (f.nvars != n) throw std::invalid_argument("relation_check: polynomial variable count mismatch");
        BlowupClass a = generator(n, label);
        for (const auto& [b, c] : f.terms) {
            int deg = total_degree(b);
            int kk = a.k, ss = a.s + deg;
            if (k < 0) { k = kk; s = ss; }
            if (kk != k || ss != s) throw std::invalid_argument("relation_check: inhomogeneous combination");
            BigradedElement mono = BigradedElement::single(make_index(n, {}, b), c);
            BigradedElement prod =
                side == Side::left ? multiply_twisted(mono, a.rep) : multiply_twisted(a.rep, mono);
            acc = acc + prod;
        }
    }
    return acc;
}

Membership membership(const BigradedElement& x) {
    if (x.is_zero()) return Membership{true, {}};
    if (!x.is_homogeneous()) throw std::invalid_argument("membership: homogeneous input required");
    BigradedElement d = delta(x);
    if (d.is_zero()) return Membership{true, {}};
    return Membership{false, d};
}

GenerationReport generation_check(int n, int s, int k) {
    if (s < 1 || k < 1) throw std::invalid_argument("generation_check: need s >= 1, k >= 1");
    GenerationReport rep;

    TorTable power = tor_power(n, s);
    rep.tor_rank = k <= n ? power.rows[static_cast<size_t>(k)].rank : 0;

    // products x^b . a_L with |b| = s-1, |L| = k+1
    std::vector<std::pair<std::string, BigradedElement>> products;
    if (k + 1 <= n) {
        std::vector<int> label;
        std::function<void(int)> pick = [&](int from) {
            if (static_cast<int>(label.size()) == k + 1) {
                BlowupClass a = generator(n, label);
                std::function<void(ExponentVector&, int, int)> mono = [&](ExponentVector& b, int pos, int used) {
                    if (pos == n) {
                        if (used != s - 1) return;
                        BigradedElement xb = BigradedElement::single(make_index(n, {}, b));
                        std::string name = total_degree(b) == 0 ? "" : make_index(n, {}, b).name() + " . ";
                        name += "a[";
                        for (size_t i = 0; i < label.size(); ++i) name += (i ? "," : "") + std::to_string(label[i]);
                        name += "]";
                        products.emplace_back(name, multiply_twisted(xb, a.rep));
                        return;
                    }
                    for (int v = 0; v + used <= s - 1; ++v) {
                        b[static_cast<size_t>(pos)] = v;
                        mono(b, pos + 1, used + v);
                    }
                    b[static_cast<size_t>(pos)] = 0;
                };
                ExponentVector b = exp_zero(n);
                mono(b, 0, 0);
                return;
            }
            for (int i = from; i <= n; ++i) {
                label.push_back(i);
                pick(i + 1);
                label.pop_back();
            }
        };
        pick(1);
    }

    // rank of the span, blockwise per multidegree
    std::map<ExponentVector, std::vector<const BigradedElement*>> by_block;
    for (const auto& [name, el] : products) {
        if (el.is_zero()) continue;
        by_block[el.terms().begin()->first.multidegree()].push_back(&el);
    }
    auto tor_blocks = layer_blocks(n, k, s);
    for (const auto& [m, els] : by_block) {
        if (!tor_blocks.count(m)) continue;
        const auto& labs = tor_blocks.at(m);
        std::map<std::string, int> rows;
        for (size_t i = 0; i < labs.size(); ++i) rows[labs[i].name()] = static_cast<int>(i);
        SparseMatrix span(static_cast<int>(labs.size()), static_cast<int>(els.size()));
        for (size_t j = 0; j < els.size(); ++j)
            for (const auto& [idx, c] : els[j]->terms()) span.set(rows.at(idx.name()), static_cast<int>(j), c);
        rep.span_rank += rank_and_kernel(span).rank;
    }

    // spanning coefficients: express each Tor basis class in the products
    if (k <= n && rep.span_rank == rep.tor_rank) {
        for (const auto& cls : power.rows[static_cast<size_t>(k)].basis) {
            if (cls.rep.is_zero()) continue;
            ExponentVector m = cls.rep.terms().begin()->first.multidegree();
            std::vector<std::pair<std::string, const BigradedElement*>> cands;
            for (const auto& [name, el] : products)
                if (!el.is_zero() && el.terms().begin()->first.multidegree() == m) cands.emplace_back(name, &el);
            const auto& labs = tor_blocks.at(m);
            std::map<std::string, int> rows;
            for (size_t i = 0; i < labs.size(); ++i) rows[labs[i].name()] = static_cast<int>(i);
            SparseMatrix span(static_cast<int>(labs.size()), static_cast<int>(cands.size()));
            for (size_t j = 0; j < cands.size(); ++j)
                for (const auto& [idx, c] : cands[j].second->terms()) span.set(rows.at(idx.name()), static_cast<int>(j), c);
            std::vector<Rational> rhs(labs.size(), Rational(0));
            for (const auto& [idx, c] : cls.rep.terms())
                rhs[static_cast<size_t>(rows.at(idx.name()))] = Rational(c.as_integer());
            auto sol = solve_rational(span, rhs);
            if (!sol) continue;
            std::string expansion;
            for (size_t j = 0; j < cands.size(); ++j) {
                if ((*sol)[j] == 0) continue;
                std::ostringstream os;
                os << (*sol)[j];
                expansion += (expansion.empty() ? "" : " + ") + os.str() + " * (" + cands[j].first + ")";
            }
            rep.spanning.emplace_back(cls.rep.str(), expansion);
        }
    }

    rep.ok = rep.span_rank == rep.tor_rank;
    return rep;
}

GrAlgebra gr_algebra(int n, int smax) {
    if (n < 1) throw std::invalid_argument("gr_algebra: n must be >= 1");
    GrAlgebra g;
    g.n = n;
    for (int s = 0; s <= smax; ++s) {
        TorTable t = tor_graded(n, s);
        std::vector<int> ranks;
        for (const auto& row : t.rows) ranks.push_back(row.rank);
        g.column_ranks.push_back(std::move(ranks));
    }
    return g;
}

}  // namespace kx
