#include "koszulx/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kx {

namespace {

const std::vector<BasisElement> kEmptyBasis;

std::string pair_name(const std::string& a, const std::string& b) { return "(" + a + " (x) " + b + ")"; }

ExponentVector concat_multidegree(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector m = a;
    m.insert(m.end(), b.begin(), b.end());
    return m;
}

// Graded-module homogeneity: multidegree(entry) + multidegree(target) must
// equal multidegree(source). Base-scalar entries have multidegree zero.
bool entry_homogeneous(const Scalar& v, const ExponentVector& src, const ExponentVector& dst) {
    if (src.size() != dst.size()) return false;
    ExponentVector diff(src.size());
    for (size_t i = 0; i < src.size(); ++i) {
        diff[i] = src[i] - dst[i];
        if (diff[i] < 0) return false;
    }
    if (v.kind() == Kind::polynomial) {
        for (const auto& [e, c] : v.as_poly().terms)
            if (e != diff) return false;
        return true;
    }
    return total_degree(diff) == 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// FreeComplex

int FreeComplex::rank(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<BasisElement>& FreeComplex::at(int k) const {
    auto it = basis.find(k);
    return it == basis.end() ? kEmptyBasis : it->second;
}

SparseMatrix FreeComplex::d(int k) const {
    auto it = diff.find(k);
    if (it != diff.end()) return it->second;
    return SparseMatrix(rank(k - 1), rank(k));
}

int FreeComplex::min_degree() const { return basis.empty() ? 0 : basis.begin()->first; }
int FreeComplex::max_degree() const { return basis.empty() ? 0 : basis.rbegin()->first; }

int FreeComplex::index_of(int k, const std::string& name) const {
    const auto& b = at(k);
    for (size_t i = 0; i < b.size(); ++i)
        if (b[i].name == name) return static_cast<int>(i);
    return -1;
}

VerifyReport verify_complex(const FreeComplex& c) {
    VerifyReport rep;
    for (const auto& [k, m] : c.diff) {
        if (m.rows != c.rank(k - 1) || m.cols != c.rank(k)) {
            std::ostringstream os;
            os << "degree " << k << ": differential shape " << m.rows << "x" << m.cols << " does not match bases "
               << c.rank(k - 1) << "x" << c.rank(k);
            rep.violations.push_back(os.str());
            continue;
        }
        for (const auto& [rc, v] : m.entries) {
            const auto& src = c.at(k)[static_cast<size_t>(rc.second)];
            const auto& dst = c.at(k - 1)[static_cast<size_t>(rc.first)];
            if (!src.multidegree.empty() && !dst.multidegree.empty() &&
                !entry_homogeneous(v, src.multidegree, dst.multidegree))
                rep.violations.push_back("degree " + std::to_string(k) +
                                         ": differential does not preserve multidegree at " + src.name);
        }
    }
    if (!rep.ok()) return rep;
    for (const auto& [k, m] : c.diff) {
        if (c.rank(k - 2) == 0) continue;
        SparseMatrix dd = c.d(k - 1) * m;
        if (dd.is_zero()) continue;
        std::map<int, bool> seen;
        for (const auto& [rc, v] : dd.entries) {
            if (seen.count(rc.second)) continue;
            seen[rc.second] = true;
            rep.violations.push_back("d o d != 0 from degree " + std::to_string(k) + " at basis element " +
                                     c.at(k)[static_cast<size_t>(rc.second)].name);
        }
    }
    return rep;
}

FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b) {
    FreeComplex out;
    out.domain = a.domain;
    std::map<int, std::map<std::tuple<int, int, int, int>, int>> pos;  // degree -> (p,i,q,j) -> col
    for (const auto& [p, ba] : a.basis)
        for (const auto& [q, bb] : b.basis) {
            int k = p + q;
            auto& dst = out.basis[k];
            for (size_t i = 0; i < ba.size(); ++i)
                for (size_t j = 0; j < bb.size(); ++j) {
                    pos[k][{p, static_cast<int>(i), q, static_cast<int>(j)}] = static_cast<int>(dst.size());
                    dst.push_back(BasisElement{pair_name(ba[i].name, bb[j].name),
                                               concat_multidegree(ba[i].multidegree, bb[j].multidegree)});
                }
        }
    for (const auto& [k, table] : pos) {
        SparseMatrix d(out.rank(k - 1), out.rank(k));
        auto lower = pos.find(k - 1);
        for (const auto& [key, col] : table) {
            auto [p, i, q, j] = key;
            if (lower == pos.end()) continue;
            SparseMatrix da = a.d(p);
            for (const auto& [rc, v] : da.entries) {
                if (rc.second != i) continue;
                auto jt = lower->second.find({p - 1, rc.first, q, j});
                if (jt == lower->second.end()) continue;
                d.add_to(jt->second, col, v);
            }
            SparseMatrix db = b.d(q);
            for (const auto& [rc, v] : db.entries) {
                if (rc.second != j) continue;
                auto jt = lower->second.find({p, i, q - 1, rc.first});
                if (jt == lower->second.end()) continue;
                d.add_to(jt->second, col, v * Scalar::integer(sign_pow(p)));
            }
        }
        out.diff[k] = d;
    }
    return out;
}

FreeComplex suspend(const FreeComplex& c, int s) {
    FreeComplex out;
    out.domain = c.domain;
    for (const auto& [k, b] : c.basis) out.basis[k + s] = b;
    Scalar sign = Scalar::integer(sign_pow(s));
    for (const auto& [k, m] : c.diff) out.diff[k + s] = m.scaled(sign);
    return out;
}

namespace {

std::map<ExponentVector, std::vector<int>> blocks_of(const std::vector<BasisElement>& basis) {
    std::map<ExponentVector, std::vector<int>> blocks;
    for (size_t i = 0; i < basis.size(); ++i) blocks[basis[i].multidegree].push_back(static_cast<int>(i));
    return blocks;
}

SparseMatrix submatrix(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    std::map<int, int> rpos, cpos;
    for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
    for (size_t j = 0; j < cols.size(); ++j) cpos[cols[j]] = static_cast<int>(j);
    SparseMatrix out(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (const auto& [rc, v] : m.entries) {
        auto ci = cpos.find(rc.second);
        if (ci == cpos.end()) continue;
        auto ri = rpos.find(rc.first);
        if (ri == rpos.end()) throw std::invalid_argument("differential does not preserve multidegree blocks");
        out.set(ri->second, ci->second, v);
    }
    return out;
}

}  // namespace

HomologyResult homology_ranks(const FreeComplex& c, HomologyMode mode) {
    HomologyResult res;
    if (c.basis.empty()) return res;
    if (c.domain.kind == Kind::polynomial)
        throw std::invalid_argument("homology_ranks: field or integer scalars required");
    if (mode == HomologyMode::integral)
        for (const auto& [k, m] : c.diff)
            for (const auto& [rc, v] : m.entries)
                if (v.kind() != Kind::integer)
                    throw std::invalid_argument("homology_ranks: integral mode requires integer entries");
    int lo = c.min_degree(), hi = c.max_degree();
    std::map<int, std::map<ExponentVector, std::vector<int>>> blk;
    for (const auto& [k, b] : c.basis) blk[k] = blocks_of(b);
    static const std::map<ExponentVector, std::vector<int>> kEmptyBlocks;
    auto blocks_at = [&](int k) -> const std::map<ExponentVector, std::vector<int>>& {
        auto it = blk.find(k);
        return it == blk.end() ? kEmptyBlocks : it->second;
    };
    for (int k = lo; k <= hi; ++k) {
        res.rank[k] = 0;
        for (const auto& [m, cols] : blocks_at(k)) {
            const auto& down = blocks_at(k - 1);
            const auto& up = blocks_at(k + 1);
            auto dit = down.find(m);
            auto uit = up.find(m);
            std::vector<int> rows_down = dit == down.end() ? std::vector<int>{} : dit->second;
            std::vector<int> rows_up = uit == up.end() ? std::vector<int>{} : uit->second;
            SparseMatrix dk = submatrix(c.d(k), rows_down, cols);
            SparseMatrix dk1 = submatrix(c.d(k + 1), cols, rows_up);
            int rank_dk, rank_dk1;
            if (mode == HomologyMode::integral) {
                auto s1 = smith_normal_form(dk);
                auto s2 = smith_normal_form(dk1);
                rank_dk = s1.rank;
                rank_dk1 = s2.rank;
                for (const auto& d : s2.divisors)
                    if (d != 1) res.torsion[k].push_back(d);
            } else {
                rank_dk = rank_and_kernel(dk).rank;
                rank_dk1 = rank_and_kernel(dk1).rank;
            }
            int h = static_cast<int>(cols.size()) - rank_dk - rank_dk1;
            res.rank[k] += h;
            res.block_rank[k][m] = h;
        }
    }
    return res;
}

SparseMatrix ChainMap::at(const FreeComplex& a, const FreeComplex& b, int k) const {
    auto it = maps.find(k);
    if (it != maps.end()) return it->second;
    return SparseMatrix(b.rank(k), a.rank(k));
}

VerifyReport verify_chain_map(const FreeComplex& a, const FreeComplex& b, const ChainMap& f) {
    VerifyReport rep;
    for (const auto& [k, m] : f.maps)
        if (m.rows != b.rank(k) || m.cols != a.rank(k))
            rep.violations.push_back("chain map shape mismatch at degree " + std::to_string(k));
    if (!rep.ok()) return rep;
    int lo = std::min(a.min_degree(), b.min_degree());
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int k = lo; k <= hi + 1; ++k) {
        SparseMatrix left = b.d(k) * f.at(a, b, k);
        SparseMatrix right = f.at(a, b, k - 1) * a.d(k);
        if (!(left == right)) rep.violations.push_back("does not commute with differentials at degree " + std::to_string(k));
    }
    return rep;
}

GradedSlice polynomial_slice(const FreeComplex& c, const ExponentVector& m) {
    GradedSlice out;
    for (const auto& [k, b] : c.basis) {
        std::vector<int>& mem = out.members[k];
        for (size_t i = 0; i < b.size(); ++i) {
            if (b[i].multidegree.empty()) throw std::invalid_argument("polynomial_slice: labels need multidegrees");
            if (exp_leq(b[i].multidegree, m)) mem.push_back(static_cast<int>(i));
        }
    }
    auto coeff_of = [](const Scalar& entry, const ExponentVector& e) -> Rational {
        if (entry.kind() == Kind::polynomial) {
            auto it = entry.as_poly().terms.find(e);
            if (it == entry.as_poly().terms.end()) return Rational(0);
            const Scalar& c0 = it->second;
            return c0.kind() == Kind::integer ? Rational(c0.as_integer()) : c0.as_rational();
        }
        if (total_degree(e) != 0) return Rational(0);
        return entry.kind() == Kind::integer ? Rational(entry.as_integer()) : entry.as_rational();
    };
    for (const auto& [k, cols] : out.members) {
        auto rit = out.members.find(k - 1);
        const std::vector<int> rows = rit == out.members.end() ? std::vector<int>{} : rit->second;
        std::vector<std::vector<Rational>> mat(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
        SparseMatrix d = c.d(k);
        std::map<int, int> rpos;
        for (size_t i = 0; i < rows.size(); ++i) rpos[rows[i]] = static_cast<int>(i);
        std::map<int, int> cpos;
        for (size_t j = 0; j < cols.size(); ++j) cpos[cols[j]] = static_cast<int>(j);
        for (const auto& [rc, v] : d.entries) {
            auto cj = cpos.find(rc.second);
            if (cj == cpos.end()) continue;
            auto ri = rpos.find(rc.first);
            if (ri == rpos.end()) continue;
            const ExponentVector& dg = c.at(k)[static_cast<size_t>(rc.second)].multidegree;
            const ExponentVector& dg2 = c.at(k - 1)[static_cast<size_t>(rc.first)].multidegree;
            ExponentVector e(dg.size());
            bool ok = true;
            for (size_t t = 0; t < dg.size(); ++t) {
                e[t] = dg[t] - dg2[t];
                if (e[t] < 0) ok = false;
            }
            if (!ok) continue;
            mat[static_cast<size_t>(ri->second)][static_cast<size_t>(cj->second)] = coeff_of(v, e);
        }
        out.diff[k] = std::move(mat);
    }
    return out;
}

// ---------------------------------------------------------------------------
// FreeDoubleComplex

int FreeDoubleComplex::rank(Bidegree b) const {
    auto it = basis.find(b);
    return it == basis.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<BasisElement>& FreeDoubleComplex::at(Bidegree b) const {
    auto it = basis.find(b);
    return it == basis.end() ? kEmptyBasis : it->second;
}

SparseMatrix FreeDoubleComplex::dh_at(Bidegree b) const {
    auto it = dh.find(b);
    if (it != dh.end()) return it->second;
    return SparseMatrix(rank({b.p - 1, b.q}), rank(b));
}

SparseMatrix FreeDoubleComplex::dv_at(Bidegree b) const {
    auto it = dv.find(b);
    if (it != dv.end()) return it->second;
    return SparseMatrix(rank({b.p, b.q - 1}), rank(b));
}

VerifyReport verify_complex(const FreeDoubleComplex& c, bool check_product) {
    VerifyReport rep;
    auto shape_check = [&](const std::map<Bidegree, SparseMatrix>& dm, bool horizontal) {
        for (const auto& [b, m] : dm) {
            Bidegree target = horizontal ? Bidegree{b.p - 1, b.q} : Bidegree{b.p, b.q - 1};
            if (m.rows != c.rank(target) || m.cols != c.rank(b)) {
                std::ostringstream os;
                os << (horizontal ? "dh" : "dv") << " shape mismatch at (" << b.p << "," << b.q << ")";
                rep.violations.push_back(os.str());
            }
        }
    };
    shape_check(c.dh, true);
    shape_check(c.dv, false);
    if (!rep.ok()) return rep;

    auto offending = [&](Bidegree b, const SparseMatrix& comp, const std::string& what) {
        std::map<int, bool> seen;
        for (const auto& [rc, v] : comp.entries) {
            if (seen.count(rc.second)) continue;
            seen[rc.second] = true;
            std::ostringstream os;
            os << what << " at bidegree (" << b.p << "," << b.q << "), basis element "
               << c.at(b)[static_cast<size_t>(rc.second)].name;
            rep.violations.push_back(os.str());
        }
    };

    for (const auto& [b, elems] : c.basis) {
        if (elems.empty()) continue;
        SparseMatrix hh = c.dh_at({b.p - 1, b.q}) * c.dh_at(b);
        if (!hh.is_zero()) offending(b, hh, "dh o dh != 0");
        SparseMatrix vv = c.dv_at({b.p, b.q - 1}) * c.dv_at(b);
        if (!vv.is_zero()) offending(b, vv, "dv o dv != 0");
        SparseMatrix route1 = c.dh_at({b.p, b.q - 1}) * c.dv_at(b);
        SparseMatrix route2 = c.dv_at({b.p - 1, b.q}) * c.dh_at(b);
        SparseMatrix mix = c.squares == Squares::commuting ? route1 + (-route2) : route1 + route2;
        if (!mix.is_zero())
            offending(b, mix, c.squares == Squares::commuting ? "squares do not commute" : "squares do not anticommute");
        for (const auto& [rc, v] : c.dh_at(b).entries) {
            const auto& src = elems[static_cast<size_t>(rc.second)];
            const auto& dst = c.at({b.p - 1, b.q})[static_cast<size_t>(rc.first)];
            if (!src.multidegree.empty() && !dst.multidegree.empty() &&
                !entry_homogeneous(v, src.multidegree, dst.multidegree))
                rep.violations.push_back("dh does not preserve multidegree at " + src.name);
        }
        for (const auto& [rc, v] : c.dv_at(b).entries) {
            const auto& src = elems[static_cast<size_t>(rc.second)];
            const auto& dst = c.at({b.p, b.q - 1})[static_cast<size_t>(rc.first)];
            if (!src.multidegree.empty() && !dst.multidegree.empty() &&
                !entry_homogeneous(v, src.multidegree, dst.multidegree))
                rep.violations.push_back("dv does not preserve multidegree at " + src.name);
        }
    }

    if (check_product && c.product) {
        using Key = std::pair<Bidegree, std::size_t>;
        auto add_term = [](std::map<Key, Scalar>& acc, Bidegree bb, std::size_t idx, const Scalar& coeff) {
            if (coeff.is_zero()) return;
            auto key = std::make_pair(bb, idx);
            auto it = acc.find(key);
            if (it == acc.end())
                acc.emplace(key, coeff);
            else {
                it->second = it->second + coeff;
                if (it->second.is_zero()) acc.erase(it);
            }
        };
        // derivation law for one of the two differentials; the vertical law is
        // a statement about the commuting form
        auto law = [&](bool horizontal) {
            auto d_at = [&](Bidegree b) { return horizontal ? c.dh_at(b) : c.dv_at(b); };
            auto target = [&](Bidegree b) {
                return horizontal ? Bidegree{b.p - 1, b.q} : Bidegree{b.p, b.q - 1};
            };
            for (const auto& [b1, e1] : c.basis)
                for (const auto& [b2, e2] : c.basis)
                    for (std::size_t i = 0; i < e1.size(); ++i)
                        for (std::size_t j = 0; j < e2.size(); ++j) {
                            std::map<Key, Scalar> lhs, rhs;
                            Bidegree bp{b1.p + b2.p, b1.q + b2.q};
                            for (const auto& t : c.product(b1, i, b2, j)) {
                                SparseMatrix d = d_at(bp);
                                for (const auto& [rc, v] : d.entries)
                                    if (rc.second == static_cast<int>(t.index))
                                        add_term(lhs, target(bp), static_cast<std::size_t>(rc.first), v * t.coeff);
                            }
                            SparseMatrix d1 = d_at(b1);
                            for (const auto& [rc, v] : d1.entries) {
                                if (rc.second != static_cast<int>(i)) continue;
                                for (const auto& t : c.product(target(b1), static_cast<std::size_t>(rc.first), b2, j))
                                    add_term(rhs, {target(b1).p + b2.p, target(b1).q + b2.q}, t.index, v * t.coeff);
                            }
                            int sign = horizontal ? sign_pow(b1.p) : sign_pow(b1.q);
                            SparseMatrix d2 = d_at(b2);
                            for (const auto& [rc, v] : d2.entries) {
                                if (rc.second != static_cast<int>(j)) continue;
                                for (const auto& t : c.product(b1, i, target(b2), static_cast<std::size_t>(rc.first)))
                                    add_term(rhs, {b1.p + target(b2).p, b1.q + target(b2).q}, t.index,
                                             v * t.coeff * Scalar::integer(sign));
                            }
                            if (lhs != rhs)
                                rep.violations.push_back(std::string(horizontal ? "horizontal" : "vertical") +
                                                         " derivation law fails on " + e1[i].name + " , " + e2[j].name);
                        }
        };
        law(true);
        if (c.squares == Squares::commuting) law(false);
    }
    return rep;
}

FreeDoubleComplex toggle_square_convention(const FreeDoubleComplex& c) {
    FreeDoubleComplex out = c;
    out.squares = c.squares == Squares::commuting ? Squares::anticommuting : Squares::commuting;
    for (auto& [b, m] : out.dv)
        if (b.p % 2 != 0) m = -m;
    return out;
}

FreeComplex condense(const FreeDoubleComplex& c) {
    FreeComplex out;
    out.domain = c.domain;
    std::map<int, std::vector<Bidegree>> by_degree;
    for (const auto& [b, elems] : c.basis)
        if (!elems.empty()) by_degree[b.p + b.q].push_back(b);
    for (auto& [k, bids] : by_degree)
        std::sort(bids.begin(), bids.end(), [](Bidegree x, Bidegree y) { return x.p > y.p; });
    std::map<std::pair<Bidegree, int>, int> colpos;
    for (const auto& [k, bids] : by_degree) {
        auto& dst = out.basis[k];
        for (Bidegree b : bids)
            for (size_t i = 0; i < c.at(b).size(); ++i) {
                colpos[{b, static_cast<int>(i)}] = static_cast<int>(dst.size());
                dst.push_back(c.at(b)[i]);
            }
    }
    for (const auto& [k, bids] : by_degree) {
        SparseMatrix d(out.rank(k - 1), out.rank(k));
        for (Bidegree b : bids) {
            SparseMatrix h = c.dh_at(b);
            for (const auto& [rc, v] : h.entries) {
                auto jt = colpos.find({Bidegree{b.p - 1, b.q}, rc.first});
                if (jt == colpos.end()) continue;
                d.add_to(jt->second, colpos.at({b, rc.second}), v);
            }
            SparseMatrix vm = c.dv_at(b);
            Scalar sign = Scalar::integer(c.squares == Squares::anticommuting ? 1 : sign_pow(b.p));
            for (const auto& [rc, v] : vm.entries) {
                auto jt = colpos.find({Bidegree{b.p, b.q - 1}, rc.first});
                if (jt == colpos.end()) continue;
                d.add_to(jt->second, colpos.at({b, rc.second}), v * sign);
            }
        }
        out.diff[k] = d;
    }
    return out;
}

FreeDoubleComplex transpose(const FreeDoubleComplex& c) {
    FreeDoubleComplex out;
    out.domain = c.domain;
    out.squares = c.squares;
    for (const auto& [b, e] : c.basis) out.basis[{b.q, b.p}] = e;
    for (const auto& [b, m] : c.dh) out.dv[{b.q, b.p}] = m;
    for (const auto& [b, m] : c.dv) out.dh[{b.q, b.p}] = m;
    if (c.product) {
        DoubleProduct inner = c.product;
        out.product = [inner](Bidegree b1, std::size_t i, Bidegree b2, std::size_t j) {
            return inner({b1.q, b1.p}, i, {b2.q, b2.p}, j);
        };
    }
    return out;
}

namespace {

struct TensorRegistry {
    std::map<std::tuple<Bidegree, std::size_t, Bidegree, std::size_t>, std::size_t> pos;
    std::size_t find(Bidegree ba, std::size_t ia, Bidegree bb, std::size_t ib) const {
        auto it = pos.find({ba, ia, bb, ib});
        if (it == pos.end()) throw std::logic_error("tensor label missing");
        return it->second;
    }
};

}  // namespace

FreeDoubleComplex tensor_double(const FreeDoubleComplex& a, const FreeDoubleComplex& b) {
    if (a.squares != Squares::commuting || b.squares != Squares::commuting)
        throw std::invalid_argument("tensor_double: both factors must carry commuting squares");
    FreeDoubleComplex out;
    out.domain = a.domain;
    out.squares = Squares::commuting;
    auto reg = std::make_shared<TensorRegistry>();
    for (const auto& [ba, ea] : a.basis)
        for (const auto& [bb, eb] : b.basis) {
            Bidegree sum{ba.p + bb.p, ba.q + bb.q};
            auto& dst = out.basis[sum];
            for (std::size_t i = 0; i < ea.size(); ++i)
                for (std::size_t j = 0; j < eb.size(); ++j) {
                    reg->pos[{ba, i, bb, j}] = dst.size();
                    dst.push_back(BasisElement{pair_name(ea[i].name, eb[j].name),
                                               concat_multidegree(ea[i].multidegree, eb[j].multidegree)});
                }
        }
    auto ensure = [&](std::map<Bidegree, SparseMatrix>& dm, Bidegree src, Bidegree dst) -> SparseMatrix& {
        auto it = dm.find(src);
        if (it == dm.end()) it = dm.emplace(src, SparseMatrix(out.rank(dst), out.rank(src))).first;
        return it->second;
    };
    for (const auto& [key, col] : reg->pos) {
        auto [ba, ia, bb, ib] = key;
        Bidegree sum{ba.p + bb.p, ba.q + bb.q};
        SparseMatrix ha = a.dh_at(ba);
        for (const auto& [rc, v] : ha.entries) {
            if (rc.second != static_cast<int>(ia)) continue;
            ensure(out.dh, sum, {sum.p - 1, sum.q})
                .add_to(static_cast<int>(reg->find({ba.p - 1, ba.q}, static_cast<std::size_t>(rc.first), bb, ib)),
                        static_cast<int>(col), v);
        }
        SparseMatrix hb = b.dh_at(bb);
        for (const auto& [rc, v] : hb.entries) {
            if (rc.second != static_cast<int>(ib)) continue;
            ensure(out.dh, sum, {sum.p - 1, sum.q})
                .add_to(static_cast<int>(reg->find(ba, ia, {bb.p - 1, bb.q}, static_cast<std::size_t>(rc.first))),
                        static_cast<int>(col), v * Scalar::integer(sign_pow(ba.p)));
        }
        SparseMatrix va = a.dv_at(ba);
        for (const auto& [rc, v] : va.entries) {
            if (rc.second != static_cast<int>(ia)) continue;
            ensure(out.dv, sum, {sum.p, sum.q - 1})
                .add_to(static_cast<int>(reg->find({ba.p, ba.q - 1}, static_cast<std::size_t>(rc.first), bb, ib)),
                        static_cast<int>(col), v);
        }
        SparseMatrix vb = b.dv_at(bb);
        for (const auto& [rc, v] : vb.entries) {
            if (rc.second != static_cast<int>(ib)) continue;
            ensure(out.dv, sum, {sum.p, sum.q - 1})
                .add_to(static_cast<int>(reg->find(ba, ia, {bb.p, bb.q - 1}, static_cast<std::size_t>(rc.first))),
                        static_cast<int>(col), v * Scalar::integer(sign_pow(ba.q)));
        }
    }
    if (a.product && b.product) {
        DoubleProduct pa = a.product, pb = b.product;
        auto regc = reg;
        auto decomp = std::make_shared<
            std::map<std::pair<Bidegree, std::size_t>, std::tuple<Bidegree, std::size_t, Bidegree, std::size_t>>>();
        for (const auto& [key, idx] : reg->pos) {
            auto [ba, ia, bb, ib] = key;
            (*decomp)[{Bidegree{ba.p + bb.p, ba.q + bb.q}, idx}] = key;
        }
        out.product = [pa, pb, regc, decomp](Bidegree b1, std::size_t i1, Bidegree b2, std::size_t i2) {
            auto [ba1, ia1, bb1, ib1] = decomp->at({b1, i1});
            auto [ba2, ia2, bb2, ib2] = decomp->at({b2, i2});
            long long cross = static_cast<long long>(bb1.p) * ba2.p + static_cast<long long>(bb1.q) * ba2.q;
            int sign = sign_pow(cross);
            std::vector<ProductTerm> out_terms;
            for (const auto& ta : pa(ba1, ia1, ba2, ia2))
                for (const auto& tb : pb(bb1, ib1, bb2, ib2)) {
                    Bidegree bsa{ba1.p + ba2.p, ba1.q + ba2.q};
                    Bidegree bsb{bb1.p + bb2.p, bb1.q + bb2.q};
                    out_terms.push_back(
                        ProductTerm{regc->find(bsa, ta.index, bsb, tb.index), ta.coeff * tb.coeff * Scalar::integer(sign)});
                }
            return out_terms;
        };
    }
    return out;
}

FreeComplex column_complex(const FreeDoubleComplex& c, int p) {
    FreeComplex out;
    out.domain = c.domain;
    for (const auto& [b, e] : c.basis)
        if (b.p == p && !e.empty()) out.basis[b.q] = e;
    for (const auto& [b, m] : c.dv)
        if (b.p == p) out.diff[b.q] = m;
    return out;
}

FreeComplex row_complex(const FreeDoubleComplex& c, int q) {
    FreeComplex out;
    out.domain = c.domain;
    for (const auto& [b, e] : c.basis)
        if (b.q == q && !e.empty()) out.basis[b.p] = e;
    for (const auto& [b, m] : c.dh)
        if (b.q == q) out.diff[b.p] = m;
    return out;
}

bool same_complex(const FreeComplex& a, const FreeComplex& b) {
    int lo = std::min(a.min_degree(), b.min_degree());
    int hi = std::max(a.max_degree(), b.max_degree());
    for (int k = lo; k <= hi; ++k) {
        if (a.rank(k) != b.rank(k)) return false;
        for (int i = 0; i < a.rank(k); ++i)
            if (a.at(k)[static_cast<size_t>(i)].name != b.at(k)[static_cast<size_t>(i)].name) return false;
        if (!(a.d(k) == b.d(k))) return false;
    }
    return true;
}

}  // namespace kx
