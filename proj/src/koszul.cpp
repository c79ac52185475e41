#include "koszulx/koszul.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>

namespace kx {

int KoszulIndex::ecount() const { return std::popcount(mask); }

std::vector<int> KoszulIndex::subset() const {
    std::vector<int> out;
    for (int i = 1; i <= n(); ++i)
        if (has(i)) out.push_back(i);
    return out;
}

ExponentVector KoszulIndex::multidegree() const {
    ExponentVector m = a;
    for (int i = 1; i <= n(); ++i)
        if (has(i)) m[static_cast<size_t>(i - 1)] += 1;
    return m;
}

std::string KoszulIndex::name() const {
    std::ostringstream os;
    bool have_e = mask != 0;
    bool have_x = xdeg() != 0;
    if (have_e || !have_x) {
        os << "e[";
        bool first = true;
        for (int i : subset()) {
            if (!first) os << ",";
            first = false;
            os << i;
        }
        os << "]";
    }
    if (have_x) {
        if (have_e) os << "*";
        os << "x[";
        for (size_t i = 0; i < a.size(); ++i) {
            if (i) os << ",";
            os << a[i];
        }
        os << "]";
    }
    return os.str();
}

KoszulIndex make_index(int n, const std::vector<int>& subset, const ExponentVector& a) {
    if (static_cast<int>(a.size()) != n) throw std::invalid_argument("make_index: exponent length mismatch");
    KoszulIndex idx;
    idx.a = a;
    int prev = 0;
    for (int i : subset) {
        if (i <= prev || i > n) throw std::invalid_argument("make_index: subset must be strictly increasing in 1..n");
        prev = i;
        idx.mask |= 1u << (i - 1);
    }
    for (int v : a)
        if (v < 0) throw std::invalid_argument("make_index: exponents must be nonnegative");
    return idx;
}

int index_cmp(const KoszulIndex& x, const KoszulIndex& y) {
    if (x.n() != y.n()) throw std::invalid_argument("index_cmp: mixed variable counts");
    if (x.ecount() != y.ecount()) return x.ecount() < y.ecount() ? -1 : 1;
    int c = exp_cmp(x.a, y.a);
    if (c != 0) return c;
    auto sx = x.subset(), sy = y.subset();
    for (size_t i = 0; i < sx.size(); ++i)
        if (sx[i] != sy[i]) return sx[i] > sy[i] ? -1 : 1;  // lex on sorted lists, {1,2} < {1,3}
    return 0;
}

int shuffle_sign(std::uint32_t maskJ, std::uint32_t maskL) {
    int inversions = 0;
    for (int v = 0; v < 32; ++v) {
        if (!((maskL >> v) & 1u)) continue;
        inversions += std::popcount(maskJ >> (v + 1));
    }
    return sign_pow(inversions);
}

// ---------------------------------------------------------------------------
// BigradedElement

BigradedElement BigradedElement::single(const KoszulIndex& idx, const Scalar& c) {
    BigradedElement e;
    e.add_term(idx, c);
    return e;
}

BigradedElement BigradedElement::unit(int n) { return single(make_index(n, {}, exp_zero(n))); }

void BigradedElement::add_term(const KoszulIndex& idx, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(idx);
    if (it == terms_.end()) {
        terms_.emplace(idx, c);
        return;
    }
    Scalar s = it->second + c;
    if (s.is_zero())
        terms_.erase(it);
    else
        it->second = s;
}

BigradedElement BigradedElement::operator+(const BigradedElement& o) const {
    BigradedElement out = *this;
    for (const auto& [idx, c] : o.terms_) out.add_term(idx, c);
    return out;
}

BigradedElement BigradedElement::operator-() const {
    BigradedElement out = *this;
    for (auto& [idx, c] : out.terms_) c = -c;
    return out;
}

BigradedElement BigradedElement::operator-(const BigradedElement& o) const { return *this + (-o); }

BigradedElement BigradedElement::scaled(const Scalar& c) const {
    BigradedElement out;
    for (const auto& [idx, v] : terms_) out.add_term(idx, v * c);
    return out;
}

bool BigradedElement::operator==(const BigradedElement& o) const { return (*this - o).is_zero(); }

bool BigradedElement::is_homogeneous() const {
    if (terms_.empty()) return true;
    auto it = terms_.begin();
    int k = it->first.ecount(), s = it->first.xdeg();
    for (const auto& [idx, c] : terms_)
        if (idx.ecount() != k || idx.xdeg() != s) return false;
    return true;
}

std::pair<int, int> BigradedElement::bidegree() const {
    if (terms_.empty()) throw std::invalid_argument("bidegree of zero element");
    if (!is_homogeneous()) throw std::invalid_argument("element is not homogeneous");
    auto it = terms_.begin();
    return {it->first.ecount(), it->first.xdeg()};
}

std::string BigradedElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {  // descending canonical order
        const Scalar& c = it->second;
        if (c.kind() != Kind::integer) {
            // general coefficients: parenthesized
            os << (first ? "" : " + ") << "(" << c.str() << ")*" << it->first.name();
            first = false;
            continue;
        }
        Integer v = c.as_integer();
        bool neg = v < 0;
        Integer mag = neg ? -v : v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? "-" : "+");
        first = false;
        os << mag.str() << "*" << it->first.name();
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Differentials and products on elements

BigradedElement apply_dh(const BigradedElement& x) {
    BigradedElement out;
    for (const auto& [idx, c] : x.terms()) {
        auto sub = idx.subset();
        int l = static_cast<int>(sub.size());
        for (int j = 1; j <= l; ++j) {
            int i = sub[static_cast<size_t>(j - 1)];
            KoszulIndex t = idx;
            t.mask &= ~(1u << (i - 1));
            t.a = exp_add(idx.a, exp_unit(idx.n(), i));
            out.add_term(t, c * Scalar::integer(sign_pow(j + l)));
        }
    }
    return out;
}

static BigradedElement apply_dv_impl(const BigradedElement& x, const std::vector<Scalar>& r, bool stored) {
    BigradedElement out;
    for (const auto& [idx, c] : x.terms()) {
        if (static_cast<int>(r.size()) != idx.n()) throw std::invalid_argument("apply_dv: r-value count mismatch");
        auto sub = idx.subset();
        int l = static_cast<int>(sub.size());
        for (int j = 1; j <= l; ++j) {
            int i = sub[static_cast<size_t>(j - 1)];
            KoszulIndex t = idx;
            t.mask &= ~(1u << (i - 1));
            int sgn = stored ? sign_pow(j + l + 1) : sign_pow(j + 1);
            out.add_term(t, c * r[static_cast<size_t>(i - 1)] * Scalar::integer(sgn));
        }
    }
    return out;
}

BigradedElement apply_dv(const BigradedElement& x, const std::vector<Scalar>& r) { return apply_dv_impl(x, r, true); }

BigradedElement apply_dv_standard(const BigradedElement& x, const std::vector<Scalar>& r) {
    return apply_dv_impl(x, r, false);
}

BigradedElement multiply_twisted(const BigradedElement& x, const BigradedElement& y) {
    BigradedElement out;
    for (const auto& [u, cu] : x.terms())
        for (const auto& [v, cv] : y.terms()) {
            if (u.n() != v.n()) throw std::invalid_argument("multiply_twisted: mixed variable counts");
            if (u.mask & v.mask) continue;
            int sgn = sign_pow(static_cast<long long>(u.xdeg()) * v.ecount()) * shuffle_sign(u.mask, v.mask);
            KoszulIndex t;
            t.mask = u.mask | v.mask;
            t.a = exp_add(u.a, v.a);
            out.add_term(t, cu * cv * Scalar::integer(sgn));
        }
    return out;
}

std::pair<int, KoszulIndex> normalize_factor_form(const std::vector<std::pair<int, int>>& blocks) {
    int n = static_cast<int>(blocks.size());
    KoszulIndex idx;
    idx.a = exp_zero(n);
    long long crossings = 0;
    long long xs_before = 0;
    for (int u = 0; u < n; ++u) {
        auto [j, a] = blocks[static_cast<size_t>(u)];
        if (j != 0 && j != 1) throw std::invalid_argument("normalize_factor_form: j must be 0 or 1");
        if (a < 0) throw std::invalid_argument("normalize_factor_form: exponent must be nonnegative");
        if (j) {
            idx.mask |= 1u << u;
            crossings += xs_before;
        }
        idx.a[static_cast<size_t>(u)] = a;
        xs_before += a;
    }
    return {sign_pow(crossings), idx};
}

// ---------------------------------------------------------------------------
// Extended Koszul complex

int LabeledDouble::index_of(const KoszulIndex& idx) const {
    Bidegree b{idx.p(), idx.q()};
    auto it = labels.find(b);
    if (it == labels.end()) return -1;
    for (size_t i = 0; i < it->second.size(); ++i)
        if (index_cmp(it->second[i], idx) == 0) return static_cast<int>(i);
    return -1;
}

namespace {

void enumerate_exponents(int n, int lo, int hi, const std::function<void(const ExponentVector&)>& emit) {
    ExponentVector a = exp_zero(n);
    std::function<void(int, int)> rec = [&](int pos, int used) {
        if (pos == n) {
            if (used >= lo) emit(a);
            return;
        }
        for (int v = 0; v + used <= hi; ++v) {
            a[static_cast<size_t>(pos)] = v;
            rec(pos + 1, used + v);
        }
        a[static_cast<size_t>(pos)] = 0;
    };
    rec(0, 0);
}

struct IndexTable {
    std::map<Bidegree, std::vector<KoszulIndex>> labels;
    std::map<std::string, std::pair<Bidegree, int>> pos;

    void insert_all_sorted() {
        for (auto& [b, v] : labels) {
            std::sort(v.begin(), v.end(), [](const KoszulIndex& x, const KoszulIndex& y) { return index_cmp(x, y) > 0; });
            for (size_t i = 0; i < v.size(); ++i) pos[v[i].name()] = {b, static_cast<int>(i)};
        }
    }
};

// Build dh/dv matrices over a set of labels, dropping image terms that leave
// the label set (quotient semantics for slices and the truncation).
void fill_differentials(LabeledDouble& ld, const IndexTable& table, const std::vector<Scalar>* r) {
    for (const auto& [b, labs] : table.labels) {
        if (labs.empty()) continue;
        Bidegree bh{b.p - 1, b.q}, bv{b.p, b.q - 1};
        int rows_h = ld.dc.rank(bh), rows_v = ld.dc.rank(bv);
        SparseMatrix mh(rows_h, static_cast<int>(labs.size()));
        SparseMatrix mv(rows_v, static_cast<int>(labs.size()));
        for (size_t col = 0; col < labs.size(); ++col) {
            BigradedElement img = apply_dh(BigradedElement::single(labs[col]));
            for (const auto& [idx, c] : img.terms()) {
                auto it = table.pos.find(idx.name());
                if (it == table.pos.end()) continue;
                mh.add_to(it->second.second, static_cast<int>(col), c);
            }
            if (r) {
                BigradedElement imgv = apply_dv(BigradedElement::single(labs[col]), *r);
                for (const auto& [idx, c] : imgv.terms()) {
                    auto it = table.pos.find(idx.name());
                    if (it == table.pos.end()) continue;
                    mv.add_to(it->second.second, static_cast<int>(col), c);
                }
            }
        }
        if (rows_h > 0) ld.dc.dh[b] = std::move(mh);
        if (rows_v > 0 && r) ld.dc.dv[b] = std::move(mv);
    }
}

LabeledDouble assemble(const Domain& dom, IndexTable table, const std::vector<Scalar>* r, bool with_product) {
    table.insert_all_sorted();
    LabeledDouble ld;
    ld.dc.domain = dom;
    ld.dc.squares = Squares::anticommuting;
    // the combinatorial multidegree grades the module in formal mode and over
    // a polynomial ring; over a concrete base ring it is not a grading
    bool with_md = r == nullptr || dom.kind == Kind::polynomial;
    for (const auto& [b, labs] : table.labels) {
        std::vector<BasisElement> be;
        be.reserve(labs.size());
        for (const auto& idx : labs)
            be.push_back(BasisElement{idx.name(), with_md ? idx.multidegree() : ExponentVector{}});
        ld.dc.basis[b] = std::move(be);
    }
    ld.labels = table.labels;
    fill_differentials(ld, table, r);
    if (with_product) {
        auto labels = std::make_shared<std::map<Bidegree, std::vector<KoszulIndex>>>(table.labels);
        auto pos = std::make_shared<std::map<std::string, std::pair<Bidegree, int>>>(table.pos);
        ld.dc.product = [labels, pos](Bidegree b1, std::size_t i1, Bidegree b2, std::size_t i2) {
            const KoszulIndex& u = labels->at(b1)[i1];
            const KoszulIndex& v = labels->at(b2)[i2];
            std::vector<ProductTerm> out;
            BigradedElement prod = multiply_twisted(BigradedElement::single(u), BigradedElement::single(v));
            for (const auto& [idx, c] : prod.terms()) {
                auto it = pos->find(idx.name());
                if (it == pos->end()) continue;  // beyond the truncation: quotient semantics
                out.push_back(ProductTerm{static_cast<std::size_t>(it->second.second), c});
            }
            return out;
        };
    }
    return ld;
}

}  // namespace

FreeDoubleComplex build_elementary(const Scalar& r, int bound) {
    if (bound < 0) throw std::invalid_argument("build_elementary: bound must be >= 0");
    std::vector<Scalar> rv{r};
    IndexTable table;
    for (int k = 0; k <= bound; ++k) {
        for (int j = 0; j <= 1; ++j) {
            KoszulIndex idx;
            idx.mask = static_cast<std::uint32_t>(j);
            idx.a = ExponentVector{k};
            table.labels[{idx.p(), idx.q()}].push_back(idx);
        }
    }
    LabeledDouble ld = assemble(r.domain(), std::move(table), &rv, true);
    return ld.dc;
}

FreeDoubleComplex build_elementary_commuting(const Scalar& r, int bound) {
    FreeDoubleComplex dc = build_elementary(r, bound);
    dc.squares = Squares::commuting;
    // construction-native signs: d^v(e (x) x^k) = +r (x) x^k
    for (auto& [b, m] : dc.dv)
        m = -m;
    return dc;
}

ExtendedKoszul build_extended(int n, KoszulMode mode, const std::vector<Scalar>& r, int bound) {
    if (n < 1) throw std::invalid_argument("build_extended: n must be >= 1");
    if (n > 16) throw std::invalid_argument("build_extended: n too large");
    if (bound < 0) throw std::invalid_argument("build_extended: bound must be >= 0");
    if (mode == KoszulMode::concrete && static_cast<int>(r.size()) != n)
        throw std::invalid_argument("build_extended: concrete mode needs n r-values");
    if (mode == KoszulMode::formal && !r.empty())
        throw std::invalid_argument("build_extended: r-values are a concrete-mode input");

    ExtendedKoszul kz;
    kz.n = n;
    kz.mode = mode;
    kz.r = r;
    kz.bound = bound;
    kz.dom = mode == KoszulMode::formal ? domain_integer() : r[0].domain();

    IndexTable table;
    enumerate_exponents(n, 0, bound, [&](const ExponentVector& a) {
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            KoszulIndex idx;
            idx.mask = mask;
            idx.a = a;
            table.labels[{idx.p(), idx.q()}].push_back(idx);
        }
    });
    kz.k = assemble(kz.dom, std::move(table), mode == KoszulMode::concrete ? &kz.r : nullptr, true);
    return kz;
}

ExtendedKoszul build_extended_generic(int n, int bound) {
    std::vector<Scalar> r;
    for (int i = 1; i <= n; ++i) r.push_back(Scalar::poly(poly_var(n, i, Kind::rational)));
    return build_extended(n, KoszulMode::concrete, r, bound);
}

LabeledDouble slice(const ExtendedKoszul& kz, SliceKind kind, int s, int t) {
    int lo, hi;  // window [lo, hi] on |a|
    switch (kind) {
        case SliceKind::filtration:
            if (s < 0 || s > kz.bound + 1) throw std::out_of_range("slice: s out of range");
            lo = s; hi = kz.bound;
            break;
        case SliceKind::quotient:
            if (s < 0 || s > kz.bound + 1) throw std::out_of_range("slice: s out of range");
            lo = 0; hi = s - 1;
            break;
        case SliceKind::graded_piece:
            if (s < 0 || s > kz.bound) throw std::out_of_range("slice: s out of range");
            lo = s; hi = s;
            break;
        case SliceKind::window:
            if (!(0 <= s && s < t && t <= kz.bound + 1)) throw std::out_of_range("slice: need 0 <= s < t <= bound+1");
            lo = s; hi = t - 1;
            break;
        default: throw std::logic_error("unreachable");
    }
    IndexTable table;
    for (const auto& [b, labs] : kz.k.labels) {
        int xd = -b.p;
        if (xd < lo || xd > hi) continue;
        table.labels[b] = labs;
    }
    return assemble(kz.dom, std::move(table), kz.mode == KoszulMode::concrete ? &kz.r : nullptr, false);
}

int truncation_overflow(const ExtendedKoszul& kz) {
    int count = 0;
    for (const auto& [b, labs] : kz.k.labels)
        if (-b.p == kz.bound)
            for (const auto& idx : labs)
                if (idx.mask != 0) ++count;
    return count;
}

}  // namespace kx
