#include "koszulx/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace kx {

void SparseMatrix::set(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseMatrix::set: index out of bounds");
    if (v.is_zero())
        entries.erase({r, c});
    else
        entries[{r, c}] = v;
}

void SparseMatrix::add_to(int r, int c, const Scalar& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseMatrix::add_to: index out of bounds");
    auto it = entries.find({r, c});
    if (it == entries.end()) {
        if (!v.is_zero()) entries.emplace(std::make_pair(r, c), v);
        return;
    }
    Scalar s = it->second + v;
    if (s.is_zero())
        entries.erase(it);
    else
        it->second = s;
}

Scalar SparseMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows || c < 0 || c >= cols) throw std::out_of_range("SparseMatrix::at: index out of bounds");
    auto it = entries.find({r, c});
    return it == entries.end() ? Scalar() : it->second;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
    if (cols != other.rows) throw std::invalid_argument("matrix shape mismatch in composition");
    SparseMatrix out(rows, other.cols);
    // index other by row for the sparse product
    std::map<int, std::vector<std::pair<int, const Scalar*>>> by_row;
    for (const auto& [rc, v] : other.entries) by_row[rc.first].emplace_back(rc.second, &v);
    for (const auto& [rc, v] : entries) {
        auto it = by_row.find(rc.second);
        if (it == by_row.end()) continue;
        for (const auto& [c2, v2] : it->second) out.add_to(rc.first, c2, v * (*v2));
    }
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& other) const {
    if (rows != other.rows || cols != other.cols) throw std::invalid_argument("matrix shape mismatch in sum");
    SparseMatrix out = *this;
    for (const auto& [rc, v] : other.entries) out.add_to(rc.first, rc.second, v);
    return out;
}

SparseMatrix SparseMatrix::operator-() const {
    SparseMatrix out = *this;
    for (auto& [rc, v] : out.entries) v = -v;
    return out;
}

SparseMatrix SparseMatrix::scaled(const Scalar& c) const {
    SparseMatrix out(rows, cols);
    if (c.is_zero()) return out;
    out.entries = entries;
    for (auto& [rc, v] : out.entries) v = v * c;
    return out;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
    if (rows != other.rows || cols != other.cols) return false;
    SparseMatrix d = *this + (-other);
    return d.is_zero();
}

std::vector<Scalar> SparseMatrix::apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("vector length mismatch");
    std::vector<Scalar> out(static_cast<size_t>(rows));
    for (const auto& [rc, e] : entries) {
        const Scalar& x = v[static_cast<size_t>(rc.second)];
        if (x.is_zero()) continue;
        out[static_cast<size_t>(rc.first)] = out[static_cast<size_t>(rc.first)] + e * x;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

static std::vector<std::vector<Integer>> to_integer_dense(const SparseMatrix& m) {
    std::vector<std::vector<Integer>> w(static_cast<size_t>(m.rows),
                                        std::vector<Integer>(static_cast<size_t>(m.cols), Integer(0)));
    for (const auto& [rc, v] : m.entries) {
        if (v.kind() != Kind::integer) throw std::invalid_argument("smith_normal_form: entries must be integers");
        w[static_cast<size_t>(rc.first)][static_cast<size_t>(rc.second)] = v.as_integer();
    }
    return w;
}

SnfResult smith_normal_form(const SparseMatrix& m) { return smith_normal_form(to_integer_dense(m)); }

SnfResult smith_normal_form(std::vector<std::vector<Integer>> w) {
    const int rows = static_cast<int>(w.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(w[0].size());
    SnfResult res;
    int t = 0;
    auto val = [&](int r, int c) -> Integer& { return w[static_cast<size_t>(r)][static_cast<size_t>(c)]; };
    while (t < rows && t < cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        int pr = -1, pc = -1;
        Integer best = 0;
        for (int r = t; r < rows; ++r)
            for (int c = t; c < cols; ++c) {
                if (val(r, c) == 0) continue;
                Integer a = abs(val(r, c));
                if (pr < 0 || a < best) { pr = r; pc = c; best = a; }
            }
        if (pr < 0) break;
        std::swap(w[static_cast<size_t>(t)], w[static_cast<size_t>(pr)]);
        if (pc != t)
            for (int r = 0; r < rows; ++r) std::swap(val(r, t), val(r, pc));

        bool again = true;
        while (again) {
            again = false;
            // clear column t by row operations (gcd loop)
            for (int r = t + 1; r < rows; ++r) {
                while (val(r, t) != 0) {
                    Integer q = val(r, t) / val(t, t);
                    for (int c = t; c < cols; ++c) val(r, c) -= q * val(t, c);
                    if (val(r, t) != 0) {
                        std::swap(w[static_cast<size_t>(t)], w[static_cast<size_t>(r)]);
                        again = true;
                    }
                }
            }
            // clear row t by column operations
            for (int c = t + 1; c < cols; ++c) {
                while (val(t, c) != 0) {
                    Integer q = val(t, c) / val(t, t);
                    for (int r = t; r < rows; ++r) val(r, c) -= q * val(r, t);
                    if (val(t, c) != 0) {
                        for (int r = 0; r < rows; ++r) std::swap(val(r, t), val(r, c));
                        again = true;
                    }
                }
            }
        }
        // enforce divisibility of the remaining block by the pivot
        Integer piv = abs(val(t, t));
        bool fixed = false;
        for (int r = t + 1; r < rows && !fixed; ++r)
            for (int c = t + 1; c < cols && !fixed; ++c)
                if (val(r, c) % piv != 0) {
                    for (int cc = t; cc < cols; ++cc) val(t, cc) += val(r, cc);
                    fixed = true;
                }
        if (fixed) continue;  // redo the same t
        res.divisors.push_back(piv);
        ++t;
    }
    res.rank = static_cast<int>(res.divisors.size());
    return res;
}

// Kernel over the integers via column reduction: bring M to column echelon
// form with unimodular column ops tracked in V; zero columns of the echelon
// form give the kernel basis.
std::vector<std::vector<Integer>> integer_kernel(const SparseMatrix& m) {
    auto w = to_integer_dense(m);
    const int rows = m.rows, cols = m.cols;
    std::vector<std::vector<Integer>> v(static_cast<size_t>(cols),
                                        std::vector<Integer>(static_cast<size_t>(cols), Integer(0)));
    for (int c = 0; c < cols; ++c) v[static_cast<size_t>(c)][static_cast<size_t>(c)] = 1;  // v[c] = column c
    auto entry = [&](int r, int c) -> Integer& { return w[static_cast<size_t>(r)][static_cast<size_t>(c)]; };
    int lead = 0;
    for (int r = 0; r < rows && lead < cols; ++r) {
        // gcd-reduce the row across columns lead..cols-1
        while (true) {
            int best = -1;
            for (int c = lead; c < cols; ++c)
                if (entry(r, c) != 0 && (best < 0 || abs(entry(r, c)) < abs(entry(r, best)))) best = c;
            if (best < 0) break;
            if (best != lead) {
                for (int rr = 0; rr < rows; ++rr) std::swap(entry(rr, lead), entry(rr, best));
                std::swap(v[static_cast<size_t>(lead)], v[static_cast<size_t>(best)]);
            }
            bool cleared = true;
            for (int c = lead + 1; c < cols; ++c) {
                if (entry(r, c) == 0) continue;
                Integer q = entry(r, c) / entry(r, lead);
                for (int rr = 0; rr < rows; ++rr) entry(rr, c) -= q * entry(rr, lead);
                for (int i = 0; i < cols; ++i)
                    v[static_cast<size_t>(c)][static_cast<size_t>(i)] -= q * v[static_cast<size_t>(lead)][static_cast<size_t>(i)];
                if (entry(r, c) != 0) cleared = false;
            }
            if (cleared) { ++lead; break; }
        }
    }
    std::vector<std::vector<Integer>> kernel;
    for (int c = lead; c < cols; ++c) kernel.push_back(v[static_cast<size_t>(c)]);
    return kernel;
}

// ---------------------------------------------------------------------------
// Field elimination

std::vector<std::vector<Rational>> to_rational_dense(const SparseMatrix& m) {
    std::vector<std::vector<Rational>> a(static_cast<size_t>(m.rows),
                                         std::vector<Rational>(static_cast<size_t>(m.cols), Rational(0)));
    for (const auto& [rc, v] : m.entries) {
        Rational x;
        if (v.kind() == Kind::integer)
            x = Rational(v.as_integer());
        else if (v.kind() == Kind::rational)
            x = v.as_rational();
        else
            throw std::invalid_argument("expected rational or integer entries");
        a[static_cast<size_t>(rc.first)][static_cast<size_t>(rc.second)] = x;
    }
    return a;
}

std::vector<int> rref_dense(std::vector<std::vector<Rational>>& a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[static_cast<size_t>(r)], a[static_cast<size_t>(pr)]);
        Rational inv = Rational(1) / a[static_cast<size_t>(r)][static_cast<size_t>(c)];
        for (int j = c; j < cols; ++j) a[static_cast<size_t>(r)][static_cast<size_t>(j)] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Rational f = a[static_cast<size_t>(i)][static_cast<size_t>(c)];
            if (f == 0) continue;
            for (int j = c; j < cols; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(r)][static_cast<size_t>(j)];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

int rank_dense(std::vector<std::vector<Rational>> a) { return static_cast<int>(rref_dense(a).size()); }

int rank_rational(const SparseMatrix& m) {
    auto a = to_rational_dense(m);
    return rank_dense(a);
}

namespace {

// GF(p) dense elimination mirroring the rational one.
struct GfMat {
    std::int64_t p;
    std::vector<std::vector<std::int64_t>> a;
};

std::vector<int> rref_gf(GfMat& m) {
    const int rows = static_cast<int>(m.a.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m.a[0].size());
    std::vector<int> pivots;
    int r = 0;
    auto at = [&](int i, int j) -> std::int64_t& { return m.a[static_cast<size_t>(i)][static_cast<size_t>(j)]; };
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, c) != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(m.a[static_cast<size_t>(r)], m.a[static_cast<size_t>(pr)]);
        std::int64_t inv = gf_inv(GF{at(r, c), m.p}).value;
        for (int j = c; j < cols; ++j) at(r, j) = (at(r, j) * inv) % m.p;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            std::int64_t f = at(i, c);
            if (f == 0) continue;
            for (int j = c; j < cols; ++j) {
                std::int64_t x = (at(i, j) - f * at(r, j)) % m.p;
                at(i, j) = x < 0 ? x + m.p : x;
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

RankKernel rank_and_kernel(const SparseMatrix& m) {
    // Detect domain: prime field if any entry is, else rational.
    std::int64_t p = 0;
    for (const auto& [rc, v] : m.entries) {
        if (v.kind() == Kind::prime_field) { p = v.as_gf().p; break; }
        if (v.kind() == Kind::polynomial) throw std::invalid_argument("rank_and_kernel: field entries required");
    }
    RankKernel out;
    if (p != 0) {
        GfMat g{p, std::vector<std::vector<std::int64_t>>(
                       static_cast<size_t>(m.rows), std::vector<std::int64_t>(static_cast<size_t>(m.cols), 0))};
        for (const auto& [rc, v] : m.entries) {
            std::int64_t x = v.kind() == Kind::integer ? gf_make(static_cast<std::int64_t>(v.as_integer() % p), p).value
                                                       : v.as_gf().value;
            g.a[static_cast<size_t>(rc.first)][static_cast<size_t>(rc.second)] = x;
        }
        auto pivots = rref_gf(g);
        out.rank = static_cast<int>(pivots.size());
        std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
        for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
        for (int c = 0; c < m.cols; ++c) {
            if (is_pivot[static_cast<size_t>(c)]) continue;
            std::vector<Scalar> v(static_cast<size_t>(m.cols), Scalar::mod(0, p));
            v[static_cast<size_t>(c)] = Scalar::mod(1, p);
            for (size_t i = 0; i < pivots.size(); ++i)
                v[static_cast<size_t>(pivots[i])] = Scalar::mod(-g.a[i][static_cast<size_t>(c)], p);
            out.kernel.push_back(std::move(v));
        }
        return out;
    }
    auto a = to_rational_dense(m);
    auto pivots = rref_dense(a);
    out.rank = static_cast<int>(pivots.size());
    std::vector<bool> is_pivot(static_cast<size_t>(m.cols), false);
    for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[static_cast<size_t>(c)]) continue;
        std::vector<Scalar> v(static_cast<size_t>(m.cols), Scalar::rational(Rational(0)));
        v[static_cast<size_t>(c)] = Scalar::rational(Rational(1));
        for (size_t i = 0; i < pivots.size(); ++i)
            v[static_cast<size_t>(pivots[i])] = Scalar::rational(-a[i][static_cast<size_t>(c)]);
        out.kernel.push_back(std::move(v));
    }
    return out;
}

std::optional<std::vector<Rational>> solve_rational(const SparseMatrix& m, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("solve_rational: rhs length mismatch");
    auto a = to_rational_dense(m);
    for (int r = 0; r < m.rows; ++r) a[static_cast<size_t>(r)].push_back(b[static_cast<size_t>(r)]);
    auto pivots = rref_dense(a);
    std::vector<Rational> x(static_cast<size_t>(m.cols), Rational(0));
    for (size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == m.cols) return std::nullopt;  // pivot in the rhs column
        x[static_cast<size_t>(pivots[i])] = a[i][static_cast<size_t>(m.cols)];
    }
    return x;
}

std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
    Integer l = 1;
    for (const Rational& x : v) l = lcm(l, denominator(x));
    std::vector<Integer> w;
    w.reserve(v.size());
    Integer g = 0;
    for (const Rational& x : v) {
        Integer e = numerator(x) * (l / denominator(x));
        g = gcd(g, e);
        w.push_back(e);
    }
    if (g > 1)
        for (Integer& e : w) e /= g;
    return w;
}

}  // namespace kx
