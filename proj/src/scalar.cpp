#include "koszulx/scalar.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kx {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
    return Rational(num) / Rational(den);
}

// ---------------------------------------------------------------------------
// GF(p)

GF gf_make(std::int64_t v, std::int64_t p) {
    if (p < 2) throw std::invalid_argument("gf_make: modulus must be >= 2");
    std::int64_t r = v % p;
    if (r < 0) r += p;
    return GF{r, p};
}

static void gf_check(GF a, GF b) {
    if (a.p != b.p) throw std::invalid_argument("prime field modulus mismatch");
}

GF gf_add(GF a, GF b) { gf_check(a, b); return gf_make(a.value + b.value, a.p); }
GF gf_sub(GF a, GF b) { gf_check(a, b); return gf_make(a.value - b.value, a.p); }
GF gf_mul(GF a, GF b) { gf_check(a, b); return gf_make(a.value * b.value, a.p); }
GF gf_neg(GF a) { return gf_make(-a.value, a.p); }

GF gf_inv(GF a) {
    if (a.value == 0) throw std::domain_error("gf_inv: zero has no inverse");
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = a.p, new_r = a.value;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t; t = new_t; new_t = tmp;
        tmp = r - q * new_r; r = new_r; new_r = tmp;
    }
    if (r != 1) throw std::domain_error("gf_inv: modulus not prime to value");
    return gf_make(t, a.p);
}

// ---------------------------------------------------------------------------
// Exponent vectors

int total_degree(const ExponentVector& a) {
    int s = 0;
    for (int v : a) s += v;
    return s;
}

ExponentVector exp_zero(int n) { return ExponentVector(static_cast<size_t>(n), 0); }

ExponentVector exp_unit(int n, int i) {
    if (i < 1 || i > n) throw std::out_of_range("exp_unit: index out of range");
    ExponentVector a = exp_zero(n);
    a[static_cast<size_t>(i - 1)] = 1;
    return a;
}

ExponentVector exp_add(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exp_add: length mismatch");
    ExponentVector c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

bool exp_leq(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exp_leq: length mismatch");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

int exp_cmp(const ExponentVector& a, const ExponentVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("exp_cmp: length mismatch");
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

// ---------------------------------------------------------------------------
// Domains

Domain domain_integer() { return Domain{Kind::integer, 0, 0, Kind::integer}; }
Domain domain_rational() { return Domain{Kind::rational, 0, 0, Kind::integer}; }
Domain domain_prime_field(std::int64_t p) { return Domain{Kind::prime_field, p, 0, Kind::integer}; }
Domain domain_polynomial(int nvars, Kind coeff, std::int64_t p) {
    return Domain{Kind::polynomial, p, nvars, coeff};
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::integer(Integer v) {
    Scalar s;
    s.kind_ = Kind::integer;
    s.int_ = std::move(v);
    return s;
}

Scalar Scalar::rational(Rational v) {
    Scalar s;
    s.kind_ = Kind::rational;
    s.rat_ = std::move(v);
    return s;
}

Scalar Scalar::mod(std::int64_t v, std::int64_t p) {
    Scalar s;
    s.kind_ = Kind::prime_field;
    s.gf_ = gf_make(v, p);
    return s;
}

Scalar Scalar::poly(Polynomial f) {
    Scalar s;
    s.kind_ = Kind::polynomial;
    s.poly_ = std::make_shared<const Polynomial>(std::move(f));
    return s;
}

Scalar Scalar::zero(const Domain& d) {
    switch (d.kind) {
        case Kind::integer: return integer(0);
        case Kind::rational: return rational(Rational(0));
        case Kind::prime_field: return mod(0, d.p);
        case Kind::polynomial: return poly(poly_zero(d.nvars, d.coeff, d.p));
    }
    throw std::logic_error("unreachable");
}

Scalar Scalar::one(const Domain& d) {
    switch (d.kind) {
        case Kind::integer: return integer(1);
        case Kind::rational: return rational(Rational(1));
        case Kind::prime_field: return mod(1, d.p);
        case Kind::polynomial: {
            Scalar c = d.coeff == Kind::prime_field ? mod(1, d.p)
                     : d.coeff == Kind::rational    ? rational(Rational(1))
                                                    : integer(1);
            return poly(poly_constant(d.nvars, c));
        }
    }
    throw std::logic_error("unreachable");
}

bool Scalar::is_zero() const {
    switch (kind_) {
        case Kind::integer: return int_ == 0;
        case Kind::rational: return rat_ == 0;
        case Kind::prime_field: return gf_.value == 0;
        case Kind::polynomial: return poly_->is_zero();
    }
    throw std::logic_error("unreachable");
}

bool Scalar::is_one() const {
    switch (kind_) {
        case Kind::integer: return int_ == 1;
        case Kind::rational: return rat_ == 1;
        case Kind::prime_field: return gf_.value == 1;
        case Kind::polynomial:
            return poly_->terms.size() == 1 && poly_->terms.begin()->first == exp_zero(poly_->nvars) &&
                   poly_->terms.begin()->second.is_one();
    }
    throw std::logic_error("unreachable");
}

const Integer& Scalar::as_integer() const {
    if (kind_ != Kind::integer) throw std::logic_error("scalar is not an integer");
    return int_;
}

const Rational& Scalar::as_rational() const {
    if (kind_ != Kind::rational) throw std::logic_error("scalar is not a rational");
    return rat_;
}

GF Scalar::as_gf() const {
    if (kind_ != Kind::prime_field) throw std::logic_error("scalar is not a prime field element");
    return gf_;
}

const Polynomial& Scalar::as_poly() const {
    if (kind_ != Kind::polynomial) throw std::logic_error("scalar is not a polynomial");
    return *poly_;
}

Domain Scalar::domain() const {
    switch (kind_) {
        case Kind::integer: return domain_integer();
        case Kind::rational: return domain_rational();
        case Kind::prime_field: return domain_prime_field(gf_.p);
        case Kind::polynomial: return domain_polynomial(poly_->nvars, poly_->coeff, poly_->p);
    }
    throw std::logic_error("unreachable");
}

// Promote a pair of scalars to a common domain. Integer embeds everywhere;
// rational and prime field do not mix.
static void coerce(Scalar& a, Scalar& b) {
    if (a.kind() == b.kind()) {
        if (a.kind() == Kind::prime_field) gf_check(a.as_gf(), b.as_gf());
        if (a.kind() == Kind::polynomial) {
            const Polynomial& fa = a.as_poly();
            const Polynomial& fb = b.as_poly();
            if (fa.nvars != fb.nvars) throw std::invalid_argument("polynomial variable count mismatch");
            if (fa.coeff == fb.coeff && fa.p == fb.p) return;
            // promote integer-coefficient side
            if (fa.coeff == Kind::integer) {
                Polynomial f = fa;
                f.coeff = fb.coeff; f.p = fb.p;
                std::map<ExponentVector, Scalar> t;
                Scalar one = Scalar::one(Domain{fb.coeff, fb.p, 0, Kind::integer});
                for (const auto& [e, c] : f.terms) t.emplace(e, c * one);
                f.terms = std::move(t);
                a = Scalar::poly(std::move(f));
                return coerce(a, b);
            }
            if (fb.coeff == Kind::integer) { coerce(b, a); return; }
            throw std::invalid_argument("incompatible polynomial coefficient domains");
        }
        return;
    }
    auto lift = [](const Scalar& s, const Scalar& target) -> Scalar {
        // s is an integer being lifted into target's domain
        const Integer& v = s.as_integer();
        switch (target.kind()) {
            case Kind::rational: return Scalar::rational(Rational(v));
            case Kind::prime_field: {
                Integer r = v % target.as_gf().p;
                return Scalar::mod(static_cast<std::int64_t>(r), target.as_gf().p);
            }
            case Kind::polynomial: {
                const Polynomial& f = target.as_poly();
                Scalar c = Scalar::integer(v);
                if (f.coeff == Kind::rational) c = Scalar::rational(Rational(v));
                if (f.coeff == Kind::prime_field) {
                    Integer r = v % f.p;
                    c = Scalar::mod(static_cast<std::int64_t>(r), f.p);
                }
                Polynomial g = poly_constant(f.nvars, c);
                g.coeff = f.coeff; g.p = f.p;
                return Scalar::poly(std::move(g));
            }
            default: throw std::logic_error("unreachable");
        }
    };
    if (a.kind() == Kind::integer) { a = lift(a, b); return coerce(a, b); }
    if (b.kind() == Kind::integer) { b = lift(b, a); return coerce(a, b); }
    // rational into rational-coefficient polynomial
    if (a.kind() == Kind::rational && b.kind() == Kind::polynomial && b.as_poly().coeff == Kind::rational) {
        Polynomial g = poly_constant(b.as_poly().nvars, a);
        g.coeff = Kind::rational;
        a = Scalar::poly(std::move(g));
        return;
    }
    if (b.kind() == Kind::rational && a.kind() == Kind::polynomial && a.as_poly().coeff == Kind::rational) {
        coerce(b, a);
        return;
    }
    throw std::invalid_argument("incompatible scalar domains");
}

Scalar Scalar::operator-() const {
    switch (kind_) {
        case Kind::integer: return integer(-int_);
        case Kind::rational: return rational(-rat_);
        case Kind::prime_field: { Scalar s = *this; s.gf_ = gf_neg(gf_); return s; }
        case Kind::polynomial: return poly(poly_neg(*poly_));
    }
    throw std::logic_error("unreachable");
}

Scalar operator+(const Scalar& a0, const Scalar& b0) {
    Scalar a = a0, b = b0;
    coerce(a, b);
    switch (a.kind()) {
        case Kind::integer: return Scalar::integer(a.as_integer() + b.as_integer());
        case Kind::rational: return Scalar::rational(a.as_rational() + b.as_rational());
        case Kind::prime_field: { GF g = gf_add(a.as_gf(), b.as_gf()); return Scalar::mod(g.value, g.p); }
        case Kind::polynomial: return Scalar::poly(poly_add(a.as_poly(), b.as_poly()));
    }
    throw std::logic_error("unreachable");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a0, const Scalar& b0) {
    Scalar a = a0, b = b0;
    coerce(a, b);
    switch (a.kind()) {
        case Kind::integer: return Scalar::integer(a.as_integer() * b.as_integer());
        case Kind::rational: return Scalar::rational(a.as_rational() * b.as_rational());
        case Kind::prime_field: { GF g = gf_mul(a.as_gf(), b.as_gf()); return Scalar::mod(g.value, g.p); }
        case Kind::polynomial: return Scalar::poly(poly_mul(a.as_poly(), b.as_poly()));
    }
    throw std::logic_error("unreachable");
}

bool Scalar::operator==(const Scalar& b) const {
    return (*this - b).is_zero();
}

Scalar Scalar::inverse() const {
    switch (kind_) {
        case Kind::rational:
            if (rat_ == 0) throw std::domain_error("inverse of zero");
            return rational(Rational(1) / rat_);
        case Kind::prime_field: { GF g = gf_inv(gf_); return mod(g.value, g.p); }
        default: throw std::domain_error("inverse: not a field scalar");
    }
}

std::string Scalar::str(const std::string& var_prefix) const {
    switch (kind_) {
        case Kind::integer: return int_.str();
        case Kind::rational: {
            std::ostringstream os;
            os << rat_;
            return os.str();
        }
        case Kind::prime_field: return std::to_string(gf_.value);
        case Kind::polynomial: return poly_str(*poly_, var_prefix);
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial poly_zero(int nvars, Kind coeff, std::int64_t p) {
    Polynomial f;
    f.nvars = nvars;
    f.coeff = coeff;
    f.p = p;
    return f;
}

Polynomial poly_constant(int nvars, const Scalar& c) {
    if (c.kind() == Kind::polynomial) throw std::invalid_argument("polynomial coefficients must be base scalars");
    Polynomial f;
    f.nvars = nvars;
    f.coeff = c.kind();
    f.p = c.kind() == Kind::prime_field ? c.as_gf().p : 0;
    if (!c.is_zero()) f.terms.emplace(exp_zero(nvars), c);
    return f;
}

Polynomial poly_term(ExponentVector a, const Scalar& c) {
    Polynomial f = poly_constant(static_cast<int>(a.size()), c);
    f.terms.clear();
    if (!c.is_zero()) f.terms.emplace(std::move(a), c);
    return f;
}

Polynomial poly_var(int nvars, int i, Kind coeff, std::int64_t p) {
    Scalar one = Scalar::one(Domain{coeff, p, 0, Kind::integer});
    return poly_term(exp_unit(nvars, i), one);
}

static void poly_check(const Polynomial& f, const Polynomial& g) {
    if (f.nvars != g.nvars) throw std::invalid_argument("polynomial variable count mismatch");
}

Polynomial poly_add(const Polynomial& f, const Polynomial& g) {
    poly_check(f, g);
    Polynomial h = f;
    if (h.terms.empty()) { h.coeff = g.coeff; h.p = g.p; }
    for (const auto& [e, c] : g.terms) {
        auto it = h.terms.find(e);
        if (it == h.terms.end()) {
            h.terms.emplace(e, c);
        } else {
            Scalar s = it->second + c;
            if (s.is_zero())
                h.terms.erase(it);
            else
                it->second = s;
        }
    }
    return h;
}

Polynomial poly_neg(const Polynomial& f) {
    Polynomial h = f;
    for (auto& [e, c] : h.terms) c = -c;
    return h;
}

Polynomial poly_mul(const Polynomial& f, const Polynomial& g) {
    poly_check(f, g);
    Polynomial h = poly_zero(f.nvars, f.coeff, f.p);
    for (const auto& [ea, ca] : f.terms)
        for (const auto& [eb, cb] : g.terms) {
            ExponentVector e = exp_add(ea, eb);
            Scalar c = ca * cb;
            auto it = h.terms.find(e);
            if (it == h.terms.end()) {
                if (!c.is_zero()) h.terms.emplace(std::move(e), c);
            } else {
                Scalar s = it->second + c;
                if (s.is_zero())
                    h.terms.erase(it);
                else
                    it->second = s;
            }
        }
    return h;
}

bool poly_equal(const Polynomial& f, const Polynomial& g) {
    return poly_add(f, poly_neg(g)).is_zero();
}

Scalar evaluate_polynomial(const Polynomial& f, const std::vector<Scalar>& values) {
    if (static_cast<int>(values.size()) != f.nvars)
        throw std::invalid_argument("evaluate_polynomial: value tuple length mismatch");
    Scalar acc;  // integer 0; promoted as terms accumulate
    bool first = true;
    for (const auto& [e, c] : f.terms) {
        Scalar term = c;
        for (int i = 0; i < f.nvars; ++i)
            for (int k = 0; k < e[static_cast<size_t>(i)]; ++k) term = term * values[static_cast<size_t>(i)];
        acc = first ? term : acc + term;
        first = false;
    }
    return acc;
}

std::string poly_str(const Polynomial& f, const std::string& var_prefix) {
    if (f.terms.empty()) return "0";
    // descending degree-then-lex term order
    std::vector<const std::pair<const ExponentVector, Scalar>*> terms;
    for (const auto& t : f.terms) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(), [](auto* x, auto* y) { return exp_cmp(x->first, y->first) > 0; });

    std::ostringstream os;
    bool first = true;
    for (auto* t : terms) {
        const ExponentVector& e = t->first;
        std::string cs = t->second.str(var_prefix);
        bool neg = !cs.empty() && cs[0] == '-';
        std::string mag = neg ? cs.substr(1) : cs;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        bool constant = total_degree(e) == 0;
        if (constant) {
            os << mag;
            continue;
        }
        if (mag != "1") os << mag << "*";
        bool firstv = true;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!firstv) os << "*";
            firstv = false;
            os << var_prefix << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

}  // namespace kx
