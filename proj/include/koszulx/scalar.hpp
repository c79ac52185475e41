#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kx {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Lowest terms, positive denominator (cpp_rational keeps this canonical).
Rational make_rational(const Integer& num, const Integer& den);

/// Reduced representative in [0, p).
struct GF {
    std::int64_t value = 0;
    std::int64_t p = 0;
};
GF gf_make(std::int64_t v, std::int64_t p);
GF gf_add(GF a, GF b);
GF gf_sub(GF a, GF b);
GF gf_mul(GF a, GF b);
GF gf_neg(GF a);
GF gf_inv(GF a);

// ---------------------------------------------------------------------------
// Exponent vectors

/// Tuple of n natural numbers; componentwise addition.
using ExponentVector = std::vector<int>;

int total_degree(const ExponentVector& a);
ExponentVector exp_zero(int n);
ExponentVector exp_unit(int n, int i);  // delta_i, 1-based i
ExponentVector exp_add(const ExponentVector& a, const ExponentVector& b);
bool exp_leq(const ExponentVector& a, const ExponentVector& b);  // componentwise

/// Degree-then-lexicographic order, first variable most significant.
/// Returns <0, 0, >0.
int exp_cmp(const ExponentVector& a, const ExponentVector& b);

// ---------------------------------------------------------------------------
// Scalars

enum class Kind : std::uint8_t { integer, rational, prime_field, polynomial };

struct Domain {
    Kind kind = Kind::integer;
    std::int64_t p = 0;      // modulus when kind or coeff is prime_field
    int nvars = 0;           // polynomial variable count
    Kind coeff = Kind::integer;

    bool operator==(const Domain&) const = default;
    bool is_field() const { return kind == Kind::rational || kind == Kind::prime_field; }
};

Domain domain_integer();
Domain domain_rational();
Domain domain_prime_field(std::int64_t p);
Domain domain_polynomial(int nvars, Kind coeff = Kind::rational, std::int64_t p = 0);

class Scalar;
struct Polynomial;

/// Exact scalar in one of the supported coefficient domains. Values are
/// immutable; all arithmetic is exact.
class Scalar {
public:
    Scalar() : kind_(Kind::integer), int_(0) {}

    static Scalar integer(Integer v);
    static Scalar integer(long long v) { return integer(Integer(v)); }
    static Scalar rational(Rational v);
    static Scalar mod(std::int64_t v, std::int64_t p);
    static Scalar poly(Polynomial p);
    static Scalar zero(const Domain& d);
    static Scalar one(const Domain& d);

    Kind kind() const { return kind_; }
    bool is_zero() const;
    bool is_one() const;

    const Integer& as_integer() const;
    const Rational& as_rational() const;
    GF as_gf() const;
    const Polynomial& as_poly() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    bool operator==(const Scalar& b) const;
    bool operator!=(const Scalar& b) const { return !(*this == b); }

    /// Multiplicative inverse; fields only.
    Scalar inverse() const;

    Domain domain() const;

    /// Canonical text form; polynomial variables print as prefix1, prefix2, ...
    std::string str(const std::string& var_prefix = "y") const;

private:
    Kind kind_;
    Integer int_;
    Rational rat_;
    GF gf_{};
    std::shared_ptr<const Polynomial> poly_;
};

/// Finite association exponent vector -> nonzero base scalar (never a
/// polynomial coefficient). Keys all have length nvars.
struct Polynomial {
    int nvars = 0;
    Kind coeff = Kind::integer;
    std::int64_t p = 0;  // when coeff == prime_field
    std::map<ExponentVector, Scalar> terms;

    bool is_zero() const { return terms.empty(); }
};

Polynomial poly_zero(int nvars, Kind coeff = Kind::integer, std::int64_t p = 0);
Polynomial poly_constant(int nvars, const Scalar& c);
/// The monomial c * x^a.
Polynomial poly_term(ExponentVector a, const Scalar& c);
/// Variable x_i (1-based).
Polynomial poly_var(int nvars, int i, Kind coeff = Kind::integer, std::int64_t p = 0);

Polynomial poly_add(const Polynomial& f, const Polynomial& g);
Polynomial poly_neg(const Polynomial& f);
Polynomial poly_mul(const Polynomial& f, const Polynomial& g);
bool poly_equal(const Polynomial& f, const Polynomial& g);

/// Ring homomorphism sending x_i to values[i-1]. Length mismatch throws.
Scalar evaluate_polynomial(const Polynomial& f, const std::vector<Scalar>& values);

std::string poly_str(const Polynomial& f, const std::string& var_prefix = "y");

/// Parity helper: (-1)^k as an integer scalar sign.
inline int sign_pow(long long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace kx
