#pragma once

#include "koszulx/complex.hpp"
#include "koszulx/scalar.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace kx {

/// Normalized basis label e_J (x) x^a: J a strictly increasing subset of
/// {1..n} stored as a bitmask, a an exponent vector of length n. Bidegree
/// (p, q) = (-|a|, |J|+|a|); total (condensation) degree |J|.
struct KoszulIndex {
    std::uint32_t mask = 0;
    ExponentVector a;

    int n() const { return static_cast<int>(a.size()); }
    int ecount() const;                  // |J|
    int xdeg() const { return total_degree(a); }
    int p() const { return -xdeg(); }
    int q() const { return ecount() + xdeg(); }
    int degree() const { return ecount(); }
    std::vector<int> subset() const;     // sorted 1-based indices
    bool has(int i) const { return (mask >> (i - 1)) & 1u; }

    /// The multidegree sigma(J) + a preserved by every differential here.
    ExponentVector multidegree() const;

    /// Canonical text: "e[1,3]*x[0,4,0]", "e[2]", "x[1,0]", unit "e[]".
    std::string name() const;
};

KoszulIndex make_index(int n, const std::vector<int>& subset, const ExponentVector& a);

/// Canonical order: by |J|, then |a|, then a (lex), then J (lex on sorted
/// lists). Printing and matrix bases run in descending order.
int index_cmp(const KoszulIndex& x, const KoszulIndex& y);

struct KoszulIndexLess {
    bool operator()(const KoszulIndex& x, const KoszulIndex& y) const { return index_cmp(x, y) < 0; }
};

/// Sign of the permutation merging two disjoint sorted subsets: (-1)^{#{(u,v)
/// in J x L : u > v}}.
int shuffle_sign(std::uint32_t maskJ, std::uint32_t maskL);

// ---------------------------------------------------------------------------
// Elements

/// Finite formal sum of KoszulIndex with exact coefficients.
class BigradedElement {
public:
    using Terms = std::map<KoszulIndex, Scalar, KoszulIndexLess>;

    BigradedElement() = default;
    static BigradedElement zero() { return {}; }
    static BigradedElement single(const KoszulIndex& idx, const Scalar& c = Scalar::integer(1));
    static BigradedElement unit(int n);

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const KoszulIndex& idx, const Scalar& c);

    BigradedElement operator+(const BigradedElement& o) const;
    BigradedElement operator-() const;
    BigradedElement operator-(const BigradedElement& o) const;
    BigradedElement scaled(const Scalar& c) const;
    bool operator==(const BigradedElement& o) const;

    /// All terms share (|J|, |a|); throws when inhomogeneous or zero.
    std::pair<int, int> bidegree() const;
    bool is_homogeneous() const;

    /// Canonical print (descending term order), e.g.
    /// "-1*e[2]*x[1,0]+1*e[1]*x[0,1]"; zero prints "0". Coefficients must be
    /// integers for the grammar form.
    std::string str() const;

private:
    Terms terms_;
};

/// d^h(e_J (x) x^a) = sum_j (-1)^{j+l} e_{J\{i_j}} (x) x^{a+delta_{i_j}},
/// linear extension. Raises x-degree by one; squares to zero.
BigradedElement apply_dh(const BigradedElement& x);

/// Stored (anticommuting-form) vertical differential:
/// d^v(e_J (x) x^a) = sum_j (-1)^{j+l+1} r_{i_j} e_{J\{i_j}} (x) x^a.
/// Together with d^h this gives D = d^h + d^v with D^2 = 0 and eps o D = 0.
BigradedElement apply_dv(const BigradedElement& x, const std::vector<Scalar>& r);

/// Commuting-square vertical differential with the standard Koszul signs,
/// sum_j (-1)^{j+1} r_{i_j} e_{J\{i_j}} (x) x^a — the form under which the
/// vertical derivation law holds verbatim for the twisted product.
BigradedElement apply_dv_standard(const BigradedElement& x, const std::vector<Scalar>& r);

/// Twisted bigraded product: zero on overlapping subsets, otherwise
/// (-1)^{|a|*|L|} * shuffle_sign(J,L) * e_{J u L} (x) x^{a+b}.
/// e-generators pairwise anticommute, x-generators commute, e and x
/// anticommute.
BigradedElement multiply_twisted(const BigradedElement& x, const BigradedElement& y);

/// Normalization of a per-factor word (j_u, a_u) into (sign, label) with
/// sign = (-1)^{sum_u j_u (a_1 + ... + a_{u-1})}.
std::pair<int, KoszulIndex> normalize_factor_form(const std::vector<std::pair<int, int>>& blocks);

// ---------------------------------------------------------------------------
// The extended Koszul double complex

enum class KoszulMode { formal, concrete };

/// Bidegree-labelled view of a double complex built on KoszulIndex bases.
struct LabeledDouble {
    FreeDoubleComplex dc;
    std::map<Bidegree, std::vector<KoszulIndex>> labels;

    int index_of(const KoszulIndex& idx) const;  // position within its bidegree, -1 if absent
};

struct ExtendedKoszul {
    int n = 0;
    KoszulMode mode = KoszulMode::formal;
    std::vector<Scalar> r;  // empty in formal mode
    int bound = 0;          // max |a|
    Domain dom = domain_integer();
    LabeledDouble k;
};

/// Elementary block for one element r: generators 1 (x) x^k at (-k, k) and
/// e (x) x^k at (-k, k+1), k <= bound, stored in the anticommuting
/// convention (d^h(e (x) x^k) = x^{k+1}, d^v(e (x) x^k) = -r x^k).
FreeDoubleComplex build_elementary(const Scalar& r, int bound);

/// Same block in the commuting convention with the construction-native signs
/// (d^v(e (x) x^k) = +r x^k); suitable input for tensor_double.
FreeDoubleComplex build_elementary_commuting(const Scalar& r, int bound);

/// The full double complex on all (J, a) with |a| <= bound, differentials by
/// the closed formulas above, twisted product attached, anticommuting flag.
/// Formal mode: coefficients act through R/I, every r_i is 0. Concrete mode:
/// r values as supplied.
ExtendedKoszul build_extended(int n, KoszulMode mode, const std::vector<Scalar>& r, int bound);

/// Concrete mode over Q[y_1..y_n] with r_i = y_i.
ExtendedKoszul build_extended_generic(int n, int bound);

enum class SliceKind { filtration, quotient, graded_piece, window };  // F^s, K/s, Q^s, F^s/F^t

/// Restrict to |a| >= s, |a| < s, |a| == s, or s <= |a| < t respectively;
/// differentials are restricted/projected.
LabeledDouble slice(const ExtendedKoszul& kz, SliceKind kind, int s, int t = -1);

/// Number of labels pushed past the truncation bound by d^h (reported by
/// build_extended and filtration slices; nothing is silently dropped).
int truncation_overflow(const ExtendedKoszul& kz);

}  // namespace kx
