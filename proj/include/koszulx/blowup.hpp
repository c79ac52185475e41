#pragma once

#include "koszulx/koszul.hpp"
#include "koszulx/tor.hpp"

#include <string>
#include <vector>

namespace kx {

/// Strictly increasing subset (i_0 < ... < i_k) of {1..n}, size >= 2; the
/// label of the generator a_{(i_0..i_k)} = d(e_{i_0}^...^e_{i_k}).
using GeneratorLabel = std::vector<int>;

/// Homogeneous element of the bigraded algebra A = (+)_s Tor_*(E, I^s)
/// viewed inside (+)_s Lambda_E(e) (x) J^s/J^{s+1}; membership = ker(delta).
struct BlowupClass {
    BigradedElement rep;
    int k = 0;       // homological degree
    int s = 0;       // column
    bool member = true;
};

/// a_{(i_0..i_k)} in bidegree (k, 1).
BlowupClass generator(int n, const GeneratorLabel& label);

/// Twisted product; cycles multiply to cycles, the left and right actions of
/// E[x_1..x_n] differ by (-1)^{k |b|}.
BlowupClass multiply(const BlowupClass& u, const BlowupClass& v);

enum class Side { left, right };

/// Expanded value of sum_i f_i . a_{L_i} (side = left) or a_{L_i} . f_i
/// (side = right); zero iff the relation holds. Inhomogeneous input throws.
BigradedElement relation_check(int n, const std::vector<std::pair<Polynomial, GeneratorLabel>>& terms, Side side);

struct Membership {
    bool member = false;
    BigradedElement certificate;  // delta of the element when not a member
};

/// True iff delta(x) = 0, i.e. x lies in the image of p_*.
Membership membership(const BigradedElement& x);

struct GenerationReport {
    bool ok = false;
    int tor_rank = 0;
    int span_rank = 0;
    /// per Tor basis class: its expansion in the products x^b . a_L
    std::vector<std::pair<std::string, std::string>> spanning;
};

/// rank(span{x^b . a_L : |b| = s-1, |L| = k+1}) against rank Tor_k(E, I^s),
/// blockwise per multidegree.
GenerationReport generation_check(int n, int s, int k);

struct GrAlgebra {
    int n = 0;
    /// column ranks per (s, k) for s <= smax
    std::vector<std::vector<int>> column_ranks;
};

/// The bigraded twisted algebra Lambda_E(e) (x)~ E[x]: columns reproduce
/// tor_graded; the product is multiply_twisted.
GrAlgebra gr_algebra(int n, int smax = 4);

}  // namespace kx
