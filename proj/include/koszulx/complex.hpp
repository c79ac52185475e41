#pragma once

#include "koszulx/matrix.hpp"
#include "koszulx/scalar.hpp"

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kx {

/// Opaque, printable basis label. The multidegree, when nonempty, is an
/// auxiliary grading every differential must preserve; homology is computed
/// blockwise over it.
struct BasisElement {
    std::string name;
    ExponentVector multidegree;  // empty = ungraded
};

struct VerifyReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// ---------------------------------------------------------------------------
// Chain complexes

struct FreeComplex {
    Domain domain = domain_integer();
    std::map<int, std::vector<BasisElement>> basis;  // degree -> ordered basis
    std::map<int, SparseMatrix> diff;                // d_k : C_k -> C_{k-1}

    int rank(int k) const;
    const std::vector<BasisElement>& at(int k) const;
    SparseMatrix d(int k) const;  // zero matrix of the right shape when absent
    int min_degree() const;
    int max_degree() const;
    int index_of(int k, const std::string& name) const;  // -1 when absent
};

VerifyReport verify_complex(const FreeComplex& c);

/// Labels become ordered pairs; the differential carries the sign (-1)^p on
/// the second factor.
FreeComplex tensor_complexes(const FreeComplex& a, const FreeComplex& b);

/// Degrees shift by s, differentials pick up (-1)^s.
FreeComplex suspend(const FreeComplex& c, int s);

enum class HomologyMode { field, integral };

struct HomologyResult {
    std::map<int, int> rank;                                  // per degree
    std::map<int, std::map<ExponentVector, int>> block_rank;  // per degree, per multidegree
    std::map<int, std::vector<Integer>> torsion;              // integral mode: divisors != 1
};

HomologyResult homology_ranks(const FreeComplex& c, HomologyMode mode);

/// Degreewise matrices commuting with the differentials.
struct ChainMap {
    std::map<int, SparseMatrix> maps;  // f_k : A_k -> B_k
    SparseMatrix at(const FreeComplex& a, const FreeComplex& b, int k) const;
};

VerifyReport verify_chain_map(const FreeComplex& a, const FreeComplex& b, const ChainMap& f);

/// Multidegree-m slice of a complex over a polynomial ring: one dense
/// rational matrix per degree, rows/cols indexed by generators whose
/// multidegree is componentwise <= m.
struct GradedSlice {
    std::map<int, std::vector<int>> members;  // degree -> generator indices in the slice
    std::map<int, std::vector<std::vector<Rational>>> diff;
};

GradedSlice polynomial_slice(const FreeComplex& c, const ExponentVector& m);

// ---------------------------------------------------------------------------
// Double complexes

enum class Squares { commuting, anticommuting };

struct Bidegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const Bidegree&) const = default;
};

struct ProductTerm {
    std::size_t index;
    Scalar coeff;
};

/// Bilinear rule on basis labels; the result lives at the componentwise sum
/// of the two bidegrees.
using DoubleProduct =
    std::function<std::vector<ProductTerm>(Bidegree, std::size_t, Bidegree, std::size_t)>;

struct FreeDoubleComplex {
    Domain domain = domain_integer();
    Squares squares = Squares::commuting;
    std::map<Bidegree, std::vector<BasisElement>> basis;
    std::map<Bidegree, SparseMatrix> dh;  // (p,q) -> (p-1,q)
    std::map<Bidegree, SparseMatrix> dv;  // (p,q) -> (p,q-1)
    DoubleProduct product;                // empty = no product

    int rank(Bidegree b) const;
    const std::vector<BasisElement>& at(Bidegree b) const;
    SparseMatrix dh_at(Bidegree b) const;
    SparseMatrix dv_at(Bidegree b) const;
};

/// Checks shapes, dh^2 = 0, dv^2 = 0, square (anti)commutation per the
/// convention flag, and multidegree preservation. With a product present the
/// horizontal derivation law is checked, and the vertical one in the
/// commuting convention (where it is defined).
VerifyReport verify_complex(const FreeDoubleComplex& c, bool check_product = true);

/// Multiplies the vertical differentials by (-1)^p and flips the convention
/// flag; involutive.
FreeDoubleComplex toggle_square_convention(const FreeDoubleComplex& c);

/// Total complex after passing to anticommuting squares. The degree-k basis
/// concatenates the (p, q)-bases with p+q = k, columns ordered by descending
/// p. Note: the condensation of a tensor product agrees with the tensor of
/// the condensations only up to a per-bidegree sign; nothing here relies on a
/// particular choice of that isomorphism.
FreeComplex condense(const FreeDoubleComplex& c);

/// Rows and columns exchanged: (TC)_{p,q} = C_{q,p}.
FreeDoubleComplex transpose(const FreeDoubleComplex& c);

/// Tensor product of double complexes; both factors must carry commuting
/// squares. Products, when both factors have one, combine with the
/// bigraded bicharacter sign.
FreeDoubleComplex tensor_double(const FreeDoubleComplex& a, const FreeDoubleComplex& b);

/// Column p as a chain complex in the vertical grading.
FreeComplex column_complex(const FreeDoubleComplex& c, int p);
/// Row q as a chain complex in the horizontal grading (degrees = p).
FreeComplex row_complex(const FreeDoubleComplex& c, int q);

bool same_complex(const FreeComplex& a, const FreeComplex& b);

}  // namespace kx
