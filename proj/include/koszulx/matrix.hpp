#pragma once

#include "koszulx/scalar.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace kx {

/// Row/column-indexed association of exact nonzero entries; absent means zero.
struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::map<std::pair<int, int>, Scalar> entries;

    SparseMatrix() = default;
    SparseMatrix(int r, int c) : rows(r), cols(c) {}

    void set(int r, int c, const Scalar& v);
    void add_to(int r, int c, const Scalar& v);
    Scalar at(int r, int c) const;
    bool is_zero() const { return entries.empty(); }

    SparseMatrix operator*(const SparseMatrix& other) const;  // composition
    SparseMatrix operator+(const SparseMatrix& other) const;
    SparseMatrix operator-() const;
    SparseMatrix scaled(const Scalar& c) const;
    bool operator==(const SparseMatrix& other) const;

    /// Apply to a coefficient column vector.
    std::vector<Scalar> apply(const std::vector<Scalar>& v) const;
};

// ---------------------------------------------------------------------------
// Integer Smith normal form

struct SnfResult {
    std::vector<Integer> divisors;  // d1 | d2 | ... | dr, all positive
    int rank = 0;
};

/// Elementary-operation reduction, pivoting on the smallest absolute value.
/// Entries must be integer scalars.
SnfResult smith_normal_form(const SparseMatrix& m);
SnfResult smith_normal_form(std::vector<std::vector<Integer>> w);

/// Integer kernel basis (columns v with M v = 0), valid over any coefficient
/// ring when all SNF divisors are 1. Vectors are primitive and deterministic.
std::vector<std::vector<Integer>> integer_kernel(const SparseMatrix& m);

// ---------------------------------------------------------------------------
// Field rank / kernel

struct RankKernel {
    int rank = 0;
    /// Reduced-echelon kernel basis: one vector per free column, free
    /// coordinate 1, pivot coordinates filled from the RREF.
    std::vector<std::vector<Scalar>> kernel;
};

/// Coefficient domain must be rational or a prime field; integer entries are
/// promoted to rationals.
RankKernel rank_and_kernel(const SparseMatrix& m);

int rank_rational(const SparseMatrix& m);

/// Solve M x = b over the rationals; integer entries allowed. Returns nullopt
/// when inconsistent.
std::optional<std::vector<Rational>> solve_rational(const SparseMatrix& m, const std::vector<Rational>& b);

/// Dense rational view (integer entries promoted).
std::vector<std::vector<Rational>> to_rational_dense(const SparseMatrix& m);

/// Rank of a dense rational matrix via Gaussian elimination.
int rank_dense(std::vector<std::vector<Rational>> a);

/// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref_dense(std::vector<std::vector<Rational>>& a);

/// Scale a rational vector to a primitive integer vector (lcm of
/// denominators, divided by content); zero vector maps to itself.
std::vector<Integer> primitive_integer(const std::vector<Rational>& v);

}  // namespace kx
