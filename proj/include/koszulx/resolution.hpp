#pragma once

#include "koszulx/complex.hpp"
#include "koszulx/koszul.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kx {

enum class TargetKind { quotient, power, subquotient };

/// Degree-labelled chain complex on KoszulIndex bases (degree = |J|).
struct LabeledComplex {
    FreeComplex c;
    std::map<int, std::vector<KoszulIndex>> labels;

    int index_of(int degree, const KoszulIndex& idx) const;
};

/// A finite free complex of length n together with the augmentation
/// eps(x_i) = r_i onto R/I^s, I^s, or I^s/I^t.
struct AugmentedResolution {
    TargetKind target = TargetKind::quotient;
    int n = 0;
    int s = 0;
    int t = 0;  // subquotient only
    KoszulMode mode = KoszulMode::formal;
    int bound = 0;  // power target: generators satisfy |J| + |a| <= bound
    Domain dom = domain_integer();
    std::vector<Scalar> r;
    LabeledComplex cx;
    bool edge_truncated = false;  // power target carries an unverified edge

    /// eps on a degree-0 label: r^a (concrete) or [a = 0] (formal).
    Scalar augment(const KoszulIndex& idx) const;

    /// Whether a scalar is zero in the augmentation target (e.g. lies in I^s
    /// for the quotient target).
    bool zero_in_target(const Scalar& v) const;

    std::vector<int> ranks() const;  // per degree 0..n
};

/// (K/s)* -> R/I^s: length n, degree-k rank C(n,k) * C(n+s-1, n).
AugmentedResolution resolution_of_quotient(int n, int s, KoszulMode mode, const std::vector<Scalar>& r);

/// (F^s K)* -> I^s, truncated to the subcomplex of multidegrees <= bound
/// (every multidegree block <= bound is complete; the edge above is
/// unverified).
AugmentedResolution resolution_of_power(int n, int s, int bound, KoszulMode mode, const std::vector<Scalar>& r);

/// (F^s/F^t)* -> I^s/I^t; t = s+1 is the graded piece (Q^s)*.
AugmentedResolution resolution_of_subquotient(int n, int s, int t, KoszulMode mode, const std::vector<Scalar>& r);

struct ExactnessFailure {
    ExponentVector multidegree;
    int degree = 0;
    int expected = 0;
    int got = 0;
};

struct ExactnessReport {
    std::vector<ExactnessFailure> failures;
    int blocks_checked = 0;
    bool ok() const { return failures.empty(); }
};

/// Concrete mode only. Polynomial ring: for every y-multidegree m with
/// |m| <= multidegree_bound, H_k = 0 for k >= 1 and dim H_0 equals the
/// combinatorial Hilbert function of the target. Integer ring (n = 1):
/// integral homology via SNF, H_0 compared against (r^s)-type targets.
ExactnessReport verify_exactness(const AugmentedResolution& res, int multidegree_bound);

/// Combinatorial Hilbert function of the target in one multidegree:
/// monomial counting only, independent of the resolution machinery.
int hilbert_target(TargetKind target, int s, int t, const ExponentVector& m);

struct CoveringMaps {
    AugmentedResolution graded;    // (Q^s)*
    AugmentedResolution quotient;  // (K/(s+1))*
    AugmentedResolution power;     // (F^s)*
    ChainMap inclusion;            // (Q^s)* -> (K/(s+1))*
    ChainMap projection;           // (F^s)* -> (Q^s)*
};

/// The inclusion covering I^s/I^{s+1} -> R/I^{s+1} and the projection
/// covering I^s -> I^s/I^{s+1}, as basis-level chain maps.
CoveringMaps covering_maps(int n, int s, int bound, KoszulMode mode, const std::vector<Scalar>& r);

}  // namespace kx
