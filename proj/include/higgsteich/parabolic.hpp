#pragma once

#include <vector>

#include "higgsteich/picard.hpp"
#include "higgsteich/rational.hpp"
#include "higgsteich/surface.hpp"

namespace higgsteich {

/// Direct sum of line bundle classes with one common parabolic weight
/// attached to the full fiber over every puncture (trivial flags).
class ParabolicBundle {
public:
    ParabolicBundle(std::vector<LineBundleClass> summands, Rational weight,
                    SurfaceData surface);

    long long rank() const { return static_cast<long long>(summands_.size()); }
    const std::vector<LineBundleClass>& summands() const { return summands_; }
    const Rational& weight() const { return weight_; }
    const SurfaceData& surface() const { return surface_; }

    /// True when the weight denominator is neither 1 nor 2.  Such bundles are
    /// representable but outside the constructions exercised here; callers
    /// surface this as a warning rather than an error.
    bool nonstandard_weight() const { return weight_.denominator() > 2; }

    /// Equality compares the summand multiset, the weight, and the surface;
    /// the listed order of summands is presentation only.
    friend bool operator==(const ParabolicBundle& a, const ParabolicBundle& b);

private:
    std::vector<LineBundleClass> summands_;
    Rational weight_;
    SurfaceData surface_;
};

/// E = (L xi)^* (+) L with weight 1/2.
ParabolicBundle build_E(const SurfaceData& surface);

/// W_k = Sym^{k-1}(E) (x) xi^{m(k)} with m(k) = k/2 - 1 (k even) or
/// (k-1)/2 (k odd); summand i of k is L^{k-1-2i} xi^{m(k)-i} listed with
/// descending L-exponent.  Weight 1/2 for even k, 0 for odd k.
ParabolicBundle build_W(const SurfaceData& surface, long long k);

long long m_of_k(long long k);

/// Sum of summand degrees plus n * weight * rank, exact.
Rational par_degree(const ParabolicBundle& pb);

/// Parabolic dual: weight 0 dualizes summands; weight a > 0 dualizes
/// summands, tensors each by xi^{-1}, and assigns weight 1 - a.  The twist
/// direction is pinned by par_dual(E) = E, par_dual(W_k) = W_k, and
/// par_degree(par_dual(pb)) = -par_degree(pb).
ParabolicBundle par_dual(const ParabolicBundle& pb);

} // namespace higgsteich
