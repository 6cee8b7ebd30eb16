#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "higgsteich/parabolic.hpp"
#include "higgsteich/picard.hpp"
#include "higgsteich/rational.hpp"
#include "higgsteich/surface.hpp"

namespace higgsteich {

/// A named holomorphic section of a line bundle class, carried symbolically:
/// only its bundle, its vanishing order along the puncture divisor, and
/// optional numeric samples are tracked.
struct SymbolicSection {
    LineBundleClass bundle;
    long long vanish_order_at_D = 0;
    std::string label;
    std::vector<std::complex<double>> samples;

    static SymbolicSection constant_one(const SurfaceData& surface) {
        return {trivial_O(surface), 0, "1", {}};
    }
    /// The tautological section of xi = O(D), vanishing to order 1 on D.
    static SymbolicSection xi_section(const SurfaceData& surface) {
        return {line_xi(surface), 1, "1_xi", {}};
    }
};

/// Companion-form Higgs field theta(a_2, ..., a_k) on W_k: ones on the
/// superdiagonal, bottom row (a_k, ..., a_2, 0), zeros elsewhere.  Slot
/// (k-1, c) couples through a_{k-c} (x) 1_xi; coefficient a_j must be a
/// section of K^j xi^{j-1}.  An empty optional is the zero section.
class CompanionHiggsField {
public:
    CompanionHiggsField(long long k,
                        std::vector<std::optional<SymbolicSection>> coefficients,
                        SurfaceData surface);

    long long k() const { return k_; }
    const SurfaceData& surface() const { return surface_; }

    /// Coefficient a_j for j in [2, k].
    const std::optional<SymbolicSection>& coefficient(long long j) const;
    const std::vector<std::optional<SymbolicSection>>& coefficients() const {
        return coefficients_;
    }

    bool all_zero() const;

private:
    long long k_;
    std::vector<std::optional<SymbolicSection>> coefficients_;
    SurfaceData surface_;
};

CompanionHiggsField companion_higgs(
    long long k, std::vector<std::optional<SymbolicSection>> coefficients,
    const SurfaceData& surface);

CompanionHiggsField zero_higgs(long long k, const SurfaceData& surface);

/// Residue matrix at a puncture: entry 1 exactly where the slot section is
/// nonzero with vanishing order 0, else 0.  For any well-typed companion
/// field this is the single nilpotent Jordan block N_k.
std::vector<std::vector<long long>> residue_at(const CompanionHiggsField& h);

/// Indices into the summand list sorted by descending L-exponent.
using IndexSet = std::vector<std::size_t>;

/// All proper nonzero direct-sum index sets invariant under the field.
/// Index sets always refer to the descending-L ordering of pb's summands.
std::vector<IndexSet> invariant_subbundles(const CompanionHiggsField& h,
                                           const ParabolicBundle& pb);

struct StabilityWitness {
    IndexSet summands;
    Rational par_degree;
};

struct StabilityVerdict {
    bool stable = false;
    /// True when nonzero coefficients were replaced by the nilpotent limit
    /// theta(0, ..., 0); the verdict then holds by the scaling argument.
    bool by_scaling = false;
    std::vector<StabilityWitness> witnesses;
};

/// Parabolic stability against every invariant subbundle: each witness slope
/// par_degree/|S| must be strictly below par_degree(pb)/rank.
StabilityVerdict is_parabolic_stable(const ParabolicBundle& pb,
                                     const CompanionHiggsField& h);

/// The C^* action mu.(a_2, ..., a_k) = (a_2/mu^2, ..., a_k/mu^k) applied to
/// numeric samples; induced by conjugating theta with diag(1, mu, ..., mu^{k-1})
/// and rescaling by mu.
CompanionHiggsField scale_action(const CompanionHiggsField& h,
                                 std::complex<double> mu);

/// Numeric companion matrix for coefficient values (a_2, ..., a_k).
Eigen::MatrixXcd companion_matrix(long long k,
                                  const std::vector<std::complex<double>>& values);

/// Coefficients of lambda^{k-2}, ..., lambda^0 in det(lambda I - M), each
/// negated, so that a companion matrix built from (a_2, ..., a_k) returns
/// exactly (a_2, ..., a_k).
std::vector<std::complex<double>> char_poly_coefficients(const Eigen::MatrixXcd& m);

} // namespace higgsteich
