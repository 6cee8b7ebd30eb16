#pragma once

#include <string>

#include "higgsteich/surface.hpp"

namespace higgsteich {

/// Isomorphism class L^p (x) xi^q in the subgroup of the Picard group
/// generated by a fixed square root L of K(D) and the puncture bundle
/// xi = O(D).  Exponents are exact integers.
class LineBundleClass {
public:
    LineBundleClass(long long l_exp, long long xi_exp, SurfaceData surface)
        : l_exp_(l_exp), xi_exp_(xi_exp), surface_(surface) {}

    long long l_exp() const { return l_exp_; }
    long long xi_exp() const { return xi_exp_; }
    const SurfaceData& surface() const { return surface_; }

    friend bool operator==(const LineBundleClass&, const LineBundleClass&) = default;

private:
    long long l_exp_;
    long long xi_exp_;
    SurfaceData surface_;
};

LineBundleClass trivial_O(const SurfaceData& surface);
LineBundleClass line_L(const SurfaceData& surface);
LineBundleClass line_xi(const SurfaceData& surface);
/// K = L^2 in this lattice, so deg L = g - 1.
LineBundleClass canonical_K(const SurfaceData& surface);

/// deg(L^p xi^q) = p(g-1) + qn.
long long degree(const LineBundleClass& b);

LineBundleClass tensor(const LineBundleClass& a, const LineBundleClass& b);
LineBundleClass dual(const LineBundleClass& b);
LineBundleClass power(const LineBundleClass& b, long long m);

/// dim H^0 for classes of degree > 2g-2 (Riemann-Roch with vanishing H^1):
/// deg - g + 1.  Throws std::domain_error in the special range deg <= 2g-2.
long long h0_nonspecial(const LineBundleClass& b);

/// Ordering by (l_exp, xi_exp); only defined within one Picard group.
bool lex_less(const LineBundleClass& a, const LineBundleClass& b);

std::string to_string(const LineBundleClass& b);

} // namespace higgsteich
