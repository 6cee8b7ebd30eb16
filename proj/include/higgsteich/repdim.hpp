#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "higgsteich/surface.hpp"

namespace higgsteich {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rank of an integer matrix via fraction-free (Bareiss) elimination.
long long integer_rank(std::vector<std::vector<BigInt>> m);

/// Real dimension of the truncated Hitchin base: sum over j = 2..k of
/// 2 * h0(K^j xi^{j-1}).  Requires a hyperbolic surface.
long long hitchin_base_dim_real(long long g, long long n, long long k);

/// Closed form 2(k^2-1)(g-1) + k(k-1)n; n = 0 reduces to the compact case.
long long teichmuller_component_dim(long long g, long long n, long long k);

/// dim of the relevant representation-variety stratum:
/// 2g(k^2-1) + n * unipotent_orbit_dim(k) - 2(k^2-1).  Requires n >= 1.
long long rep_variety_dim(long long g, long long n, long long k);

/// Dimension of the conjugacy class of a regular unipotent element of
/// SL(k, C), computed as the rank of X -> XU - UX on sl(k) with U the
/// sympower_unipotent matrix.  Supported for 2 <= k <= 12.
long long unipotent_orbit_dim(long long k);

/// Action of the standard unipotent [[1,1],[0,1]] on Sym^{k-1}(C^2) in the
/// monomial basis x^{k-1-i} y^i: entry (j, i) = C(i, j) for j <= i.
std::vector<std::vector<long long>> sympower_unipotent(long long k);

struct DimensionReport {
    long long g = 0;
    long long n = 0;
    long long k = 0;
    long long hitchin_base_real_dim = 0;
    long long closed_form_dim = 0;
    long long rep_variety_dim = 0;
    bool agree = false;
    std::vector<std::pair<long long, long long>> per_j_terms;
};

DimensionReport dimension_report(long long g, long long n, long long k);

} // namespace higgsteich
