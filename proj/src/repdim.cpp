#include "higgsteich/repdim.hpp"

#include <array>
#include <stdexcept>
#include <utility>

#include "higgsteich/checked.hpp"
#include "higgsteich/picard.hpp"

namespace higgsteich {

long long integer_rank(std::vector<std::vector<BigInt>> m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size();
    const std::size_t cols = m[0].size();
    for (const auto& row : m)
        if (row.size() != cols)
            throw std::invalid_argument("integer_rank requires a rectangular matrix");

    long long rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && static_cast<std::size_t>(rank) < rows;
         ++col) {
        std::size_t pivot = rows;
        for (std::size_t r = static_cast<std::size_t>(rank); r < rows; ++r)
            if (m[r][col] != 0) { pivot = r; break; }
        if (pivot == rows) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[pivot]);
        const std::size_t p = static_cast<std::size_t>(rank);
        for (std::size_t r = p + 1; r < rows; ++r) {
            for (std::size_t c = col + 1; c < cols; ++c) {
                BigInt num = m[r][c] * m[p][col] - m[r][col] * m[p][c];
                if (num % prev != 0)
                    throw std::logic_error("fraction-free elimination step not exact");
                m[r][c] = num / prev;
            }
            m[r][col] = 0;
        }
        prev = m[p][col];
        ++rank;
    }
    return rank;
}

long long hitchin_base_dim_real(long long g, long long n, long long k) {
    const SurfaceData surface(g, n);
    if (!surface.hyperbolic())
        throw std::domain_error("hitchin_base_dim_real requires 2g-2+n > 0");
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const LineBundleClass K = canonical_K(surface);
    const LineBundleClass xi = line_xi(surface);
    long long total = 0;
    for (long long j = 2; j <= k; ++j) {
        const auto b = tensor(power(K, j), power(xi, j - 1));
        total = checked_add(total, checked_mul(2, h0_nonspecial(b)));
    }
    return total;
}

long long teichmuller_component_dim(long long g, long long n, long long k) {
    if (g < 0 || n < 0) throw std::invalid_argument("g and n must be >= 0");
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const long long k2m1 = checked_sub(checked_mul(k, k), 1);
    return checked_add(checked_mul(checked_mul(2, k2m1), checked_sub(g, 1)),
                       checked_mul(checked_mul(k, checked_sub(k, 1)), n));
}

std::vector<std::vector<long long>> sympower_unipotent(long long k) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    // Pascal rows give C(i, j) without intermediate overflow.
    std::vector<std::vector<long long>> binom(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) {
        binom[i].assign(i + 1, 1);
        for (std::size_t j = 1; j < i; ++j)
            binom[i][j] = checked_add(binom[i - 1][j - 1], binom[i - 1][j]);
    }
    std::vector<std::vector<long long>> m(
        static_cast<std::size_t>(k), std::vector<long long>(static_cast<std::size_t>(k), 0));
    for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j)
        for (std::size_t i = j; i < static_cast<std::size_t>(k); ++i)
            m[j][i] = binom[i][j];

    for (std::size_t d = 0; d < static_cast<std::size_t>(k); ++d)
        if (m[d][d] != 1)
            throw std::logic_error("sympower matrix lost unipotency");
    std::vector<std::vector<BigInt>> shifted(
        static_cast<std::size_t>(k), std::vector<BigInt>(static_cast<std::size_t>(k)));
    for (std::size_t r = 0; r < static_cast<std::size_t>(k); ++r)
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c)
            shifted[r][c] = m[r][c] - (r == c ? 1 : 0);
    if (integer_rank(std::move(shifted)) != k - 1)
        throw std::logic_error("sympower matrix is not regular unipotent");
    return m;
}

namespace {

long long orbit_dim_uncached(long long k) {
    const auto u = sympower_unipotent(k);
    const auto ku = static_cast<std::size_t>(k);

    // Basis of sl(k): off-diagonal E_ab, then H_i = E_ii - E_{i+1,i+1}.
    std::vector<std::vector<std::vector<long long>>> basis;
    for (std::size_t a = 0; a < ku; ++a)
        for (std::size_t b = 0; b < ku; ++b) {
            if (a == b) continue;
            std::vector<std::vector<long long>> e(ku, std::vector<long long>(ku, 0));
            e[a][b] = 1;
            basis.push_back(std::move(e));
        }
    for (std::size_t i = 0; i + 1 < ku; ++i) {
        std::vector<std::vector<long long>> e(ku, std::vector<long long>(ku, 0));
        e[i][i] = 1;
        e[i + 1][i + 1] = -1;
        basis.push_back(std::move(e));
    }

    // Columns are vec(XU - UX) over the full k x k coordinate space.
    std::vector<std::vector<BigInt>> ad(ku * ku, std::vector<BigInt>(basis.size(), 0));
    for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto& x = basis[col];
        for (std::size_t r = 0; r < ku; ++r)
            for (std::size_t c = 0; c < ku; ++c) {
                long long v = 0;
                for (std::size_t t = 0; t < ku; ++t)
                    v = checked_add(v, checked_sub(checked_mul(x[r][t], u[t][c]),
                                                   checked_mul(u[r][t], x[t][c])));
                ad[r * ku + c][col] = v;
            }
    }
    return integer_rank(std::move(ad));
}

} // namespace

long long unipotent_orbit_dim(long long k) {
    if (k < 2 || k > 12)
        throw std::invalid_argument("unipotent_orbit_dim supports 2 <= k <= 12");
    static const std::array<long long, 13> cache = [] {
        std::array<long long, 13> c{};
        for (long long kk = 2; kk <= 12; ++kk)
            c[static_cast<std::size_t>(kk)] = orbit_dim_uncached(kk);
        return c;
    }();
    return cache[static_cast<std::size_t>(k)];
}

long long rep_variety_dim(long long g, long long n, long long k) {
    if (g < 0) throw std::invalid_argument("g must be >= 0");
    if (n < 1)
        throw std::invalid_argument(
            "rep_variety_dim requires n >= 1; the closed-surface count has no "
            "puncture stratum");
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    const long long k2m1 = checked_sub(checked_mul(k, k), 1);
    return checked_sub(
        checked_add(checked_mul(checked_mul(2, g), k2m1),
                    checked_mul(n, unipotent_orbit_dim(k))),
        checked_mul(2, k2m1));
}

DimensionReport dimension_report(long long g, long long n, long long k) {
    DimensionReport rep;
    rep.g = g;
    rep.n = n;
    rep.k = k;
    rep.hitchin_base_real_dim = hitchin_base_dim_real(g, n, k);
    rep.closed_form_dim = teichmuller_component_dim(g, n, k);
    rep.rep_variety_dim = rep_variety_dim(g, n, k);
    rep.agree = rep.hitchin_base_real_dim == rep.closed_form_dim &&
                rep.closed_form_dim == rep.rep_variety_dim;
    const SurfaceData surface(g, n);
    const LineBundleClass K = canonical_K(surface);
    const LineBundleClass xi = line_xi(surface);
    for (long long j = 2; j <= k; ++j) {
        const auto b = tensor(power(K, j), power(xi, j - 1));
        rep.per_j_terms.emplace_back(j, checked_mul(2, h0_nonspecial(b)));
    }
    return rep;
}

} // namespace higgsteich
