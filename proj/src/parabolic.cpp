#include "higgsteich/parabolic.hpp"

#include <algorithm>
#include <stdexcept>

#include "higgsteich/checked.hpp"

namespace higgsteich {

ParabolicBundle::ParabolicBundle(std::vector<LineBundleClass> summands,
                                 Rational weight, SurfaceData surface)
    : summands_(std::move(summands)), weight_(weight), surface_(surface) {
    if (summands_.empty())
        throw std::invalid_argument("parabolic bundle needs at least one summand");
    for (const auto& s : summands_)
        if (!(s.surface() == surface_))
            throw std::invalid_argument("summand lives on a different surface");
    if (weight_ < Rational(0) || weight_ >= Rational(1))
        throw std::invalid_argument("parabolic weight must lie in [0, 1)");
}

bool operator==(const ParabolicBundle& a, const ParabolicBundle& b) {
    if (!(a.surface() == b.surface()) || a.weight() != b.weight() ||
        a.rank() != b.rank())
        return false;
    auto sa = a.summands();
    auto sb = b.summands();
    std::sort(sa.begin(), sa.end(), lex_less);
    std::sort(sb.begin(), sb.end(), lex_less);
    return sa == sb;
}

ParabolicBundle build_E(const SurfaceData& surface) {
    const LineBundleClass Ldual_xidual{-1, -1, surface};
    const LineBundleClass L = line_L(surface);
    return {{Ldual_xidual, L}, Rational(1, 2), surface};
}

long long m_of_k(long long k) {
    if (k < 2) throw std::invalid_argument("rank parameter k must be >= 2");
    return (k % 2 == 0) ? k / 2 - 1 : (k - 1) / 2;
}

ParabolicBundle build_W(const SurfaceData& surface, long long k) {
    const long long m = m_of_k(k);
    std::vector<LineBundleClass> summands;
    summands.reserve(static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i)
        summands.emplace_back(k - 1 - 2 * i, m - i, surface);
    const Rational weight = (k % 2 == 0) ? Rational(1, 2) : Rational(0);
    return {std::move(summands), weight, surface};
}

Rational par_degree(const ParabolicBundle& pb) {
    long long d = 0;
    for (const auto& s : pb.summands()) d = checked_add(d, degree(s));
    const long long n = pb.surface().punctures();
    return Rational(d) + Rational(checked_mul(n, pb.rank())) * pb.weight();
}

ParabolicBundle par_dual(const ParabolicBundle& pb) {
    std::vector<LineBundleClass> duals;
    duals.reserve(pb.summands().size());
    const bool zero_weight = pb.weight() == Rational(0);
    const LineBundleClass xi_inv = dual(line_xi(pb.surface()));
    for (const auto& s : pb.summands())
        duals.push_back(zero_weight ? dual(s) : tensor(dual(s), xi_inv));
    const Rational w = zero_weight ? Rational(0) : Rational(1) - pb.weight();
    return {std::move(duals), w, pb.surface()};
}

} // namespace higgsteich
