#include "higgsteich/higgs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "higgsteich/checked.hpp"

namespace higgsteich {

namespace {

/// Summand i of the symmetric-power chain, descending L-exponent.
LineBundleClass chain_summand(long long k, long long i, const SurfaceData& surface) {
    return {k - 1 - 2 * i, m_of_k(k) - i, surface};
}

LineBundleClass hom_bundle(const LineBundleClass& from, const LineBundleClass& to) {
    return tensor(dual(from), to);
}

} // namespace

CompanionHiggsField::CompanionHiggsField(
    long long k, std::vector<std::optional<SymbolicSection>> coefficients,
    SurfaceData surface)
    : k_(k), coefficients_(std::move(coefficients)), surface_(surface) {
    if (k_ < 2) throw std::invalid_argument("companion field requires k >= 2");
    if (coefficients_.size() != static_cast<std::size_t>(k_ - 1))
        throw std::invalid_argument(
            "companion field of rank " + std::to_string(k_) + " takes " +
            std::to_string(k_ - 1) + " coefficients (a_2, ..., a_k); got " +
            std::to_string(coefficients_.size()));

    const LineBundleClass K = canonical_K(surface_);
    const LineBundleClass xi = line_xi(surface_);
    const LineBundleClass twist = tensor(K, xi);

    for (long long r = 0; r + 1 < k_; ++r) {
        const auto slot = tensor(
            hom_bundle(chain_summand(k_, k_ - 2 - r, surface_),
                       chain_summand(k_, k_ - 1 - r, surface_)),
            twist);
        if (!(slot == trivial_O(surface_)))
            throw std::logic_error("superdiagonal slot bookkeeping failed");
    }

    for (long long c = 0; c <= k_ - 2; ++c) {
        const long long j = k_ - c;
        const auto& a = coefficients_[static_cast<std::size_t>(j - 2)];
        if (!a) continue;
        if (!(a->bundle.surface() == surface_))
            throw std::invalid_argument("coefficient a_" + std::to_string(j) +
                                        " lives on a different surface");
        if (a->vanish_order_at_D < 0)
            throw std::invalid_argument("coefficient a_" + std::to_string(j) +
                                        " has negative vanishing order");
        const auto slot = tensor(
            hom_bundle(chain_summand(k_, k_ - 1 - c, surface_),
                       chain_summand(k_, 0, surface_)),
            twist);
        const auto expected = tensor(a->bundle, xi);
        if (!(expected == slot))
            throw std::invalid_argument(
                "coefficient a_" + std::to_string(j) + " (bottom row, column " +
                std::to_string(c) + "): section of " + to_string(a->bundle) +
                ", expected a section of K^" + std::to_string(j) + " xi^" +
                std::to_string(j - 1) + " = " +
                to_string(tensor(power(K, j), power(xi, j - 1))));
    }
}

const std::optional<SymbolicSection>& CompanionHiggsField::coefficient(
    long long j) const {
    if (j < 2 || j > k_)
        throw std::invalid_argument("coefficient index j must lie in [2, k]");
    return coefficients_[static_cast<std::size_t>(j - 2)];
}

bool CompanionHiggsField::all_zero() const {
    return std::none_of(coefficients_.begin(), coefficients_.end(),
                        [](const auto& c) { return c.has_value(); });
}

CompanionHiggsField companion_higgs(
    long long k, std::vector<std::optional<SymbolicSection>> coefficients,
    const SurfaceData& surface) {
    return {k, std::move(coefficients), surface};
}

CompanionHiggsField zero_higgs(long long k, const SurfaceData& surface) {
    if (k < 2) throw std::invalid_argument("companion field requires k >= 2");
    return {k, std::vector<std::optional<SymbolicSection>>(
                   static_cast<std::size_t>(k - 1)),
            surface};
}

std::vector<std::vector<long long>> residue_at(const CompanionHiggsField& h) {
    const auto k = static_cast<std::size_t>(h.k());
    std::vector<std::vector<long long>> res(k, std::vector<long long>(k, 0));
    for (std::size_t r = 0; r + 1 < k; ++r) res[r][r + 1] = 1;
    for (std::size_t c = 0; c + 2 <= k; ++c) {
        const long long j = h.k() - static_cast<long long>(c);
        const auto& a = h.coefficient(j);
        if (!a) continue;
        const long long slot_order = checked_add(a->vanish_order_at_D, 1);
        res[k - 1][c] = (slot_order == 0) ? 1 : 0;
    }
    return res;
}

std::vector<IndexSet> invariant_subbundles(const CompanionHiggsField& h,
                                           const ParabolicBundle& pb) {
    if (!(pb.surface() == h.surface()))
        throw std::invalid_argument("bundle and field live on different surfaces");
    const long long k = h.k();
    if (pb.rank() != k)
        throw std::invalid_argument("bundle rank " + std::to_string(pb.rank()) +
                                    " does not match field rank " + std::to_string(k));
    if (k > 20)
        throw std::invalid_argument("rank too large for subset enumeration");

    std::vector<std::size_t> order(pb.summands().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(pb.summands()[b], pb.summands()[a]);
    });
    for (long long i = 0; i + 1 < k; ++i) {
        const auto& hi = pb.summands()[order[static_cast<std::size_t>(i)]];
        const auto& lo = pb.summands()[order[static_cast<std::size_t>(i + 1)]];
        if (hi.l_exp() - lo.l_exp() != 2 || hi.xi_exp() - lo.xi_exp() != 1)
            throw std::invalid_argument(
                "summands do not form a symmetric-power chain; foreign bundle");
    }

    std::vector<long long> active;
    for (long long j = 2; j <= k; ++j)
        if (h.coefficient(j)) active.push_back(j);

    std::vector<IndexSet> out;
    const unsigned long long full = (1ull << k) - 1;
    for (unsigned long long mask = 1; mask < full; ++mask) {
        bool ok = true;
        for (long long i = 0; ok && i + 1 < k; ++i)
            if ((mask >> i & 1) && !(mask >> (i + 1) & 1)) ok = false;
        for (std::size_t t = 0; ok && t < active.size(); ++t) {
            const long long j = active[t];
            if ((mask >> (j - 1) & 1) && !(mask & 1)) ok = false;
        }
        if (!ok) continue;
        IndexSet s;
        for (long long i = 0; i < k; ++i)
            if (mask >> i & 1) s.push_back(static_cast<std::size_t>(i));
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), [](const IndexSet& a, const IndexSet& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

StabilityVerdict is_parabolic_stable(const ParabolicBundle& pb,
                                     const CompanionHiggsField& h) {
    StabilityVerdict verdict;
    verdict.by_scaling = !h.all_zero();
    const CompanionHiggsField& limit =
        verdict.by_scaling ? zero_higgs(h.k(), h.surface()) : h;
    const auto sets = invariant_subbundles(limit, pb);

    std::vector<std::size_t> order(pb.summands().size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return lex_less(pb.summands()[b], pb.summands()[a]);
    });

    const Rational total = par_degree(pb);
    const long long n = pb.surface().punctures();
    verdict.stable = true;
    for (const auto& s : sets) {
        long long d = 0;
        for (auto i : s) d = checked_add(d, degree(pb.summands()[order[i]]));
        const Rational wdeg =
            Rational(d) +
            Rational(checked_mul(n, static_cast<long long>(s.size()))) * pb.weight();
        if (wdeg * pb.rank() >= total * static_cast<long long>(s.size()))
            verdict.stable = false;
        verdict.witnesses.push_back({s, wdeg});
    }
    return verdict;
}

CompanionHiggsField scale_action(const CompanionHiggsField& h,
                                 std::complex<double> mu) {
    if (std::abs(mu) == 0.0)
        throw std::invalid_argument("scale_action requires mu != 0");
    std::vector<std::optional<SymbolicSection>> coeffs = h.coefficients();
    std::complex<double> mu_pow = mu;
    for (long long j = 2; j <= h.k(); ++j) {
        mu_pow *= mu;
        auto& c = coeffs[static_cast<std::size_t>(j - 2)];
        if (!c) continue;
        for (auto& v : c->samples) v /= mu_pow;
    }
    return {h.k(), std::move(coeffs), h.surface()};
}

Eigen::MatrixXcd companion_matrix(long long k,
                                  const std::vector<std::complex<double>>& values) {
    if (k < 2) throw std::invalid_argument("companion matrix requires k >= 2");
    if (values.size() != static_cast<std::size_t>(k - 1))
        throw std::invalid_argument("companion matrix of rank " + std::to_string(k) +
                                    " takes k-1 coefficient values");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(k, k);
    for (long long r = 0; r + 1 < k; ++r) m(r, r + 1) = 1.0;
    for (long long c = 0; c <= k - 2; ++c)
        m(k - 1, c) = values[static_cast<std::size_t>(k - c - 2)];
    return m;
}

std::vector<std::complex<double>> char_poly_coefficients(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("char_poly_coefficients requires a square matrix");
    const long long k = m.rows();
    if (k < 1) throw std::invalid_argument("matrix must be nonempty");
    if (!m.allFinite())
        throw std::invalid_argument("matrix entries must be finite");

    // Faddeev-LeVerrier: c[e] is the lambda^e coefficient of det(lambda I - m).
    std::vector<std::complex<double>> c(static_cast<std::size_t>(k));
    Eigen::MatrixXcd a = m;
    c[static_cast<std::size_t>(k - 1)] = -a.trace();
    for (long long j = 2; j <= k; ++j) {
        a = m * (a + c[static_cast<std::size_t>(k - j + 1)] *
                         Eigen::MatrixXcd::Identity(k, k));
        c[static_cast<std::size_t>(k - j)] = -a.trace() / static_cast<double>(j);
    }

    std::vector<std::complex<double>> out;
    for (long long e = k - 2; e >= 0; --e)
        out.push_back(-c[static_cast<std::size_t>(e)]);
    return out;
}

} // namespace higgsteich
