#include <doctest.h>

#include <algorithm>
#include <complex>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "higgsteich/higgs.hpp"

using namespace higgsteich;
using Complex = std::complex<double>;

namespace {

SymbolicSection section_a(long long j, const SurfaceData& s,
                          std::vector<Complex> samples = {},
                          long long vanish = 0) {
    const auto bundle =
        tensor(power(canonical_K(s), j), power(line_xi(s), j - 1));
    return {bundle, vanish, "a_" + std::to_string(j), std::move(samples)};
}

} // namespace

TEST_CASE("canonical sections") {
    const SurfaceData s(2, 3);
    const auto one = SymbolicSection::constant_one(s);
    CHECK(one.bundle == trivial_O(s));
    CHECK(one.vanish_order_at_D == 0);
    const auto oxi = SymbolicSection::xi_section(s);
    CHECK(oxi.bundle == line_xi(s));
    CHECK(oxi.vanish_order_at_D == 1);
}

TEST_CASE("companion field typing") {
    const SurfaceData s(2, 3);

    CHECK_NOTHROW(zero_higgs(2, s));
    CHECK_NOTHROW(companion_higgs(2, {section_a(2, s)}, s));
    CHECK_NOTHROW(companion_higgs(3, {section_a(2, s), section_a(3, s)}, s));

    SymbolicSection bad = section_a(3, s);
    bad.bundle = tensor(bad.bundle, line_xi(s));
    CHECK_THROWS_WITH_AS(companion_higgs(3, {section_a(2, s), bad}, s),
                         doctest::Contains("a_3"), std::invalid_argument);

    CHECK_THROWS_AS(companion_higgs(3, {section_a(2, s)}, s),
                    std::invalid_argument);
    CHECK_THROWS_AS(companion_higgs(1, {}, s), std::invalid_argument);
    CHECK_THROWS_AS(companion_higgs(2, {section_a(2, s, {}, -1)}, s),
                    std::invalid_argument);
}

TEST_CASE("residues collapse to the nilpotent Jordan block") {
    const SurfaceData s(2, 3);

    const auto r2 = residue_at(companion_higgs(2, {section_a(2, s)}, s));
    CHECK(r2 == std::vector<std::vector<long long>>{{0, 1}, {0, 0}});
    CHECK(residue_at(zero_higgs(2, s)) == r2);

    const auto r4 = residue_at(zero_higgs(4, s));
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c)
            CHECK(r4[r][c] == ((c == r + 1) ? 1 : 0));

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int d = 0; d < 100; ++d) {
        std::vector<std::optional<SymbolicSection>> coeffs;
        for (long long j = 2; j <= 5; ++j) {
            if (coin(rng) == 0)
                coeffs.emplace_back();
            else
                coeffs.emplace_back(section_a(j, s, {}, coin(rng)));
        }
        CHECK(residue_at(companion_higgs(5, std::move(coeffs), s)) ==
              residue_at(zero_higgs(5, s)));
    }
}

TEST_CASE("invariant subbundles of the nilpotent field are the tails") {
    const SurfaceData s(2, 3);

    CHECK(invariant_subbundles(zero_higgs(2, s), build_W(s, 2)) ==
          std::vector<IndexSet>{{1}});
    CHECK(invariant_subbundles(zero_higgs(2, s), build_E(s)) ==
          std::vector<IndexSet>{{1}});
    CHECK(invariant_subbundles(zero_higgs(3, s), build_W(s, 3)) ==
          std::vector<IndexSet>{{2}, {1, 2}});
    CHECK(invariant_subbundles(zero_higgs(4, s), build_W(s, 4)) ==
          std::vector<IndexSet>{{3}, {2, 3}, {1, 2, 3}});
}

TEST_CASE("nonzero coefficients prune the invariant tails") {
    const SurfaceData s(2, 3);

    const auto only_a2 = companion_higgs(3, {section_a(2, s), {}}, s);
    CHECK(invariant_subbundles(only_a2, build_W(s, 3)) ==
          std::vector<IndexSet>{{2}});

    const auto with_a3 = companion_higgs(3, {{}, section_a(3, s)}, s);
    CHECK(invariant_subbundles(with_a3, build_W(s, 3)).empty());
}

TEST_CASE("invariant subbundle preconditions") {
    const SurfaceData s(2, 3);
    const ParabolicBundle foreign({trivial_O(s), trivial_O(s)}, Rational(0), s);
    CHECK_THROWS_AS(invariant_subbundles(zero_higgs(2, s), foreign),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariant_subbundles(zero_higgs(3, s), build_W(s, 4)),
                    std::invalid_argument);
    const SurfaceData other(1, 1);
    CHECK_THROWS_AS(invariant_subbundles(zero_higgs(2, other), build_E(s)),
                    std::invalid_argument);
}

TEST_CASE("stability verdicts") {
    const SurfaceData s23(2, 3);
    const auto stable = is_parabolic_stable(build_E(s23), zero_higgs(2, s23));
    CHECK(stable.stable);
    CHECK_FALSE(stable.by_scaling);
    REQUIRE(stable.witnesses.size() == 1);
    CHECK(stable.witnesses[0].summands == IndexSet{1});
    CHECK(stable.witnesses[0].par_degree == Rational(-5, 2));

    const SurfaceData s02(0, 2);
    const auto boundary = is_parabolic_stable(build_E(s02), zero_higgs(2, s02));
    CHECK_FALSE(boundary.stable);
    REQUIRE(boundary.witnesses.size() == 1);
    CHECK(boundary.witnesses[0].par_degree == Rational(0));

    const SurfaceData s21(2, 1);
    const auto w3 = is_parabolic_stable(build_W(s21, 3), zero_higgs(3, s21));
    CHECK(w3.stable);
    REQUIRE(w3.witnesses.size() == 2);
    CHECK(w3.witnesses[0].summands == IndexSet{2});
    CHECK(w3.witnesses[0].par_degree == Rational(-3));
    CHECK(w3.witnesses[1].summands == IndexSet{1, 2});
    CHECK(w3.witnesses[1].par_degree == Rational(-3));
}

TEST_CASE("nonzero coefficients route through the scaling argument") {
    const SurfaceData s(2, 3);
    const auto h = companion_higgs(3, {section_a(2, s, {Complex(1.0, 0.5)}), {}}, s);
    const auto verdict = is_parabolic_stable(build_W(s, 3), h);
    CHECK(verdict.stable);
    CHECK(verdict.by_scaling);
    const auto nil = is_parabolic_stable(build_W(s, 3), zero_higgs(3, s));
    REQUIRE(verdict.witnesses.size() == nil.witnesses.size());
    for (std::size_t i = 0; i < nil.witnesses.size(); ++i) {
        CHECK(verdict.witnesses[i].summands == nil.witnesses[i].summands);
        CHECK(verdict.witnesses[i].par_degree == nil.witnesses[i].par_degree);
    }
}

TEST_CASE("scale action divides coefficient j by mu^j") {
    const SurfaceData s(2, 3);

    const auto h2 = companion_higgs(2, {section_a(2, s, {Complex(1.0)})}, s);
    const auto scaled2 = scale_action(h2, 2.0);
    CHECK(scaled2.coefficient(2)->samples[0] == Complex(0.25));

    const auto h3 = companion_higgs(
        3, {section_a(2, s, {Complex(1.0)}), section_a(3, s, {Complex(1.0)})}, s);
    const auto scaled3 = scale_action(h3, 10.0);
    CHECK(scaled3.coefficient(2)->samples[0].real() == doctest::Approx(1e-2));
    CHECK(scaled3.coefficient(3)->samples[0].real() == doctest::Approx(1e-3));

    const auto identity = scale_action(h3, 1.0);
    CHECK(identity.coefficient(2)->samples[0] == Complex(1.0));
    CHECK(identity.coefficient(3)->samples[0] == Complex(1.0));

    const auto round = scale_action(scale_action(h3, 2.0), 0.5);
    CHECK(round.coefficient(2)->samples[0] == Complex(1.0));
    CHECK(round.coefficient(3)->samples[0] == Complex(1.0));

    CHECK_THROWS_AS(scale_action(h2, Complex(0.0)), std::invalid_argument);
}

TEST_CASE("scale action agrees with the explicit conjugation") {
    const Complex mu(0.3, 1.1);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (long long k = 2; k <= 5; ++k) {
        std::vector<Complex> a;
        for (long long j = 2; j <= k; ++j) a.emplace_back(unit(rng), unit(rng));
        Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(k, k);
        Complex p(1.0);
        for (long long i = 0; i < k; ++i) {
            t(i, i) = p;
            p *= mu;
        }
        const Eigen::MatrixXcd conj =
            (1.0 / mu) * t.inverse() * companion_matrix(k, a) * t;

        std::vector<Complex> scaled = a;
        Complex mu_pow = mu;
        for (long long j = 2; j <= k; ++j) {
            mu_pow *= mu;
            scaled[static_cast<std::size_t>(j - 2)] /= mu_pow;
        }
        const Eigen::MatrixXcd direct = companion_matrix(k, scaled);
        CHECK((conj - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("characteristic polynomial coefficients") {
    CHECK(char_poly_coefficients(companion_matrix(2, {Complex(7.0)})) ==
          std::vector<Complex>{Complex(7.0)});

    const auto zero4 = char_poly_coefficients(companion_matrix(4, {0.0, 0.0, 0.0}));
    for (const auto& c : zero4) CHECK(std::abs(c) == 0.0);

    Eigen::MatrixXcd m(3, 3);
    m << 0, 1, 0, 0, 0, 1, 5, 2, 0;
    const auto got = char_poly_coefficients(m);
    REQUIRE(got.size() == 2);
    CHECK(std::abs(got[0] - Complex(2.0)) < 1e-14);
    CHECK(std::abs(got[1] - Complex(5.0)) < 1e-14);

    Eigen::MatrixXcd rect(2, 3);
    rect.setZero();
    CHECK_THROWS_AS(char_poly_coefficients(rect), std::invalid_argument);
    Eigen::MatrixXcd bad(2, 2);
    bad.setZero();
    bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(char_poly_coefficients(bad), std::invalid_argument);
}

namespace {

/// Polynomial in lambda with complex coefficients, index = power.
using Poly = std::vector<Complex>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, Complex(0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// det(lambda I - m) expanded over all permutations.
Poly char_poly_permanent_oracle(const Eigen::MatrixXcd& m) {
    const auto k = static_cast<std::size_t>(m.rows());
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    Poly total(k + 1, Complex(0.0));
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Poly term{Complex(inversions % 2 == 0 ? 1.0 : -1.0)};
        for (std::size_t r = 0; r < k; ++r) {
            Poly entry{-m(static_cast<long>(r), static_cast<long>(perm[r]))};
            if (perm[r] == r) entry.push_back(Complex(1.0));
            term = poly_mul(term, entry);
        }
        term.resize(k + 1, Complex(0.0));
        for (std::size_t i = 0; i <= k; ++i) total[i] += term[i];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

TEST_CASE("characteristic polynomial matches the permutation-expansion oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXcd m(4, 4);
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) m(r, c) = Complex(unit(rng), unit(rng));
        const auto oracle = char_poly_permanent_oracle(m);
        const auto got = char_poly_coefficients(m);
        REQUIRE(got.size() == 3);
        for (std::size_t e = 0; e <= 2; ++e)
            CHECK(std::abs(got[2 - e] - (-oracle[e])) < 1e-12);
    }
}
