#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "higgsteich/metricsolve.hpp"

using namespace higgsteich;

namespace {

RadialGrid standard_grid() { return {std::log(1e-3), std::log(0.5), 2001}; }

RadialSolution exact_solution(const RadialGrid& grid,
                              const CoefficientModel& model) {
    std::vector<double> u(grid.node_count);
    for (std::size_t i = 0; i < grid.node_count; ++i)
        u[i] = poincare_exponent(grid.s(i));
    return {grid, model, std::move(u), 0, 0.0};
}

} // namespace

TEST_CASE("radial grid validation and accessors") {
    const RadialGrid g(std::log(1e-3), std::log(0.5), 5);
    CHECK(g.ds() == doctest::Approx((g.s_max - g.s_min) / 4.0));
    CHECK(g.r(0) == doctest::Approx(1e-3));
    CHECK(g.r(4) == doctest::Approx(0.5));
    CHECK(g.r_min() == doctest::Approx(1e-3));
    CHECK(g.r_max() == doctest::Approx(0.5));

    CHECK_THROWS_AS(RadialGrid(-2.0, -1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(-2.0, -1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(-1.0, -2.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(RadialGrid(-2.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("coefficient models") {
    const auto z = CoefficientModel::zero();
    CHECK(z.modulus_at_s(-1.0) == 0.0);
    CHECK(z.value_at({0.3, 0.1}) == std::complex<double>(0.0, 0.0));

    const auto c = CoefficientModel::constant({0.03, -0.04});
    CHECK(c.modulus_at_s(-5.0) == doctest::Approx(0.05));
    CHECK(c.value_at({0.2, 0.2}) == std::complex<double>(0.03, -0.04));

    const auto p = CoefficientModel::simple_pole({0.05, 0.0});
    CHECK(p.modulus_at_s(std::log(0.1)) == doctest::Approx(0.5));
    const auto v = p.value_at({0.0, 0.1});
    CHECK(v.real() == doctest::Approx(0.0));
    CHECK(v.imag() == doctest::Approx(-0.5));
    CHECK_THROWS_AS(p.value_at({0.0, 0.0}), std::domain_error);
}

TEST_CASE("model cusp density") {
    CHECK(poincare_exact(std::exp(-1.0)) ==
          doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-12));
    CHECK(poincare_exact(0.1) == doctest::Approx(2.171472).epsilon(1e-6));
    CHECK_THROWS_AS(poincare_exact(0.0), std::domain_error);
    CHECK_THROWS_AS(poincare_exact(-0.5), std::domain_error);
    CHECK_THROWS_AS(poincare_exact(1.0), std::domain_error);

    for (double s : {-6.0, -2.5, -0.7})
        CHECK(poincare_exponent(s) ==
              doctest::Approx(std::log(poincare_exact(std::exp(s)))).epsilon(1e-13));
    CHECK_THROWS_AS(poincare_exponent(0.0), std::domain_error);

    const auto bc = poincare_boundary(standard_grid());
    CHECK(bc.first == doctest::Approx(poincare_exponent(std::log(1e-3))));
    CHECK(bc.second == doctest::Approx(poincare_exponent(std::log(0.5))));
}

TEST_CASE("undeformed solve recovers the cusp exponent") {
    const auto grid = standard_grid();
    const auto sol = solve_selfduality(grid, CoefficientModel::zero(),
                                       poincare_boundary(grid));
    CHECK(sol.newton_iterations <= 30);
    CHECK(sol.final_residual < 1e-9);
    double err = 0.0;
    for (std::size_t i = 0; i < grid.node_count; ++i)
        err = std::max(err, std::abs(sol.u[i] - poincare_exponent(grid.s(i))));
    CHECK(err < 1e-6);
}

TEST_CASE("exact initial iterate converges immediately") {
    const RadialGrid grid(std::log(1e-3), std::log(0.5), 501);
    SolveOptions opts;
    opts.residual_tol = 1e-10;
    opts.initial.resize(grid.node_count);
    for (std::size_t i = 0; i < grid.node_count; ++i)
        opts.initial[i] = poincare_exponent(grid.s(i));
    const auto sol = solve_selfduality(grid, CoefficientModel::zero(),
                                       poincare_boundary(grid), opts);
    CHECK(sol.newton_iterations <= 2);
    CHECK(sol.final_residual < 1e-10);
}

TEST_CASE("solver error halves quadratically with the step") {
    auto err_at = [](std::size_t nodes) {
        const RadialGrid grid(std::log(1e-3), std::log(0.5), nodes);
        const auto sol = solve_selfduality(grid, CoefficientModel::zero(),
                                           poincare_boundary(grid));
        double err = 0.0;
        for (std::size_t i = 0; i < grid.node_count; ++i)
            err = std::max(err, std::abs(sol.u[i] - poincare_exponent(grid.s(i))));
        return err;
    };
    const double ratio = err_at(501) / err_at(1001);
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("solver guards") {
    const RadialGrid grid(std::log(1e-3), std::log(0.5), 101);

    CHECK_THROWS_AS(solve_selfduality(grid, CoefficientModel::zero(),
                                      {400.0, poincare_exponent(grid.s_max)}),
                    std::overflow_error);

    SolveOptions tight;
    tight.residual_tol = 1e-14;
    tight.max_iterations = 1;
    tight.initial.assign(grid.node_count, 0.0);
    CHECK_THROWS_WITH_AS(
        solve_selfduality(grid, CoefficientModel::zero(),
                          poincare_boundary(grid), tight),
        doctest::Contains("residual history"), std::runtime_error);

    SolveOptions bad;
    bad.initial.assign(grid.node_count + 1, 0.0);
    CHECK_THROWS_AS(solve_selfduality(grid, CoefficientModel::zero(),
                                      poincare_boundary(grid), bad),
                    std::invalid_argument);
}

TEST_CASE("natural cubic spline") {
    std::vector<double> linear;
    for (int i = 0; i < 7; ++i) linear.push_back(3.0 - 0.5 * i);
    const CubicSpline sp(-2.0, 0.25, linear);
    CHECK(sp(-2.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(sp(-1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(sp(-1.1) == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(sp.s_hi() == doctest::Approx(-0.5));
    CHECK_THROWS_AS(sp(-2.1), std::domain_error);
    CHECK_THROWS_AS(sp(0.0), std::domain_error);
    CHECK_THROWS_AS(CubicSpline(0.0, 0.1, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("deformed metric components") {
    const auto grid = standard_grid();
    const auto sol = solve_selfduality(grid, CoefficientModel::zero(),
                                       poincare_boundary(grid));
    const PatchWindow patch{0.05, 0.25, -0.1, 0.1};
    const auto field = build_h_a(sol, patch);

    const auto comp = field.components(0.1, 0.0);
    const double lam2 = poincare_exact(0.1) * poincare_exact(0.1);
    CHECK(comp[0] == doctest::Approx(lam2).epsilon(1e-4));
    CHECK(comp[1] == doctest::Approx(0.0));
    CHECK(comp[2] == doctest::Approx(comp[0]).epsilon(1e-14));

    const auto exact = exact_solution(grid, CoefficientModel::constant({0.03, 0.04}));
    const auto deformed = build_h_a(exact, patch);
    const auto c = deformed.components(0.12, -0.05);
    const double e2u = std::exp(2.0 * poincare_exponent(std::log(std::hypot(0.12, -0.05))));
    const double expected_det = e2u - 0.0025 / e2u;
    CHECK(c[0] * c[2] - c[1] * c[1] ==
          doctest::Approx(expected_det * expected_det).epsilon(1e-6));
}

TEST_CASE("deformed metric guards") {
    const auto grid = standard_grid();
    const auto sol = exact_solution(grid, CoefficientModel::zero());
    CHECK_THROWS_WITH_AS(build_h_a(sol, {0.05, 0.6, -0.1, 0.1}),
                         doctest::Contains("annulus"), std::invalid_argument);
    CHECK_THROWS_AS(build_h_a(sol, {0.2, 0.1, -0.1, 0.1}), std::invalid_argument);

    const auto big = exact_solution(grid, CoefficientModel::constant({5.0, 0.0}));
    CHECK_THROWS_WITH_AS(build_h_a(big, {0.3, 0.45, -0.05, 0.05}),
                         doctest::Contains("degenerate metric at (x, y) ="),
                         std::runtime_error);
}

TEST_CASE("finite-difference curvature on model metrics") {
    const PatchWindow patch{-1.0, 1.0, -1.0, 1.0};
    const MetricField flat(patch, [](double, double) {
        return std::array<double, 3>{1.0, 0.0, 1.0};
    });
    CHECK(std::abs(gauss_curvature_fd(flat, 0.2, -0.3, 1e-3)) < 1e-10);

    const MetricField sphere(patch, [](double x, double y) {
        const double f = 4.0 / std::pow(1.0 + x * x + y * y, 2);
        return std::array<double, 3>{f, 0.0, f};
    });
    CHECK(gauss_curvature_fd(sphere, 0.3, -0.2, 1e-3) ==
          doctest::Approx(1.0).epsilon(1e-6));

    CHECK_THROWS_AS(gauss_curvature_fd(flat, 0.9999, 0.0, 1e-3),
                    std::invalid_argument);
    CHECK_THROWS_AS(gauss_curvature_fd(flat, 0.0, 0.0, 0.0),
                    std::invalid_argument);

    const MetricField broken(patch, [](double, double) {
        return std::array<double, 3>{-1.0, 0.0, 1.0};
    });
    CHECK_THROWS_WITH_AS(gauss_curvature_fd(broken, 0.0, 0.0, 1e-3),
                         doctest::Contains("singular"), std::runtime_error);
}

TEST_CASE("solved cusp metric has curvature -4") {
    const auto grid = standard_grid();
    const auto sol = solve_selfduality(grid, CoefficientModel::zero(),
                                       poincare_boundary(grid));
    const auto field = build_h_a(sol, {0.05, 0.25, -0.1, 0.1});
    CHECK(gauss_curvature_fd(field, 0.12, 0.03, 1e-3) ==
          doctest::Approx(-4.0).epsilon(2.5e-3));
}

TEST_CASE("deformation norm field") {
    const auto grid = standard_grid();
    const auto zero = exact_solution(grid, CoefficientModel::zero());
    for (double v : higgs_norm_field(zero)) CHECK(v == 0.0);

    const RadialGrid tail(std::log(0.1), std::log(0.5), 201);
    const auto pole =
        exact_solution(tail, CoefficientModel::simple_pole({0.05, 0.0}));
    const auto norms = higgs_norm_field(pole);
    CHECK(norms.front() == doctest::Approx(0.10604).epsilon(1e-4));
    const double l10 = std::log(10.0);
    CHECK(norms.front() == doctest::Approx(4.0 * 0.05 * 0.1 * l10 * l10));

    const auto deep =
        exact_solution(grid, CoefficientModel::simple_pole({0.05, 0.0}));
    const auto profile = higgs_norm_field(deep);
    for (std::size_t i = 0; i + 1 < grid.node_count; ++i) {
        if (!(grid.r(i + 1) < std::exp(-2.0))) break;
        CHECK(profile[i] < profile[i + 1]);
    }
}

TEST_CASE("mutual boundedness of conformal factors") {
    const auto grid = standard_grid();
    const auto zero = exact_solution(grid, CoefficientModel::zero());
    const auto same = mutual_boundedness(zero, zero);
    CHECK(same.first == 1.0);
    CHECK(same.second == 1.0);

    const RadialGrid other(std::log(1e-3), std::log(0.5), 1001);
    const auto mism = exact_solution(other, CoefficientModel::zero());
    CHECK_THROWS_AS(mutual_boundedness(mism, zero), std::invalid_argument);
}

TEST_CASE("mutual boundedness of the deformed family") {
    const auto grid = standard_grid();
    const auto bc = poincare_boundary(grid);
    const auto sol0 = solve_selfduality(grid, CoefficientModel::zero(), bc);
    const auto sol_const = solve_selfduality(
        grid, CoefficientModel::constant({0.05, 0.0}), bc);
    const auto [lo, hi] = mutual_boundedness(sol_const, sol0);
    CHECK(lo <= 1.0 + 1e-12);
    CHECK(hi >= 1.0 - 1e-12);
    CHECK(lo > 0.9);
    CHECK(hi < 1.1);
    // Regression constants frozen from the first run of this build.
    CHECK(lo == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(1.00021199897667).epsilon(1e-9));

    const auto sol_small = solve_selfduality(
        grid, CoefficientModel::constant({0.01, 0.0}), bc);
    const auto [lo2, hi2] = mutual_boundedness(sol_small, sol0);
    CHECK(hi2 - 1.0 < hi - 1.0);
    CHECK(hi2 - 1.0 > 0.0);
    CHECK(hi2 == doctest::Approx(1.00000848089412).epsilon(1e-9));

    const auto sol_pole = solve_selfduality(
        grid, CoefficientModel::simple_pole({0.05, 0.0}), bc);
    const auto [lop, hip] = mutual_boundedness(sol_pole, sol0);
    CHECK(lop <= 1.0 + 1e-12);
    CHECK(hip < 1.1);
}

TEST_CASE("annulus volume") {
    const RadialGrid deep(std::log(1e-4), std::log(0.5), 4001);
    const auto sol = exact_solution(deep, CoefficientModel::zero());

    auto closed_form = [](double r_lo, double r_hi) {
        const double pi = 3.14159265358979323846;
        return (pi / 2.0) * (1.0 / std::log(1.0 / r_hi) - 1.0 / std::log(1.0 / r_lo));
    };

    CHECK(volume(sol, 1e-3, 0.5) ==
          doctest::Approx(closed_form(1e-3, 0.5)).epsilon(1e-4));
    CHECK(volume(sol, 1e-4, 0.5) ==
          doctest::Approx(closed_form(1e-4, 0.5)).epsilon(1e-4));
    CHECK(volume(sol, 1e-4, 0.5) - volume(sol, 1e-3, 0.5) ==
          doctest::Approx(0.0569).epsilon(2e-3));
    CHECK(volume(sol, 2.3e-4, 0.41) ==
          doctest::Approx(closed_form(2.3e-4, 0.41)).epsilon(1e-4));

    CHECK(volume(sol, 5e-4, 0.5) > volume(sol, 1e-3, 0.5));
    CHECK(volume(sol, 1e-3, 0.5) > volume(sol, 1e-3, 0.4));

    CHECK_THROWS_AS(volume(sol, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(volume(sol, 0.3, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(volume(sol, 1e-5, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(volume(sol, 1e-3, 0.6), std::invalid_argument);
}
