#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

namespace higgsteich {

/// Uniform grid in s = log r over a punctured-disk annulus, r in (0, 1/2].
struct RadialGrid {
    RadialGrid(double s_min, double s_max, std::size_t node_count);

    double s_min;
    double s_max;
    std::size_t node_count;

    double ds() const { return (s_max - s_min) / static_cast<double>(node_count - 1); }
    double s(std::size_t i) const { return s_min + ds() * static_cast<double>(i); }
    double r(std::size_t i) const;
    double r_min() const;
    double r_max() const;
};

/// Local model for the top Higgs coefficient q near one puncture.
struct CoefficientModel {
    enum class Kind { Zero, Constant, SimplePole };

    Kind kind = Kind::Zero;
    std::complex<double> c{0.0, 0.0};

    static CoefficientModel zero() { return {Kind::Zero, {0.0, 0.0}}; }
    static CoefficientModel constant(std::complex<double> c);
    static CoefficientModel simple_pole(std::complex<double> c);

    /// |q| on the circle of radius e^s.
    double modulus_at_s(double s) const;
    /// q(z); the pole model requires z != 0.
    std::complex<double> value_at(std::complex<double> z) const;
};

struct SolveOptions {
    double residual_tol = 1e-9;
    int max_iterations = 50;
    /// Optional initial iterate (node values); defaults to the exact Poincare
    /// exponent shifted linearly in s to match the boundary values.
    std::vector<double> initial;
};

struct RadialSolution {
    RadialGrid grid;
    CoefficientModel q_model;
    std::vector<double> u;
    int newton_iterations = 0;
    double final_residual = 0.0;
};

/// Density lambda(r) = 1 / (2 r log(1/r)) of the model cusp metric
/// lambda^2 |dz|^2; defined for 0 < r < 1.
double poincare_exact(double r);

/// u(s) = log lambda(e^s) = -log 2 - s - log(-s), for s < 0.
double poincare_exponent(double s);

/// Exact-exponent boundary values (u(s_min), u(s_max)) for a grid.
std::pair<double, double> poincare_boundary(const RadialGrid& grid);

/// Solves u'' = e^{2s} (4 e^{2u} - 4 Q(s)^2 e^{-2u}) on the grid with
/// Dirichlet boundary values bc, by damped Newton on the second-order
/// central-difference discretization.
RadialSolution solve_selfduality(const RadialGrid& grid,
                                 const CoefficientModel& q_model,
                                 std::pair<double, double> bc,
                                 const SolveOptions& options = {});

/// Natural cubic spline on the uniform grid in s.
class CubicSpline {
public:
    CubicSpline(double s0, double ds, std::vector<double> y);
    double operator()(double s) const;
    double s_lo() const { return s0_; }
    double s_hi() const;

private:
    double s0_;
    double ds_;
    std::vector<double> y_;
    std::vector<double> m_;
};

struct PatchWindow {
    double x_min, x_max, y_min, y_max;
    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

/// Riemannian metric E dx^2 + 2F dx dy + G dy^2 on a coordinate patch.
class MetricField {
public:
    using Evaluator = std::function<std::array<double, 3>(double, double)>;

    MetricField(PatchWindow patch, Evaluator eval)
        : patch_(patch), eval_(std::move(eval)) {}

    std::array<double, 3> components(double x, double y) const { return eval_(x, y); }
    const PatchWindow& patch() const { return patch_; }

private:
    PatchWindow patch_;
    Evaluator eval_;
};

/// Deformed metric h_a = h + a + abar + a abar / h restricted to a patch,
/// with h = e^{2u} |dz|^2 and a = q dz/dzbar-type deformation datum:
///   E = h_c + 2 Re q,  G = h_c - 2 Re q,  F = -2 Im q,
///   h_c = e^{2u} + |q|^2 e^{-2u}.
/// The patch must lie inside the solved annulus; construction fails if
/// 1 - |q| e^{-2u} <= 0 anywhere on a dense sample of the patch.
MetricField build_h_a(const RadialSolution& sol, const PatchWindow& patch);

/// Gauss curvature by the Brioschi formula with central finite differences
/// of step `step`; the point must sit at least 2*step inside the patch.
double gauss_curvature_fd(const MetricField& field, double x, double y, double step);

/// Pointwise sup norm |q| e^{-2u} of the deformation on the solution nodes.
std::vector<double> higgs_norm_field(const RadialSolution& sol);

/// (min, max) over nodes of exp(2(u_a - u_0)), the mutual-boundedness ratio
/// of the two conformal factors.  Grids must match exactly.
std::pair<double, double> mutual_boundedness(const RadialSolution& sol_a,
                                             const RadialSolution& sol_zero);

/// Area of the annulus r_lo <= |z| <= r_hi in the deformed metric:
/// 2*pi * Int (e^{2u} - |q|^2 e^{-2u}) e^{2s} ds by the trapezoid rule,
/// with linear interpolation for partial end cells.
double volume(const RadialSolution& sol, double r_lo, double r_hi);

} // namespace higgsteich
