#include "higgsteich/metricsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace higgsteich {

namespace {

constexpr double kExpArgLimit = 350.0;

double safe_exp(double arg, const char* what) {
    if (!(std::abs(arg) <= kExpArgLimit)) {
        std::ostringstream os;
        os << what << ": exponent " << arg << " out of safe range";
        throw std::overflow_error(os.str());
    }
    return std::exp(arg);
}

/// Solves a tridiagonal system in place (Thomas algorithm).
std::vector<double> solve_tridiagonal(std::vector<double> lower,
                                      std::vector<double> diag,
                                      std::vector<double> upper,
                                      std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0)
            throw std::runtime_error("tridiagonal solve hit a zero pivot");
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0)
        throw std::runtime_error("tridiagonal solve hit a zero pivot");
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;)
        x[i] = (rhs[i] - upper[i] * x[i + 1]) / diag[i];
    return x;
}

double max_abs_residual(const RadialGrid& grid, const CoefficientModel& q,
                        const std::vector<double>& u) {
    const double ds = grid.ds();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < grid.node_count; ++i) {
        const double s = grid.s(i);
        const double e2s = safe_exp(2.0 * s, "solver");
        const double e2u = safe_exp(2.0 * u[i], "solver conformal factor");
        const double qq = q.modulus_at_s(s);
        const double rhs = e2s * (4.0 * e2u - 4.0 * qq * qq / e2u);
        const double lap = (u[i - 1] - 2.0 * u[i] + u[i + 1]) / (ds * ds);
        worst = std::max(worst, std::abs(lap - rhs));
    }
    return worst;
}

} // namespace

RadialGrid::RadialGrid(double s_min_, double s_max_, std::size_t node_count_)
    : s_min(s_min_), s_max(s_max_), node_count(node_count_) {
    if (!(s_min < s_max))
        throw std::invalid_argument("radial grid requires s_min < s_max");
    if (!(s_max <= std::log(0.5) + 1e-12))
        throw std::invalid_argument("radial grid must stay inside r <= 1/2");
    if (node_count < 3 || node_count % 2 == 0)
        throw std::invalid_argument("node_count must be odd and >= 3");
}

double RadialGrid::r(std::size_t i) const { return std::exp(s(i)); }
double RadialGrid::r_min() const { return std::exp(s_min); }
double RadialGrid::r_max() const { return std::exp(s_max); }

CoefficientModel CoefficientModel::constant(std::complex<double> c) {
    return {Kind::Constant, c};
}
CoefficientModel CoefficientModel::simple_pole(std::complex<double> c) {
    return {Kind::SimplePole, c};
}

double CoefficientModel::modulus_at_s(double s) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return std::abs(c);
        case Kind::SimplePole: return std::abs(c) * std::exp(-s);
    }
    throw std::logic_error("unknown coefficient model");
}

std::complex<double> CoefficientModel::value_at(std::complex<double> z) const {
    switch (kind) {
        case Kind::Zero: return {0.0, 0.0};
        case Kind::Constant: return c;
        case Kind::SimplePole:
            if (z == std::complex<double>(0.0, 0.0))
                throw std::domain_error("simple pole model is singular at z = 0");
            return c / z;
    }
    throw std::logic_error("unknown coefficient model");
}

double poincare_exact(double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("poincare_exact requires 0 < r < 1");
    return 1.0 / (2.0 * r * std::log(1.0 / r));
}

double poincare_exponent(double s) {
    if (!(s < 0.0))
        throw std::domain_error("poincare_exponent requires s < 0");
    return -std::log(2.0) - s - std::log(-s);
}

std::pair<double, double> poincare_boundary(const RadialGrid& grid) {
    return {poincare_exponent(grid.s_min), poincare_exponent(grid.s_max)};
}

RadialSolution solve_selfduality(const RadialGrid& grid,
                                 const CoefficientModel& q_model,
                                 std::pair<double, double> bc,
                                 const SolveOptions& options) {
    const std::size_t n = grid.node_count;
    std::vector<double> u;
    if (!options.initial.empty()) {
        if (options.initial.size() != n)
            throw std::invalid_argument("initial iterate size does not match grid");
        u = options.initial;
        u.front() = bc.first;
        u.back() = bc.second;
    } else {
        u.resize(n);
        const double span = grid.s_max - grid.s_min;
        const double d_lo = bc.first - poincare_exponent(grid.s_min);
        const double d_hi = bc.second - poincare_exponent(grid.s_max);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = grid.s(i);
            const double t = (s - grid.s_min) / span;
            u[i] = poincare_exponent(s) + (1.0 - t) * d_lo + t * d_hi;
        }
    }

    const double ds = grid.ds();
    std::vector<double> history;
    double res = max_abs_residual(grid, q_model, u);
    history.push_back(res);
    int iterations = 0;

    while (res > options.residual_tol) {
        if (iterations >= options.max_iterations) {
            std::ostringstream os;
            os << "self-duality solver did not converge in "
               << options.max_iterations << " iterations; residual history:";
            for (double h : history) os << " " << h;
            throw std::runtime_error(os.str());
        }

        const std::size_t m = n - 2;
        std::vector<double> lower(m, 1.0 / (ds * ds));
        std::vector<double> diag(m);
        std::vector<double> upper(m, 1.0 / (ds * ds));
        std::vector<double> rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            const double s = grid.s(i + 1);
            const double e2s = safe_exp(2.0 * s, "solver");
            const double e2u = safe_exp(2.0 * u[i + 1], "solver conformal factor");
            const double qq = q_model.modulus_at_s(s);
            const double f = e2s * (4.0 * e2u - 4.0 * qq * qq / e2u);
            const double fu = e2s * (8.0 * e2u + 8.0 * qq * qq / e2u);
            diag[i] = -2.0 / (ds * ds) - fu;
            const double lap =
                (u[i] - 2.0 * u[i + 1] + u[i + 2]) / (ds * ds);
            rhs[i] = -(lap - f);
        }
        lower[0] = 0.0;
        upper[m - 1] = 0.0;
        const auto delta = solve_tridiagonal(lower, diag, upper, rhs);

        double lambda = 1.0;
        std::vector<double> trial(n);
        double trial_res = 0.0;
        for (;;) {
            trial = u;
            for (std::size_t i = 0; i < m; ++i) trial[i + 1] += lambda * delta[i];
            trial_res = max_abs_residual(grid, q_model, trial);
            if (trial_res < res || lambda <= 1.0 / 64.0) break;
            lambda *= 0.5;
        }
        u = trial;
        res = trial_res;
        history.push_back(res);
        ++iterations;
    }

    return {grid, q_model, std::move(u), iterations, res};
}

CubicSpline::CubicSpline(double s0, double ds, std::vector<double> y)
    : s0_(s0), ds_(ds), y_(std::move(y)) {
    if (y_.size() < 3) throw std::invalid_argument("spline needs >= 3 nodes");
    if (!(ds_ > 0.0)) throw std::invalid_argument("spline needs positive spacing");
    const std::size_t n = y_.size();
    const std::size_t m = n - 2;
    std::vector<double> lower(m, ds_ / 6.0), diag(m, 2.0 * ds_ / 3.0),
        upper(m, ds_ / 6.0), rhs(m);
    for (std::size_t i = 0; i < m; ++i)
        rhs[i] = (y_[i + 2] - 2.0 * y_[i + 1] + y_[i]) / ds_;
    lower[0] = 0.0;
    upper[m - 1] = 0.0;
    const auto inner = solve_tridiagonal(lower, diag, upper, rhs);
    m_.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) m_[i + 1] = inner[i];
}

double CubicSpline::s_hi() const {
    return s0_ + ds_ * static_cast<double>(y_.size() - 1);
}

double CubicSpline::operator()(double s) const {
    const double eps = 1e-12 * std::max(1.0, std::abs(s_hi()));
    if (s < s0_ - eps || s > s_hi() + eps)
        throw std::domain_error("spline evaluated outside its grid");
    double t = (s - s0_) / ds_;
    auto idx = static_cast<long long>(std::floor(t));
    idx = std::clamp<long long>(idx, 0, static_cast<long long>(y_.size()) - 2);
    const auto i = static_cast<std::size_t>(idx);
    const double a = (s0_ + ds_ * static_cast<double>(i + 1) - s) / ds_;
    const double b = 1.0 - a;
    return a * y_[i] + b * y_[i + 1] +
           ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * ds_ * ds_ / 6.0;
}

MetricField build_h_a(const RadialSolution& sol, const PatchWindow& patch) {
    if (!(patch.x_min < patch.x_max && patch.y_min < patch.y_max))
        throw std::invalid_argument("patch window is empty");

    const double dx = std::max({patch.x_min, -patch.x_max, 0.0});
    const double dy = std::max({patch.y_min, -patch.y_max, 0.0});
    const double min_r = std::hypot(dx, dy);
    double max_r = 0.0;
    for (double x : {patch.x_min, patch.x_max})
        for (double y : {patch.y_min, patch.y_max})
            max_r = std::max(max_r, std::hypot(x, y));
    const double eps = 1e-12;
    if (min_r < sol.grid.r_min() - eps || max_r > sol.grid.r_max() + eps)
        throw std::invalid_argument("patch leaves the solved annulus");

    auto spline = std::make_shared<CubicSpline>(sol.grid.s_min, sol.grid.ds(), sol.u);
    const CoefficientModel model = sol.q_model;

    auto eval = [spline, model](double x, double y) -> std::array<double, 3> {
        const std::complex<double> z{x, y};
        const double s = std::log(std::abs(z));
        const double u = (*spline)(s);
        const double e2u = safe_exp(2.0 * u, "metric conformal factor");
        const std::complex<double> q = model.value_at(z);
        const double hc = e2u + std::norm(q) / e2u;
        return {hc + 2.0 * q.real(), -2.0 * q.imag(), hc - 2.0 * q.real()};
    };

    constexpr int samples = 64;
    for (int i = 0; i <= samples; ++i)
        for (int j = 0; j <= samples; ++j) {
            const double x =
                patch.x_min + (patch.x_max - patch.x_min) * i / double(samples);
            const double y =
                patch.y_min + (patch.y_max - patch.y_min) * j / double(samples);
            const std::complex<double> z{x, y};
            const double s = std::log(std::abs(z));
            const double e2u = safe_exp(2.0 * (*spline)(s), "metric conformal factor");
            const double margin = 1.0 - std::abs(model.value_at(z)) / e2u;
            if (!(margin > 0.0)) {
                std::ostringstream os;
                os << "degenerate metric at (x, y) = (" << x << ", " << y
                   << "): 1 - |rho(a)| = " << margin;
                throw std::runtime_error(os.str());
            }
        }

    return {patch, std::move(eval)};
}

double gauss_curvature_fd(const MetricField& field, double x, double y,
                          double step) {
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    const auto& p = field.patch();
    const double pad = 2.0 * step;
    if (x - pad < p.x_min || x + pad > p.x_max || y - pad < p.y_min ||
        y + pad > p.y_max)
        throw std::invalid_argument(
            "curvature stencil requires the point to sit 2*step inside the patch");

    std::array<std::array<std::array<double, 3>, 3>, 3> f{};
    for (int di = -1; di <= 1; ++di)
        for (int dj = -1; dj <= 1; ++dj) {
            const auto c = field.components(x + di * step, y + dj * step);
            const double det = c[0] * c[2] - c[1] * c[1];
            if (!(c[0] > 0.0) || !(det > 0.0)) {
                std::ostringstream os;
                os << "singular metric in curvature stencil at (" << x + di * step
                   << ", " << y + dj * step << ")";
                throw std::runtime_error(os.str());
            }
            f[static_cast<std::size_t>(di + 1)][static_cast<std::size_t>(dj + 1)] = c;
        }

    auto comp = [&](int di, int dj, int which) {
        return f[static_cast<std::size_t>(di + 1)][static_cast<std::size_t>(dj + 1)]
                [static_cast<std::size_t>(which)];
    };
    const double h2 = 2.0 * step;
    const double hh = step * step;

    const double E = comp(0, 0, 0), F = comp(0, 0, 1), G = comp(0, 0, 2);
    const double E_x = (comp(1, 0, 0) - comp(-1, 0, 0)) / h2;
    const double E_y = (comp(0, 1, 0) - comp(0, -1, 0)) / h2;
    const double G_x = (comp(1, 0, 2) - comp(-1, 0, 2)) / h2;
    const double G_y = (comp(0, 1, 2) - comp(0, -1, 2)) / h2;
    const double F_x = (comp(1, 0, 1) - comp(-1, 0, 1)) / h2;
    const double F_y = (comp(0, 1, 1) - comp(0, -1, 1)) / h2;
    const double E_yy = (comp(0, 1, 0) - 2.0 * E + comp(0, -1, 0)) / hh;
    const double G_xx = (comp(1, 0, 2) - 2.0 * G + comp(-1, 0, 2)) / hh;
    const double F_xy =
        (comp(1, 1, 1) - comp(1, -1, 1) - comp(-1, 1, 1) + comp(-1, -1, 1)) /
        (4.0 * hh);

    Eigen::Matrix3d m1, m2;
    m1 << -0.5 * E_yy + F_xy - 0.5 * G_xx, 0.5 * E_x, F_x - 0.5 * E_y,
        F_y - 0.5 * G_x, E, F,
        0.5 * G_y, F, G;
    m2 << 0.0, 0.5 * E_y, 0.5 * G_x,
        0.5 * E_y, E, F,
        0.5 * G_x, F, G;

    const double det = E * G - F * F;
    return (m1.determinant() - m2.determinant()) / (det * det);
}

std::vector<double> higgs_norm_field(const RadialSolution& sol) {
    std::vector<double> out(sol.grid.node_count);
    for (std::size_t i = 0; i < sol.grid.node_count; ++i) {
        const double s = sol.grid.s(i);
        const double e2u = safe_exp(2.0 * sol.u[i], "metric conformal factor");
        out[i] = sol.q_model.modulus_at_s(s) / e2u;
    }
    return out;
}

std::pair<double, double> mutual_boundedness(const RadialSolution& sol_a,
                                             const RadialSolution& sol_zero) {
    const auto& ga = sol_a.grid;
    const auto& gz = sol_zero.grid;
    if (ga.s_min != gz.s_min || ga.s_max != gz.s_max ||
        ga.node_count != gz.node_count)
        throw std::invalid_argument("mutual_boundedness requires identical grids");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < ga.node_count; ++i) {
        const double ratio = safe_exp(2.0 * (sol_a.u[i] - sol_zero.u[i]),
                                      "conformal ratio");
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

double volume(const RadialSolution& sol, double r_lo, double r_hi) {
    const double eps = 1e-12;
    if (!(r_lo > 0.0) || !(r_lo < r_hi))
        throw std::invalid_argument("volume requires 0 < r_lo < r_hi");
    if (r_lo < sol.grid.r_min() * (1.0 - eps) ||
        r_hi > sol.grid.r_max() * (1.0 + eps))
        throw std::invalid_argument("volume range leaves the solved annulus");

    const auto integrand = [&](std::size_t i) {
        const double s = sol.grid.s(i);
        const double e2u = safe_exp(2.0 * sol.u[i], "metric conformal factor");
        const double qq = sol.q_model.modulus_at_s(s);
        return (e2u - qq * qq / e2u) * std::exp(2.0 * s);
    };

    const double s_lo = std::log(r_lo);
    const double s_hi = std::log(r_hi);
    const double ds = sol.grid.ds();
    const std::size_t n = sol.grid.node_count;

    std::size_t a = 0;
    while (a < n && sol.grid.s(a) < s_lo - eps) ++a;
    std::size_t b = n - 1;
    while (b > 0 && sol.grid.s(b) > s_hi + eps) --b;
    if (a > b) throw std::invalid_argument("volume range is below grid resolution");

    double total = 0.0;
    for (std::size_t i = a; i < b; ++i)
        total += 0.5 * (integrand(i) + integrand(i + 1)) * ds;

    if (a > 0 && sol.grid.s(a) > s_lo + eps) {
        const double t = (sol.grid.s(a) - s_lo) / ds;
        const double f_lo = integrand(a - 1) * t + integrand(a) * (1.0 - t);
        total += 0.5 * (f_lo + integrand(a)) * (sol.grid.s(a) - s_lo);
    }
    if (b + 1 < n && sol.grid.s(b) < s_hi - eps) {
        const double t = (s_hi - sol.grid.s(b)) / ds;
        const double f_hi = integrand(b) * (1.0 - t) + integrand(b + 1) * t;
        total += 0.5 * (integrand(b) + f_hi) * (s_hi - sol.grid.s(b));
    }
    return 2.0 * std::numbers::pi * total;
}

} // namespace higgsteich
