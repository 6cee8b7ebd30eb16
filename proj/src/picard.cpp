#include "higgsteich/picard.hpp"

#include <stdexcept>

#include "higgsteich/checked.hpp"

namespace higgsteich {

namespace {

void require_same_surface(const LineBundleClass& a, const LineBundleClass& b) {
    if (!(a.surface() == b.surface()))
        throw std::invalid_argument("line bundle classes live on different surfaces");
}

} // namespace

LineBundleClass trivial_O(const SurfaceData& surface) { return {0, 0, surface}; }
LineBundleClass line_L(const SurfaceData& surface) { return {1, 0, surface}; }
LineBundleClass line_xi(const SurfaceData& surface) { return {0, 1, surface}; }
LineBundleClass canonical_K(const SurfaceData& surface) { return {2, 0, surface}; }

long long degree(const LineBundleClass& b) {
    const long long g1 = checked_sub(b.surface().genus(), 1);
    return checked_add(checked_mul(b.l_exp(), g1),
                       checked_mul(b.xi_exp(), b.surface().punctures()));
}

LineBundleClass tensor(const LineBundleClass& a, const LineBundleClass& b) {
    require_same_surface(a, b);
    return {checked_add(a.l_exp(), b.l_exp()),
            checked_add(a.xi_exp(), b.xi_exp()), a.surface()};
}

LineBundleClass dual(const LineBundleClass& b) {
    return {checked_neg(b.l_exp()), checked_neg(b.xi_exp()), b.surface()};
}

LineBundleClass power(const LineBundleClass& b, long long m) {
    return {checked_mul(b.l_exp(), m), checked_mul(b.xi_exp(), m), b.surface()};
}

long long h0_nonspecial(const LineBundleClass& b) {
    const long long d = degree(b);
    const long long g = b.surface().genus();
    if (d <= 2 * g - 2)
        throw std::domain_error(
            "h0_nonspecial: degree " + std::to_string(d) + " is not above 2g-2 = " +
            std::to_string(2 * g - 2) + "; special-range unsupported");
    return checked_add(checked_sub(d, g), 1);
}

bool lex_less(const LineBundleClass& a, const LineBundleClass& b) {
    if (a.l_exp() != b.l_exp()) return a.l_exp() < b.l_exp();
    return a.xi_exp() < b.xi_exp();
}

std::string to_string(const LineBundleClass& b) {
    if (b.l_exp() == 0 && b.xi_exp() == 0) return "O";
    std::string out;
    if (b.l_exp() != 0) {
        out += "L";
        if (b.l_exp() != 1) out += "^" + std::to_string(b.l_exp());
    }
    if (b.xi_exp() != 0) {
        if (!out.empty()) out += " ";
        out += "xi";
        if (b.xi_exp() != 1) out += "^" + std::to_string(b.xi_exp());
    }
    return out;
}

} // namespace higgsteich
