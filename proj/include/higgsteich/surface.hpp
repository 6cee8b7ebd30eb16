#pragma once

#include <stdexcept>

namespace higgsteich {

/// Topological data of a punctured surface: genus g and puncture count n.
class SurfaceData {
public:
    SurfaceData(long long genus, long long punctures)
        : genus_(genus), punctures_(punctures) {
        if (genus < 0 || punctures < 0)
            throw std::invalid_argument("surface requires genus >= 0 and punctures >= 0");
    }

    long long genus() const { return genus_; }
    long long punctures() const { return punctures_; }

    /// 2g - 2 + n > 0, i.e. the surface carries a complete hyperbolic metric.
    bool hyperbolic() const { return 2 * genus_ - 2 + punctures_ > 0; }

    friend bool operator==(const SurfaceData&, const SurfaceData&) = default;

private:
    long long genus_;
    long long punctures_;
};

} // namespace higgsteich
