#include "recplant/dac/affordance.hpp"

#include <cmath>

namespace recplant::dac {

std::array<double, AffordanceField::kBasis> AffordanceField::features(const Contact& c) {
    double ct = std::cos(c.angle), st = std::sin(c.angle);
    return {1.0, ct, st, c.magnitude * ct, c.magnitude * st};
}

void AffordanceField::update(const Contact& c, const PoseDelta& observed) {
    auto phi = features(c);
    PoseDelta pred = predict(c);
    std::array<double, 3> err{observed.dx - pred.dx, observed.dy - pred.dy,
                              observed.dphi - pred.dphi};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < kBasis; ++k) a_[r][k] += eta_ * err[r] * phi[k];
}

PoseDelta AffordanceField::predict(const Contact& c) const {
    auto phi = features(c);
    std::array<double, 3> out{0, 0, 0};
    for (int r = 0; r < 3; ++r)
        for (int k = 0; k < kBasis; ++k) out[r] += a_[r][k] * phi[k];
    return {out[0], out[1], out[2]};
}

} // namespace recplant::dac
