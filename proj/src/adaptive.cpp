#include "recplant/dac/adaptive.hpp"

#include <cmath>
#include <stdexcept>

namespace recplant::dac {

double AssociationMatrix::row_norm(int r) const {
    double s = 0;
    for (double x : rows_[r]) s += x * x;
    return std::sqrt(s);
}

void AssociationMatrix::update(const SensoryPrototype& cs, int r, double u) {
    if (static_cast<int>(cs.dim()) != dim_)
        throw std::invalid_argument("association update: cs dimension mismatch");
    if (cs.is_zero()) return;
    double y = 0;
    auto& w = rows_[r];
    for (int i = 0; i < dim_; ++i) y += w[i] * cs.v[i];
    double yp = std::max(y, u);
    double k = eta_ * u * yp;
    for (int i = 0; i < dim_; ++i) w[i] += k * (cs.v[i] - yp * w[i]);
    double decay = 1.0 - eta_ * rho_;
    for (int j = 0; j < responses(); ++j) {
        if (j == r) continue;
        for (double& x : rows_[j]) x *= decay;
    }
}

std::optional<AdaptiveResponse> AssociationMatrix::respond(const SensoryPrototype& cs) const {
    if (static_cast<int>(cs.dim()) != dim_)
        throw std::invalid_argument("association respond: cs dimension mismatch");
    int best = -1;
    double best_dot = 0;
    for (int r = 0; r < responses(); ++r) {
        double d = 0;
        for (int i = 0; i < dim_; ++i) d += rows_[r][i] * cs.v[i];
        if (best < 0 || d > best_dot) { // strict: ties keep the lowest index
            best = r;
            best_dot = d;
        }
    }
    if (best < 0 || best_dot < theta_a_) return std::nullopt;
    return AdaptiveResponse{best, best_dot};
}

} // namespace recplant::dac
