#pragma once

#include <array>

namespace recplant::dac {

struct Contact {
    double angle = 0.0;     // contact angle in the object frame
    double magnitude = 0.0; // push magnitude
};

struct PoseDelta {
    double dx = 0.0;
    double dy = 0.0;
    double dphi = 0.0;
};

// Object-centered linear field predicting the pose change caused by an action
// at a given contact; delta-rule trained, generalizes to unseen angles.
class AffordanceField {
public:
    static constexpr int kBasis = 5;

    explicit AffordanceField(double eta = 0.05) : eta_(eta) {
        for (auto& row : a_) row.fill(0.0);
    }

    static std::array<double, kBasis> features(const Contact& c);

    void update(const Contact& c, const PoseDelta& observed);
    PoseDelta predict(const Contact& c) const;

    double eta() const { return eta_; }
    const std::array<std::array<double, kBasis>, 3>& weights() const { return a_; }
    std::array<std::array<double, kBasis>, 3>& weights() { return a_; }

private:
    double eta_;
    std::array<std::array<double, kBasis>, 3> a_{};
};

} // namespace recplant::dac
