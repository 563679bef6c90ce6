#pragma once

#include <optional>
#include <vector>

#include "recplant/dac/prototype.hpp"

namespace recplant::dac {

struct AdaptiveResponse {
    int response = 0;      // row index (embodiment response class)
    double confidence = 0; // w_r . cs
};

// CS -> response-class associator trained with an Oja-bounded rule. Rows stay
// near unit norm for eta * |cs|^2 < 1; unused rows passively decay.
class AssociationMatrix {
public:
    AssociationMatrix() = default;
    AssociationMatrix(int responses, int dim, double eta = 0.05, double rho = 0.01,
                      double theta_a = 0.5)
        : rows_(responses, std::vector<double>(dim, 0.0)), dim_(dim), eta_(eta), rho_(rho),
          theta_a_(theta_a) {}

    int responses() const { return static_cast<int>(rows_.size()); }
    int dim() const { return dim_; }
    double theta_a() const { return theta_a_; }
    double eta() const { return eta_; }

    const std::vector<double>& row(int r) const { return rows_[r]; }
    std::vector<double>& row(int r) { return rows_[r]; }
    double row_norm(int r) const;

    // Oja update of row r with US strength u in [0,1]; y' = max(w_r.cs, u)
    // couples the US into the correlate. Other rows decay by (1 - eta*rho).
    void update(const SensoryPrototype& cs, int r, double u);

    // argmax_r w_r.cs, ties to the lowest row index; returned iff the dot
    // product reaches theta_a.
    std::optional<AdaptiveResponse> respond(const SensoryPrototype& cs) const;

private:
    std::vector<std::vector<double>> rows_;
    int dim_ = 0;
    double eta_ = 0.05;
    double rho_ = 0.01;
    double theta_a_ = 0.5;
};

} // namespace recplant::dac
