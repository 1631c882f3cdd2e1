#pragma once
#include <cmath>

#include "aloenet/errors.hpp"

namespace aloenet {

// Elastic-net penalty lambda(1-eta)||b||_1 + lambda eta ||b||_2^2.
// eta = 1 is the pure-ridge edge case (zero l1 weight).
class Penalty {
public:
    Penalty(double lambda, double eta) : lambda_(lambda), eta_(eta) {
        if (!(lambda > 0 && std::isfinite(lambda)))
            throw invalid_input("penalty requires lambda > 0");
        if (!(eta > 0 && eta <= 1))
            throw invalid_input("penalty requires eta in (0, 1]");
    }

    double lambda() const { return lambda_; }
    double eta() const { return eta_; }
    double l1_weight() const { return lambda_ * (1.0 - eta_); }
    double ridge_weight() const { return lambda_ * eta_; }

private:
    double lambda_;
    double eta_;
};

} // namespace aloenet
