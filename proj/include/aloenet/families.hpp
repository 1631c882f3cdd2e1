#pragma once
#include <cstdint>
#include <random>
#include <string>

#include "aloenet/errors.hpp"

namespace aloenet {

enum class FamilyKind { gaussian, logistic, poisson };

std::string to_string(FamilyKind k);
FamilyKind family_kind_from_string(const std::string& s);

struct GlmFamily {
    FamilyKind kind = FamilyKind::gaussian;
    double noise_sd = 1.0; // sigma; gaussian only, ignored otherwise

    void validate() const;
};

struct LossDerivs {
    double loss;
    double d1;
    double d2;
};

// Negative log-likelihood of y given linear predictor z and its first two
// z-derivatives. Gaussian: (y-z)^2/(2 sigma^2). Logistic: softplus(z) - y z.
// Poisson uses the softplus mean link, lambda(z) = log(1+e^z).
LossDerivs loss_derivatives(const GlmFamily& family, double y, double z);

// Throws invalid_input when y is outside the family's response domain.
void validate_response(const GlmFamily& family, double y);

// One draw of y | z under the family's conditional law.
double sample_response(const GlmFamily& family, double z, std::mt19937_64& rng);

// Evaluation losses for risk reports.
enum class PhiTag { squared_error, deviance };

std::string to_string(PhiTag phi);
PhiTag phi_tag_from_string(const std::string& s);
PhiTag default_phi(const GlmFamily& family);

double phi_value(PhiTag phi, const GlmFamily& family, double y, double z);

} // namespace aloenet
