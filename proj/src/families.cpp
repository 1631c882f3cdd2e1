#include "aloenet/families.hpp"

#include <cmath>

#include "aloenet/num.hpp"

namespace aloenet {

std::string to_string(FamilyKind k) {
    switch (k) {
        case FamilyKind::gaussian: return "gaussian";
        case FamilyKind::logistic: return "logistic";
        case FamilyKind::poisson: return "poisson";
    }
    return "gaussian";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "gaussian") return FamilyKind::gaussian;
    if (s == "logistic") return FamilyKind::logistic;
    if (s == "poisson") return FamilyKind::poisson;
    throw invalid_input("unknown family kind: " + s);
}

void GlmFamily::validate() const {
    if (kind == FamilyKind::gaussian && !(noise_sd > 0 && std::isfinite(noise_sd)))
        throw invalid_input("gaussian family requires noise_sd > 0");
}

void validate_response(const GlmFamily& family, double y) {
    if (!std::isfinite(y)) throw invalid_input("non-finite response");
    switch (family.kind) {
        case FamilyKind::gaussian:
            return;
        case FamilyKind::logistic:
            if (y != 0.0 && y != 1.0)
                throw invalid_input("logistic response must be 0 or 1");
            return;
        case FamilyKind::poisson:
            if (y < 0 || std::abs(y - std::round(y)) > 1e-9)
                throw invalid_input("poisson response must be a non-negative integer");
            return;
    }
}

namespace {

// sigmoid(z)/softplus(z); both factors underflow together as z -> -inf so the
// ratio needs its own asymptotic branch.
double sig_over_softplus(double z) {
    if (z < -30.0) return 1.0 - 0.5 * std::exp(z);
    return sigmoid(z) / softplus(z);
}

LossDerivs poisson_derivs(double y, double z) {
    const double s = sigmoid(z);
    const double L = softplus(z);
    const double R = sig_over_softplus(z);
    LossDerivs out;
    if (z < -30.0) {
        // L ~ e^z: log(L) = z + log1p(-e^z/2 + ...) stays finite where log(softplus) underflows
        const double log_L = z + std::log1p(-0.5 * std::exp(z));
        out.loss = std::lgamma(y + 1.0) + L - y * log_L;
        out.d1 = s - y * R;
        out.d2 = std::exp(z) * (1.0 + 0.5 * y); // leading order; >= 0
        return out;
    }
    out.loss = std::lgamma(y + 1.0) + L - y * std::log(L);
    out.d1 = s - y * R;
    // d2 = s(1-s) + y R (R - (1-s) L / ... ) rearranged to avoid cancellation:
    // d2 = s(1-s)(1 - y/L) + y R^2
    out.d2 = s * (1.0 - s) * (1.0 - y / L) + y * R * R;
    if (out.d2 < 0) out.d2 = 0; // roundoff guard; the exact value is >= 0
    return out;
}

} // namespace

LossDerivs loss_derivatives(const GlmFamily& family, double y, double z) {
    if (!std::isfinite(z)) throw invalid_input("non-finite linear predictor");
    validate_response(family, y);
    switch (family.kind) {
        case FamilyKind::gaussian: {
            const double inv_v = 1.0 / (family.noise_sd * family.noise_sd);
            const double r = y - z;
            return {0.5 * r * r * inv_v, -r * inv_v, inv_v};
        }
        case FamilyKind::logistic: {
            const double s = sigmoid(z);
            return {softplus(z) - y * z, s - y, s * (1.0 - s)};
        }
        case FamilyKind::poisson:
            return poisson_derivs(y, z);
    }
    throw invalid_input("unknown family");
}

double sample_response(const GlmFamily& family, double z, std::mt19937_64& rng) {
    switch (family.kind) {
        case FamilyKind::gaussian: {
            std::normal_distribution<double> noise(0.0, family.noise_sd);
            return z + noise(rng);
        }
        case FamilyKind::logistic: {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            return u(rng) < sigmoid(z) ? 1.0 : 0.0;
        }
        case FamilyKind::poisson: {
            std::poisson_distribution<long> pois(softplus(z));
            return static_cast<double>(pois(rng));
        }
    }
    throw invalid_input("unknown family");
}

std::string to_string(PhiTag phi) {
    return phi == PhiTag::squared_error ? "squared_error" : "deviance";
}

PhiTag phi_tag_from_string(const std::string& s) {
    if (s == "squared_error" || s == "squared") return PhiTag::squared_error;
    if (s == "deviance" || s == "loss") return PhiTag::deviance;
    throw invalid_input("unknown phi tag: " + s);
}

PhiTag default_phi(const GlmFamily& family) {
    return family.kind == FamilyKind::gaussian ? PhiTag::squared_error : PhiTag::deviance;
}

double phi_value(PhiTag phi, const GlmFamily& family, double y, double z) {
    if (phi == PhiTag::squared_error) {
        const double r = y - z;
        return r * r;
    }
    return loss_derivatives(family, y, z).loss;
}

} // namespace aloenet
