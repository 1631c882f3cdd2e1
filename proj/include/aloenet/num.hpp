#pragma once
#include <cmath>
#include <cstdint>
#include <vector>

// Scalar kernels shared across the library. Everything here is branch-stable
// for |z| up to the double exponent range.

namespace aloenet {

template <typename Scalar>
inline Scalar soft(Scalar x, Scalar r) {
    if (x > r) return x - r;
    if (x < -r) return x + r;
    return Scalar(0);
}

template <typename Scalar>
inline Scalar sigmoid(Scalar z) {
    if (z >= 0) return Scalar(1) / (Scalar(1) + std::exp(-z));
    const Scalar e = std::exp(z);
    return e / (Scalar(1) + e);
}

// log(1 + e^z) without overflow.
template <typename Scalar>
inline Scalar softplus(Scalar z) {
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

template <typename Scalar>
inline Scalar norm_pdf(Scalar x) {
    static const Scalar inv_sqrt_2pi = Scalar(0.398942280401432677939946059934L);
    return inv_sqrt_2pi * std::exp(-Scalar(0.5) * x * x);
}

template <typename Scalar>
inline Scalar norm_cdf(Scalar x) {
    static const Scalar inv_sqrt_2 = Scalar(0.707106781186547524400844362105L);
    return Scalar(0.5) * std::erfc(-x * inv_sqrt_2);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream seed for a (base, p, replicate) cell; worker scheduling never touches it.
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(base ^ splitmix64(a ^ splitmix64(b)));
}

// Pairwise summation; reduction error stays near machine epsilon regardless of order.
inline double pairwise_sum(const double* x, std::size_t n) {
    if (n <= 8) {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

inline double pairwise_sum(const std::vector<double>& x) {
    return pairwise_sum(x.data(), x.size());
}

} // namespace aloenet
