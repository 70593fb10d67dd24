#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "invdpp/core.hpp"

namespace invdpp {

namespace detail {

// Philox4x64-10 block function (counter-based, splittable).  Matches the
// reference sequence of numpy.random.Philox, which is used as the
// known-answer oracle in the test suite.
struct Philox4x64 {
    static constexpr std::uint64_t M0 = 0xD2E7470EE14C6C93ULL;
    static constexpr std::uint64_t M1 = 0xCA5A826395121157ULL;
    static constexpr std::uint64_t W0 = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t W1 = 0xBB67AE8584CAA73BULL;

    static void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
        unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
        hi = static_cast<std::uint64_t>(p >> 64);
        lo = static_cast<std::uint64_t>(p);
    }

    static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> ctr,
                                              std::array<std::uint64_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            std::uint64_t hi0, lo0, hi1, lo1;
            mulhilo(M0, ctr[0], hi0, lo0);
            mulhilo(M1, ctr[2], hi1, lo1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += W0;
            key[1] += W1;
        }
        return ctr;
    }
};

} // namespace detail

// A reproducible random stream: (master_seed, stream_id) key a Philox4x64-10
// generator, the 128-bit block counter advances as values are consumed.
// Distinct stream ids give independent sequences; the same pair replays the
// same sequence on any platform.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
        : key_{master_seed, stream_id}, seed_(master_seed), id_(stream_id) {}

    std::uint64_t master_seed() const { return seed_; }
    std::uint64_t stream_id() const { return id_; }

    std::uint64_t next_u64() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so
    // log(u) is always finite.
    double next_u01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    // Standard real Gaussian, N(0, 1), by Box-Muller.
    double next_normal() {
        double u1 = next_u01(), u2 = next_u01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    }

    // Standard complex Gaussian with E|g|^2 = 1 (components N(0, 1/2)).
    cplx next_complex_gaussian() {
        double u1 = next_u01(), u2 = next_u01();
        return std::polar(std::sqrt(-std::log(u1)), 2.0 * pi * u2);
    }

    // Gamma(shape, 1), shape > 0.  Marsaglia-Tsang for shape >= 1; the
    // boost u^{1/shape} transform below 1.
    double next_gamma(double shape) {
        if (!(shape > 0.0)) throw domain_error("next_gamma: shape must be positive");
        if (shape < 1.0) {
            double u = next_u01();
            return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = next_normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = next_u01();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    double next_beta(double a, double b) {
        double x = next_gamma(a);
        double y = next_gamma(b);
        return x / (x + y);
    }

private:
    void refill() {
        buf_ = detail::Philox4x64::block(ctr_, key_);
        pos_ = 0;
        if (++ctr_[0] == 0) ++ctr_[1];
    }

    std::array<std::uint64_t, 2> key_;
    std::array<std::uint64_t, 4> ctr_{0, 0, 0, 0};
    std::array<std::uint64_t, 4> buf_{};
    int pos_ = 4;
    std::uint64_t seed_, id_;
};

} // namespace invdpp
