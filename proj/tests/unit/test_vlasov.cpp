#include <gtest/gtest.h>

#include "psram/error.hpp"
#include "psram/random.hpp"
#include "psram/roofline.hpp"
#include "psram/workloads/vlasov.hpp"
#include "test_util.hpp"

using namespace psram;
using psram::test::max_rel_err;

namespace {

std::vector<double> circular(const std::vector<double>& h, const std::vector<double>& c) {
    const std::size_t n = h.size();
    std::vector<double> y(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) y[i] += h[j] * c[(i + n - j) % n];
    return y;
}

SpectralConfig one_mode(Complex k, Complex z, Complex f) {
    SpectralConfig cfg;
    cfg.n_modes = 1;
    cfg.k = {k};
    cfg.z = {z};
    cfg.f = {f};
    return cfg;
}

}  // namespace

TEST(Vlasov, OracleExamples) {
    EXPECT_EQ(vlasov_oracle({2, 1}, {3, -1}, {1, 1}), Complex(8, 2));
    EXPECT_EQ(vlasov_oracle({2, 1}, {0, 0}, {1, 1}), Complex(1, 1));
    EXPECT_EQ(vlasov_oracle({0, 1}, {0, 1}, {0, 0}), Complex(-1, 0));
}

TEST(Vlasov, SimulatorExample) {
    const auto run = vlasov_stream_run(one_mode({2, 1}, {3, -1}, {1, 1}), {});
    EXPECT_EQ(run.f[0], Complex(8, 2));
}

TEST(Vlasov, RandomExactMatch) {
    const auto cfg = random_spectral(64, 3);
    for (std::size_t p : {1u, 5u, 64u}) {
        const auto run = vlasov_stream_run(cfg, {p, 8, {}});
        for (std::size_t m = 0; m < 64; ++m) ASSERT_EQ(run.f[m], vlasov_oracle(cfg.k[m], cfg.z[m], cfg.f[m])) << m;
    }
}

TEST(Vlasov, ProfileAndEnergy) {
    const auto cfg = random_spectral(64, 1);
    const auto run = vlasov_stream_run(cfg, {});
    const auto wl = vlasov_profile(64, ArchConfig{});
    EXPECT_EQ(2.0 * static_cast<double>(run.stats.macs_executed), wl.n_total);
    EXPECT_EQ(static_cast<double>(run.stats.io_bits), wl.s);
    EXPECT_EQ(run.stats.switching_events, 6u * 64u * 8u);
    const auto one = vlasov_profile(1, ArchConfig{});
    EXPECT_EQ(one.n_total, 12.0);
    EXPECT_EQ(one.s, 48.0);
    EXPECT_EQ(vlasov_profile(0, ArchConfig{}).n_total, 0.0);
    EXPECT_EQ(arithmetic_intensity(wl), 2.0);
}

TEST(Convolution, Examples) {
    const auto r = spectral_convolution({1, 1, 0, 0}, {1, 1, 0, 0}, {});
    const std::vector<double> expect{1, 2, 1, 0};
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(r.values[i], expect[i], 1e-12);
    const std::vector<double> c{0.5, -1.25, 3, 7};
    const auto id = spectral_convolution({1, 0, 0, 0}, c, {});
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(id.values[i], c[i], 1e-12);
}

TEST(Convolution, RandomMatchesDirect) {
    Rng rng(11);
    std::vector<double> h(64), c(64);
    for (auto& v : h) v = rng.uniform(-1, 1);
    for (auto& v : c) v = rng.uniform(-1, 1);
    const auto r = spectral_convolution(h, c, {4, 8, {}});
    EXPECT_LE(max_rel_err(r.values, circular(h, c)), 1e-9);
    EXPECT_LT(r.max_imag_residue, 1e-9);
}

TEST(Convolution, LengthMismatch) {
    EXPECT_THROW(spectral_convolution({1, 2}, {1}, {}), ValidationError);
}
