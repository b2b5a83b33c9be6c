#include <doctest.h>

#include <cmath>

#include "bicmlab/asymptotics.hpp"
#include "bicmlab/shaping.hpp"

using namespace bicm;

namespace {

const QuadratureSpec kQ{};
const Labeling kBrgc = generate(LabelingKind::BRGC, 3);

}  // namespace

TEST_CASE("shaped capacity with uniform bits equals the BICM capacity") {
    const std::vector<double> half(3, 0.5);
    for (double snr : {0.1, 1.0, 10.0})
        CHECK(shaped_bicm_capacity(pam(8), kBrgc, half, snr, FadingModel::awgn(), kQ) ==
              bicm_capacity(Constellation(pam(8), kBrgc), snr, FadingModel::awgn(), kQ));
}

TEST_CASE("mirror symmetry of the first BRGC bit") {
    for (double snr : {0.2, 2.0, 20.0}) {
        for (double a : {0.1, 0.35, 0.8}) {
            const std::vector<double> p = {a, 0.3, 0.7};
            const std::vector<double> q = {1.0 - a, 0.3, 0.7};
            CHECK(std::abs(shaped_bicm_capacity(pam(8), kBrgc, p, snr, FadingModel::awgn(), kQ) -
                           shaped_bicm_capacity(pam(8), kBrgc, q, snr, FadingModel::awgn(), kQ)) < 1e-9);
        }
    }
}

TEST_CASE("collapsed distributions") {
    // Every point except one has zero probability: no information.
    const std::vector<double> point = {1.0, 1.0, 0.0};
    CHECK(shaped_bicm_capacity(pam(8), kBrgc, point, 5.0, FadingModel::awgn(), kQ) == doctest::Approx(0.0).epsilon(1e-12));
    // Two antipodal points left: BPSK.
    const std::vector<double> edge = {0.5, 0.0, 0.0};
    const Constellation bpsk(pam(2), trivial_labeling());
    CHECK(shaped_bicm_capacity(pam(8), kBrgc, edge, 1.0, FadingModel::awgn(), kQ) ==
          doctest::Approx(bicm_capacity(bpsk, 1.0, FadingModel::awgn(), kQ)).epsilon(1e-10));
}

TEST_CASE("optimized shaping never loses to uniform bits") {
    ShapingOptions o;
    o.grid_step = 0.05;
    o.coarse_step = 0.25;
    for (double db : {-5.0, 0.0, 5.0, 10.0}) {
        const auto r = optimize_bit_pmfs(pam(8), kBrgc, from_db(db), FadingModel::awgn(), kQ, o);
        CHECK(r.best_rate >= r.baseline_rate - 1e-12);
        REQUIRE(r.best_p0.size() == 3);
        const double check = shaped_bicm_capacity(pam(8), kBrgc, r.best_p0, r.snr, FadingModel::awgn(), kQ);
        CHECK(check == r.best_rate);
    }
}

TEST_CASE("two-stage search matches the exhaustive grid on a coarse lattice") {
    ShapingOptions o;
    o.grid_step = 0.05;
    o.coarse_step = 0.1;
    for (double db : {-10.0, -3.0, 3.0, 9.0}) {
        const auto two = optimize_bit_pmfs(pam(8), kBrgc, from_db(db), FadingModel::awgn(), kQ, o);
        const auto full = full_grid_search(pam(8), kBrgc, from_db(db), FadingModel::awgn(), kQ, o);
        INFO("snr_db = " << db);
        CHECK(two.best_rate == doctest::Approx(full.best_rate).epsilon(1e-12));
        CHECK(two.best_p0 == full.best_p0);
    }
}

TEST_CASE("parallel and serial shaping agree") {
    ShapingOptions o;
    o.grid_step = 0.05;
    o.coarse_step = 0.25;
    const auto a = optimize_bit_pmfs(pam(8), kBrgc, 1.5, FadingModel::awgn(), kQ, o);
    const auto b = optimize_bit_pmfs_serial(pam(8), kBrgc, 1.5, FadingModel::awgn(), kQ, o);
    CHECK(a.best_p0 == b.best_p0);
    CHECK(a.best_rate == b.best_rate);
    CHECK(a.baseline_rate == b.baseline_rate);
}

TEST_CASE("low-SNR shaping reaches the first-order optimum") {
    // Mass moved to the outer points approaches the slope log2(e).
    const auto r = optimize_bit_pmfs(pam(8), kBrgc, 0.01, FadingModel::awgn(), kQ);
    CHECK(r.best_rate / 0.01 == doctest::Approx(kLog2e).epsilon(0.02));
    CHECK(r.best_rate > r.baseline_rate);
}

TEST_CASE("shaping option validation") {
    ShapingOptions bad;
    bad.grid_step = 0.03;
    CHECK_THROWS_AS(optimize_bit_pmfs(pam(8), kBrgc, 1.0, FadingModel::awgn(), kQ, bad), std::invalid_argument);
    bad.grid_step = 0.0;
    CHECK_THROWS_AS(full_grid_search(pam(8), kBrgc, 1.0, FadingModel::awgn(), kQ, bad), std::invalid_argument);
    CHECK_THROWS_AS(optimize_bit_pmfs(pam(32), generate(LabelingKind::BRGC, 5), 1.0, FadingModel::awgn(), kQ),
                    std::invalid_argument);
    const std::vector<double> wrong = {0.5, 1.5, 0.5};
    CHECK_THROWS_AS(shaped_bicm_capacity(pam(8), kBrgc, wrong, 1.0, FadingModel::awgn(), kQ), std::invalid_argument);
}
