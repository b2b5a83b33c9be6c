#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bicmlab/asymptotics.hpp"
#include "bicmlab/capacity.hpp"
#include "oracles.hpp"

using namespace bicm;

namespace {

const QuadratureSpec kQ{};

std::vector<double> column(const InputAlphabet& a) {
    std::vector<double> v;
    for (std::size_t i = 0; i < a.size(); ++i) v.push_back(a.point(i)[0]);
    return v;
}

std::vector<std::vector<double>> rows(const InputAlphabet& a) {
    std::vector<std::vector<double>> v;
    for (std::size_t i = 0; i < a.size(); ++i) v.emplace_back(a.point(i).begin(), a.point(i).end());
    return v;
}

std::vector<std::vector<int>> labels(const Labeling& l) {
    std::vector<std::vector<int>> v(l.size(), std::vector<int>(l.order()));
    for (std::size_t i = 0; i < l.size(); ++i)
        for (int k = 0; k < l.order(); ++k) v[i][k] = l.bit(i, k);
    return v;
}

double energy(const std::vector<double>& x, const std::vector<double>& p) {
    double e = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) e += p[i] * x[i] * x[i];
    return e;
}

}  // namespace

TEST_CASE("AWGN capacity") {
    CHECK(awgn_capacity(0.0, 1) == 0.0);
    CHECK(awgn_capacity(1.5, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(awgn_capacity(3.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(awgn_capacity(-1.0, 1), std::invalid_argument);
}

TEST_CASE("zero SNR and saturation") {
    for (const char* name : {"pam8", "psk8"}) {
        const InputAlphabet a = std::string(name) == "pam8" ? pam(8) : psk(8);
        const Constellation c(a, generate(LabelingKind::BRGC, 3));
        CHECK(std::abs(cm_capacity(c, 0.0, FadingModel::awgn(), kQ)) < 1e-6);
        CHECK(std::abs(bicm_capacity(c, 0.0, FadingModel::awgn(), kQ)) < 1e-6);
    }
    const Constellation bpsk(pam(2), trivial_labeling());
    CHECK(bicm_capacity(bpsk, 1e3, FadingModel::awgn(), kQ) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(bitlevel_ami(bpsk, 0, 1e3, FadingModel::awgn(), kQ) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(cm_capacity(bpsk, -1.0, FadingModel::awgn(), kQ), std::invalid_argument);
}

TEST_CASE("CM capacity of 8-PAM against a Monte-Carlo oracle") {
    const Constellation c(pam(8), generate(LabelingKind::BRGC, 3));
    const auto x = rows(pam(8));
    const std::vector<double> p(8, 0.125);
    for (double db : {-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0}) {
        const double snr = std::pow(10.0, db / 10.0);
        const double n0 = c.energy() / snr;
        const auto mc = oracle::monte_carlo_cm(x, p, n0, 1000000, 1234, true);
        const double gh = cm_capacity(c, snr, FadingModel::awgn(), kQ);
        INFO("snr_db = " << db << " gh = " << gh << " mc = " << mc.mean << " se = " << mc.std_error);
        CHECK(std::abs(gh - mc.mean) < 1e-3);
    }
}

TEST_CASE("CM and per-bit AMI against a trapezoid oracle") {
    struct Case {
        InputAlphabet alphabet;
        Labeling labeling;
        std::vector<double> p0;
    };
    const double hier[3] = {1, 2, 6};
    const Case cases[] = {
        {pam(8), generate(LabelingKind::BRGC, 3), {0.5, 0.5, 0.5}},
        {pam(8), generate(LabelingKind::NBC, 3), {0.6, 0.5, 0.5}},
        {pam(8), generate(LabelingKind::BRGC, 3), {0.3, 0.8, 0.1}},
        {pam(8), generate(LabelingKind::BRGC, 3), {0.5, 1.0, 0.0}},
        {hierarchical(hier), generate(LabelingKind::NBC, 3), {0.5, 0.5, 0.5}},
        {pam(4), generate(LabelingKind::BRGC, 2), {0.5, 0.5}},
    };
    for (const auto& cs : cases) {
        const Constellation c(cs.alphabet, cs.labeling, BitDistribution{cs.p0});
        const auto x = column(cs.alphabet);
        const auto p = oracle::symbol_probs(labels(cs.labeling), cs.p0);
        for (double snr : {0.05, 0.5, 2.0, 10.0, 50.0}) {
            const double n0 = energy(x, p) / snr;
            const auto ref = oracle::trapezoid_1d(x, p, labels(cs.labeling), n0);
            // The default order is accurate to a few 1e-5 at high SNR and converges with more nodes.
            for (auto [order, tol] : {std::pair{40, 5e-5}, std::pair{200, 1e-8}}) {
                QuadratureSpec q;
                q.gh_order = order;
                INFO("snr = " << snr << " order = " << order);
                CHECK(std::abs(cm_capacity(c, snr, FadingModel::awgn(), q) - ref.cm) < tol);
                const auto bits = bitlevel_amis(c, snr, FadingModel::awgn(), q);
                for (std::size_t k = 0; k < bits.size(); ++k) CHECK(std::abs(bits[k] - ref.bits[k]) < tol);
            }
        }
    }
}

TEST_CASE("two-dimensional CM capacity against Monte Carlo") {
    const Constellation c(psk(8), generate(LabelingKind::BRGC, 3));
    const std::vector<double> p(8, 0.125);
    for (double snr : {0.3, 3.0, 30.0}) {
        const auto mc = oracle::monte_carlo_cm(rows(psk(8)), p, 1.0 / snr, 200000, 77);
        CHECK(std::abs(cm_capacity(c, snr, FadingModel::awgn(), kQ) - mc.mean) < 4.0 * mc.std_error + 1e-4);
    }
}

TEST_CASE("capacity ordering and labeling invariance") {
    const std::vector<Constellation> cs = {
        Constellation(pam(4), generate(LabelingKind::BRGC, 2)), Constellation(pam(8), generate(LabelingKind::NBC, 3)),
        Constellation(pam(8), generate(LabelingKind::BSGC, 3)), Constellation(psk(8), generate(LabelingKind::FBC, 3)),
        Constellation(qam(4, 4), generate(LabelingKind::BRGC, 4)),
    };
    for (const auto& c : cs) {
        double prev_cm = 0.0;
        double prev_bi = 0.0;
        for (double db = -20.0; db <= 25.0; db += 2.5) {
            const double snr = std::pow(10.0, db / 10.0);
            const double aw = awgn_capacity(snr, static_cast<int>(c.dimension()));
            const double cm = cm_capacity(c, snr, FadingModel::awgn(), kQ);
            const double bi = bicm_capacity(c, snr, FadingModel::awgn(), kQ);
            CHECK(bi <= cm + 1e-9);
            CHECK(cm <= aw + 1e-9);
            // Strictly increasing until the curve saturates at m bits.
            const double m = c.order();
            CHECK((cm > prev_cm || cm > m - 1e-9));
            CHECK((bi > prev_bi || bi > m - 1e-9));
            CHECK(cm >= prev_cm);
            CHECK(bi >= prev_bi);
            prev_cm = cm;
            prev_bi = bi;
        }
    }
    for (double snr : {0.1, 1.0, 10.0}) {
        const double ref = cm_capacity(cs[1], snr, FadingModel::awgn(), kQ);
        for (auto kind : {LabelingKind::BRGC, LabelingKind::FBC, LabelingKind::BSGC})
            CHECK(cm_capacity(Constellation(pam(8), generate(kind, 3)), snr, FadingModel::awgn(), kQ) ==
                  doctest::Approx(ref).epsilon(1e-12));
    }
}

TEST_CASE("bit-level AMIs sum to the BICM capacity") {
    const Constellation c(pam(8), generate(LabelingKind::BRGC, 3));
    double sum = 0.0;
    for (int k = 0; k < 3; ++k) sum += bitlevel_ami(c, k, 10.0, FadingModel::awgn(), kQ);
    CHECK(std::abs(sum - bicm_capacity(c, 10.0, FadingModel::awgn(), kQ)) < 1e-9);
    CHECK_THROWS_AS(bitlevel_ami(c, 3, 1.0, FadingModel::awgn(), kQ), std::invalid_argument);
}

TEST_CASE("difference form of the BICM capacity") {
    struct Case {
        Constellation c;
        double snr;
    };
    const Case cases[] = {
        {Constellation(pam(4), generate(LabelingKind::BRGC, 2)), 1.0},
        {Constellation(psk(8), generate(LabelingKind::FBC, 3)), 2.0},
        {Constellation(pam(8), generate(LabelingKind::NBC, 3), BitDistribution{{0.6, 0.5, 0.5}}), 1.0},
        {Constellation(pam(8), generate(LabelingKind::BRGC, 3), BitDistribution{{0.5, 1.0, 0.2}}), 3.0},
        {Constellation(qam(4, 4), generate(LabelingKind::BRGC, 4)), 5.0},
    };
    for (const auto& cs : cases) {
        const double direct = bicm_capacity(cs.c, cs.snr, FadingModel::awgn(), kQ);
        const double diff = bicm_capacity_diff(cs.c, cs.snr, FadingModel::awgn(), kQ);
        CHECK(std::abs(direct - diff) <= 1e-8);
    }
    const Constellation shaped(pam(8), generate(LabelingKind::BRGC, 3), BitDistribution{{0.5, 1.0, 0.2}});
    CHECK(conditional_ami(shaped, 1, 1, 3.0, FadingModel::awgn(), kQ) == 0.0);
}

TEST_CASE("low-SNR slopes") {
    const Constellation nbc(pam(8), generate(LabelingKind::NBC, 3));
    const double slope = bicm_capacity(nbc, 0.01, FadingModel::awgn(), kQ) / 0.01;
    CHECK(std::abs(slope / kLog2e - 1.0) < 0.02);

    const Constellation bsgc(pam(8), generate(LabelingKind::BSGC, 3));
    CHECK(bicm_capacity(bsgc, 1e-3, FadingModel::awgn(), kQ) / 1e-3 < 0.01 * kLog2e);
    // The bit whose conditional means vanish carries almost nothing at low SNR.
    const auto bits = bitlevel_amis(bsgc, 1e-3, FadingModel::awgn(), kQ);
    for (double b : bits) CHECK(b / 1e-3 < 0.01 * kLog2e);
}

TEST_CASE("FBC beats BRGC on 8-PAM near Rc = 0.8") {
    const Constellation brgc(pam(8), generate(LabelingKind::BRGC, 3));
    const Constellation fbc(pam(8), generate(LabelingKind::FBC, 3));
    const RateFunction rf = RateFunction::sample(CapacityMode::BICM, brgc, FadingModel::awgn(), kQ);
    const double snr = rf.inverse(0.8);
    CHECK(bicm_capacity(fbc, snr, FadingModel::awgn(), kQ) > bicm_capacity(brgc, snr, FadingModel::awgn(), kQ));
}

TEST_CASE("L-values") {
    const Constellation bpsk(pam(2), trivial_labeling());
    const double h[1] = {1.0};
    for (double y : {-2.5, -0.3, 0.0, 0.7, 4.0}) {
        const double yy[1] = {y};
        for (double n0 : {0.1, 1.0, 5.0}) {
            CHECK(lvalue(yy, h, 0, bpsk, n0, LlrMode::exact) == doctest::Approx(4.0 * y / n0).epsilon(1e-12));
            CHECK(lvalue(yy, h, 0, bpsk, n0, LlrMode::maxlog) == doctest::Approx(4.0 * y / n0).epsilon(1e-12));
        }
    }

    // Brute-force scan for slope changes of the max-log L-value of 4-PAM.
    const Constellation c4(pam(4), generate(LabelingKind::BRGC, 2));
    const double n0 = 0.5;
    const double dy = 1e-3;
    std::vector<double> slopes;
    double prev = 0.0;
    for (int s = 0; s <= 16000; ++s) {
        const double y[1] = {-8.0 + 0.00037 + dy * s};
        const double v = lvalue(y, h, 0, c4, n0, LlrMode::maxlog);
        if (s > 0) slopes.push_back((v - prev) / dy);
        prev = v;
    }
    int breakpoints = 0;
    bool in_kink = false;
    for (std::size_t i = 1; i < slopes.size(); ++i) {
        const bool change = std::abs(slopes[i] - slopes[i - 1]) > 1e-6;
        if (change && !in_kink) ++breakpoints;
        in_kink = change;
    }
    CHECK(breakpoints >= 1);
    CHECK(breakpoints <= 3);

    // Exact and max-log agree for well-separated observations at low noise.
    const double y[1] = {2.9};
    CHECK(lvalue(y, h, 0, c4, 0.01, LlrMode::exact) ==
          doctest::Approx(lvalue(y, h, 0, c4, 0.01, LlrMode::maxlog)).epsilon(1e-6));
    CHECK_THROWS_AS(lvalue(y, h, 0, c4, 0.0, LlrMode::exact), std::invalid_argument);
}

TEST_CASE("parallel and serial curves agree bit for bit") {
    const Constellation c(psk(8), generate(LabelingKind::BRGC, 3));
    std::vector<double> snrs;
    for (int i = 0; i < 12; ++i) snrs.push_back(std::pow(10.0, (i - 4) / 4.0));
    QuadratureSpec q;
    q.mc_samples = 50;
    for (const FadingModel f : {FadingModel::awgn(), FadingModel::rayleigh()}) {
        for (auto mode : {CapacityMode::CM, CapacityMode::BICM}) {
            const auto a = capacity_curve(mode, c, snrs, f, q);
            const auto b = capacity_curve_serial(mode, c, snrs, f, q);
            REQUIRE(a.size() == b.size());
            for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].rate == b[i].rate);
        }
    }
}

TEST_CASE("fading channels") {
    const Constellation c(pam(8), generate(LabelingKind::NBC, 3));
    QuadratureSpec q;
    q.mc_samples = 2000;
    for (double snr : {0.1, 1.0, 10.0}) {
        const auto ray = cm_capacity_estimate(c, snr, FadingModel::rayleigh(), q);
        CHECK(ray.std_error > 0.0);
        CHECK(ray.rate < cm_capacity(c, snr, FadingModel::awgn(), q));
        CHECK(cm_capacity(c, snr, FadingModel::rayleigh(), q) == ray.rate);

        const double direct = bicm_capacity(c, snr, FadingModel::nakagami(2.0), q);
        const double diff = bicm_capacity_diff(c, snr, FadingModel::nakagami(2.0), q);
        CHECK(std::abs(direct - diff) < 1e-8);
    }
    const auto awgn = bicm_capacity_estimate(c, 1.0, FadingModel::awgn(), q);
    CHECK(awgn.std_error == 0.0);
}
