#include <doctest.h>

#include <cmath>
#include <random>

#include "qxfer/protocol.hpp"

using namespace qxfer;

namespace {

RampSchedule short_schedule() {
    RampSchedule s;
    s.w_off = 0.25;
    s.t_ramp_nominal = 4.0;
    s.t_hold = 20.0;
    s.t_pre = 3.0;
    s.t_post = 5.0;
    return s;
}

IntegratorConfig survey_config(int n_report = 101) {
    IntegratorConfig c;
    c.dt_max = 4.0e-4;
    c.tolerance = 1.0e-4;
    c.n_report = n_report;
    return c;
}

}  // namespace

TEST_CASE("prepare_initial and prepare_target pole and equator states") {
    const double pi = constants::pi;
    CHECK(prepare_initial({0.0, 1.0}).amps(5) == Complex(1.0, 0.0));
    CHECK(prepare_initial({pi, 0.0}).amps(4) == Complex(1.0, 0.0));
    CHECK(std::abs(prepare_initial({pi, 0.0}).amps(5)) < 1e-16);

    const StateVector eq = prepare_initial({pi / 2, pi / 2});
    CHECK(eq.amps(5).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(eq.amps(4).imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(std::abs(eq.amps(4).real()) < 1e-15);

    CHECK(prepare_target({pi, 0.0}).amps(1) == Complex(1.0, 0.0));
    CHECK(prepare_target({0.0, 0.0}).amps(5) == Complex(1.0, 0.0));
    const StateVector teq = prepare_target({pi / 2, 0.0});
    CHECK(teq.amps(5).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
    CHECK(teq.amps(1).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(prepare_initial({-0.1, 0.0}), std::domain_error);
    CHECK_THROWS_AS(prepare_initial({0.1, 7.0}), std::domain_error);
}

TEST_CASE("theta = 0 trace stays at unit fidelity") {
    const SystemParams p;
    const TransferResult r =
        fidelity_trace({0.0, 0.0}, p, short_schedule(), survey_config());
    for (double f : r.fidelity) CHECK(std::abs(f - 1.0) < 1e-10);
}

TEST_CASE("theta = pi with no BEC-SQUID coupling never overlaps the target") {
    SystemParams p;
    p.omega_bs = 0.0;
    const TransferResult r = fidelity_trace({constants::pi, 0.0}, p,
                                            short_schedule(), survey_config());
    // cos(pi/2) leaves a ~1e-17 residue on |00>, squared in the overlap
    for (double f : r.fidelity) CHECK(f < 1e-30);
}

TEST_CASE("fidelity stays in [0, 1] and populations sum to one") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    IntegratorConfig cfg;  // default accuracy for the 1e-8 population budget
    cfg.n_report = 201;
    for (double theta : {0.3, 1.9, constants::pi}) {
        const TransferResult r = fidelity_trace({theta, 0.7}, p, s, cfg);
        for (std::size_t k = 0; k < r.fidelity.size(); ++k) {
            CHECK(r.fidelity[k] >= 0.0);
            CHECK(r.fidelity[k] <= 1.0 + 1e-12);
            double sum = 0.0;
            for (double pop : r.populations[k]) sum += pop;
            CHECK(std::abs(sum - 1.0) < 1e-8);
        }
    }
}

TEST_CASE("fidelity is independent of phi at the poles") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(41);
    for (double theta : {0.0, constants::pi}) {
        std::vector<double> base;
        for (int k = 0; k < 8; ++k) {
            const double phi = 2.0 * constants::pi * k / 8.0;
            const TransferResult r = fidelity_trace({theta, phi}, p, s, cfg);
            if (base.empty()) {
                base = r.fidelity;
            } else {
                for (std::size_t i = 0; i < base.size(); ++i)
                    CHECK(std::abs(r.fidelity[i] - base[i]) < 1e-10);
            }
        }
    }
}

TEST_CASE("propagator fast path reproduces the two-trajectory fidelity") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(21);

    const auto uh = evolve_propagator_trajectory(HSource::Coupled, p, s, cfg);
    const auto uh0 = evolve_propagator_trajectory(HSource::Uncoupled, p, s, cfg);

    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 4; ++k) {
        const BlochAngles angles{std::acos(2 * u(rng) - 1),
                                 2.0 * constants::pi * u(rng)};
        const TransferResult direct = fidelity_trace(angles, p, s, cfg);
        const Vector6c psi0 = prepare_initial(angles).amps;
        const Vector6c tgt = prepare_target(angles).amps;
        for (std::size_t i = 0; i < uh.times.size(); ++i) {
            const Complex overlap = (uh0.us[i] * tgt).dot(uh.us[i] * psi0);
            CHECK(std::abs(std::abs(overlap) - direct.fidelity[i]) < 1e-7);
        }
    }
}

TEST_CASE("identity protocol averages to one half") {
    const SystemParams p;
    RampSchedule none;
    none.t_ramp_nominal = 0.0;
    none.t_pre = 0.0;
    none.t_post = 0.0;
    none.t_hold = 0.0;
    IntegratorConfig cfg = survey_config(2);
    const AveragedFidelityResult r =
        averaged_fidelity(p, none, cfg, QuadratureSpec{});
    CHECK(std::abs(r.f_avg_final - 0.5) < 1e-6);

    // the Haar average of cos^2(theta/2) is also 1/2
    // the Haar integrand carries a sin(theta) factor, so the trapezoid
    // rule converges at second order only
    const AveragedFidelityResult h =
        averaged_fidelity(p, none, cfg, QuadratureSpec{}, true);
    CHECK(std::abs(h.f_avg_final - 0.5) < 1e-3);
}

TEST_CASE("doubling the quadrature barely moves the average") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(2);
    const double coarse =
        averaged_fidelity(p, s, cfg, QuadratureSpec{33, 64}).f_avg_final;
    const double fine =
        averaged_fidelity(p, s, cfg, QuadratureSpec{65, 128}).f_avg_final;
    CHECK(std::abs(coarse - fine) < 1e-4);
}

TEST_CASE("quadrature spec validation") {
    CHECK_THROWS_AS(averaged_fidelity(SystemParams{}, short_schedule(),
                                      survey_config(2), QuadratureSpec{4, 64}),
                    std::domain_error);
    CHECK_THROWS_AS(averaged_fidelity(SystemParams{}, short_schedule(),
                                      survey_config(2), QuadratureSpec{33, 2}),
                    std::domain_error);
}

TEST_CASE("single-point sweep equals averaged_fidelity") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(2);
    const QuadratureSpec quad{9, 8};
    const auto points = ramp_sweep(p, s, {s.t_ramp_nominal}, cfg, quad);
    REQUIRE(points.size() == 1);
    CHECK(points[0].ok());
    CHECK(points[0].f_avg_final ==
          doctest::Approx(averaged_fidelity(p, s, cfg, quad).f_avg_final)
              .epsilon(1e-14));
    CHECK(points[0].measured_ramp_time ==
          doctest::Approx(measured_ramp_time(s)).epsilon(1e-12));
}

TEST_CASE("sweep reports per-point failures and continues") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(2);
    const QuadratureSpec quad{9, 8};
    // a negative ramp time fails schedule validation for that point only
    const auto points = ramp_sweep(p, s, {-1.0, 2.0}, cfg, quad);
    REQUIRE(points.size() == 2);
    int failed = 0;
    for (const auto& pt : points) {
        if (!pt.ok()) {
            ++failed;
            CHECK(pt.error.find("t_ramp") != std::string::npos);
        }
    }
    CHECK(failed == 1);

    CHECK_THROWS_AS(ramp_sweep(p, s, {3.0, 1.0}, cfg, quad), std::domain_error);
    CHECK_THROWS_AS(ramp_sweep(p, s, {}, cfg, quad), std::domain_error);
}

TEST_CASE("sweep is thread-count invariant") {
    const SystemParams p;
    const RampSchedule s = short_schedule();
    const IntegratorConfig cfg = survey_config(2);
    const QuadratureSpec quad{9, 8};
    const std::vector<double> ramps = {1.0, 2.0, 4.0};
    const auto serial = ramp_sweep(p, s, ramps, cfg, quad, false, 1);
    const auto threaded = ramp_sweep(p, s, ramps, cfg, quad, false, 3);
    REQUIRE(serial.size() == threaded.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].f_avg_final == threaded[i].f_avg_final);
        CHECK(serial[i].measured_ramp_time == threaded[i].measured_ramp_time);
    }
}

TEST_CASE("optimize_hold with no transfer channel returns the midpoint") {
    SystemParams p;
    p.omega_ex = 0.0;
    const RampSchedule s = short_schedule();
    const HoldOptimum opt = optimize_hold(p, s, survey_config(2));
    CHECK(opt.f_final < 1e-30);
    CHECK(opt.t_hold == doctest::Approx(1.25 * s.t_hold).epsilon(1e-12));
}

TEST_CASE("optimize_hold rejects a degenerate interval") {
    CHECK_THROWS_AS(
        optimize_hold(SystemParams{}, short_schedule(), survey_config(2), 5.0, 5.0),
        std::domain_error);
}

TEST_CASE("optimize_hold agrees with a dense scan and is interval-stable") {
    const SystemParams p;
    const double tau =
        transfer_time(two_photon_rabi(p.omega_ex, p.omega_bs, p.delta1));
    RampSchedule s = default_schedule(p);
    s.t_ramp_nominal = 0.5;
    IntegratorConfig cfg = survey_config(2);

    const HoldOptimum opt = optimize_hold(p, s, cfg);
    CHECK(opt.t_hold > 0.7 * tau);
    CHECK(opt.t_hold < 1.3 * tau);

    // dense-scan oracle over the same interval
    double best_hold = 0.0, best_f = -1.0;
    for (int k = 0; k <= 24; ++k) {
        RampSchedule q = s;
        q.t_hold = 0.5 * tau + k * (1.5 * tau / 24);
        const double f =
            fidelity_trace({constants::pi, 0.0}, p, q, cfg).f_final;
        if (f > best_f) {
            best_f = f;
            best_hold = q.t_hold;
        }
    }
    CHECK(opt.f_final >= best_f - 2e-3);
    CHECK(std::abs(opt.t_hold - best_hold) < 0.1 * tau);

    const HoldOptimum opt2 =
        optimize_hold(p, s, cfg, 0.6 * tau, 1.8 * tau);
    CHECK(std::abs(opt2.t_hold - opt.t_hold) < 1e-3 * tau);
}

TEST_CASE("default_schedule scales the Table-1 shape") {
    SystemParams p;
    const RampSchedule d = default_schedule(p);
    const double tau =
        transfer_time(two_photon_rabi(p.omega_ex, p.omega_bs, p.delta1));
    CHECK(d.t_hold == doctest::Approx(tau).epsilon(1e-14));
    CHECK(d.t_post == doctest::Approx(0.1 * tau).epsilon(1e-14));
    CHECK(d.w_off == 0.25);

    SystemParams weak = p;
    weak.omega_ex = 0.075;  // half the coupling -> twice the transfer time
    const RampSchedule d2 = default_schedule(weak);
    CHECK(d2.t_hold == doctest::Approx(2 * tau).epsilon(1e-12));
    CHECK(d2.t_pre == doctest::Approx(2 * d.t_pre).epsilon(1e-12));
    CHECK(d2.t_ramp_nominal == doctest::Approx(2 * d.t_ramp_nominal).epsilon(1e-12));
}
