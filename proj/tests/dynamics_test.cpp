#include <doctest.h>
#include <oracles.hpp>

#include <sheafctx/dynamics.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace sheafctx;
using oracle::error_code;

namespace
{
    auto max_abs_diff(const ComplexField & a, const ComplexField & b) -> double
    {
        double m = 0;
        for (std::size_t i = 0; i < a.size(); ++i)
            m = std::max(m, std::abs(a[i] - b[i]));
        return m;
    }

    auto density(const ComplexField & psi) -> RealField
    {
        RealField rho(psi.size());
        for (std::size_t i = 0; i < psi.size(); ++i)
            rho[i] = std::norm(psi[i]);
        return rho;
    }

    /// Analytic Q for ρ ∝ exp(−x²/2σ²): −(ħ²/2m)(x²/4σ⁴ − 1/2σ²).
    auto gaussian_q(double x, double sigma, double hbar = 1, double mass = 1) -> double
    {
        return -(hbar * hbar / (2 * mass)) * (x * x / (4 * std::pow(sigma, 4)) - 1 / (2 * sigma * sigma));
    }

    auto run(const ComplexField & psi0, const Grid & g, const PhysicalParams & p, double t, double dt)
        -> EvolutionResult
    {
        EvolveOptions o;
        o.t_final = t;
        o.dt = dt;
        o.record_every = 1'000'000;
        return evolve(psi0, g, p, o);
    }
}

TEST_CASE("grid geometry")
{
    Grid g{64, 8.0};
    CHECK(g.dx() == doctest::Approx(0.125));
    CHECK(g.x(0) == doctest::Approx(-4.0));
    auto k = g.wavenumbers();
    CHECK(k[1] == doctest::Approx(2 * std::numbers::pi / 8));
    CHECK(k[32] == doctest::Approx(-32 * 2 * std::numbers::pi / 8));
    CHECK(k[63] == doctest::Approx(-2 * std::numbers::pi / 8));
    CHECK(error_code([] { Grid(100, 1.0); }) == ErrorCode::InvalidArgument);
    CHECK(error_code([] { Grid(32, 1.0); }) == ErrorCode::InvalidArgument);
    CHECK(error_code([] { Grid(64, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("parameter validation")
{
    Grid g{64, 8.0};
    PhysicalParams p;
    CHECK_NOTHROW(validate(p, g));
    p.lambda = 1.5;
    CHECK(error_code([&] { validate(p, g); }) == ErrorCode::InvalidArgument);
    p.lambda = 0.5;
    p.potential = RealField(10, 0.0);
    CHECK(error_code([&] { validate(p, g); }) == ErrorCode::InvalidArgument);
    p.potential.clear();
    p.hbar = 0;
    CHECK(error_code([&] { validate(p, g); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("Gaussian states are normalised with the requested width")
{
    Grid g{512, 20.0};
    PhysicalParams p;
    auto psi = gaussian_state(g, 1.0, 0.7, 2.0);
    CHECK(norm(psi, g) == doctest::Approx(1.0).epsilon(1e-12));
    auto o = measure(psi, g, p, 0.0);
    CHECK(o.mean_x == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(o.width == doctest::Approx(0.7).epsilon(1e-9));
    // Kinetic energy of a moving Gaussian: p²/2m + ħ²/8mσ².
    CHECK(o.energy == doctest::Approx(2.0 + 1.0 / (8 * 0.49)).epsilon(1e-8));
    auto two = two_gaussian_state(g, 6.0, 0.5, 0.1);
    CHECK(norm(two, g) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("polar decomposition round trip")
{
    Grid g{256, 16.0};
    std::mt19937_64 rng{51};
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 10; ++t) {
        double p0 = 3 * u(rng), mu = u(rng);
        auto psi = gaussian_state(g, mu, 1.0 + 0.3 * u(rng), p0, 0.7);
        for (std::size_t j = 0; j < psi.size(); ++j)
            psi[j] *= std::polar(1.0, 0.4 * std::sin(g.x(j)));
        auto polar = polar_decompose(psi, 0.7);
        auto back = polar_compose(polar.state, 0.7);
        double err = 0;
        for (std::size_t j = 0; j < psi.size(); ++j)
            if (polar.state.rho[j] > 1e-10)
                err = std::max(err, std::abs(back[j] - psi[j]));
        CHECK(err < 1e-10);
    }
    // A node leaves the phase undefined there.
    ComplexField node(64, {1.0, 0.0});
    node[10] = 0;
    auto polar = polar_decompose(node, 1.0);
    CHECK(polar.undefined_phase == std::vector<std::size_t>{10});
}

TEST_CASE("quantum potential of a Gaussian matches the closed form")
{
    Grid g{256, 30.0};
    PhysicalParams p;
    double sigma = 1.3;
    auto rho = density(gaussian_state(g, 0.0, sigma));
    auto q = quantum_potential(rho, g, p);
    double err = 0;
    for (std::size_t j = 0; j < g.n_points(); ++j)
        if (std::abs(g.x(j)) < 4)
            err = std::max(err, std::abs(q[j] - gaussian_q(g.x(j), sigma)));
    CHECK(err < 1e-8);
}

TEST_CASE("finite-difference quantum potential converges at second order")
{
    PhysicalParams p;
    p.scheme = LaplacianScheme::FiniteDifference;
    double sigma = 1.3;
    std::vector<double> errors;
    for (std::size_t n : {128, 256, 512}) {
        Grid g{n, 20.0};
        auto q = quantum_potential(density(gaussian_state(g, 0.0, sigma)), g, p);
        double err = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(g.x(j)) < 3)
                err = std::max(err, std::abs(q[j] - gaussian_q(g.x(j), sigma)));
        errors.push_back(err);
    }
    CHECK(errors[0] / errors[1] == doctest::Approx(4.0).epsilon(0.05));
    CHECK(errors[1] / errors[2] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("lambda = 1 agrees with an independent linear split-step")
{
    Grid g{128, 20.0};
    PhysicalParams p;
    auto psi0 = gaussian_state(g, -1.0, 0.8, 1.5);
    double t = 0.5;
    auto ours = run(psi0, g, p, t, max_stable_dt(g, p)).final_psi;
    auto theirs = oracle::free_split_step(psi0, g.length(), t, p.hbar, p.mass);
    CHECK(max_abs_diff(ours, theirs) < 1e-10);
}

TEST_CASE("one step in a harmonic well agrees with a hand-rolled Strang step")
{
    Grid g{64, 12.0};
    PhysicalParams p;
    p.potential = harmonic_potential(g, 1.0);
    auto psi = gaussian_state(g, 1.0, 1.0);
    double dt = 0.5 * max_stable_dt(g, p);
    auto expected = oracle::free_split_step(psi, g.length(), dt / 2, 1, 1);
    for (std::size_t j = 0; j < expected.size(); ++j)
        expected[j] *= std::polar(1.0, -p.potential[j] * dt);
    expected = oracle::free_split_step(expected, g.length(), dt / 2, 1, 1);
    Propagator prop{g, p, dt};
    prop.step(psi);
    CHECK(max_abs_diff(psi, expected) < 1e-12);
}

TEST_CASE("norm is conserved")
{
    Grid g{256, 40.0};
    PhysicalParams p;
    p.lambda = 0.4;
    auto psi0 = two_gaussian_state(g, 8.0, 0.5, 0.2);
    EvolveOptions o;
    o.t_final = 0.5;
    o.dt = max_stable_dt(g, p);
    o.record_every = 100;
    auto r = evolve(psi0, g, p, o);
    for (auto & rec : r.records)
        CHECK(std::abs(rec.norm - 1) < 1e-10);
}

TEST_CASE("deformed flow is the undeformed flow with a rescaled hbar")
{
    // With V = 0 and a real initial state, λQ is the quantum potential for
    // ħ' = √λ·ħ, so the density at time 2T under λ = 1/4 equals the
    // density at time T under λ = 1.
    Grid g{256, 40.0};
    PhysicalParams quarter, one;
    quarter.lambda = 0.25;
    auto psi0 = two_gaussian_state(g, 8.0, 0.5, 0.2);
    double dt = 0.1 * g.dx() * g.dx();
    auto a = density(run(psi0, g, quarter, 1.0, dt).final_psi);
    auto b = density(run(psi0, g, one, 0.5, dt / 2).final_psi);
    double err = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        err = std::max(err, std::abs(a[j] - b[j]));
    CHECK(err < 1e-4);
}

TEST_CASE("stability and collapse guards")
{
    Grid g{128, 20.0};
    PhysicalParams p;
    auto psi = gaussian_state(g, 0.0, 0.5);
    CHECK(max_stable_dt(g, p) == doctest::Approx(p.cfl * g.dx() * g.dx()));
    CHECK(error_code([&] { run(psi, g, p, 1.0, 2 * max_stable_dt(g, p)); }) == ErrorCode::StabilityViolation);
    p.lambda = 0.5;
    CHECK(error_code([&] { run(psi, g, p, 0.01, max_stable_dt(g, p)); }) == ErrorCode::DensityCollapse);
}

TEST_CASE("records land on step 0, every interval and the final step")
{
    Grid g{64, 10.0};
    PhysicalParams p;
    EvolveOptions o;
    o.dt = max_stable_dt(g, p);
    o.t_final = 25.5 * o.dt;
    o.record_every = 10;
    o.keep_frames = true;
    auto r = evolve(gaussian_state(g, 0, 1), g, p, o);
    CHECK(r.steps == 26);
    REQUIRE(r.records.size() == 4);
    CHECK(r.records.front().time == 0.0);
    CHECK(r.records.back().time == doctest::Approx(o.t_final));
    CHECK(r.dt * static_cast<double>(r.steps) == doctest::Approx(o.t_final));
    CHECK(r.frames.size() == r.records.size());
    CHECK(step_count(1.0, 0.1) == 10);
}

TEST_CASE("lambda sweep reproduces individual runs")
{
    Grid g{128, 40.0};
    PhysicalParams p;
    auto psi0 = two_gaussian_state(g, 8.0, 0.5, 0.2);
    EvolveOptions o;
    o.t_final = 0.2;
    o.dt = max_stable_dt(g, p);
    o.record_every = 50;
    std::vector<double> lambdas{0.0, 0.5, 1.0};
    auto sweep = lambda_sweep(psi0, g, p, lambdas, o, 2);
    REQUIRE(sweep.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        auto q = p;
        q.lambda = lambdas[i];
        auto single = evolve(psi0, g, q, o);
        CHECK(max_abs_diff(single.final_psi, sweep[i].final_psi) == 0.0);
    }
}

TEST_CASE("lambda maps")
{
    PhysicalParams p;
    p.hbar = 2.0;
    LambdaMap def;
    CHECK(def(1.0, p) == doctest::Approx(0.5));
    CHECK(def(5.0, p) == 1.0);
    CHECK(lambda_from_sigma(0.0, p) == 0.0);
    auto table = LambdaMap::from_table({{0.0, 0.0}, {1.0, 0.2}, {2.0, 1.0}});
    CHECK(table(0.5, p) == doctest::Approx(0.1));
    CHECK(table(1.5, p) == doctest::Approx(0.6));
    CHECK(table(9.0, p) == 1.0);
    CHECK(error_code([] { LambdaMap::from_table({{0.0, 0.5}, {1.0, 0.2}}); }) == ErrorCode::NonMonotoneMap);
    CHECK(error_code([] { LambdaMap::from_table({{1.0, 0.1}, {1.0, 0.2}}); }) == ErrorCode::NonMonotoneMap);
    CHECK(error_code([] { LambdaMap::from_table({}); }) == ErrorCode::InvalidArgument);
    CHECK(error_code([&] { lambda_from_sigma(-1.0, p); }) == ErrorCode::InvalidArgument);
    p.sigma = 1.5;
    CHECK(*hbar_sigma_mismatch(p) == doctest::Approx(0.5));
}

TEST_CASE("frame files round trip")
{
    std::vector<Frame> frames;
    std::mt19937_64 rng{52};
    std::uniform_real_distribution<double> u(-1, 1);
    for (int f = 0; f < 3; ++f) {
        Frame fr{0.25 * f, RealField(64), RealField(64)};
        for (std::size_t j = 0; j < 64; ++j) {
            fr.rho[j] = std::abs(u(rng));
            fr.phase[j] = u(rng);
        }
        frames.push_back(fr);
    }
    std::stringstream buffer;
    write_frames(buffer, frames, 64);
    auto bytes = buffer.str();
    CHECK(bytes.size() == 16 + 3 * (8 + 2 * 64 * 8));
    CHECK(bytes.substr(0, 4) == "SLAM");
    std::istringstream in{bytes};
    auto back = read_frames(in);
    REQUIRE(back.size() == 3);
    for (int f = 0; f < 3; ++f) {
        CHECK(back[f].time == frames[f].time);
        CHECK(back[f].rho == frames[f].rho);
        CHECK(back[f].phase == frames[f].phase);
    }
    std::istringstream bad{"NOPE" + bytes.substr(4)};
    CHECK(error_code([&] { read_frames(bad); }) == ErrorCode::ParseError);
    std::istringstream truncated{bytes.substr(0, bytes.size() - 5)};
    CHECK(error_code([&] { read_frames(truncated); }) == ErrorCode::ParseError);
}
