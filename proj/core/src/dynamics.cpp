#include <sheafctx/dynamics.hpp>
#include <sheafctx/error.hpp>
#include <sheafctx/parallel.hpp>

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <mutex>
#include <numbers>
#include <ostream>

using namespace sheafctx;

using std::size_t;
using std::vector;

namespace
{
    // The FFTW planner is not re-entrant.
    std::mutex planner_mutex;

    /// In-place forward and unnormalised backward transforms on an owned buffer.
    class Fft
    {
        public:
            explicit Fft(size_t n) :
                _n(n)
            {
                std::lock_guard lock{planner_mutex};
                _buffer = fftw_alloc_complex(n);
                _forward = fftw_plan_dft_1d(static_cast<int>(n), _buffer, _buffer, FFTW_FORWARD, FFTW_ESTIMATE);
                _backward = fftw_plan_dft_1d(static_cast<int>(n), _buffer, _buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
            }

            ~Fft()
            {
                std::lock_guard lock{planner_mutex};
                fftw_destroy_plan(_forward);
                fftw_destroy_plan(_backward);
                fftw_free(_buffer);
            }

            Fft(const Fft &) = delete;
            auto operator=(const Fft &) -> Fft & = delete;

            auto data() -> Complex * { return reinterpret_cast<Complex *>(_buffer); }
            auto forward() -> void { fftw_execute(_forward); }
            /// Includes the 1/n normalisation.
            auto backward() -> void
            {
                fftw_execute(_backward);
                auto scale = 1.0 / static_cast<double>(_n);
                for (size_t j = 0; j < _n; ++j)
                    data()[j] *= scale;
            }

        private:
            size_t _n;
            fftw_complex * _buffer = nullptr;
            fftw_plan _forward = nullptr;
            fftw_plan _backward = nullptr;
    };

    auto floored_amplitude(const RealField & rho, double floor) -> RealField
    {
        RealField a(rho.size());
        for (size_t j = 0; j < rho.size(); ++j)
            a[j] = std::sqrt(std::max(rho[j], floor));
        return a;
    }

    auto spectral_laplacian(Fft & fft, const RealField & f, const RealField & k) -> RealField
    {
        auto n = f.size();
        for (size_t j = 0; j < n; ++j)
            fft.data()[j] = f[j];
        fft.forward();
        for (size_t j = 0; j < n; ++j)
            fft.data()[j] *= -k[j] * k[j];
        fft.backward();
        RealField result(n);
        for (size_t j = 0; j < n; ++j)
            result[j] = fft.data()[j].real();
        return result;
    }

    auto fd_laplacian(const RealField & f, double dx) -> RealField
    {
        auto n = f.size();
        RealField result(n);
        for (size_t j = 0; j < n; ++j)
            result[j] = (f[(j + 1) % n] - 2 * f[j] + f[(j + n - 1) % n]) / (dx * dx);
        return result;
    }

    auto compute_q(Fft & fft, const RealField & rho, const Grid & grid, const RealField & k, const PhysicalParams & params)
        -> RealField
    {
        auto a = floored_amplitude(rho, params.density_floor);
        auto lap = params.scheme == LaplacianScheme::Spectral ? spectral_laplacian(fft, a, k) : fd_laplacian(a, grid.dx());
        auto coefficient = -params.hbar * params.hbar / (2 * params.mass);
        RealField q(rho.size());
        for (size_t j = 0; j < rho.size(); ++j)
            q[j] = coefficient * lap[j] / a[j];
        return q;
    }

    /// Σ |f'|² over the grid, by Parseval.
    auto gradient_energy(Fft & fft, const ComplexField & f, const RealField & k) -> double
    {
        auto n = f.size();
        std::copy(f.begin(), f.end(), fft.data());
        fft.forward();
        double total = 0;
        for (size_t j = 0; j < n; ++j)
            total += k[j] * k[j] * std::norm(fft.data()[j]);
        return total / static_cast<double>(n);
    }

    auto is_finite(double v) -> bool { return std::isfinite(v); }
}

Grid::Grid(size_t n_points, double length) :
    _n(n_points),
    _length(length)
{
    if (n_points < 64 || ! std::has_single_bit(n_points))
        throw Error{ErrorCode::InvalidArgument, "grid size must be a power of two of at least 64, got "
            + std::to_string(n_points)};
    if (! (length > 0) || ! is_finite(length))
        throw Error{ErrorCode::InvalidArgument, "grid length must be positive"};
}

auto Grid::coordinates() const -> RealField
{
    RealField x(_n);
    for (size_t j = 0; j < _n; ++j)
        x[j] = this->x(j);
    return x;
}

auto Grid::wavenumbers() const -> RealField
{
    RealField k(_n);
    auto base = 2 * std::numbers::pi / _length;
    for (size_t j = 0; j < _n; ++j) {
        auto m = j < _n / 2 ? static_cast<double>(j) : static_cast<double>(j) - static_cast<double>(_n);
        k[j] = base * m;
    }
    return k;
}

auto sheafctx::validate(const PhysicalParams & params, const Grid & grid) -> void
{
    if (! (params.hbar > 0) || ! is_finite(params.hbar))
        throw Error{ErrorCode::InvalidArgument, "hbar must be positive"};
    if (! (params.mass > 0) || ! is_finite(params.mass))
        throw Error{ErrorCode::InvalidArgument, "mass must be positive"};
    if (! (params.lambda >= 0 && params.lambda <= 1))
        throw Error{ErrorCode::InvalidArgument, "lambda must lie in [0,1]"};
    if (params.sigma && ! (*params.sigma >= 0 && is_finite(*params.sigma)))
        throw Error{ErrorCode::InvalidArgument, "sigma must be non-negative"};
    if (! params.potential.empty() && params.potential.size() != grid.n_points())
        throw Error{ErrorCode::InvalidArgument, "potential has " + std::to_string(params.potential.size())
            + " samples for a grid of " + std::to_string(grid.n_points())};
    if (! std::all_of(params.potential.begin(), params.potential.end(), is_finite))
        throw Error{ErrorCode::InvalidArgument, "potential must be finite"};
    if (! (params.cfl > 0) || ! (params.density_floor > 0))
        throw Error{ErrorCode::InvalidArgument, "cfl and density floor must be positive"};
}

auto sheafctx::hbar_sigma_mismatch(const PhysicalParams & params) -> std::optional<double>
{
    if (! params.sigma)
        return std::nullopt;
    return params.hbar - params.mass * *params.sigma;
}

auto sheafctx::max_stable_dt(const Grid & grid, const PhysicalParams & params) -> double
{
    return params.cfl * grid.dx() * grid.dx() * params.mass / params.hbar;
}

auto sheafctx::polar_compose(const LambdaState & state, double hbar) -> ComplexField
{
    if (state.rho.size() != state.phase.size())
        throw Error{ErrorCode::InvalidArgument, "density and phase differ in length"};
    ComplexField psi(state.rho.size());
    for (size_t j = 0; j < psi.size(); ++j) {
        if (state.rho[j] < 0)
            throw Error{ErrorCode::InvalidArgument, "density must be non-negative"};
        psi[j] = std::polar(std::sqrt(state.rho[j]), state.phase[j] / hbar);
    }
    return psi;
}

auto sheafctx::polar_decompose(const ComplexField & psi, double hbar, double floor, double time) -> PolarResult
{
    auto n = psi.size();
    PolarResult result;
    result.state.time = time;
    result.state.rho.resize(n);
    result.state.phase.assign(n, 0.0);

    vector<size_t> defined;
    for (size_t j = 0; j < n; ++j) {
        result.state.rho[j] = std::norm(psi[j]);
        if (result.state.rho[j] > floor)
            defined.push_back(j);
        else
            result.undefined_phase.push_back(j);
    }
    if (defined.empty())
        return result;

    auto & S = result.state.phase;
    double previous_raw = std::arg(psi[defined.front()]);
    double unwrapped = previous_raw;
    S[defined.front()] = hbar * unwrapped;
    for (size_t k = 1; k < defined.size(); ++k) {
        auto raw = std::arg(psi[defined[k]]);
        auto d = std::remainder(raw - previous_raw, 2 * std::numbers::pi);
        unwrapped += d;
        previous_raw = raw;
        S[defined[k]] = hbar * unwrapped;
    }

    for (size_t j = 0; j < defined.front(); ++j)
        S[j] = S[defined.front()];
    for (size_t j = defined.back() + 1; j < n; ++j)
        S[j] = S[defined.back()];
    for (size_t k = 0; k + 1 < defined.size(); ++k) {
        auto a = defined[k], b = defined[k + 1];
        for (size_t j = a + 1; j < b; ++j) {
            auto w = static_cast<double>(j - a) / static_cast<double>(b - a);
            S[j] = (1 - w) * S[a] + w * S[b];
        }
    }
    return result;
}

auto sheafctx::quantum_potential(const RealField & rho, const Grid & grid, const PhysicalParams & params) -> RealField
{
    if (rho.size() != grid.n_points())
        throw Error{ErrorCode::InvalidArgument, "density does not match the grid"};
    Fft fft{grid.n_points()};
    return compute_q(fft, rho, grid, grid.wavenumbers(), params);
}

auto sheafctx::norm(const ComplexField & psi, const Grid & grid) -> double
{
    double total = 0;
    for (auto & v : psi)
        total += std::norm(v);
    return total * grid.dx();
}

auto sheafctx::measure(const ComplexField & psi, const Grid & grid, const PhysicalParams & params, double time,
        VisibilityWindow window) -> Observables
{
    auto n = grid.n_points();
    auto dx = grid.dx();
    Observables o;
    o.time = time;

    RealField rho(n);
    for (size_t j = 0; j < n; ++j)
        rho[j] = std::norm(psi[j]);

    double mass = 0, first = 0;
    for (size_t j = 0; j < n; ++j) {
        mass += rho[j];
        first += grid.x(j) * rho[j];
    }
    o.norm = mass * dx;
    o.mean_x = mass > 0 ? first / mass : 0.0;
    double second = 0;
    for (size_t j = 0; j < n; ++j)
        second += (grid.x(j) - o.mean_x) * (grid.x(j) - o.mean_x) * rho[j];
    o.width = mass > 0 ? std::sqrt(second / mass) : 0.0;

    double high = -1, low = -1;
    for (size_t j = 0; j < n; ++j) {
        if (window && std::abs(grid.x(j)) > *window)
            continue;
        if (high < 0) {
            high = low = rho[j];
            continue;
        }
        high = std::max(high, rho[j]);
        low = std::min(low, rho[j]);
    }
    o.visibility = high + low > 0 ? (high - low) / (high + low) : 0.0;

    Fft fft{n};
    auto k = grid.wavenumbers();
    auto scale = params.hbar * params.hbar / (2 * params.mass) * dx;
    double energy = scale * gradient_energy(fft, psi, k);
    if (params.lambda != 1.0) {
        auto a = floored_amplitude(rho, params.density_floor);
        energy -= (1 - params.lambda) * scale * gradient_energy(fft, ComplexField(a.begin(), a.end()), k);
    }
    for (size_t j = 0; j < n && ! params.potential.empty(); ++j)
        energy += params.potential[j] * rho[j] * dx;
    o.energy = energy;
    return o;
}

struct Propagator::Plans
{
    explicit Plans(size_t n) :
        fft(n)
    {
    }

    Fft fft;
};

Propagator::Propagator(Grid grid, PhysicalParams params, double dt) :
    _grid(grid),
    _params(std::move(params)),
    _dt(dt)
{
    validate(_params, _grid);
    if (! (dt > 0) || ! is_finite(dt))
        throw Error{ErrorCode::InvalidArgument, "time step must be positive"};
    auto limit = max_stable_dt(_grid, _params);
    if (dt > limit * (1 + 1e-12))
        throw Error{ErrorCode::StabilityViolation, "dt = " + std::to_string(dt) + " exceeds the stability bound "
            + std::to_string(limit) + " (cfl " + std::to_string(_params.cfl) + ")"};

    _k = _grid.wavenumbers();
    _kinetic.resize(_grid.n_points());
    for (size_t j = 0; j < _k.size(); ++j)
        _kinetic[j] = std::polar(1.0, -_params.hbar * _k[j] * _k[j] / (2 * _params.mass) * dt / 2);
    _plans = std::make_unique<Plans>(_grid.n_points());
}

Propagator::~Propagator() = default;

auto Propagator::kinetic_half(ComplexField & psi) -> void
{
    auto & fft = _plans->fft;
    std::copy(psi.begin(), psi.end(), fft.data());
    fft.forward();
    for (size_t j = 0; j < psi.size(); ++j)
        fft.data()[j] *= _kinetic[j];
    fft.backward();
    std::copy(fft.data(), fft.data() + psi.size(), psi.begin());
}

auto Propagator::step(ComplexField & psi) -> void
{
    auto n = _grid.n_points();
    if (psi.size() != n)
        throw Error{ErrorCode::InvalidArgument, "wave function does not match the grid"};

    kinetic_half(psi);

    bool nonlinear = _params.lambda != 1.0;
    if (nonlinear || ! _params.potential.empty()) {
        RealField w = _params.potential.empty() ? RealField(n, 0.0) : _params.potential;
        if (nonlinear) {
            // The kick leaves ρ unchanged, so this is the midpoint density.
            RealField rho(n);
            size_t floored = 0;
            for (size_t j = 0; j < n; ++j) {
                rho[j] = std::norm(psi[j]);
                if (rho[j] <= _params.density_floor)
                    ++floored;
            }
            if (static_cast<double>(floored) > kCollapseFraction * static_cast<double>(n))
                throw Error{ErrorCode::DensityCollapse, std::to_string(floored) + " of " + std::to_string(n)
                    + " grid points are at the density floor"};
            auto q = compute_q(_plans->fft, rho, _grid, _k, _params);
            for (size_t j = 0; j < n; ++j)
                w[j] += (_params.lambda - 1) * q[j];
        }
        for (size_t j = 0; j < n; ++j)
            psi[j] *= std::polar(1.0, -w[j] * _dt / _params.hbar);
    }

    kinetic_half(psi);
}

auto sheafctx::step(const LambdaState & state, double dt, const Grid & grid, const PhysicalParams & params) -> LambdaState
{
    auto psi = polar_compose(state, params.hbar);
    Propagator propagator{grid, params, dt};
    propagator.step(psi);
    return polar_decompose(psi, params.hbar, params.density_floor, state.time + dt).state;
}

auto sheafctx::step_count(double t_final, double dt) -> size_t
{
    if (! (t_final >= 0) || ! is_finite(t_final))
        throw Error{ErrorCode::InvalidArgument, "final time must be non-negative"};
    if (! (dt > 0) || ! is_finite(dt))
        throw Error{ErrorCode::InvalidArgument, "time step must be positive"};
    return static_cast<size_t>(std::ceil(t_final / dt - 1e-9));
}

auto sheafctx::evolve(const ComplexField & initial, const Grid & grid, const PhysicalParams & params,
        const EvolveOptions & options) -> EvolutionResult
{
    validate(params, grid);
    if (initial.size() != grid.n_points())
        throw Error{ErrorCode::InvalidArgument, "initial state does not match the grid"};
    if (options.record_every == 0)
        throw Error{ErrorCode::InvalidArgument, "record interval must be positive"};
    if (options.dt > max_stable_dt(grid, params) * (1 + 1e-12))
        throw Error{ErrorCode::StabilityViolation, "dt = " + std::to_string(options.dt)
            + " exceeds the stability bound " + std::to_string(max_stable_dt(grid, params))};

    EvolutionResult result;
    result.steps = step_count(options.t_final, options.dt);
    result.dt = result.steps > 0 ? options.t_final / static_cast<double>(result.steps) : options.dt;
    result.final_psi = initial;
    auto & psi = result.final_psi;

    auto record = [&] (size_t s) {
        auto t = static_cast<double>(s) * result.dt;
        result.records.push_back(measure(psi, grid, params, t, options.window));
        if (options.keep_frames) {
            auto polar = polar_decompose(psi, params.hbar, params.density_floor, t);
            result.frames.push_back(Frame{t, std::move(polar.state.rho), std::move(polar.state.phase)});
        }
    };

    record(0);
    if (result.steps == 0)
        return result;

    Propagator propagator{grid, params, result.dt};
    for (size_t s = 1; s <= result.steps; ++s) {
        propagator.step(psi);
        if (s % options.record_every == 0 || s == result.steps)
            record(s);
    }
    return result;
}

auto sheafctx::lambda_sweep(const ComplexField & initial, const Grid & grid, const PhysicalParams & params,
        const vector<double> & lambdas, const EvolveOptions & options, size_t threads) -> vector<EvolutionResult>
{
    vector<EvolutionResult> results(lambdas.size());
    parallel_for(lambdas.size(), threads, [&] (size_t i) {
            auto p = params;
            p.lambda = lambdas[i];
            results[i] = evolve(initial, grid, p, options);
            });
    return results;
}

auto LambdaMap::from_table(vector<std::pair<double, double>> points) -> LambdaMap
{
    if (points.empty())
        throw Error{ErrorCode::InvalidArgument, "lambda map table is empty"};
    for (size_t i = 0; i < points.size(); ++i) {
        auto [sigma, lambda] = points[i];
        if (! is_finite(sigma) || ! (lambda >= 0 && lambda <= 1))
            throw Error{ErrorCode::InvalidArgument, "lambda map entries need finite sigma and lambda in [0,1]"};
        if (i > 0 && ! (sigma > points[i - 1].first))
            throw Error{ErrorCode::NonMonotoneMap, "sigma values must strictly increase"};
        if (i > 0 && lambda < points[i - 1].second)
            throw Error{ErrorCode::NonMonotoneMap, "lambda decreases between sigma = " + std::to_string(points[i - 1].first)
                + " and sigma = " + std::to_string(sigma)};
    }
    LambdaMap map;
    map._points = std::move(points);
    return map;
}

auto LambdaMap::operator()(double sigma, const PhysicalParams & params) const -> double
{
    if (_points.empty())
        return std::clamp(params.mass * sigma / params.hbar, 0.0, 1.0);
    if (sigma <= _points.front().first)
        return _points.front().second;
    if (sigma >= _points.back().first)
        return _points.back().second;
    auto upper = std::upper_bound(_points.begin(), _points.end(), sigma,
            [] (double s, const std::pair<double, double> & p) { return s < p.first; });
    auto lower = upper - 1;
    auto w = (sigma - lower->first) / (upper->first - lower->first);
    return (1 - w) * lower->second + w * upper->second;
}

auto sheafctx::lambda_from_sigma(double sigma, const PhysicalParams & params, const LambdaMap & map) -> double
{
    if (! (sigma >= 0) || ! is_finite(sigma))
        throw Error{ErrorCode::InvalidArgument, "sigma must be non-negative"};
    return map(sigma, params);
}

namespace
{
    auto normalise(ComplexField & psi, const Grid & grid) -> void
    {
        auto total = norm(psi, grid);
        if (! (total > 0))
            throw Error{ErrorCode::InvalidArgument, "state vanishes on the grid"};
        auto scale = 1 / std::sqrt(total);
        for (auto & v : psi)
            v *= scale;
    }
}

auto sheafctx::gaussian_state(const Grid & grid, double mu, double sigma0, double momentum, double hbar) -> ComplexField
{
    if (! (sigma0 > 0))
        throw Error{ErrorCode::InvalidArgument, "packet width must be positive"};
    ComplexField psi(grid.n_points());
    auto amplitude = std::pow(2 * std::numbers::pi * sigma0 * sigma0, -0.25);
    for (size_t j = 0; j < psi.size(); ++j) {
        auto x = grid.x(j);
        psi[j] = amplitude * std::exp(-(x - mu) * (x - mu) / (4 * sigma0 * sigma0)) * std::polar(1.0, momentum * x / hbar);
    }
    normalise(psi, grid);
    return psi;
}

auto sheafctx::two_gaussian_state(const Grid & grid, double separation, double sigma0, double pedestal) -> ComplexField
{
    if (! (sigma0 > 0) || ! (pedestal >= 0))
        throw Error{ErrorCode::InvalidArgument, "packet width must be positive and pedestal non-negative"};
    ComplexField psi(grid.n_points());
    for (size_t j = 0; j < psi.size(); ++j) {
        auto x = grid.x(j);
        auto left = x + separation / 2, right = x - separation / 2;
        psi[j] = std::exp(-left * left / (4 * sigma0 * sigma0)) + std::exp(-right * right / (4 * sigma0 * sigma0));
    }
    normalise(psi, grid);
    for (auto & v : psi)
        v += pedestal;
    normalise(psi, grid);
    return psi;
}

auto sheafctx::harmonic_potential(const Grid & grid, double stiffness) -> RealField
{
    RealField v(grid.n_points());
    for (size_t j = 0; j < v.size(); ++j)
        v[j] = 0.5 * stiffness * grid.x(j) * grid.x(j);
    return v;
}

namespace
{
    auto put_u32(std::ostream & out, std::uint32_t v) -> void
    {
        char bytes[4];
        for (int b = 0; b < 4; ++b)
            bytes[b] = static_cast<char>((v >> (8 * b)) & 0xff);
        out.write(bytes, 4);
    }

    auto put_f64(std::ostream & out, double v) -> void
    {
        auto bits = std::bit_cast<std::uint64_t>(v);
        char bytes[8];
        for (int b = 0; b < 8; ++b)
            bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
        out.write(bytes, 8);
    }

    auto get_bytes(std::istream & in, unsigned char * bytes, size_t count) -> void
    {
        in.read(reinterpret_cast<char *>(bytes), static_cast<std::streamsize>(count));
        if (static_cast<size_t>(in.gcount()) != count)
            throw Error{ErrorCode::ParseError, "truncated frame file"};
    }

    auto get_u32(std::istream & in) -> std::uint32_t
    {
        unsigned char bytes[4];
        get_bytes(in, bytes, 4);
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b)
            v |= static_cast<std::uint32_t>(bytes[b]) << (8 * b);
        return v;
    }

    auto get_f64(std::istream & in) -> double
    {
        unsigned char bytes[8];
        get_bytes(in, bytes, 8);
        std::uint64_t bits = 0;
        for (int b = 0; b < 8; ++b)
            bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
        return std::bit_cast<double>(bits);
    }
}

auto sheafctx::write_frames(std::ostream & out, const vector<Frame> & frames, size_t n_points) -> void
{
    out.write("SLAM", 4);
    put_u32(out, kFrameFormatVersion);
    put_u32(out, static_cast<std::uint32_t>(n_points));
    put_u32(out, static_cast<std::uint32_t>(frames.size()));
    for (auto & f : frames) {
        if (f.rho.size() != n_points || f.phase.size() != n_points)
            throw Error{ErrorCode::InvalidArgument, "frame does not match the declared grid size"};
        put_f64(out, f.time);
        for (auto v : f.rho)
            put_f64(out, v);
        for (auto v : f.phase)
            put_f64(out, v);
    }
    if (! out)
        throw Error{ErrorCode::InvalidArgument, "failed to write frame file"};
}

auto sheafctx::read_frames(std::istream & in) -> vector<Frame>
{
    unsigned char magic[4];
    get_bytes(in, magic, 4);
    if (std::memcmp(magic, "SLAM", 4) != 0)
        throw Error{ErrorCode::ParseError, "not a frame file (bad magic)"};
    auto version = get_u32(in);
    if (version != kFrameFormatVersion)
        throw Error{ErrorCode::ParseError, "unsupported frame file version " + std::to_string(version)};
    auto n = get_u32(in);
    auto count = get_u32(in);

    vector<Frame> frames(count);
    for (auto & f : frames) {
        f.time = get_f64(in);
        f.rho.resize(n);
        f.phase.resize(n);
        for (auto & v : f.rho)
            v = get_f64(in);
        for (auto & v : f.phase)
            v = get_f64(in);
    }
    return frames;
}
