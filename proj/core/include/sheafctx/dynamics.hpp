#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sheafctx
{
    using Complex = std::complex<double>;
    using ComplexField = std::vector<Complex>;
    using RealField = std::vector<double>;

    /// Periodic grid x_j = -length/2 + j·dx, j = 0..n-1.
    class Grid
    {
        public:
            /// Throws InvalidArgument unless n is a power of two >= 64 and length > 0.
            Grid(std::size_t n_points, double length);

            auto n_points() const -> std::size_t { return _n; }
            auto length() const -> double { return _length; }
            auto dx() const -> double { return _length / static_cast<double>(_n); }
            auto x(std::size_t j) const -> double { return -_length / 2 + static_cast<double>(j) * dx(); }
            auto coordinates() const -> RealField;
            /// Angular wavenumbers in FFT order.
            auto wavenumbers() const -> RealField;

        private:
            std::size_t _n;
            double _length;
    };

    enum class LaplacianScheme
    {
        Spectral,
        /// Centred second differences.
        FiniteDifference
    };

    inline constexpr double kDensityFloor = 1e-14;
    inline constexpr double kDefaultCfl = 0.2;
    inline constexpr double kCollapseFraction = 0.1;

    struct PhysicalParams
    {
        double hbar = 1.0;
        double mass = 1.0;
        /// Diffusion parameter; when set, hbar − mass·sigma is reported.
        std::optional<double> sigma;
        double lambda = 1.0;
        /// Sampled on the grid; empty means V = 0.
        RealField potential;
        double cfl = kDefaultCfl;
        double density_floor = kDensityFloor;
        LaplacianScheme scheme = LaplacianScheme::Spectral;
    };

    /// Throws InvalidArgument on non-positive hbar or mass, lambda outside
    /// [0,1], negative sigma, or a potential of the wrong length.
    auto validate(const PhysicalParams & params, const Grid & grid) -> void;

    /// hbar − mass·sigma, or nothing when sigma is unset.
    auto hbar_sigma_mismatch(const PhysicalParams & params) -> std::optional<double>;

    /// Largest dt accepted by step().
    auto max_stable_dt(const Grid & grid, const PhysicalParams & params) -> double;

    /// ψ = √ρ·exp(iS/ħ) on the grid.
    struct LambdaState
    {
        RealField rho;
        RealField phase;
        double time = 0.0;
    };

    auto polar_compose(const LambdaState & state, double hbar) -> ComplexField;

    /// ρ = |ψ|², S = ħ·arg ψ unwrapped along the grid. Where ρ <= floor the
    /// phase is undefined; those points are listed in undefined_phase and
    /// filled by linear interpolation between the nearest defined neighbours.
    struct PolarResult
    {
        LambdaState state;
        std::vector<std::size_t> undefined_phase;
    };

    auto polar_decompose(const ComplexField & psi, double hbar, double floor = kDensityFloor, double time = 0.0)
        -> PolarResult;

    /// Q = −(ħ²/2m)·∇²√ρ/√ρ with ρ floored at params.density_floor.
    auto quantum_potential(const RealField & rho, const Grid & grid, const PhysicalParams & params) -> RealField;

    struct Observables
    {
        double time = 0.0;
        double norm = 0.0;
        double mean_x = 0.0;
        double width = 0.0;
        double visibility = 0.0;
        /// ∫ ħ²/2m |ψ'|² − (1−λ)·ħ²/2m |(√ρ)'|² + Vρ dx, recorded as a diagnostic.
        double energy = 0.0;
    };

    /// Half-width of the visibility window; nothing means the whole grid.
    using VisibilityWindow = std::optional<double>;

    auto measure(const ComplexField & psi, const Grid & grid, const PhysicalParams & params, double time,
            VisibilityWindow window = std::nullopt) -> Observables;

    /// Strang splitting: half kinetic step (spectral), potential kick with
    /// V + (λ−1)·Q evaluated at the midpoint density, half kinetic step.
    class Propagator
    {
        public:
            /// Throws StabilityViolation when dt exceeds max_stable_dt.
            Propagator(Grid grid, PhysicalParams params, double dt);
            ~Propagator();
            Propagator(const Propagator &) = delete;
            auto operator=(const Propagator &) -> Propagator & = delete;

            /// Throws DensityCollapse when the density floor covers more than
            /// 10% of the grid while Q is needed.
            auto step(ComplexField & psi) -> void;

            auto grid() const -> const Grid & { return _grid; }
            auto params() const -> const PhysicalParams & { return _params; }
            auto dt() const -> double { return _dt; }

        private:
            auto kinetic_half(ComplexField & psi) -> void;

            struct Plans;

            Grid _grid;
            PhysicalParams _params;
            double _dt;
            ComplexField _kinetic;
            RealField _k;
            std::unique_ptr<Plans> _plans;
    };

    /// One step on the polar pair.
    auto step(const LambdaState & state, double dt, const Grid & grid, const PhysicalParams & params) -> LambdaState;

    struct Frame
    {
        double time = 0.0;
        RealField rho;
        RealField phase;
    };

    struct EvolveOptions
    {
        double t_final = 1.0;
        /// Upper bound on the step; the run takes ceil(t_final/dt) equal steps.
        double dt = 1e-3;
        std::size_t record_every = 1;
        VisibilityWindow window;
        bool keep_frames = false;
    };

    struct EvolutionResult
    {
        /// At step 0, every record_every steps, and at the final step.
        std::vector<Observables> records;
        std::vector<Frame> frames;
        ComplexField final_psi;
        double dt = 0.0;
        std::size_t steps = 0;
    };

    auto step_count(double t_final, double dt) -> std::size_t;

    auto evolve(const ComplexField & initial, const Grid & grid, const PhysicalParams & params,
            const EvolveOptions & options) -> EvolutionResult;

    /// Independent runs at each lambda, executed in parallel.
    auto lambda_sweep(const ComplexField & initial, const Grid & grid, const PhysicalParams & params,
            const std::vector<double> & lambdas, const EvolveOptions & options, std::size_t threads = 0)
        -> std::vector<EvolutionResult>;

    /// A monotone map from the diffusion parameter to lambda. The default is
    /// clamp(m·σ/ħ, 0, 1); a table is piecewise linear through its points
    /// and clamped beyond them.
    class LambdaMap
    {
        public:
            LambdaMap() = default;

            /// Throws NonMonotoneMap unless sigma strictly increases and lambda
            /// never decreases; InvalidArgument for lambda outside [0,1] or an
            /// empty table.
            static auto from_table(std::vector<std::pair<double, double>> points) -> LambdaMap;

            auto is_default() const -> bool { return _points.empty(); }
            auto points() const -> const std::vector<std::pair<double, double>> & { return _points; }

            auto operator()(double sigma, const PhysicalParams & params) const -> double;

        private:
            std::vector<std::pair<double, double>> _points;
    };

    /// Throws InvalidArgument for negative sigma.
    auto lambda_from_sigma(double sigma, const PhysicalParams & params, const LambdaMap & map = {}) -> double;

    /// Discretely normalised (2πσ₀²)^(-1/4)·exp(−(x−μ)²/4σ₀² + i·p·x/ħ).
    auto gaussian_state(const Grid & grid, double mu, double sigma0, double momentum = 0.0, double hbar = 1.0)
        -> ComplexField;

    /// Two Gaussians at ±sep/2, normalised, plus a constant pedestal, then
    /// normalised again.
    auto two_gaussian_state(const Grid & grid, double separation, double sigma0, double pedestal = 0.0) -> ComplexField;

    auto harmonic_potential(const Grid & grid, double stiffness) -> RealField;

    /// Σ|ψ|²·dx
    auto norm(const ComplexField & psi, const Grid & grid) -> double;

    /// Binary frame file: 16-byte header (magic "SLAM", then little-endian
    /// uint32 version, n_points, record count), then per record a float64
    /// time followed by n_points float64 densities and n_points float64 phases.
    inline constexpr std::uint32_t kFrameFormatVersion = 1;

    auto write_frames(std::ostream & out, const std::vector<Frame> & frames, std::size_t n_points) -> void;
    auto read_frames(std::istream & in) -> std::vector<Frame>;
}
