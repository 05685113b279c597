#pragma once

#include <sheafctx/error.hpp>
#include <sheafctx/numeric.hpp>

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace sheafctx
{
    enum class ConstraintSense
    {
        LessEqual,
        Equal
    };

    enum class LpStatus
    {
        Optimal,
        Infeasible,
        Unbounded
    };

    /// maximize objective·x  subject to  rows[i]·x (sense[i]) rhs[i],  x >= 0,
    /// with every rhs[i] >= 0.
    template <typename Scalar>
    struct LinearProgram
    {
        std::size_t variables = 0;
        std::vector<std::vector<Scalar>> rows;
        std::vector<ConstraintSense> senses;
        std::vector<Scalar> rhs;
        std::vector<Scalar> objective;
    };

    template <typename Scalar>
    struct LpSolution
    {
        LpStatus status = LpStatus::Optimal;
        Scalar objective{};
        std::vector<Scalar> x;
        /// When infeasible: y with y·rows[i] summed <= 0 columnwise, y[i] <= 0 on
        /// LessEqual rows and y·rhs > 0, which no x >= 0 can satisfy.
        std::vector<Scalar> farkas;
        std::size_t pivots = 0;
    };

    template <typename Scalar>
    struct SimplexTolerance;

    template <>
    struct SimplexTolerance<Rational>
    {
        static auto positive(const Rational & v) -> bool { return v > 0; }
        static auto negative(const Rational & v) -> bool { return v < 0; }
        static auto pivotable(const Rational & v) -> bool { return v > 0; }
        static auto nonzero(const Rational & v) -> bool { return v != 0; }
    };

    template <>
    struct SimplexTolerance<double>
    {
        static constexpr double feasibility = kFloatTolerance;
        static constexpr double pivot = 1e-12;
        static auto positive(double v) -> bool { return v > feasibility; }
        static auto negative(double v) -> bool { return v < -feasibility; }
        static auto pivotable(double v) -> bool { return v > pivot; }
        static auto nonzero(double v) -> bool { return std::abs(v) > pivot; }
    };

    inline constexpr std::size_t kDefaultPivotLimit = 1'000'000;

    namespace detail
    {
        /// Dense tableau with Bland's anti-cycling rule. Columns are the
        /// structural variables, then one slack per LessEqual row, then one
        /// artificial per Equal row.
        template <typename Scalar>
        class Tableau
        {
            public:
                using Tol = SimplexTolerance<Scalar>;

                Tableau(const LinearProgram<Scalar> & lp, std::size_t pivot_limit) :
                    _structural(lp.variables),
                    _rows(lp.rows.size()),
                    _pivot_limit(pivot_limit)
                {
                    if (lp.senses.size() != _rows || lp.rhs.size() != _rows)
                        throw Error{ErrorCode::InvalidArgument, "linear program rows, senses and rhs disagree"};

                    std::size_t extra = _rows;
                    _columns = _structural + extra;
                    _t.assign(_rows, std::vector<Scalar>(_columns + 1, Scalar{0}));
                    _basis.resize(_rows);
                    _unit_column.resize(_rows);
                    _artificial.assign(_columns, false);

                    for (std::size_t i = 0; i < _rows; ++i) {
                        if (lp.rows[i].size() != _structural)
                            throw Error{ErrorCode::InvalidArgument, "linear program row has the wrong width"};
                        if (Tol::negative(lp.rhs[i]))
                            throw Error{ErrorCode::InvalidArgument, "linear program right-hand sides must be non-negative"};
                        for (std::size_t j = 0; j < _structural; ++j)
                            _t[i][j] = lp.rows[i][j];
                        auto unit = _structural + i;
                        _t[i][unit] = Scalar{1};
                        _t[i][_columns] = lp.rhs[i];
                        _basis[i] = unit;
                        _unit_column[i] = unit;
                        _artificial[unit] = lp.senses[i] == ConstraintSense::Equal;
                    }
                }

                auto has_artificials() const -> bool
                {
                    for (std::size_t i = 0; i < _rows; ++i)
                        if (_artificial[_unit_column[i]])
                            return true;
                    return false;
                }

                auto phase_one_cost() const -> std::vector<Scalar>
                {
                    std::vector<Scalar> cost(_columns, Scalar{0});
                    for (std::size_t j = 0; j < _columns; ++j)
                        if (_artificial[j])
                            cost[j] = Scalar{-1};
                    return cost;
                }

                auto phase_two_cost(const std::vector<Scalar> & objective) const -> std::vector<Scalar>
                {
                    std::vector<Scalar> cost(_columns, Scalar{0});
                    for (std::size_t j = 0; j < _structural; ++j)
                        cost[j] = objective[j];
                    return cost;
                }

                /// Returns false when the problem is unbounded along some column.
                auto optimise(const std::vector<Scalar> & cost, bool allow_artificial) -> bool
                {
                    while (true) {
                        auto entering = entering_column(cost, allow_artificial);
                        if (entering == npos)
                            return true;

                        std::size_t leaving = npos;
                        Scalar best{};
                        for (std::size_t i = 0; i < _rows; ++i) {
                            if (! Tol::pivotable(_t[i][entering]))
                                continue;
                            Scalar ratio = _t[i][_columns] / _t[i][entering];
                            if (leaving == npos || ratio < best || (ratio == best && _basis[i] < _basis[leaving])) {
                                leaving = i;
                                best = ratio;
                            }
                        }
                        if (leaving == npos)
                            return false;
                        pivot(leaving, entering);
                    }
                }

                auto objective_value(const std::vector<Scalar> & cost) const -> Scalar
                {
                    Scalar value{0};
                    for (std::size_t i = 0; i < _rows; ++i)
                        value += cost[_basis[i]] * _t[i][_columns];
                    return value;
                }

                auto reduced_cost(const std::vector<Scalar> & cost, std::size_t column) const -> Scalar
                {
                    Scalar r = -cost[column];
                    for (std::size_t i = 0; i < _rows; ++i)
                        if (Tol::nonzero(_t[i][column]))
                            r += cost[_basis[i]] * _t[i][column];
                    return r;
                }

                /// Dual multipliers y = -c_B B^{-1} of the phase-one problem.
                auto farkas(const std::vector<Scalar> & cost) const -> std::vector<Scalar>
                {
                    std::vector<Scalar> y(_rows);
                    for (std::size_t i = 0; i < _rows; ++i) {
                        auto column = _unit_column[i];
                        y[i] = -(reduced_cost(cost, column) + cost[column]);
                    }
                    return y;
                }

                /// Pivots zero-level artificials out of the basis; rows where that
                /// is impossible are redundant and stay pinned at zero.
                auto expel_artificials() -> void
                {
                    for (std::size_t i = 0; i < _rows; ++i) {
                        if (! _artificial[_basis[i]])
                            continue;
                        for (std::size_t j = 0; j < _columns; ++j)
                            if (! _artificial[j] && Tol::nonzero(_t[i][j])) {
                                pivot(i, j);
                                break;
                            }
                    }
                }

                auto solution() const -> std::vector<Scalar>
                {
                    std::vector<Scalar> x(_structural, Scalar{0});
                    for (std::size_t i = 0; i < _rows; ++i)
                        if (_basis[i] < _structural)
                            x[_basis[i]] = _t[i][_columns];
                    return x;
                }

                auto pivots() const -> std::size_t { return _pivots; }

            private:
                static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

                auto entering_column(const std::vector<Scalar> & cost, bool allow_artificial) const -> std::size_t
                {
                    std::vector<bool> basic(_columns, false);
                    for (auto b : _basis)
                        basic[b] = true;
                    for (std::size_t j = 0; j < _columns; ++j) {
                        if (basic[j] || (_artificial[j] && ! allow_artificial))
                            continue;
                        if (Tol::negative(reduced_cost(cost, j)))
                            return j;
                    }
                    return npos;
                }

                auto pivot(std::size_t row, std::size_t column) -> void
                {
                    if (++_pivots > _pivot_limit)
                        throw Error{ErrorCode::SolverBudgetExceeded, "simplex exceeded "
                            + std::to_string(_pivot_limit) + " pivots"};

                    Scalar p = _t[row][column];
                    for (auto & v : _t[row])
                        v /= p;
                    for (std::size_t i = 0; i < _rows; ++i) {
                        if (i == row || ! Tol::nonzero(_t[i][column]))
                            continue;
                        Scalar factor = _t[i][column];
                        for (std::size_t j = 0; j <= _columns; ++j)
                            if (Tol::nonzero(_t[row][j]))
                                _t[i][j] -= factor * _t[row][j];
                    }
                    _basis[row] = column;
                }

                std::size_t _structural;
                std::size_t _rows;
                std::size_t _columns = 0;
                std::size_t _pivot_limit;
                std::size_t _pivots = 0;
                std::vector<std::vector<Scalar>> _t;
                std::vector<std::size_t> _basis;
                std::vector<std::size_t> _unit_column;
                std::vector<bool> _artificial;
        };
    }

    /// Two-phase primal simplex. Throws SolverBudgetExceeded past pivot_limit.
    template <typename Scalar>
    auto solve_lp(const LinearProgram<Scalar> & lp, std::size_t pivot_limit = kDefaultPivotLimit) -> LpSolution<Scalar>
    {
        if (lp.objective.size() != lp.variables)
            throw Error{ErrorCode::InvalidArgument, "objective has the wrong width"};

        detail::Tableau<Scalar> tableau{lp, pivot_limit};
        LpSolution<Scalar> result;

        if (tableau.has_artificials()) {
            auto cost = tableau.phase_one_cost();
            tableau.optimise(cost, true);
            if (SimplexTolerance<Scalar>::negative(tableau.objective_value(cost))) {
                result.status = LpStatus::Infeasible;
                result.farkas = tableau.farkas(cost);
                result.pivots = tableau.pivots();
                return result;
            }
            tableau.expel_artificials();
        }

        auto cost = tableau.phase_two_cost(lp.objective);
        if (! tableau.optimise(cost, false)) {
            result.status = LpStatus::Unbounded;
            result.pivots = tableau.pivots();
            return result;
        }

        result.status = LpStatus::Optimal;
        result.x = tableau.solution();
        result.objective = tableau.objective_value(cost);
        result.pivots = tableau.pivots();
        return result;
    }
}
