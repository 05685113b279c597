#include <sheafctx/error.hpp>
#include <sheafctx/integer_matrix.hpp>

#include <algorithm>
#include <utility>

using namespace sheafctx;

using std::size_t;
using std::vector;

IntegerMatrix::IntegerMatrix(size_t rows, size_t columns) :
    _rows(rows),
    _columns(columns),
    _data(rows * columns, Integer{0})
{
}

auto IntegerMatrix::identity(size_t n) -> IntegerMatrix
{
    IntegerMatrix m{n, n};
    for (size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

auto IntegerMatrix::is_zero() const -> bool
{
    return std::all_of(_data.begin(), _data.end(), [] (const Integer & v) { return v == 0; });
}

auto IntegerMatrix::row_range(size_t first, size_t last) const -> IntegerMatrix
{
    last = std::min(last, _rows);
    first = std::min(first, last);
    IntegerMatrix m{last - first, _columns};
    for (size_t i = first; i < last; ++i)
        for (size_t j = 0; j < _columns; ++j)
            m(i - first, j) = (*this)(i, j);
    return m;
}

auto IntegerMatrix::column_subset(const vector<size_t> & columns) const -> IntegerMatrix
{
    IntegerMatrix m{_rows, columns.size()};
    for (size_t i = 0; i < _rows; ++i)
        for (size_t k = 0; k < columns.size(); ++k)
            m(i, k) = (*this)(i, columns[k]);
    return m;
}

auto IntegerMatrix::multiply(const vector<Integer> & vector) const -> std::vector<Integer>
{
    if (vector.size() != _columns)
        throw Error{ErrorCode::InvalidArgument, "matrix-vector dimension mismatch"};
    std::vector<Integer> result(_rows, Integer{0});
    for (size_t i = 0; i < _rows; ++i)
        for (size_t j = 0; j < _columns; ++j)
            if ((*this)(i, j) != 0 && vector[j] != 0)
                result[i] += (*this)(i, j) * vector[j];
    return result;
}

auto sheafctx::operator*(const IntegerMatrix & a, const IntegerMatrix & b) -> IntegerMatrix
{
    if (a.columns() != b.rows())
        throw Error{ErrorCode::InvalidArgument, "matrix-matrix dimension mismatch"};
    IntegerMatrix c{a.rows(), b.columns()};
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t k = 0; k < a.columns(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (size_t j = 0; j < b.columns(); ++j)
                if (b(k, j) != 0)
                    c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

namespace
{
    /// Elimination state: every operation on the working matrix is mirrored
    /// into U (rows), V (columns) and V⁻¹ (inverse column operation as rows).
    struct Reducer
    {
        IntegerMatrix a;
        IntegerMatrix u;
        IntegerMatrix v;
        IntegerMatrix vinv;

        auto swap_rows(size_t i, size_t j) -> void
        {
            if (i == j)
                return;
            for (size_t c = 0; c < a.columns(); ++c)
                std::swap(a(i, c), a(j, c));
            for (size_t c = 0; c < u.columns(); ++c)
                std::swap(u(i, c), u(j, c));
        }

        auto swap_columns(size_t i, size_t j) -> void
        {
            if (i == j)
                return;
            for (size_t r = 0; r < a.rows(); ++r)
                std::swap(a(r, i), a(r, j));
            for (size_t r = 0; r < v.rows(); ++r)
                std::swap(v(r, i), v(r, j));
            for (size_t c = 0; c < vinv.columns(); ++c)
                std::swap(vinv(i, c), vinv(j, c));
        }

        /// row target += q · row source
        auto add_row(size_t target, size_t source, const Integer & q) -> void
        {
            for (size_t c = 0; c < a.columns(); ++c)
                if (a(source, c) != 0)
                    a(target, c) += q * a(source, c);
            for (size_t c = 0; c < u.columns(); ++c)
                if (u(source, c) != 0)
                    u(target, c) += q * u(source, c);
        }

        /// column target += q · column source
        auto add_column(size_t target, size_t source, const Integer & q) -> void
        {
            for (size_t r = 0; r < a.rows(); ++r)
                if (a(r, source) != 0)
                    a(r, target) += q * a(r, source);
            for (size_t r = 0; r < v.rows(); ++r)
                if (v(r, source) != 0)
                    v(r, target) += q * v(r, source);
            for (size_t c = 0; c < vinv.columns(); ++c)
                if (vinv(target, c) != 0)
                    vinv(source, c) -= q * vinv(target, c);
        }

        auto negate_row(size_t i) -> void
        {
            for (size_t c = 0; c < a.columns(); ++c)
                a(i, c) = -a(i, c);
            for (size_t c = 0; c < u.columns(); ++c)
                u(i, c) = -u(i, c);
        }

        /// Moves the smallest non-zero entry of the trailing block to (t,t).
        auto place_pivot(size_t t) -> bool
        {
            std::optional<std::pair<size_t, size_t>> best;
            for (size_t i = t; i < a.rows(); ++i)
                for (size_t j = t; j < a.columns(); ++j)
                    if (a(i, j) != 0 && (! best || abs(a(i, j)) < abs(a(best->first, best->second))))
                        best = std::pair{i, j};
            if (! best)
                return false;
            swap_rows(t, best->first);
            swap_columns(t, best->second);
            return true;
        }

        /// Clears row and column t outside the pivot; returns false if a
        /// smaller remainder had to be moved into the pivot position.
        auto clear_cross(size_t t) -> bool
        {
            for (size_t i = t + 1; i < a.rows(); ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q = a(i, t) / a(t, t);
                add_row(i, t, -q);
                if (a(i, t) != 0) {
                    swap_rows(t, i);
                    return false;
                }
            }
            for (size_t j = t + 1; j < a.columns(); ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q = a(t, j) / a(t, t);
                add_column(j, t, -q);
                if (a(t, j) != 0) {
                    swap_columns(t, j);
                    return false;
                }
            }
            return true;
        }

        /// Finds an entry of the trailing block not divisible by the pivot and
        /// folds its row into row t.
        auto enforce_divisibility(size_t t) -> bool
        {
            for (size_t i = t + 1; i < a.rows(); ++i)
                for (size_t j = t + 1; j < a.columns(); ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, Integer{1});
                        return false;
                    }
            return true;
        }
    };
}

auto sheafctx::smith_normal_form(const IntegerMatrix & matrix, size_t limit) -> SmithForm
{
    if (matrix.rows() > limit || matrix.columns() > limit)
        throw Error{ErrorCode::SizeLimitExceeded, "matrix of " + std::to_string(matrix.rows()) + "x"
            + std::to_string(matrix.columns()) + " exceeds the Smith form limit of " + std::to_string(limit)};

    Reducer r{matrix, IntegerMatrix::identity(matrix.rows()), IntegerMatrix::identity(matrix.columns()),
        IntegerMatrix::identity(matrix.columns())};
    SmithForm result;

    auto steps = std::min(matrix.rows(), matrix.columns());
    for (size_t t = 0; t < steps; ++t) {
        if (! r.place_pivot(t))
            break;
        while (true) {
            while (! r.clear_cross(t))
                ;
            if (r.enforce_divisibility(t))
                break;
        }
        if (r.a(t, t) < 0)
            r.negate_row(t);
        result.diagonal.push_back(r.a(t, t));
    }

    result.u = std::move(r.u);
    result.v = std::move(r.v);
    result.inverse_v = std::move(r.vinv);
    return result;
}

auto sheafctx::solve_integer_system(const SmithForm & smith, const vector<Integer> & b) -> std::optional<vector<Integer>>
{
    // A x = b  ⇔  D (V⁻¹ x) = U b.
    auto c = smith.u.multiply(b);
    vector<Integer> z(smith.v.columns(), Integer{0});
    for (size_t i = 0; i < c.size(); ++i) {
        if (i < smith.rank()) {
            if (c[i] % smith.diagonal[i] != 0)
                return std::nullopt;
            z[i] = c[i] / smith.diagonal[i];
        }
        else if (c[i] != 0)
            return std::nullopt;
    }
    return smith.v.multiply(z);
}

auto sheafctx::solve_integer_system(const IntegerMatrix & a, const vector<Integer> & b) -> std::optional<vector<Integer>>
{
    if (b.size() != a.rows())
        throw Error{ErrorCode::InvalidArgument, "right-hand side has the wrong length"};
    return solve_integer_system(smith_normal_form(a), b);
}
