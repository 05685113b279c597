#pragma once

#include <sheafctx/numeric.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace sheafctx
{
    /// Dense row-major matrix over arbitrary-precision integers.
    class IntegerMatrix
    {
        public:
            IntegerMatrix() = default;
            IntegerMatrix(std::size_t rows, std::size_t columns);

            static auto identity(std::size_t n) -> IntegerMatrix;

            auto rows() const -> std::size_t { return _rows; }
            auto columns() const -> std::size_t { return _columns; }

            auto operator()(std::size_t row, std::size_t column) -> Integer & { return _data[row * _columns + column]; }
            auto operator()(std::size_t row, std::size_t column) const -> const Integer & { return _data[row * _columns + column]; }

            auto is_zero() const -> bool;
            auto row_range(std::size_t first, std::size_t last) const -> IntegerMatrix;
            auto column_subset(const std::vector<std::size_t> & columns) const -> IntegerMatrix;
            auto multiply(const std::vector<Integer> & vector) const -> std::vector<Integer>;

            auto operator==(const IntegerMatrix &) const -> bool = default;

        private:
            std::size_t _rows = 0;
            std::size_t _columns = 0;
            std::vector<Integer> _data;
    };

    auto operator*(const IntegerMatrix & a, const IntegerMatrix & b) -> IntegerMatrix;

    /// U·A·V = D with U, V unimodular, D diagonal, diagonal[k] > 0 and
    /// diagonal[k] dividing diagonal[k+1]. inverse_v is V⁻¹.
    struct SmithForm
    {
        IntegerMatrix u;
        IntegerMatrix v;
        IntegerMatrix inverse_v;
        std::vector<Integer> diagonal;

        auto rank() const -> std::size_t { return diagonal.size(); }
    };

    /// Throws SizeLimitExceeded when either dimension exceeds limit.
    auto smith_normal_form(const IntegerMatrix & matrix, std::size_t limit = 4096) -> SmithForm;

    /// An integer solution of A·x = b, if one exists.
    auto solve_integer_system(const IntegerMatrix & a, const std::vector<Integer> & b) -> std::optional<std::vector<Integer>>;
    auto solve_integer_system(const SmithForm & smith, const std::vector<Integer> & b) -> std::optional<std::vector<Integer>>;
}
