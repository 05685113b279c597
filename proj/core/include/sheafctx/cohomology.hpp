#pragma once

#include <sheafctx/integer_matrix.hpp>
#include <sheafctx/numeric.hpp>
#include <sheafctx/presheaf.hpp>
#include <sheafctx/scenario.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace sheafctx
{
    /// A finite integer combination of sections of one context, keyed by the
    /// outcome tuple in context member order. Zero coefficients are never stored.
    class FreeAbelianSection
    {
        public:
            FreeAbelianSection() = default;
            explicit FreeAbelianSection(Context context);

            /// 1·section
            static auto generator(const LocalSection & section) -> FreeAbelianSection;

            auto context() const -> const Context & { return _context; }
            auto coefficients() const -> const std::map<std::vector<Outcome>, Integer> & { return _coefficients; }
            auto coefficient(const std::vector<Outcome> & outcomes) const -> Integer;
            auto is_zero() const -> bool { return _coefficients.empty(); }

            auto add(const std::vector<Outcome> & outcomes, const Integer & coefficient) -> void;

            auto operator+(const FreeAbelianSection & other) const -> FreeAbelianSection;
            auto operator-(const FreeAbelianSection & other) const -> FreeAbelianSection;
            auto operator-() const -> FreeAbelianSection;
            auto operator==(const FreeAbelianSection &) const -> bool = default;

        private:
            auto check_same_context(const FreeAbelianSection & other) const -> void;

            Context _context;
            std::map<std::vector<Outcome>, Integer> _coefficients;
    };

    /// Linear extension of restriction; coefficients of sections with the
    /// same restriction are summed. Throws NotASubcontext.
    auto zf_restrict(const FreeAbelianSection & section, const Context & subcontext) -> FreeAbelianSection;

    /// One component per nerve vertex, edge or triangle respectively.
    using Cochain0 = std::vector<FreeAbelianSection>;
    using Cochain1 = std::vector<FreeAbelianSection>;
    using Cochain2 = std::vector<FreeAbelianSection>;

    /// (δs)_ij = s_j|C_ij − s_i|C_ij for every edge i < j.
    auto coboundary0(const Cochain0 & cochain, const Nerve & nerve) -> Cochain1;

    /// (δc)_ijk = c_jk| − c_ik| + c_ij| on C_ijk for every triangle i < j < k.
    auto coboundary1(const Cochain1 & cochain, const Nerve & nerve) -> Cochain2;

    /// Integer coboundary matrices over the bases of supported sections.
    /// Vertex bases are the supports; edge and triangle bases are the
    /// sections of the overlap obtained by restricting a supported section of
    /// some cover context containing it. Cells follow nerve order and
    /// sections ascend lexicographically within each cell.
    struct CoboundaryMatrices
    {
        MeasurementScenario scenario;
        Nerve nerve;
        std::vector<std::vector<std::size_t>> vertex_basis;
        std::vector<std::vector<std::size_t>> edge_basis;
        std::vector<std::vector<std::size_t>> triangle_basis;
        std::vector<std::size_t> vertex_offset;
        std::vector<std::size_t> edge_offset;
        std::vector<std::size_t> triangle_offset;
        IntegerMatrix d0;
        IntegerMatrix d1;
    };

    inline constexpr std::size_t kDefaultMatrixLimit = 4096;

    /// Throws SizeLimitExceeded when a dimension exceeds limit. Verifies
    /// D1·D0 = 0 exactly.
    auto build_coboundary_matrices(const SupportModel & support, std::size_t limit = kDefaultMatrixLimit)
        -> CoboundaryMatrices;

    /// Column vector of a 0-cochain whose components live on the vertex bases.
    auto cochain0_vector(const CoboundaryMatrices & matrices, const Cochain0 & cochain) -> std::vector<Integer>;

    struct ObstructionResult
    {
        std::size_t cover_index = 0;
        LocalSection section;
        bool vanishes = false;
        /// A family (r_j) with r_i = 1·section and δr = 0, when one exists.
        std::optional<Cochain0> witness;
    };

    /// Decides whether 1·section in context cover_index extends to an integer
    /// family on the cover with zero coboundary. Throws InvalidArgument when
    /// the section is unsupported.
    auto obstruction(const SupportModel & support, std::size_t cover_index, const LocalSection & section,
            std::size_t limit = kDefaultMatrixLimit) -> ObstructionResult;
    auto obstruction(const CoboundaryMatrices & matrices, std::size_t cover_index, const LocalSection & section)
        -> ObstructionResult;

    struct CechInvariants
    {
        std::size_t h0_rank = 0;
        std::size_t h1_rank = 0;
        /// Invariant factors greater than one of ker D1 / im D0.
        std::vector<Integer> h1_torsion;
    };

    auto cech_invariants(const SupportModel & support, std::size_t limit = kDefaultMatrixLimit) -> CechInvariants;
    auto cech_invariants(const CoboundaryMatrices & matrices) -> CechInvariants;

    struct ObstructionReport
    {
        std::vector<ObstructionResult> sections;
        CechInvariants invariants;
        /// Every supported section has a non-vanishing obstruction.
        bool cohomologically_witnessed = false;
    };

    /// Obstruction for every supported section, parallel over cover contexts.
    auto obstruction_report(const SupportModel & support, std::size_t threads = 0,
            std::size_t limit = kDefaultMatrixLimit) -> ObstructionReport;
}
