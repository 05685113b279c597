#include <sheafctx/cohomology.hpp>
#include <sheafctx/error.hpp>
#include <sheafctx/parallel.hpp>

#include <algorithm>
#include <stdexcept>

using namespace sheafctx;

using std::size_t;
using std::vector;

FreeAbelianSection::FreeAbelianSection(Context context) :
    _context(std::move(context))
{
}

auto FreeAbelianSection::generator(const LocalSection & section) -> FreeAbelianSection
{
    FreeAbelianSection result{section.context};
    result.add(section.outcomes, Integer{1});
    return result;
}

auto FreeAbelianSection::coefficient(const vector<Outcome> & outcomes) const -> Integer
{
    auto it = _coefficients.find(outcomes);
    return it == _coefficients.end() ? Integer{0} : it->second;
}

auto FreeAbelianSection::add(const vector<Outcome> & outcomes, const Integer & coefficient) -> void
{
    if (outcomes.size() != _context.size())
        throw Error{ErrorCode::InvalidContext, "section does not assign every member of its context"};
    if (coefficient == 0)
        return;
    auto [it, inserted] = _coefficients.try_emplace(outcomes, coefficient);
    if (! inserted) {
        it->second += coefficient;
        if (it->second == 0)
            _coefficients.erase(it);
    }
}

auto FreeAbelianSection::check_same_context(const FreeAbelianSection & other) const -> void
{
    if (_context != other._context)
        throw Error{ErrorCode::InvalidContext, "cannot combine sections of different contexts"};
}

auto FreeAbelianSection::operator+(const FreeAbelianSection & other) const -> FreeAbelianSection
{
    check_same_context(other);
    auto result = *this;
    for (auto & [outcomes, c] : other._coefficients)
        result.add(outcomes, c);
    return result;
}

auto FreeAbelianSection::operator-() const -> FreeAbelianSection
{
    auto result = *this;
    for (auto & [outcomes, c] : result._coefficients)
        c = -c;
    return result;
}

auto FreeAbelianSection::operator-(const FreeAbelianSection & other) const -> FreeAbelianSection
{
    return *this + (-other);
}

auto sheafctx::zf_restrict(const FreeAbelianSection & section, const Context & subcontext) -> FreeAbelianSection
{
    if (! subcontext.is_subset_of(section.context()))
        throw Error{ErrorCode::NotASubcontext, "restriction target is not contained in the section's context"};

    vector<size_t> positions;
    for (auto m : subcontext.members())
        positions.push_back(*section.context().position_of(m));

    FreeAbelianSection result{subcontext};
    vector<Outcome> sub(positions.size());
    for (auto & [outcomes, c] : section.coefficients()) {
        for (size_t k = 0; k < positions.size(); ++k)
            sub[k] = outcomes[positions[k]];
        result.add(sub, c);
    }
    return result;
}

auto sheafctx::coboundary0(const Cochain0 & cochain, const Nerve & nerve) -> Cochain1
{
    if (cochain.size() != nerve.vertices.size())
        throw Error{ErrorCode::InvalidArgument, "0-cochain must have one component per cover context"};
    Cochain1 result;
    for (auto & e : nerve.edges)
        result.push_back(zf_restrict(cochain[e.second], e.overlap) - zf_restrict(cochain[e.first], e.overlap));
    return result;
}

auto sheafctx::coboundary1(const Cochain1 & cochain, const Nerve & nerve) -> Cochain2
{
    if (cochain.size() != nerve.edges.size())
        throw Error{ErrorCode::InvalidArgument, "1-cochain must have one component per nerve edge"};
    Cochain2 result;
    for (auto & t : nerve.triangles)
        result.push_back(zf_restrict(cochain[t.edge_12], t.overlap) - zf_restrict(cochain[t.edge_02], t.overlap)
                + zf_restrict(cochain[t.edge_01], t.overlap));
    return result;
}

namespace
{
    auto offsets(const vector<vector<size_t>> & bases) -> vector<size_t>
    {
        vector<size_t> result;
        size_t total = 0;
        for (auto & b : bases) {
            result.push_back(total);
            total += b.size();
        }
        result.push_back(total);
        return result;
    }

    auto position_in(const vector<size_t> & basis, size_t section) -> size_t
    {
        auto it = std::lower_bound(basis.begin(), basis.end(), section);
        if (it == basis.end() || *it != section)
            throw std::logic_error("restricted section missing from its cell basis");
        return static_cast<size_t>(it - basis.begin());
    }

    auto check_limit(size_t dimension, size_t limit, const char * what) -> void
    {
        if (dimension > limit)
            throw Error{ErrorCode::SizeLimitExceeded, std::string{what} + " has dimension " + std::to_string(dimension)
                + ", above the limit of " + std::to_string(limit)};
    }
}

auto sheafctx::build_coboundary_matrices(const SupportModel & support, size_t limit) -> CoboundaryMatrices
{
    CoboundaryMatrices m;
    m.scenario = support.scenario();
    auto & scenario = m.scenario;
    m.nerve = build_nerve(scenario);

    for (size_t i = 0; i < scenario.cover_size(); ++i)
        m.vertex_basis.push_back(support.support(i));
    for (auto & e : m.nerve.edges)
        m.edge_basis.push_back(support.restricted_support(e.overlap));
    for (auto & t : m.nerve.triangles)
        m.triangle_basis.push_back(support.restricted_support(t.overlap));

    m.vertex_offset = offsets(m.vertex_basis);
    m.edge_offset = offsets(m.edge_basis);
    m.triangle_offset = offsets(m.triangle_basis);

    auto n0 = m.vertex_offset.back(), n1 = m.edge_offset.back(), n2 = m.triangle_offset.back();
    check_limit(n0, limit, "C0");
    check_limit(n1, limit, "C1");
    check_limit(n2, limit, "C2");

    m.d0 = IntegerMatrix{n1, n0};
    for (size_t e = 0; e < m.nerve.edges.size(); ++e) {
        auto & edge = m.nerve.edges[e];
        for (auto [vertex, sign] : {std::pair{edge.first, -1}, std::pair{edge.second, 1}}) {
            auto map = restriction_indices(scenario, scenario.context(vertex), edge.overlap);
            for (size_t k = 0; k < m.vertex_basis[vertex].size(); ++k) {
                auto row = m.edge_offset[e] + position_in(m.edge_basis[e], map[m.vertex_basis[vertex][k]]);
                m.d0(row, m.vertex_offset[vertex] + k) += sign;
            }
        }
    }

    m.d1 = IntegerMatrix{n2, n1};
    for (size_t t = 0; t < m.nerve.triangles.size(); ++t) {
        auto & tri = m.nerve.triangles[t];
        for (auto [e, sign] : {std::pair{tri.edge_12, 1}, std::pair{tri.edge_02, -1}, std::pair{tri.edge_01, 1}}) {
            auto map = restriction_indices(scenario, m.nerve.edges[e].overlap, tri.overlap);
            for (size_t k = 0; k < m.edge_basis[e].size(); ++k) {
                auto row = m.triangle_offset[t] + position_in(m.triangle_basis[t], map[m.edge_basis[e][k]]);
                m.d1(row, m.edge_offset[e] + k) += sign;
            }
        }
    }

    if (! (m.d1 * m.d0).is_zero())
        throw std::logic_error("coboundary matrices do not compose to zero");
    return m;
}

auto sheafctx::cochain0_vector(const CoboundaryMatrices & matrices, const Cochain0 & cochain) -> vector<Integer>
{
    if (cochain.size() != matrices.vertex_basis.size())
        throw Error{ErrorCode::InvalidArgument, "0-cochain must have one component per cover context"};
    vector<Integer> x(matrices.vertex_offset.back(), Integer{0});
    for (size_t i = 0; i < cochain.size(); ++i) {
        auto & context = matrices.scenario.context(i);
        if (cochain[i].context() != context)
            throw Error{ErrorCode::InvalidContext, "0-cochain component lives on the wrong context"};
        for (auto & [outcomes, c] : cochain[i].coefficients()) {
            auto index = section_index(matrices.scenario, LocalSection{context, outcomes});
            auto & basis = matrices.vertex_basis[i];
            auto it = std::lower_bound(basis.begin(), basis.end(), index);
            if (it == basis.end() || *it != index)
                throw Error{ErrorCode::InvalidArgument, "0-cochain uses an unsupported section"};
            x[matrices.vertex_offset[i] + static_cast<size_t>(it - basis.begin())] = c;
        }
    }
    return x;
}

namespace
{
    /// D0 with the columns of one vertex block removed, and its Smith form.
    struct ReducedSystem
    {
        vector<size_t> kept_columns;
        SmithForm smith;
    };

    auto reduced_system(const CoboundaryMatrices & m, size_t cover_index) -> ReducedSystem
    {
        ReducedSystem r;
        for (size_t c = 0; c < m.vertex_offset.back(); ++c)
            if (c < m.vertex_offset[cover_index] || c >= m.vertex_offset[cover_index + 1])
                r.kept_columns.push_back(c);
        r.smith = smith_normal_form(m.d0.column_subset(r.kept_columns), std::max(m.d0.rows(), m.d0.columns()));
        return r;
    }

    auto solve_with(const CoboundaryMatrices & m, const ReducedSystem & system, size_t cover_index,
            const LocalSection & section) -> ObstructionResult
    {
        auto & scenario = m.scenario;
        if (section.context != scenario.context(cover_index))
            throw Error{ErrorCode::InvalidContext, "section does not belong to cover context " + scenario.label(section.context)};
        auto index = section_index(scenario, section);
        auto & basis = m.vertex_basis[cover_index];
        auto it = std::lower_bound(basis.begin(), basis.end(), index);
        if (it == basis.end() || *it != index)
            throw Error{ErrorCode::InvalidArgument, "section is not in the support of " + scenario.label(section.context)};
        auto column = m.vertex_offset[cover_index] + static_cast<size_t>(it - basis.begin());

        vector<Integer> rhs(m.d0.rows());
        for (size_t r = 0; r < m.d0.rows(); ++r)
            rhs[r] = -m.d0(r, column);

        ObstructionResult result{cover_index, section, false, std::nullopt};
        auto y = solve_integer_system(system.smith, rhs);
        if (! y)
            return result;

        result.vanishes = true;
        Cochain0 witness;
        for (size_t v = 0; v < m.vertex_basis.size(); ++v)
            witness.emplace_back(scenario.context(v));
        witness[cover_index].add(section.outcomes, Integer{1});
        for (size_t k = 0; k < system.kept_columns.size(); ++k) {
            auto c = system.kept_columns[k];
            auto v = static_cast<size_t>(std::upper_bound(m.vertex_offset.begin(), m.vertex_offset.end(), c)
                    - m.vertex_offset.begin()) - 1;
            auto s = section_at(scenario, scenario.context(v), m.vertex_basis[v][c - m.vertex_offset[v]]);
            witness[v].add(s.outcomes, (*y)[k]);
        }
        result.witness = std::move(witness);
        return result;
    }
}

auto sheafctx::obstruction(const CoboundaryMatrices & matrices, size_t cover_index, const LocalSection & section)
    -> ObstructionResult
{
    if (cover_index >= matrices.vertex_basis.size())
        throw Error{ErrorCode::InvalidArgument, "cover index out of range"};
    return solve_with(matrices, reduced_system(matrices, cover_index), cover_index, section);
}

auto sheafctx::obstruction(const SupportModel & support, size_t cover_index, const LocalSection & section, size_t limit)
    -> ObstructionResult
{
    return obstruction(build_coboundary_matrices(support, limit), cover_index, section);
}

auto sheafctx::cech_invariants(const CoboundaryMatrices & m) -> CechInvariants
{
    CechInvariants inv;
    auto n0 = m.d0.columns(), n1 = m.d0.rows();
    auto limit = std::max({n0, n1, m.d1.rows()});

    auto smith0 = smith_normal_form(m.d0, limit);
    inv.h0_rank = n0 - smith0.rank();

    // ker D1 has coordinates (V1⁻¹ x)[r1:], so im D0 inside it is spanned by
    // the trailing rows of V1⁻¹·D0.
    auto smith1 = smith_normal_form(m.d1, limit);
    auto r1 = smith1.rank();
    auto image = (smith1.inverse_v * m.d0).row_range(r1, n1);
    auto smith_image = smith_normal_form(image, limit);

    inv.h1_rank = (n1 - r1) - smith_image.rank();
    for (auto & d : smith_image.diagonal)
        if (d > 1)
            inv.h1_torsion.push_back(d);
    return inv;
}

auto sheafctx::cech_invariants(const SupportModel & support, size_t limit) -> CechInvariants
{
    return cech_invariants(build_coboundary_matrices(support, limit));
}

auto sheafctx::obstruction_report(const SupportModel & support, size_t threads, size_t limit) -> ObstructionReport
{
    auto matrices = build_coboundary_matrices(support, limit);
    auto & scenario = matrices.scenario;

    vector<vector<ObstructionResult>> per_context(scenario.cover_size());
    parallel_for(scenario.cover_size(), threads, [&] (size_t i) {
            auto system = reduced_system(matrices, i);
            for (auto & section : support.supported_sections(i))
                per_context[i].push_back(solve_with(matrices, system, i, section));
            });

    ObstructionReport report;
    report.cohomologically_witnessed = true;
    for (auto & results : per_context)
        for (auto & r : results) {
            report.cohomologically_witnessed = report.cohomologically_witnessed && ! r.vanishes;
            report.sections.push_back(std::move(r));
        }
    report.invariants = cech_invariants(matrices);
    return report;
}
