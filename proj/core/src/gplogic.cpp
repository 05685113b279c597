#include <sheafctx/error.hpp>
#include <sheafctx/gplogic.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>

using namespace sheafctx;

using std::size_t;
using std::string;
using std::string_view;
using std::vector;

auto sheafctx::to_string(ThreeValue value) -> string_view
{
    switch (value) {
        case ThreeValue::False: return "F";
        case ThreeValue::Unknown: return "U";
        case ThreeValue::True: return "T";
    }
    return "?";
}

auto sheafctx::conjunction(ThreeValue a, ThreeValue b) -> ThreeValue
{
    return std::min(a, b);
}

auto sheafctx::disjunction(ThreeValue a, ThreeValue b) -> ThreeValue
{
    return std::max(a, b);
}

auto sheafctx::implication(ThreeValue a, ThreeValue b) -> ThreeValue
{
    return a <= b ? ThreeValue::True : b;
}

auto sheafctx::negation(ThreeValue a) -> ThreeValue
{
    return implication(a, ThreeValue::False);
}

auto Proposition::atom(ObservableIndex observable, Outcome outcome) -> Proposition
{
    Proposition p;
    p.kind = Kind::Atom;
    p.observable = observable;
    p.outcome = outcome;
    return p;
}

auto Proposition::negate(Proposition operand) -> Proposition
{
    Proposition p;
    p.kind = Kind::Not;
    p.operands.push_back(std::move(operand));
    return p;
}

auto Proposition::binary(Kind kind, Proposition left, Proposition right) -> Proposition
{
    if (kind == Kind::Atom || kind == Kind::Not)
        throw Error{ErrorCode::InvalidArgument, "not a binary connective"};
    Proposition p;
    p.kind = kind;
    p.operands.push_back(std::move(left));
    p.operands.push_back(std::move(right));
    return p;
}

auto Proposition::observables() const -> vector<ObservableIndex>
{
    vector<ObservableIndex> result;
    auto collect = [&] (auto & self, const Proposition & p) -> void {
        if (p.kind == Kind::Atom)
            result.push_back(p.observable);
        for (auto & q : p.operands)
            self(self, q);
    };
    collect(collect, *this);
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

namespace
{
    class Parser
    {
        public:
            Parser(string_view text, const MeasurementScenario & scenario) :
                _text(text),
                _scenario(scenario)
            {
            }

            auto parse() -> Proposition
            {
                auto p = implies();
                skip_space();
                if (_pos != _text.size())
                    fail("unexpected '" + string{_text.substr(_pos, 1)} + "'");
                return p;
            }

        private:
            [[noreturn]] auto fail(const string & message) const -> void
            {
                throw Error{ErrorCode::ParseError, message + " at offset " + std::to_string(_pos)
                    + " in \"" + string{_text} + "\""};
            }

            auto skip_space() -> void
            {
                while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
            }

            auto accept(string_view token) -> bool
            {
                skip_space();
                if (_text.substr(_pos, token.size()) == token) {
                    _pos += token.size();
                    return true;
                }
                return false;
            }

            auto implies() -> Proposition
            {
                auto left = disjunction();
                if (accept("->"))
                    return Proposition::binary(Proposition::Kind::Implies, std::move(left), implies());
                return left;
            }

            auto disjunction() -> Proposition
            {
                auto left = conjunction();
                while (accept("|"))
                    left = Proposition::binary(Proposition::Kind::Or, std::move(left), conjunction());
                return left;
            }

            auto conjunction() -> Proposition
            {
                auto left = unary();
                while (accept("&"))
                    left = Proposition::binary(Proposition::Kind::And, std::move(left), unary());
                return left;
            }

            auto unary() -> Proposition
            {
                if (accept("!"))
                    return Proposition::negate(unary());
                if (accept("(")) {
                    auto inner = implies();
                    if (! accept(")"))
                        fail("expected ')'");
                    return inner;
                }
                return atom();
            }

            static auto identifier_char(char c) -> bool
            {
                return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
            }

            auto atom() -> Proposition
            {
                skip_space();
                auto start = _pos;
                while (_pos < _text.size() && identifier_char(_text[_pos]))
                    ++_pos;
                if (start == _pos)
                    fail("expected an atom 'observable=outcome'");
                string id{_text.substr(start, _pos - start)};

                if (! accept("="))
                    fail("expected '=' after '" + id + "'");
                skip_space();
                auto digits = _pos;
                while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos])))
                    ++_pos;
                if (digits == _pos)
                    fail("expected an outcome after '" + id + "='");

                size_t outcome = 0;
                auto [ptr, ec] = std::from_chars(_text.data() + digits, _text.data() + _pos, outcome);
                if (ec != std::errc{})
                    fail("outcome out of range");

                auto index = _scenario.index_of(id);
                if (! index)
                    throw Error{ErrorCode::UnknownObservable, "observable '" + id + "' is not in the scenario"};
                if (outcome >= _scenario.arity(*index))
                    throw Error{ErrorCode::OutcomeOutOfRange, "outcome " + std::to_string(outcome) + " for '" + id
                        + "' with arity " + std::to_string(_scenario.arity(*index))};
                return Proposition::atom(*index, static_cast<Outcome>(outcome));
            }

            string_view _text;
            const MeasurementScenario & _scenario;
            size_t _pos = 0;
    };
}

auto sheafctx::parse_proposition(string_view text, const MeasurementScenario & scenario) -> Proposition
{
    return Parser{text, scenario}.parse();
}

auto sheafctx::to_string(const Proposition & p, const MeasurementScenario & scenario) -> string
{
    switch (p.kind) {
        case Proposition::Kind::Atom:
            return scenario.observable(p.observable).id + "=" + std::to_string(p.outcome);
        case Proposition::Kind::Not:
            return "!" + to_string(p.operands[0], scenario);
        case Proposition::Kind::And:
            return "(" + to_string(p.operands[0], scenario) + " & " + to_string(p.operands[1], scenario) + ")";
        case Proposition::Kind::Or:
            return "(" + to_string(p.operands[0], scenario) + " | " + to_string(p.operands[1], scenario) + ")";
        case Proposition::Kind::Implies:
            return "(" + to_string(p.operands[0], scenario) + " -> " + to_string(p.operands[1], scenario) + ")";
    }
    return {};
}

auto sheafctx::eval_in_section(const Proposition & p, const LocalSection & section) -> ThreeValue
{
    switch (p.kind) {
        case Proposition::Kind::Atom:
            if (auto value = section.value_of(p.observable))
                return *value == p.outcome ? ThreeValue::True : ThreeValue::False;
            return ThreeValue::Unknown;
        case Proposition::Kind::Not:
            return negation(eval_in_section(p.operands[0], section));
        case Proposition::Kind::And:
            return conjunction(eval_in_section(p.operands[0], section), eval_in_section(p.operands[1], section));
        case Proposition::Kind::Or:
            return disjunction(eval_in_section(p.operands[0], section), eval_in_section(p.operands[1], section));
        case Proposition::Kind::Implies:
            return implication(eval_in_section(p.operands[0], section), eval_in_section(p.operands[1], section));
    }
    return ThreeValue::Unknown;
}

auto sheafctx::eval_in_context(const SupportModel & support, size_t cover_index, const Proposition & proposition)
    -> ThreeValue
{
    bool all_true = true, all_false = true;
    for (auto & section : support.supported_sections(cover_index)) {
        auto v = eval_in_section(proposition, section);
        all_true = all_true && v == ThreeValue::True;
        all_false = all_false && v == ThreeValue::False;
    }
    if (all_true)
        return ThreeValue::True;
    if (all_false)
        return ThreeValue::False;
    return ThreeValue::Unknown;
}

auto sheafctx::profile(const SupportModel & support, const Proposition & proposition) -> ContextProfile
{
    for (auto o : proposition.observables())
        if (o >= support.scenario().observable_count())
            throw Error{ErrorCode::UnknownObservable, "observable index " + std::to_string(o) + " out of range"};

    ContextProfile result;
    for (size_t c = 0; c < support.scenario().cover_size(); ++c)
        result.push_back(eval_in_context(support, c, proposition));
    return result;
}

auto sheafctx::to_string(Mode mode) -> string_view
{
    switch (mode) {
        case Mode::I: return "i";
        case Mode::II: return "ii";
        case Mode::III: return "iii";
        case Mode::IV: return "iv";
        case Mode::V: return "v";
        case Mode::VI: return "vi";
        case Mode::VII: return "vii";
    }
    return "?";
}

auto sheafctx::describe(Mode mode) -> string_view
{
    switch (mode) {
        case Mode::I: return "true";
        case Mode::II: return "false";
        case Mode::III: return "indeterminate";
        case Mode::IV: return "true and false";
        case Mode::V: return "true and indeterminate";
        case Mode::VI: return "false and indeterminate";
        case Mode::VII: return "true, false and indeterminate";
    }
    return "?";
}

auto sheafctx::mode_of(const std::array<bool, 3> & attained) -> Mode
{
    bool t = attained[static_cast<size_t>(ThreeValue::True)];
    bool f = attained[static_cast<size_t>(ThreeValue::False)];
    bool u = attained[static_cast<size_t>(ThreeValue::Unknown)];
    if (t && f && u) return Mode::VII;
    if (f && u) return Mode::VI;
    if (t && u) return Mode::V;
    if (t && f) return Mode::IV;
    if (u) return Mode::III;
    if (f) return Mode::II;
    if (t) return Mode::I;
    throw Error{ErrorCode::InvalidArgument, "an empty attained set has no mode"};
}

auto sheafctx::classify(const ContextProfile & profile) -> SevenValue
{
    if (profile.empty())
        throw Error{ErrorCode::InvalidArgument, "cannot classify an empty profile"};
    SevenValue result;
    for (size_t c = 0; c < profile.size(); ++c) {
        auto k = static_cast<size_t>(profile[c]);
        result.attained[k] = true;
        result.witnesses[k].push_back(c);
    }
    result.mode = mode_of(result.attained);
    return result;
}

auto sheafctx::seven_value_of(const SupportModel & support, const Proposition & proposition) -> SevenValueResult
{
    SevenValueResult result;
    result.profile = profile(support, proposition);
    result.value = classify(result.profile);
    return result;
}
