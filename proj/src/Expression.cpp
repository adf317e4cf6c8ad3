#include "misere/Expression.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace misere {

namespace {

class Parser {
  public:
    explicit Parser(const std::string& text) : text_(text) {}

    SumPosition parse() {
        std::vector<PositionId> components;
        parse_expr(components);
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return make_sum(std::move(components));
    }

  private:
    [[noreturn]] void fail(const std::string& message) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " +
                                    message);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool consume(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    long parse_int() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) fail("expected an integer");
        return std::stol(text_.substr(start, pos_ - start));
    }

    std::string parse_name() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        if (pos_ == start) fail("expected a position expression");
        return text_.substr(start, pos_ - start);
    }

    void parse_expr(std::vector<PositionId>& components) {
        parse_term(components);
        while (consume('+')) parse_term(components);
    }

    void parse_term(std::vector<PositionId>& components) {
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            const long value = parse_int();
            if (consume('*')) {
                const PositionId p = parse_atom();
                for (long i = 0; i < value; ++i) components.push_back(p);
                return;
            }
            if (value == 0) {
                components.push_back(zero());
                return;
            }
            fail("expected '*' after a multiplier");
        }
        components.push_back(parse_atom());
    }

    PositionId parse_subexpr() {
        std::vector<PositionId> components;
        parse_expr(components);
        return compile_sum(make_sum(std::move(components)));
    }

    PositionId parse_atom() {
        if (consume('{')) {
            std::vector<PositionId> left = parse_options('|');
            expect('|');
            std::vector<PositionId> right = parse_options('}');
            expect('}');
            return build(std::move(left), std::move(right));
        }
        const std::string name = parse_name();
        if (name == "star") {
            if (consume('(')) {
                const long k = parse_int();
                expect(')');
                if (k < 1) fail("star index must be at least 1");
                return named(NamedPosition::StarN, static_cast<int>(k));
            }
            return star();
        }
        if (name == "tau") {
            if (consume('(')) {
                const long k = parse_int();
                expect(')');
                if (k < 0) fail("tau index must be at least 0");
                return named(NamedPosition::TauN, static_cast<int>(k));
            }
            return named(NamedPosition::Tau);
        }
        if (name == "one") return named(NamedPosition::One);
        if (name == "sigma") return named(NamedPosition::Sigma);
        if (name == "rho") return named(NamedPosition::Rho);
        if (name == "eta") return named(NamedPosition::Eta);
        if (name == "theta") return named(NamedPosition::Theta);
        if (name == "conj") return apply_unary([](PositionId p) { return conjugate(p); });
        if (name == "adj") return apply_unary([](PositionId p) { return adjoint(p); });
        if (name == "L") {
            return apply_unary([](PositionId p) { return build({p}, {}); });
        }
        if (name == "R") {
            return apply_unary([](PositionId p) { return build({}, {p}); });
        }
        if (name == "and") return apply_binary(SumKind::And);
        if (name == "or") return apply_binary(SumKind::Or);
        if (name == "disand") return apply_binary(SumKind::DisAnd);
        if (name == "disor") return apply_binary(SumKind::DisOr);
        if (name == "seq") return apply_binary(SumKind::SeqJoin);
        if (name == "ord") return apply_binary(SumKind::Ordinal);
        fail("unknown name '" + name + "'");
    }

    template <typename F>
    PositionId apply_unary(F f) {
        expect('(');
        const PositionId p = parse_subexpr();
        expect(')');
        return f(p);
    }

    PositionId apply_binary(SumKind kind) {
        expect('(');
        const PositionId a = parse_subexpr();
        expect(',');
        const PositionId b = parse_subexpr();
        expect(')');
        return alt_sum(kind, a, b);
    }

    std::vector<PositionId> parse_options(char closer) {
        std::vector<PositionId> options;
        if (peek() == closer) return options;
        options.push_back(parse_subexpr());
        while (consume(',')) options.push_back(parse_subexpr());
        return options;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// Positions that print by name rather than as braces. Inverse images of the
// parser's named atoms only, so round-tripping stays exact.
const std::unordered_map<PositionId, std::string>& name_catalogue() {
    static std::mutex mutex;
    static std::unordered_map<PositionId, std::string>* catalogue = nullptr;
    std::lock_guard<std::mutex> lock(mutex);
    if (catalogue == nullptr) {
        auto* c = new std::unordered_map<PositionId, std::string>();
        auto put = [&c](PositionId p, const std::string& name) { c->emplace(p, name); };
        put(zero(), "0");
        put(star(), "star");
        put(named(NamedPosition::One), "one");
        put(named(NamedPosition::Sigma), "sigma");
        put(named(NamedPosition::Rho), "rho");
        put(named(NamedPosition::Tau), "tau");
        put(named(NamedPosition::Eta), "eta");
        put(named(NamedPosition::Theta), "theta");
        put(named(NamedPosition::OneBar), "conj(one)");
        put(named(NamedPosition::SigmaBar), "conj(sigma)");
        put(named(NamedPosition::RhoBar), "conj(rho)");
        put(conjugate(named(NamedPosition::Eta)), "conj(eta)");
        for (int k = 2; k <= 9; ++k) {
            put(named(NamedPosition::StarN, k), "star(" + std::to_string(k) + ")");
            put(named(NamedPosition::TauN, k), "tau(" + std::to_string(k) + ")");
        }
        catalogue = c;
    }
    return *catalogue;
}

}  // namespace

SumPosition parse_expression(const std::string& text) { return Parser(text).parse(); }

PositionId compile_sum(const SumPosition& s) {
    PositionId acc = zero();
    for (PositionId p : s.components) acc = compile_disjunctive(acc, p);
    return acc;
}

PositionId parse_position(const std::string& text) {
    return compile_sum(parse_expression(text));
}

std::string format_position(PositionId p) {
    const auto& catalogue = name_catalogue();
    auto it = catalogue.find(p);
    if (it != catalogue.end()) return it->second;
    const Position& pos = fetch(p);
    auto render = [](std::vector<PositionId> options) {
        std::sort(options.begin(), options.end(), structural_less);
        std::string out;
        for (std::size_t i = 0; i < options.size(); ++i) {
            if (i > 0) out += ", ";
            out += format_position(options[i]);
        }
        return out;
    };
    return "{" + render(pos.left) + " | " + render(pos.right) + "}";
}

std::string format_sum(const SumPosition& s) {
    if (s.components.empty()) return "0";
    std::string out;
    std::size_t i = 0;
    while (i < s.components.size()) {
        std::size_t j = i;
        while (j < s.components.size() && s.components[j] == s.components[i]) ++j;
        if (!out.empty()) out += " + ";
        const std::size_t count = j - i;
        if (count > 1) out += std::to_string(count) + "*";
        out += format_position(s.components[i]);
        i = j;
    }
    return out;
}

}  // namespace misere
