#include "misere/Cli.hpp"

#include <algorithm>
#include <cstddef>
#include <exception>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "misere/Expression.hpp"
#include "misere/Genus.hpp"
#include "misere/HeapGames.hpp"
#include "misere/Identities.hpp"
#include "misere/Outcome.hpp"
#include "misere/Position.hpp"
#include "misere/Quotient.hpp"
#include "misere/StarAlgebra.hpp"

namespace misere {
namespace {

using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

const char* const kGrammarHelp =
    "expressions:\n"
    "  expr := term ('+' term)*\n"
    "  term := [INT '*'] atom\n"
    "  atom := '0' | 'star' | 'star(INT)' | 'one' | 'sigma' | 'rho' | 'tau'\n"
    "        | 'tau(INT)' | 'eta' | 'theta' | 'conj(expr)' | 'L(expr)' | 'R(expr)'\n"
    "        | 'adj(expr)' | 'and(expr,expr)' | 'or(expr,expr)'\n"
    "        | 'disand(expr,expr)' | 'disor(expr,expr)' | 'seq(expr,expr)'\n"
    "        | 'ord(expr,expr)' | '{' options '|' options '}'\n"
    "  whitespace is ignored; '{|}' is 0 and '{0|}' is one\n"
    "\n"
    "subcommands:\n"
    "  outcome EXPR [--normal]     misere (default) or normal-play outcome\n"
    "  props EXPR                  structural profile and canonical form\n"
    "  genus EXPR                  genus symbol of an impartial position\n"
    "  tame EXPR                   tame or wild classification\n"
    "  monoid -g EXPR...           indistinguishability quotient of the closure\n"
    "  poset -g EXPR... [--dot]    element order of a finite quotient\n"
    "  star --day N | --sum EXPR | -g EXPR...\n"
    "                              star-built census, image outcome, or\n"
    "                              star-monoid isomorphism check\n"
    "  heap --left S --right S (--vector V | --prefix P | --periodicity | --monoid)\n"
    "                              partizan subtraction game analysis\n"
    "  strategy EXPR [--right]     mirroring playout on a sum of conjugate pairs\n"
    "  dot EXPR                    game tree in DOT form\n"
    "  altsum-check EXPR           six alternative sums of EXPR + conj(EXPR)\n"
    "  adjoint-check EXPR          EXPR + adj(EXPR) should be a previous-player win\n"
    "\n"
    "every subcommand accepts --json; exit codes: 0 success,\n"
    "1 refuted verification, 2 usage or input error\n";

std::string outcome_text(Outcome o) { return std::string(1, outcome_char(o)); }

const char* status_text(QuotientStatus s) {
    return s == QuotientStatus::FiniteVerifiedAtBound ? "finite (verified at bound)"
                                                      : "not stabilized";
}

const char* status_token(QuotientStatus s) {
    return s == QuotientStatus::FiniteVerifiedAtBound ? "finite_verified_at_bound"
                                                      : "not_stabilized";
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

ordered_json make_envelope(const char* command) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    return j;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto first = item.find_first_not_of(" \t");
        const auto last = item.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw std::invalid_argument(std::string(what) + ": empty entry in '" + text + "'");
        }
        item = item.substr(first, last - first + 1);
        if (item.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument(std::string(what) + ": '" + item +
                                        "' is not a nonnegative integer");
        }
        values.push_back(std::stoi(item));
    }
    if (values.empty()) {
        throw std::invalid_argument(std::string(what) + ": empty list");
    }
    return values;
}

std::vector<PositionId> parse_generators(const std::vector<std::string>& texts) {
    std::vector<PositionId> ids;
    ids.reserve(texts.size());
    for (const auto& t : texts) {
        ids.push_back(parse_position(t));
    }
    return ids;
}

void print_quotient_body(std::ostream& out, const QuotientReport& q) {
    out << "status: " << status_text(q.status) << " (sum bound " << q.sum_bound
        << ", context bound " << q.context_bound << ")\n";
    out << "classes: " << q.classes.size() << "\n";
    std::size_t word_width = 1;
    for (const auto& c : q.classes) {
        word_width = std::max(word_width, c.word.size());
    }
    for (const auto& c : q.classes) {
        out << "  " << c.word << std::string(word_width - c.word.size() + 2, ' ')
            << outcome_char(c.outcome) << "  " << format_sum(c.representative) << "\n";
    }
    if (q.relations.empty()) {
        out << "relations: none\n";
    } else {
        out << "relations:\n";
        for (const auto& r : q.relations) {
            out << "  " << r.first << " = " << r.second << "\n";
        }
    }
    out << "tetrapartition:\n";
    for (std::size_t i = 0; i < q.tetrapartition.size(); ++i) {
        out << "  " << outcome_char(static_cast<Outcome>(i)) << ":";
        if (q.tetrapartition[i].empty()) {
            out << " (empty)";
        }
        for (const auto idx : q.tetrapartition[i]) {
            out << " " << q.classes[idx].word;
        }
        out << "\n";
    }
    out << "layer class counts:";
    for (const auto n : q.layer_class_counts) {
        out << " " << n;
    }
    out << "\n";
    out << "distinguished pairs: " << q.witnesses.size() << "\n";
}

ordered_json quotient_json(const QuotientReport& q) {
    ordered_json j;
    j["status"] = status_token(q.status);
    j["sum_bound"] = q.sum_bound;
    j["context_bound"] = q.context_bound;
    ordered_json classes = ordered_json::array();
    for (const auto& c : q.classes) {
        ordered_json cls;
        cls["word"] = c.word;
        cls["outcome"] = outcome_text(c.outcome);
        cls["representative"] = format_sum(c.representative);
        classes.push_back(std::move(cls));
    }
    j["classes"] = std::move(classes);
    ordered_json rels = ordered_json::array();
    for (const auto& r : q.relations) {
        ordered_json rel;
        rel["lhs"] = r.first;
        rel["rhs"] = r.second;
        rels.push_back(std::move(rel));
    }
    j["relations"] = std::move(rels);
    ordered_json tp;
    for (std::size_t i = 0; i < q.tetrapartition.size(); ++i) {
        ordered_json words = ordered_json::array();
        for (const auto idx : q.tetrapartition[i]) {
            words.push_back(q.classes[idx].word);
        }
        tp[outcome_text(static_cast<Outcome>(i))] = std::move(words);
    }
    j["tetrapartition"] = std::move(tp);
    j["layer_class_counts"] = q.layer_class_counts;
    ordered_json wits = ordered_json::array();
    for (const auto& w : q.witnesses) {
        ordered_json wit;
        wit["a"] = format_sum(w.a);
        wit["b"] = format_sum(w.b);
        wit["context"] = format_sum(w.context);
        wits.push_back(std::move(wit));
    }
    j["witnesses"] = std::move(wits);
    return j;
}

void print_symbol_legend(std::ostream& out, const ClosureBase& cb) {
    const auto symbols = base_symbols(cb);
    out << "symbols:\n";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out << "  " << symbol_name(i) << " = " << format_position(symbols[i]) << "\n";
    }
}

ordered_json symbol_legend_json(const ClosureBase& cb) {
    const auto symbols = base_symbols(cb);
    ordered_json legend = ordered_json::array();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        ordered_json entry;
        entry["symbol"] = symbol_name(i);
        entry["position"] = format_position(symbols[i]);
        legend.push_back(std::move(entry));
    }
    return legend;
}

// Row strings of a dense table, first coordinate along the row, remaining
// coordinates advanced with the second coordinate fastest.
std::vector<std::string> table_rows(const OutcomeTable& t) {
    const std::size_t row_len =
        t.limits.empty() ? 1 : static_cast<std::size_t>(t.limits[0]) + 1;
    std::vector<std::string> rows;
    for (std::size_t start = 0; start < t.cells.size(); start += row_len) {
        std::string row;
        for (std::size_t i = 0; i < row_len; ++i) {
            row += outcome_char(t.cells[start + i]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> table_row_labels(const OutcomeTable& t) {
    if (t.limits.size() <= 1) {
        return {std::string()};
    }
    std::vector<int> high(t.limits.size() - 1, 0);
    std::vector<std::string> labels;
    while (true) {
        std::ostringstream label;
        for (std::size_t i = 0; i < high.size(); ++i) {
            if (i > 0) {
                label << ' ';
            }
            label << 'x' << (i + 2) << '=' << high[i];
        }
        labels.push_back(label.str());
        std::size_t k = 0;
        while (k < high.size() && high[k] == t.limits[k + 1]) {
            high[k] = 0;
            ++k;
        }
        if (k == high.size()) {
            break;
        }
        ++high[k];
    }
    return labels;
}

struct OutcomeArgs {
    std::string expr;
    bool normal = false;
    bool json = false;
};

int cmd_outcome(const OutcomeArgs& a, std::ostream& out) {
    const SumPosition s = parse_expression(a.expr);
    const Outcome o = a.normal ? normal_outcome(s) : misere_outcome(s);
    if (a.json) {
        ordered_json j = make_envelope("outcome");
        j["expression"] = format_sum(s);
        j["play"] = a.normal ? "normal" : "misere";
        j["outcome"] = outcome_text(o);
        emit(out, j);
    } else {
        out << outcome_char(o) << "\n";
    }
    return 0;
}

struct ExprArgs {
    std::string expr;
    bool json = false;
};

int cmd_props(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    const StructuralProfile pr = profile(p);
    if (a.json) {
        ordered_json j = make_envelope("props");
        j["canonical"] = format_position(p);
        j["birthday"] = pr.birthday;
        j["impartial"] = pr.impartial;
        j["all_small"] = pr.all_small;
        j["binary"] = pr.binary;
        if (pr.ab_rank) {
            j["alternating_rank"] = *pr.ab_rank;
        } else {
            j["alternating_rank"] = nullptr;
        }
        j["left_end"] = pr.left_end;
        j["right_end"] = pr.right_end;
        emit(out, j);
    } else {
        out << "canonical: " << format_position(p) << "\n";
        out << "birthday: " << pr.birthday << "\n";
        out << "impartial: " << yes_no(pr.impartial) << "\n";
        out << "all-small: " << yes_no(pr.all_small) << "\n";
        out << "binary: " << yes_no(pr.binary) << "\n";
        out << "alternating rank: ";
        if (pr.ab_rank) {
            out << *pr.ab_rank;
        } else {
            out << "-";
        }
        out << "\n";
        out << "left end: " << yes_no(pr.left_end) << "\n";
        out << "right end: " << yes_no(pr.right_end) << "\n";
    }
    return 0;
}

int cmd_genus(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    const Genus g = genus(p);
    if (a.json) {
        ordered_json j = make_envelope("genus");
        j["expression"] = format_position(p);
        j["g_plus"] = g.g_plus;
        j["digits"] = g.digits;
        j["genus"] = format_genus(g);
        emit(out, j);
    } else {
        out << format_genus(g) << "\n";
    }
    return 0;
}

int cmd_tame(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    const bool tame = is_tame(p);
    if (a.json) {
        ordered_json j = make_envelope("tame");
        j["expression"] = format_position(p);
        j["tame"] = tame;
        emit(out, j);
    } else {
        out << (tame ? "tame" : "wild") << "\n";
    }
    return 0;
}

struct MonoidArgs {
    std::vector<std::string> generators;
    int sum_bound = 6;
    int context_bound = 6;
    bool json = false;
};

int cmd_monoid(const MonoidArgs& a, std::ostream& out) {
    const auto ids = parse_generators(a.generators);
    const QuotientReport q = compute_quotient(ids, a.sum_bound, a.context_bound);
    if (a.json) {
        ordered_json j = make_envelope("monoid");
        ordered_json gens = ordered_json::array();
        for (const auto id : ids) {
            gens.push_back(format_position(id));
        }
        j["generators"] = std::move(gens);
        j["symbols"] = symbol_legend_json(q.closure);
        j.update(quotient_json(q));
        emit(out, j);
    } else {
        out << "generators:";
        for (const auto id : ids) {
            out << " " << format_position(id);
        }
        out << "\n";
        print_symbol_legend(out, q.closure);
        print_quotient_body(out, q);
    }
    return 0;
}

struct PosetArgs {
    std::vector<std::string> generators;
    int sum_bound = 6;
    int context_bound = 6;
    bool dot = false;
    bool json = false;
};

int cmd_poset(const PosetArgs& a, std::ostream& out) {
    const auto ids = parse_generators(a.generators);
    const QuotientReport q = compute_quotient(ids, a.sum_bound, a.context_bound);
    const PosetReport p = compute_poset(q);
    if (a.dot) {
        out << poset_to_dot(q, p);
        return 0;
    }
    if (a.json) {
        ordered_json j = make_envelope("poset");
        ordered_json classes = ordered_json::array();
        for (const auto& c : q.classes) {
            classes.push_back(c.word);
        }
        j["classes"] = std::move(classes);
        ordered_json covers = ordered_json::array();
        for (const auto& [upper, lower] : p.covers) {
            ordered_json edge;
            edge["lower"] = q.classes[lower].word;
            edge["upper"] = q.classes[upper].word;
            covers.push_back(std::move(edge));
        }
        j["covers"] = std::move(covers);
        j["order_pairs"] = p.order.size();
        j["bottom"] = p.bottom ? ordered_json(q.classes[*p.bottom].word) : ordered_json(nullptr);
        j["top"] = p.top ? ordered_json(q.classes[*p.top].word) : ordered_json(nullptr);
        j["down_directed"] = p.down_directed;
        j["up_directed"] = p.up_directed;
        j["lattice"] = p.lattice;
        ordered_json inc = ordered_json::array();
        for (const auto& w : p.incomparability_witnesses) {
            ordered_json pair;
            pair["a"] = q.classes[w.a].word;
            pair["b"] = q.classes[w.b].word;
            ordered_json contexts = ordered_json::array();
            for (const auto& c : w.contexts) {
                contexts.push_back(format_sum(c));
            }
            pair["contexts"] = std::move(contexts);
            inc.push_back(std::move(pair));
        }
        j["incomparable"] = std::move(inc);
        emit(out, j);
    } else {
        out << "classes: " << q.classes.size() << "\n";
        out << "covers:\n";
        for (const auto& [upper, lower] : p.covers) {
            out << "  " << q.classes[lower].word << " < " << q.classes[upper].word << "\n";
        }
        out << "order pairs: " << p.order.size() << "\n";
        out << "bottom: " << (p.bottom ? q.classes[*p.bottom].word : std::string("none")) << "\n";
        out << "top: " << (p.top ? q.classes[*p.top].word : std::string("none")) << "\n";
        out << "down-directed: " << yes_no(p.down_directed) << "\n";
        out << "up-directed: " << yes_no(p.up_directed) << "\n";
        out << "lattice: " << yes_no(p.lattice) << "\n";
        out << "incomparable pairs: " << p.incomparability_witnesses.size() << "\n";
    }
    return 0;
}

struct StarArgs {
    int day = -1;
    bool day_given = false;
    std::string sum_expr;
    std::vector<std::string> generators;
    int sum_bound = 4;
    bool json = false;
};

int cmd_star(const StarArgs& a, std::ostream& out) {
    if (a.day_given) {
        const auto positions = enumerate_star_built(a.day);
        if (a.json) {
            ordered_json j = make_envelope("star");
            j["mode"] = "day";
            j["day"] = a.day;
            j["count"] = positions.size();
            emit(out, j);
        } else {
            out << "star-built positions born on day " << a.day << ": " << positions.size()
                << "\n";
        }
        return 0;
    }
    if (!a.sum_expr.empty()) {
        const SumPosition s = parse_expression(a.sum_expr);
        const Outcome o = sum_outcome_via_star(s.components);
        if (a.json) {
            ordered_json j = make_envelope("star");
            j["mode"] = "sum";
            j["expression"] = format_sum(s);
            j["outcome"] = outcome_text(o);
            emit(out, j);
        } else {
            out << outcome_char(o) << "\n";
        }
        return 0;
    }
    const auto ids = parse_generators(a.generators);
    const StarIsoReport report = star_iso_check(ids, a.sum_bound);
    if (a.json) {
        ordered_json j = make_envelope("star");
        j["mode"] = "isomorphism";
        j["sum_bound"] = a.sum_bound;
        j["passes"] = report.passes;
        if (report.violation) {
            ordered_json v;
            v["condition"] = report.violation->condition;
            v["element"] = format_sum(report.violation->element);
            v["element_outcome"] = outcome_text(misere_outcome(report.violation->element));
            if (report.violation->option) {
                v["option"] = format_sum(*report.violation->option);
            } else {
                v["option"] = nullptr;
            }
            j["violation"] = std::move(v);
        } else {
            j["violation"] = nullptr;
        }
        emit(out, j);
    } else {
        out << "star-isomorphic: " << yes_no(report.passes) << "\n";
        if (report.violation) {
            static const char* const kConditionText[] = {
                "",
                "no nonzero generator",
                "an element is neither a next- nor a previous-player win",
                "a next-player-win element has a next-player-win option",
            };
            out << "condition: " << report.violation->condition << " ("
                << kConditionText[report.violation->condition] << ")\n";
            out << "element: " << format_sum(report.violation->element) << "\n";
            out << "element outcome: " << outcome_char(misere_outcome(report.violation->element))
                << "\n";
            if (report.violation->option) {
                out << "option: " << format_sum(*report.violation->option) << "\n";
            }
        }
    }
    return report.passes ? 0 : 1;
}

struct HeapArgs {
    std::string left_text;
    std::string right_text;
    int max_heap = 6;
    std::string vector_text;
    std::string prefix_text;
    bool periodicity = false;
    bool monoid = false;
    int sum_bound = 6;
    int context_bound = 6;
    bool json = false;
};

void heap_envelope_fields(ordered_json& j, const SubtractionGameSpec& spec) {
    j["left"] = spec.left_set;
    j["right"] = spec.right_set;
    j["max_heap"] = spec.max_heap;
}

int cmd_heap(const HeapArgs& a, std::ostream& out) {
    SubtractionGameSpec spec;
    spec.left_set = parse_int_list(a.left_text, "--left");
    spec.right_set = parse_int_list(a.right_text, "--right");
    spec.max_heap = a.max_heap;

    if (!a.vector_text.empty()) {
        const HeapVector v = parse_heap_vector(a.vector_text);
        const Outcome o = heap_outcome(spec, v);
        if (a.json) {
            ordered_json j = make_envelope("heap");
            heap_envelope_fields(j, spec);
            j["mode"] = "vector";
            j["vector"] = heap_vector_text(v);
            j["outcome"] = outcome_text(o);
            emit(out, j);
        } else {
            out << outcome_char(o) << "\n";
        }
        return 0;
    }

    if (!a.prefix_text.empty()) {
        const std::vector<int> limits = parse_int_list(a.prefix_text, "--prefix");
        const OutcomeTable t = outcome_table(spec, limits);
        if (a.json) {
            ordered_json j = make_envelope("heap");
            heap_envelope_fields(j, spec);
            j["mode"] = "prefix";
            j["limits"] = t.limits;
            j["row_labels"] = table_row_labels(t);
            j["rows"] = table_rows(t);
            emit(out, j);
        } else {
            out << format_outcome_table(t);
        }
        return 0;
    }

    if (a.periodicity) {
        const PeriodicityReport report = detect_periodicity(spec);
        const CoordinatePeriodicity* last_verified = nullptr;
        for (const auto& c : report.coordinates) {
            if (c.verified) {
                last_verified = &c;
            }
        }
        if (a.json) {
            ordered_json j = make_envelope("heap");
            heap_envelope_fields(j, spec);
            j["mode"] = "periodicity";
            ordered_json coords = ordered_json::array();
            for (const auto& c : report.coordinates) {
                ordered_json entry;
                entry["heap_size"] = c.heap_size;
                entry["verified"] = c.verified;
                if (c.verified) {
                    entry["r"] = c.r;
                    entry["d"] = c.d;
                } else {
                    entry["r"] = nullptr;
                    entry["d"] = nullptr;
                }
                if (c.diagonal_partner) {
                    entry["diagonal_partner"] = *c.diagonal_partner;
                } else {
                    entry["diagonal_partner"] = nullptr;
                }
                coords.push_back(std::move(entry));
            }
            j["coordinates"] = std::move(coords);
            if (last_verified != nullptr) {
                j["pre_period"] = last_verified->pre_period;
                j["period"] = last_verified->period;
            } else {
                j["pre_period"] = ordered_json::array();
                j["period"] = ordered_json::array();
            }
            j["candidate_symbols"] = report.candidate_monoid.symbols;
            ordered_json rels = ordered_json::array();
            for (const auto& r : report.candidate_monoid.relations) {
                ordered_json rel;
                rel["lhs"] = r.first;
                rel["rhs"] = r.second;
                rels.push_back(std::move(rel));
            }
            j["candidate_relations"] = std::move(rels);
            emit(out, j);
        } else {
            for (const auto& c : report.coordinates) {
                out << "coordinate " << c.heap_size << ": ";
                if (c.verified) {
                    out << "r=" << c.r << " d=" << c.d;
                } else {
                    out << "unresolved within bounds";
                    if (c.diagonal_partner) {
                        out << "; diagonal partner " << *c.diagonal_partner;
                    }
                }
                out << "\n";
            }
            if (last_verified != nullptr) {
                out << "pre-period:";
                for (const auto r : last_verified->pre_period) {
                    out << " " << r;
                }
                out << "\n";
                out << "period:";
                for (const auto d : last_verified->period) {
                    out << " " << d;
                }
                out << "\n";
            }
            out << "candidate symbols:";
            for (const auto& s : report.candidate_monoid.symbols) {
                out << " " << s;
            }
            out << "\n";
            if (report.candidate_monoid.relations.empty()) {
                out << "candidate relations: none\n";
            } else {
                out << "candidate relations:\n";
                for (const auto& r : report.candidate_monoid.relations) {
                    out << "  " << r.first << " = " << r.second << "\n";
                }
            }
        }
        return 0;
    }

    const HeapQuotientReport hq = heap_quotient(spec, a.sum_bound, a.context_bound);
    if (a.json) {
        ordered_json j = make_envelope("heap");
        heap_envelope_fields(j, spec);
        j["mode"] = "monoid";
        j["symbol_sizes"] = hq.symbol_sizes;
        ordered_json map = ordered_json::array();
        for (const auto& [heap, word] : hq.heap_map) {
            ordered_json entry;
            entry["heap"] = heap;
            entry["word"] = word;
            map.push_back(std::move(entry));
        }
        j["heap_map"] = std::move(map);
        j["quotient"] = quotient_json(hq.quotient);
        emit(out, j);
    } else {
        out << "symbol sizes:";
        for (const auto s : hq.symbol_sizes) {
            out << " " << s;
        }
        out << "\n";
        out << "heap map:\n";
        for (const auto& [heap, word] : hq.heap_map) {
            out << "  h" << heap << " -> " << word << "\n";
        }
        print_quotient_body(out, hq.quotient);
    }
    return 0;
}

struct StrategyArgs {
    std::string expr;
    bool right = false;
    bool json = false;
};

// Splits a conjugate-closed multiset into one component per pair; the
// playout adds the twins back. Throws when some component lacks its twin.
std::vector<PositionId> pair_halves(const SumPosition& s) {
    std::map<PositionId, int> counts;
    for (const PositionId id : s.components) {
        ++counts[id];
    }
    std::vector<PositionId> halves;
    for (const PositionId id : s.components) {
        auto it = counts.find(id);
        if (it->second == 0) {
            continue;
        }
        const PositionId twin = conjugate(id);
        if (twin == id) {
            if (it->second % 2 != 0) {
                throw std::invalid_argument("the expression must be a sum of conjugate pairs");
            }
            halves.insert(halves.end(), it->second / 2, id);
            it->second = 0;
        } else {
            auto jt = counts.find(twin);
            if (jt == counts.end() || jt->second != it->second) {
                throw std::invalid_argument("the expression must be a sum of conjugate pairs");
            }
            halves.insert(halves.end(), it->second, id);
            it->second = 0;
            jt->second = 0;
        }
    }
    return halves;
}

int cmd_strategy(const StrategyArgs& a, std::ostream& out) {
    const SumPosition s = parse_expression(a.expr);
    const PlayoutResult result = tweedle_playout(pair_halves(s), !a.right);
    if (a.json) {
        ordered_json j = make_envelope("strategy");
        j["expression"] = format_sum(s);
        j["mover"] = a.right ? "right" : "left";
        j["win"] = result.win;
        j["trace"] = result.trace;
        emit(out, j);
    } else {
        for (const auto& line : result.trace) {
            out << line << "\n";
        }
        out << "result: " << (result.win ? "win" : "loss") << "\n";
    }
    return result.win ? 0 : 1;
}

int cmd_dot(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    if (a.json) {
        ordered_json j = make_envelope("dot");
        j["expression"] = format_position(p);
        j["dot"] = to_dot(p);
        emit(out, j);
    } else {
        out << to_dot(p);
    }
    return 0;
}

// For each way of joining EXPR with its conjugate, reports whether Left
// moving first can win the joined position. A loss under some join means
// that join admits no mirroring win for this position.
int cmd_altsum_check(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    const PositionId pc = conjugate(p);
    bool all_pass = true;
    ordered_json ops = ordered_json::array();
    std::ostringstream plain;
    const auto record = [&](const char* name, Outcome o) {
        const bool left_first_wins = o == Outcome::L || o == Outcome::N;
        all_pass = all_pass && left_first_wins;
        if (a.json) {
            ordered_json entry;
            entry["name"] = name;
            entry["outcome"] = outcome_text(o);
            entry["left_first_wins"] = left_first_wins;
            ops.push_back(std::move(entry));
        } else {
            plain << name << ": " << outcome_char(o) << "  first-player Left "
                  << (left_first_wins ? "wins" : "loses") << "\n";
        }
    };
    record("disjunctive", misere_outcome(make_sum({p, pc})));
    static const std::pair<SumKind, const char*> kOperators[] = {
        {SumKind::And, "and"},     {SumKind::Or, "or"},       {SumKind::DisAnd, "disand"},
        {SumKind::DisOr, "disor"}, {SumKind::SeqJoin, "seq"}, {SumKind::Ordinal, "ord"},
    };
    for (const auto& [kind, name] : kOperators) {
        record(name, misere_outcome(alt_sum(kind, p, pc)));
    }
    if (a.json) {
        ordered_json j = make_envelope("altsum-check");
        j["expression"] = format_position(p);
        j["operators"] = std::move(ops);
        j["all_pass"] = all_pass;
        emit(out, j);
    } else {
        out << "position: " << format_position(p) << "\n";
        out << plain.str();
        out << "result: " << (all_pass ? "Left moving first wins every join" : "refuted")
            << "\n";
    }
    return all_pass ? 0 : 1;
}

int cmd_adjoint_check(const ExprArgs& a, std::ostream& out) {
    const PositionId p = parse_position(a.expr);
    const PositionId adj = adjoint(p);
    const Outcome o = misere_outcome(make_sum({p, adj}));
    const bool holds = o == Outcome::P;
    if (a.json) {
        ordered_json j = make_envelope("adjoint-check");
        j["expression"] = format_position(p);
        j["adjoint"] = format_position(adj);
        j["sum_outcome"] = outcome_text(o);
        j["holds"] = holds;
        emit(out, j);
    } else {
        out << "adjoint: " << format_position(adj) << "\n";
        out << "sum outcome: " << outcome_char(o) << "\n";
        out << "holds: " << yes_no(holds) << "\n";
    }
    return holds ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"symbolic analysis of partizan games under the misere ending"};
    app.require_subcommand(1);

    OutcomeArgs outcome_args;
    auto* sc_outcome = app.add_subcommand("outcome", "outcome of a position or sum");
    sc_outcome->add_option("expr", outcome_args.expr, "position expression")->required();
    sc_outcome->add_flag("--normal", outcome_args.normal, "normal-play ending");
    sc_outcome->add_flag("--json", outcome_args.json, "JSON output");

    ExprArgs props_args;
    auto* sc_props = app.add_subcommand("props", "structural profile of a position");
    sc_props->add_option("expr", props_args.expr, "position expression")->required();
    sc_props->add_flag("--json", props_args.json, "JSON output");

    ExprArgs genus_args;
    auto* sc_genus = app.add_subcommand("genus", "genus symbol of an impartial position");
    sc_genus->add_option("expr", genus_args.expr, "position expression")->required();
    sc_genus->add_flag("--json", genus_args.json, "JSON output");

    ExprArgs tame_args;
    auto* sc_tame = app.add_subcommand("tame", "tame or wild classification");
    sc_tame->add_option("expr", tame_args.expr, "position expression")->required();
    sc_tame->add_flag("--json", tame_args.json, "JSON output");

    MonoidArgs monoid_args;
    auto* sc_monoid = app.add_subcommand("monoid", "indistinguishability quotient");
    sc_monoid->add_option("-g,--generator", monoid_args.generators, "generator expression")
        ->required();
    sc_monoid->add_option("--sum-bound", monoid_args.sum_bound, "largest sum length");
    sc_monoid->add_option("--context-bound", monoid_args.context_bound,
                          "largest distinguishing context");
    sc_monoid->add_flag("--json", monoid_args.json, "JSON output");

    PosetArgs poset_args;
    auto* sc_poset = app.add_subcommand("poset", "element order of a finite quotient");
    sc_poset->add_option("-g,--generator", poset_args.generators, "generator expression")
        ->required();
    sc_poset->add_option("--sum-bound", poset_args.sum_bound, "largest sum length");
    sc_poset->add_option("--context-bound", poset_args.context_bound,
                         "largest distinguishing context");
    auto* poset_dot = sc_poset->add_flag("--dot", poset_args.dot, "DOT output of the covers");
    auto* poset_json = sc_poset->add_flag("--json", poset_args.json, "JSON output");
    poset_dot->excludes(poset_json);

    StarArgs star_args;
    auto* sc_star = app.add_subcommand("star", "star-built positions and the star monoid");
    auto* star_day = sc_star->add_option("--day", star_args.day, "census of one birthday");
    sc_star->add_option("--sum", star_args.sum_expr, "sum of star-built components");
    sc_star->add_option("-g,--generator", star_args.generators, "generator expression");
    sc_star->add_option("--sum-bound", star_args.sum_bound, "largest sum length checked");
    sc_star->add_flag("--json", star_args.json, "JSON output");

    HeapArgs heap_args;
    auto* sc_heap = app.add_subcommand("heap", "partizan subtraction game analysis");
    sc_heap->add_option("--left", heap_args.left_text, "Left subtraction set, e.g. 1,2")
        ->required();
    sc_heap->add_option("--right", heap_args.right_text, "Right subtraction set")->required();
    sc_heap->add_option("--max-heap", heap_args.max_heap, "largest tracked heap size");
    sc_heap->add_option("--vector", heap_args.vector_text, "heap counts, e.g. 0,2");
    sc_heap->add_option("--prefix", heap_args.prefix_text, "table limits per coordinate");
    sc_heap->add_flag("--periodicity", heap_args.periodicity, "per-coordinate table periods");
    sc_heap->add_flag("--monoid", heap_args.monoid, "quotient of the heap universe");
    sc_heap->add_option("--sum-bound", heap_args.sum_bound, "largest sum length");
    sc_heap->add_option("--context-bound", heap_args.context_bound,
                        "largest distinguishing context");
    sc_heap->add_flag("--json", heap_args.json, "JSON output");

    StrategyArgs strategy_args;
    auto* sc_strategy = app.add_subcommand("strategy", "mirroring playout against all replies");
    sc_strategy->add_option("expr", strategy_args.expr, "sum of conjugate pairs")->required();
    sc_strategy->add_flag("--right", strategy_args.right, "the strategist moves as Right");
    sc_strategy->add_flag("--json", strategy_args.json, "JSON output");

    ExprArgs dot_args;
    auto* sc_dot = app.add_subcommand("dot", "game tree in DOT form");
    sc_dot->add_option("expr", dot_args.expr, "position expression")->required();
    sc_dot->add_flag("--json", dot_args.json, "JSON output");

    ExprArgs altsum_args;
    auto* sc_altsum = app.add_subcommand("altsum-check",
                                         "alternative sums against the disjunctive outcome");
    sc_altsum->add_option("expr", altsum_args.expr, "position expression")->required();
    sc_altsum->add_flag("--json", altsum_args.json, "JSON output");

    ExprArgs adjoint_args;
    auto* sc_adjoint = app.add_subcommand("adjoint-check",
                                          "a position plus its adjoint is a previous-player win");
    sc_adjoint->add_option("expr", adjoint_args.expr, "position expression")->required();
    sc_adjoint->add_flag("--json", adjoint_args.json, "JSON output");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("misere");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << "error: " << e.what() << "\n\n" << kGrammarHelp;
        return 2;
    }

    try {
        if (sc_outcome->parsed()) {
            return cmd_outcome(outcome_args, out);
        }
        if (sc_props->parsed()) {
            return cmd_props(props_args, out);
        }
        if (sc_genus->parsed()) {
            return cmd_genus(genus_args, out);
        }
        if (sc_tame->parsed()) {
            return cmd_tame(tame_args, out);
        }
        if (sc_monoid->parsed()) {
            return cmd_monoid(monoid_args, out);
        }
        if (sc_poset->parsed()) {
            return cmd_poset(poset_args, out);
        }
        if (sc_star->parsed()) {
            star_args.day_given = star_day->count() > 0;
            const int modes = (star_args.day_given ? 1 : 0) +
                              (star_args.sum_expr.empty() ? 0 : 1) +
                              (star_args.generators.empty() ? 0 : 1);
            if (modes != 1) {
                err << "error: star needs exactly one of --day, --sum, -g\n\n" << kGrammarHelp;
                return 2;
            }
            return cmd_star(star_args, out);
        }
        if (sc_heap->parsed()) {
            const int modes = (heap_args.vector_text.empty() ? 0 : 1) +
                              (heap_args.prefix_text.empty() ? 0 : 1) +
                              (heap_args.periodicity ? 1 : 0) + (heap_args.monoid ? 1 : 0);
            if (modes != 1) {
                err << "error: heap needs exactly one of --vector, --prefix, --periodicity, "
                       "--monoid\n\n"
                    << kGrammarHelp;
                return 2;
            }
            return cmd_heap(heap_args, out);
        }
        if (sc_strategy->parsed()) {
            return cmd_strategy(strategy_args, out);
        }
        if (sc_dot->parsed()) {
            return cmd_dot(dot_args, out);
        }
        if (sc_altsum->parsed()) {
            return cmd_altsum_check(altsum_args, out);
        }
        if (sc_adjoint->parsed()) {
            return cmd_adjoint_check(adjoint_args, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        if (std::string(e.what()).starts_with("parse error")) {
            err << "\n" << kGrammarHelp;
        }
        return 2;
    }
    err << "error: no subcommand\n\n" << kGrammarHelp;
    return 2;
}

}  // namespace misere
