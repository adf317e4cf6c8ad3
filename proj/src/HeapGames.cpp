#include "misere/HeapGames.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace misere {

namespace {

void validate_spec(const SubtractionGameSpec& spec) {
    for (const auto* set : {&spec.left_set, &spec.right_set}) {
        int prev = 0;
        for (int s : *set) {
            if (s <= prev) {
                throw std::invalid_argument(
                    "subtraction sets must be strictly ascending positive integers");
            }
            prev = s;
        }
    }
    if (spec.max_heap < 1) {
        throw std::invalid_argument("max_heap must be at least 1");
    }
}

std::vector<int> trimmed(std::vector<int> counts) {
    while (!counts.empty() && counts.back() == 0) {
        counts.pop_back();
    }
    return counts;
}

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

using OutcomeMemo = std::unordered_map<std::vector<int>, Outcome, VectorHash>;

std::mutex& memo_mutex() {
    static std::mutex m;
    return m;
}

// outcomes do not depend on max_heap, so the memo is shared across bounds
std::string game_key(const SubtractionGameSpec& spec) {
    std::ostringstream out;
    for (int s : spec.left_set) {
        out << s << ',';
    }
    out << '|';
    for (int s : spec.right_set) {
        out << s << ',';
    }
    return out.str();
}

// requires memo_mutex to be held
OutcomeMemo& memo_for(const SubtractionGameSpec& spec) {
    static std::map<std::string, OutcomeMemo> memos;
    return memos[game_key(spec)];
}

std::vector<std::vector<int>> vector_moves(const std::vector<int>& v, const std::vector<int>& set) {
    std::vector<std::vector<int>> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) {
            continue;
        }
        const int size = static_cast<int>(k) + 1;
        for (int s : set) {
            if (s > size) {
                break;
            }
            std::vector<int> w = v;
            --w[k];
            if (size - s >= 1) {
                ++w[static_cast<std::size_t>(size - s) - 1];
            }
            out.push_back(trimmed(std::move(w)));
        }
    }
    return out;
}

// requires memo_mutex to be held; v must be trimmed
Outcome outcome_locked(const std::vector<int>& v, const SubtractionGameSpec& spec,
                       OutcomeMemo& memo) {
    auto it = memo.find(v);
    if (it != memo.end()) {
        return it->second;
    }
    bool left_wins = false;
    {
        auto moves = vector_moves(v, spec.left_set);
        if (moves.empty()) {
            left_wins = true;
        } else {
            for (const auto& m : moves) {
                Outcome o = outcome_locked(m, spec, memo);
                if (o == Outcome::P || o == Outcome::L) {
                    left_wins = true;
                    break;
                }
            }
        }
    }
    bool right_wins = false;
    {
        auto moves = vector_moves(v, spec.right_set);
        if (moves.empty()) {
            right_wins = true;
        } else {
            for (const auto& m : moves) {
                Outcome o = outcome_locked(m, spec, memo);
                if (o == Outcome::P || o == Outcome::R) {
                    right_wins = true;
                    break;
                }
            }
        }
    }
    Outcome o = left_wins ? (right_wins ? Outcome::N : Outcome::L)
                          : (right_wins ? Outcome::R : Outcome::P);
    memo.emplace(v, o);
    return o;
}

// Holds the memo lock for a whole batch of outcome queries.
class Oracle {
  public:
    explicit Oracle(const SubtractionGameSpec& spec)
        : spec_(spec), lock_(memo_mutex()), memo_(memo_for(spec)) {}

    Outcome at(const std::vector<int>& v) { return outcome_locked(trimmed(v), spec_, memo_); }

  private:
    const SubtractionGameSpec& spec_;
    std::lock_guard<std::mutex> lock_;
    OutcomeMemo& memo_;
};

// next vector within the inclusive per-coordinate windows, first coordinate
// fastest; false once the box is exhausted
bool advance(std::vector<int>& v, const std::vector<int>& windows) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < windows[i]) {
            ++v[i];
            std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i), 0);
            return true;
        }
        v[i] = 0;
    }
    return false;
}

// true when outcomes agree between the layers x[coord]=a and x[coord]=b for
// every assignment of the other coordinates within their windows
bool layer_pair_agrees(Oracle& oracle, std::vector<int> windows, std::size_t coord, int a, int b) {
    windows[coord] = 0;
    std::vector<int> v(windows.size(), 0);
    do {
        v[coord] = a;
        Outcome oa = oracle.at(v);
        v[coord] = b;
        Outcome ob = oracle.at(v);
        v[coord] = 0;
        if (oa != ob) {
            return false;
        }
    } while (advance(v, windows));
    return true;
}

struct CoordWindow {
    int r = 0;
    int d = 0;
};

bool candidate_ok(Oracle& oracle, const std::vector<CoordWindow>& done, std::size_t ci, int r,
                  int d, const PeriodicitySearch& search) {
    std::vector<int> windows(ci + 1, 0);
    for (std::size_t j = 0; j < ci; ++j) {
        windows[j] = done[j].r + done[j].d;
    }
    // the new coordinate's layers agree one period apart, swept u_bound deep
    for (int u = 0; u <= search.u_bound; ++u) {
        if (!layer_pair_agrees(oracle, windows, ci, r + u, r + d + u)) {
            return false;
        }
    }
    // earlier periodicities stay intact with the new coordinate present
    std::vector<int> wide = windows;
    wide[ci] = r + d + search.u_bound;
    for (std::size_t j = 0; j < ci; ++j) {
        for (int u = 0; u <= search.u_bound; ++u) {
            if (!layer_pair_agrees(oracle, wide, j, done[j].r + u, done[j].r + done[j].d + u)) {
                return false;
            }
        }
    }
    return true;
}

// coordinate index of a partner j < ci such that adding one heap of each
// size leaves every outcome in the window unchanged
std::optional<std::size_t> find_diagonal(Oracle& oracle, const std::vector<CoordWindow>& done,
                                         std::size_t ci, const PeriodicitySearch& search) {
    std::vector<int> windows(ci + 1, 0);
    for (std::size_t j = 0; j < ci; ++j) {
        windows[j] = done[j].r + done[j].d + search.u_bound;
    }
    windows[ci] = search.r_bound + search.d_bound;
    for (std::size_t j = 0; j < ci; ++j) {
        bool ok = true;
        std::vector<int> v(ci + 1, 0);
        do {
            std::vector<int> w = v;
            ++w[j];
            ++w[ci];
            if (oracle.at(v) != oracle.at(w)) {
                ok = false;
                break;
            }
        } while (advance(v, windows));
        if (ok) {
            return j;
        }
    }
    return std::nullopt;
}

std::string power_word(const std::string& symbol, int exponent) {
    if (exponent == 0) {
        return "1";
    }
    if (exponent == 1) {
        return symbol;
    }
    return symbol + "^" + std::to_string(exponent);
}

// Multisets over {0, ..., symbol_count-1} of the given size, as
// non-decreasing index sequences in lexicographic order.
void collect_multisets(std::size_t symbol_count, int size, std::size_t min_index,
                       std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out) {
    if (size == 0) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = min_index; i < symbol_count; ++i) {
        cur.push_back(i);
        collect_multisets(symbol_count, size - 1, i, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<std::size_t>> multisets_up_to(std::size_t symbol_count, int bound) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    for (int size = 0; size <= bound; ++size) {
        collect_multisets(symbol_count, size, 0, cur, out);
    }
    return out;
}

std::string word_from_indices(const std::vector<std::size_t>& indices) {
    if (indices.empty()) {
        return "1";
    }
    std::string out;
    std::size_t i = 0;
    while (i < indices.size()) {
        std::size_t j = i;
        while (j < indices.size() && indices[j] == indices[i]) {
            ++j;
        }
        out += symbol_name(indices[i]);
        if (j - i > 1) {
            out += '^';
            out += std::to_string(j - i);
        }
        i = j;
    }
    return out;
}

// Both sequences are sorted; true when every entry of small occurs in big
// with at least the same multiplicity.
bool submultiset(const std::vector<std::size_t>& small, const std::vector<std::size_t>& big) {
    std::size_t j = 0;
    for (std::size_t v : small) {
        while (j < big.size() && big[j] < v) {
            ++j;
        }
        if (j == big.size() || big[j] != v) {
            return false;
        }
        ++j;
    }
    return true;
}

// heap count vector of a multiset of coordinate indices, each index i
// contributing one heap of heap_sizes[i]
std::vector<int> counts_from(const std::vector<std::size_t>& indices,
                             const std::vector<int>& heap_sizes) {
    std::vector<int> v;
    for (std::size_t i : indices) {
        const std::size_t size = static_cast<std::size_t>(heap_sizes[i]);
        if (v.size() < size) {
            v.resize(size, 0);
        }
        ++v[size - 1];
    }
    return v;
}

std::vector<int> vec_add(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += a[i];
    }
    for (std::size_t i = 0; i < b.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

std::vector<Outcome> heap_profile(Oracle& oracle, const std::vector<int>& element,
                                  const std::vector<std::vector<int>>& contexts) {
    std::vector<Outcome> prof;
    prof.reserve(contexts.size());
    for (const auto& ctx : contexts) {
        prof.push_back(oracle.at(vec_add(element, ctx)));
    }
    return prof;
}

SumPosition sum_of(const std::vector<PositionId>& symbols, const std::vector<std::size_t>& indices) {
    std::vector<PositionId> parts;
    parts.reserve(indices.size());
    for (std::size_t i : indices) {
        parts.push_back(symbols[i]);
    }
    return make_sum(parts);
}

}  // namespace

HeapVector::HeapVector(std::vector<int> c) : counts(std::move(c)) {
    for (int x : counts) {
        if (x < 0) {
            throw std::invalid_argument("heap counts must be non-negative");
        }
    }
    counts = trimmed(std::move(counts));
}

std::string heap_vector_text(const HeapVector& v) {
    if (v.counts.empty()) {
        return "0";
    }
    std::ostringstream out;
    for (std::size_t i = 0; i < v.counts.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << v.counts[i];
    }
    return out.str();
}

HeapVector parse_heap_vector(const std::string& text) {
    std::vector<int> counts;
    std::string token;
    std::istringstream in(text);
    bool any = false;
    while (std::getline(in, token, ',')) {
        const auto first = token.find_first_not_of(" \t");
        if (first == std::string::npos) {
            throw std::invalid_argument("heap vector has an empty entry: \"" + text + "\"");
        }
        const auto last = token.find_last_not_of(" \t");
        token = token.substr(first, last - first + 1);
        if (token.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("heap vector entry is not a count: \"" + token + "\"");
        }
        counts.push_back(std::stoi(token));
        any = true;
    }
    if (!any) {
        throw std::invalid_argument("empty heap vector");
    }
    return HeapVector(std::move(counts));
}

Outcome heap_outcome(const SubtractionGameSpec& spec, const HeapVector& v) {
    validate_spec(spec);
    for (int x : v.counts) {
        if (x < 0) {
            throw std::invalid_argument("heap counts must be non-negative");
        }
    }
    std::vector<int> counts = trimmed(v.counts);
    if (static_cast<int>(counts.size()) > spec.max_heap) {
        throw std::invalid_argument("heap size exceeds the game's tracked maximum");
    }
    Oracle oracle(spec);
    return oracle.at(counts);
}

Outcome OutcomeTable::at(const std::vector<int>& v) const {
    if (v.size() != limits.size()) {
        throw std::invalid_argument("coordinate count does not match the table");
    }
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] > limits[i]) {
            throw std::out_of_range("coordinate outside the table");
        }
        idx += static_cast<std::size_t>(v[i]) * stride;
        stride *= static_cast<std::size_t>(limits[i]) + 1;
    }
    return cells[idx];
}

OutcomeTable outcome_table(const SubtractionGameSpec& spec, const std::vector<int>& limits) {
    validate_spec(spec);
    if (static_cast<int>(limits.size()) > spec.max_heap) {
        throw std::invalid_argument("table has more coordinates than tracked heap sizes");
    }
    for (int l : limits) {
        if (l < 0) {
            throw std::invalid_argument("table limits must be non-negative");
        }
    }
    OutcomeTable t;
    t.limits = limits;
    Oracle oracle(spec);
    std::vector<int> v(limits.size(), 0);
    do {
        t.cells.push_back(oracle.at(v));
    } while (advance(v, limits));
    return t;
}

std::string format_outcome_table(const OutcomeTable& t) {
    std::ostringstream out;
    const std::size_t dims = t.limits.size();
    if (dims <= 1) {
        for (std::size_t i = 0; i < t.cells.size(); ++i) {
            if (i > 0) {
                out << ' ';
            }
            out << outcome_char(t.cells[i]);
        }
        out << '\n';
        return out.str();
    }

    const std::size_t row_len = static_cast<std::size_t>(t.limits[0]) + 1;
    std::vector<int> high(dims - 1, 0);
    std::vector<int> high_windows(t.limits.begin() + 1, t.limits.end());
    std::vector<std::string> labels;
    std::size_t label_width = 0;
    do {
        std::ostringstream label;
        for (std::size_t i = 0; i < high.size(); ++i) {
            if (i > 0) {
                label << ' ';
            }
            label << 'x' << (i + 2) << '=' << high[i];
        }
        labels.push_back(label.str());
        label_width = std::max(label_width, labels.back().size());
    } while (advance(high, high_windows));

    for (std::size_t row = 0; row < labels.size(); ++row) {
        out << labels[row];
        out << std::string(label_width - labels[row].size(), ' ') << " |";
        for (std::size_t i = 0; i < row_len; ++i) {
            out << ' ' << outcome_char(t.cells[row * row_len + i]);
        }
        out << '\n';
    }
    return out.str();
}

PeriodicityReport detect_periodicity(const SubtractionGameSpec& spec,
                                     const PeriodicitySearch& search) {
    validate_spec(spec);
    if (search.r_bound < 0 || search.d_bound < 1 || search.u_bound < 0) {
        throw std::invalid_argument("periodicity search bounds are out of range");
    }
    PeriodicityReport rep;
    rep.spec = spec;
    rep.search = search;

    Oracle oracle(spec);
    std::vector<CoordWindow> done;
    std::vector<int> cum_r;
    std::vector<int> cum_d;
    for (int size = 1; size <= spec.max_heap; ++size) {
        const std::size_t ci = static_cast<std::size_t>(size) - 1;
        CoordinatePeriodicity entry;
        entry.heap_size = size;
        for (int r = 0; r <= search.r_bound && !entry.verified; ++r) {
            for (int d = 1; d <= search.d_bound && !entry.verified; ++d) {
                if (candidate_ok(oracle, done, ci, r, d, search)) {
                    entry.verified = true;
                    entry.r = r;
                    entry.d = d;
                }
            }
        }
        if (entry.verified) {
            done.push_back({entry.r, entry.d});
            cum_r.push_back(entry.r);
            cum_d.push_back(entry.d);
            entry.pre_period = cum_r;
            entry.period = cum_d;
            rep.coordinates.push_back(std::move(entry));
            continue;
        }
        if (auto partner = find_diagonal(oracle, done, ci, search)) {
            entry.diagonal_partner = static_cast<int>(*partner) + 1;
        }
        rep.coordinates.push_back(std::move(entry));
        break;
    }

    for (std::size_t i = 0; i < rep.coordinates.size(); ++i) {
        const CoordinatePeriodicity& entry = rep.coordinates[i];
        const std::string sym = symbol_name(i);
        rep.candidate_monoid.symbols.push_back(sym);
        if (entry.verified) {
            rep.candidate_monoid.relations.emplace_back(power_word(sym, entry.r + entry.d),
                                                        power_word(sym, entry.r));
        } else if (entry.diagonal_partner) {
            const std::string partner =
                symbol_name(static_cast<std::size_t>(*entry.diagonal_partner) - 1);
            rep.candidate_monoid.relations.emplace_back(partner + sym, "1");
        }
    }
    return rep;
}

HeapQuotientReport heap_quotient(const SubtractionGameSpec& spec, int sum_bound,
                                 int context_bound) {
    validate_spec(spec);
    if (sum_bound < 1) {
        throw std::invalid_argument("sum bound must be at least 1");
    }
    if (context_bound < 0) {
        throw std::invalid_argument("context bound must be non-negative");
    }

    HeapQuotientReport rep;
    rep.spec = spec;
    rep.periodicity = detect_periodicity(spec);

    Oracle oracle(spec);

    // stage heap sizes ascending: a size indistinguishable from a word in
    // the earlier sizes is mapped onto the least such word
    std::vector<int>& symbol_sizes = rep.symbol_sizes;
    for (int size = 1; size <= spec.max_heap; ++size) {
        std::vector<int> ctx_sizes = symbol_sizes;
        ctx_sizes.push_back(size);
        std::vector<std::vector<int>> contexts;
        for (const auto& indices : multisets_up_to(ctx_sizes.size(), context_bound)) {
            contexts.push_back(counts_from(indices, ctx_sizes));
        }
        std::vector<int> single(static_cast<std::size_t>(size), 0);
        single.back() = 1;
        const std::vector<Outcome> target = heap_profile(oracle, single, contexts);

        std::optional<std::string> match;
        for (const auto& indices : multisets_up_to(symbol_sizes.size(), sum_bound)) {
            if (heap_profile(oracle, counts_from(indices, symbol_sizes), contexts) == target) {
                match = word_from_indices(indices);
                break;
            }
        }
        if (match) {
            rep.heap_map.emplace_back(size, *match);
        } else {
            symbol_sizes.push_back(size);
            rep.heap_map.emplace_back(size, symbol_name(symbol_sizes.size() - 1));
        }
    }

    std::vector<PositionId> compiled;
    compiled.reserve(symbol_sizes.size());
    for (int size : symbol_sizes) {
        compiled.push_back(compile_heap_position(spec, size));
    }

    QuotientReport& q = rep.quotient;
    q.sum_bound = sum_bound;
    q.context_bound = context_bound;
    q.closure.generators = compiled;
    q.closure.base.push_back(zero());
    q.closure.base.insert(q.closure.base.end(), compiled.begin(), compiled.end());

    std::vector<std::vector<int>> ctx_counts;
    for (const auto& indices : multisets_up_to(symbol_sizes.size(), context_bound)) {
        ctx_counts.push_back(counts_from(indices, symbol_sizes));
        q.contexts.push_back(sum_of(compiled, indices));
    }

    std::map<std::vector<Outcome>, std::size_t> class_by_profile;
    std::vector<std::vector<std::size_t>> relation_lhs;
    std::vector<std::vector<int>> rep_counts;

    for (int size = 0; size <= sum_bound; ++size) {
        std::vector<std::vector<std::size_t>> layer;
        std::vector<std::size_t> cur;
        collect_multisets(symbol_sizes.size(), size, 0, cur, layer);
        for (const auto& indices : layer) {
            std::vector<int> element = counts_from(indices, symbol_sizes);
            std::vector<Outcome> prof = heap_profile(oracle, element, ctx_counts);
            auto it = class_by_profile.find(prof);
            if (it == class_by_profile.end()) {
                std::size_t idx = q.classes.size();
                q.classes.push_back(
                    {sum_of(compiled, indices), word_from_indices(indices), prof.front()});
                q.profiles.push_back(prof);
                rep_counts.push_back(std::move(element));
                class_by_profile.emplace(std::move(prof), idx);
            } else {
                bool reducible = false;
                for (const auto& lhs : relation_lhs) {
                    if (submultiset(lhs, indices)) {
                        reducible = true;
                        break;
                    }
                }
                if (!reducible) {
                    q.relations.emplace_back(word_from_indices(indices),
                                             q.classes[it->second].word);
                    relation_lhs.push_back(indices);
                }
            }
        }
        q.layer_class_counts.push_back(q.classes.size());
    }

    bool stable = q.layer_class_counts.back() ==
                  q.layer_class_counts[q.layer_class_counts.size() - 2];
    bool closed = stable;
    if (stable) {
        for (std::size_t c = 0; c < rep_counts.size() && closed; ++c) {
            for (std::size_t s = 0; s < symbol_sizes.size(); ++s) {
                std::vector<int> bumped = rep_counts[c];
                const std::size_t slot = static_cast<std::size_t>(symbol_sizes[s]) - 1;
                if (bumped.size() <= slot) {
                    bumped.resize(slot + 1, 0);
                }
                ++bumped[slot];
                if (class_by_profile.find(heap_profile(oracle, bumped, ctx_counts)) ==
                    class_by_profile.end()) {
                    closed = false;
                    break;
                }
            }
        }
    }
    q.status = closed ? QuotientStatus::FiniteVerifiedAtBound : QuotientStatus::NotStabilized;

    for (std::size_t i = 0; i < q.classes.size(); ++i) {
        q.tetrapartition[static_cast<std::size_t>(q.classes[i].outcome)].push_back(i);
    }
    for (std::size_t i = 0; i < q.classes.size(); ++i) {
        for (std::size_t j = i + 1; j < q.classes.size(); ++j) {
            for (std::size_t k = 0; k < q.contexts.size(); ++k) {
                if (q.profiles[i][k] != q.profiles[j][k]) {
                    q.witnesses.push_back(
                        {q.classes[i].representative, q.classes[j].representative, q.contexts[k]});
                    break;
                }
            }
        }
    }
    return rep;
}

PositionId compile_heap_position(const SubtractionGameSpec& spec, int n) {
    validate_spec(spec);
    if (n < 0 || n > spec.max_heap) {
        throw std::invalid_argument("heap size outside the game's tracked range");
    }
    std::vector<PositionId> memo;
    memo.reserve(static_cast<std::size_t>(n) + 1);
    memo.push_back(zero());
    for (int size = 1; size <= n; ++size) {
        std::vector<PositionId> left;
        std::vector<PositionId> right;
        for (int s : spec.left_set) {
            if (s <= size) {
                left.push_back(memo[static_cast<std::size_t>(size - s)]);
            }
        }
        for (int s : spec.right_set) {
            if (s <= size) {
                right.push_back(memo[static_cast<std::size_t>(size - s)]);
            }
        }
        memo.push_back(build(std::move(left), std::move(right)));
    }
    return memo.back();
}

}  // namespace misere
