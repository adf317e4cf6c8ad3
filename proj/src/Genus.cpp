#include "misere/Genus.hpp"

#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "misere/Outcome.hpp"

namespace misere {

int mex(const std::vector<int>& values) {
    std::vector<char> seen(values.size() + 1, 0);
    for (int v : values) {
        if (v >= 0 && static_cast<std::size_t>(v) < seen.size()) seen[v] = 1;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) return static_cast<int>(i);
    }
    return static_cast<int>(seen.size());
}

namespace {

int grundy_normal(PositionId p) {
    static std::mutex mutex;
    static std::unordered_map<PositionId, int> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    std::vector<int> options;
    for (PositionId o : fetch(p).left) options.push_back(grundy_normal(o));
    const int result = mex(options);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(p, result);
    return result;
}

// Misère Grundy value over disjunctive sums of impartial positions. The
// empty sum has no options and takes the value 1.
int grundy_misere(const SumPosition& s) {
    static std::mutex mutex;
    static std::unordered_map<SumPosition, int, SumPositionHash> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(s);
        if (it != cache.end()) return it->second;
    }
    std::vector<int> options;
    for (std::size_t i = 0; i < s.components.size(); ++i) {
        if (i > 0 && s.components[i] == s.components[i - 1]) continue;
        for (PositionId option : fetch(s.components[i]).left) {
            std::vector<PositionId> next = s.components;
            next[i] = option;
            options.push_back(grundy_misere(make_sum(std::move(next))));
        }
    }
    const int result = options.empty() ? 1 : mex(options);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(s, result);
    return result;
}

}  // namespace

Genus genus(PositionId p, int max_digits) {
    if (!profile(p).impartial) {
        throw std::invalid_argument("genus requires an impartial position");
    }
    Genus result;
    result.g_plus = grundy_normal(p);
    const PositionId star2 = named(NamedPosition::StarN, 2);
    SumPosition s = make_sum({p});
    while (static_cast<int>(result.digits.size()) < max_digits) {
        result.digits.push_back(grundy_misere(s));
        const std::size_t n = result.digits.size();
        if (n >= 5) {
            // The tail may be cut once the closing two-digit window has
            // reproduced itself twice in a row.
            const std::size_t k = n - 5;
            const auto& d = result.digits;
            if (d[k] == d[k + 2] && d[k + 1] == d[k + 3] && d[k + 2] == d[k + 4]) {
                result.digits.resize(k + 2);
                return result;
            }
        }
        s = sum_add(s, star2);
    }
    throw std::runtime_error("genus digits did not settle within the digit cap");
}

Genus nim_heap_genus(int n) {
    if (n < 0) throw std::invalid_argument("heap size must be nonnegative");
    if (n == 0) return Genus{0, {1, 2, 0}};
    if (n == 1) return Genus{1, {0, 3, 1}};
    const int partner = (n % 4 <= 1) ? n + 2 : n - 2;
    return Genus{n, {n, partner}};
}

bool is_tame(PositionId p) {
    if (!profile(p).impartial) {
        throw std::invalid_argument("tameness requires an impartial position");
    }
    static std::mutex mutex;
    static std::unordered_map<PositionId, bool> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(p);
        if (it != cache.end()) return it->second;
    }
    const Genus g = genus(p);
    bool result = g == nim_heap_genus(g.g_plus) || g == Genus{0, {0, 2}} || g == Genus{1, {1, 3}};
    for (PositionId option : fetch(p).left) {
        if (!result) break;
        result = is_tame(option);
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(p, result);
    return result;
}

std::string format_genus(const Genus& g) {
    std::string out = std::to_string(g.g_plus) + "^{";
    for (int d : g.digits) out += std::to_string(d);
    return out + "}";
}

}  // namespace misere
