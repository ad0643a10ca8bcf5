#include "descoord/ops.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace descoord {

Generator sync_product(std::span<const Generator> parts) {
    if (parts.empty()) throw InputError("sync_product: empty part list");

    Alphabet alphabet;
    for (const auto& p : parts) alphabet = alphabet.unite(p.alphabet());

    for (const auto& p : parts)
        if (p.is_empty_language()) return Generator::empty_language(alphabet);

    using Tuple = std::vector<StateId>;
    std::map<Tuple, StateId> ids;
    std::vector<Tuple> states;
    std::vector<Transition> ts;

    Tuple init(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) init[i] = parts[i].initial();
    ids.emplace(init, 0);
    states.push_back(init);

    std::deque<StateId> queue{0};
    while (!queue.empty()) {
        StateId at = queue.front();
        queue.pop_front();
        Tuple here = states[at];
        for (const auto& e : alphabet) {
            Tuple next = here;
            bool enabled = true;
            for (std::size_t i = 0; i < parts.size() && enabled; ++i) {
                if (!parts[i].alphabet().contains(e)) continue;
                auto d = parts[i].step(here[i], e);
                if (!d)
                    enabled = false;
                else
                    next[i] = *d;
            }
            if (!enabled) continue;
            auto [it, inserted] = ids.emplace(next, static_cast<StateId>(states.size()));
            if (inserted) {
                states.push_back(next);
                queue.push_back(it->second);
            }
            ts.push_back({at, e, it->second});
        }
    }
    return Generator(alphabet, states.size(), 0, ts);
}

Generator sync_product(const Generator& a, const Generator& b) {
    const Generator parts[] = {a, b};
    return sync_product(std::span<const Generator>(parts, 2));
}

Generator project(const Generator& g, const Alphabet& onto,
                  const ProjectOptions& options) {
    if (g.is_empty_language()) return Generator::empty_language(onto);

    // Silent closure: states reachable by events outside `onto`.
    auto closure = [&](std::set<StateId> set) {
        std::deque<StateId> queue(set.begin(), set.end());
        while (!queue.empty()) {
            StateId at = queue.front();
            queue.pop_front();
            for (const auto& [e, d] : g.transitions_from(at)) {
                if (onto.contains(e)) continue;
                if (set.insert(d).second) queue.push_back(d);
            }
        }
        return set;
    };

    using Subset = std::set<StateId>;
    std::map<Subset, StateId> ids;
    std::vector<Subset> subsets;
    std::vector<Transition> ts;

    Subset start = closure({g.initial()});
    ids.emplace(start, 0);
    subsets.push_back(start);
    std::deque<StateId> queue{0};
    while (!queue.empty()) {
        StateId at = queue.front();
        queue.pop_front();
        Subset here = subsets[at];
        for (const auto& e : onto) {
            Subset moved;
            for (StateId q : here)
                if (auto d = g.step(q, e)) moved.insert(*d);
            if (moved.empty()) continue;
            Subset next = closure(std::move(moved));
            auto [it, inserted] = ids.emplace(next, static_cast<StateId>(subsets.size()));
            if (inserted) {
                subsets.push_back(next);
                queue.push_back(it->second);
            }
            ts.push_back({at, e, it->second});
        }
    }
    Generator result(onto, subsets.size(), 0, ts);
    return options.minimize ? minimize(result) : result;
}

Generator inverse_project(const Generator& g, const Alphabet& ambient) {
    if (!g.alphabet().subset_of(ambient))
        throw InputError("inverse_project: generator alphabet not inside ambient");
    if (g.is_empty_language()) return Generator::empty_language(ambient);
    Alphabet added = ambient.subtract(g.alphabet());
    std::vector<Transition> ts = g.transitions();
    for (StateId s = 0; s < static_cast<StateId>(g.state_count()); ++s)
        for (const auto& e : added) ts.push_back({s, e, s});
    return trim(Generator(ambient, g.state_count(), g.initial(), ts));
}

namespace {

constexpr StateId kDead = -1;

}  // namespace

IncludesResult language_includes(const Generator& a, const Generator& b,
                                 IncludesMode mode) {
    // Joint BFS over (a-state-or-dead, b-state-or-dead); a side dies when
    // it cannot follow an event (unknown events reject). A pair where
    // exactly one side is alive yields the shortest witness; exploring
    // events in name order makes it lexicographically least.
    Alphabet alphabet = a.alphabet().unite(b.alphabet());
    StateId ia = a.is_empty_language() ? kDead : a.initial();
    StateId ib = b.is_empty_language() ? kDead : b.initial();

    auto verdict = [&](bool missing_in_a, bool missing_in_b,
                       const Word& w) -> std::optional<IncludesResult> {
        if (mode == IncludesMode::Subset) {
            if (missing_in_a) return IncludesResult{false, w};
            return std::nullopt;
        }
        if (missing_in_a || missing_in_b) return IncludesResult{false, w};
        return std::nullopt;
    };

    // Epsilon itself distinguishes empty from nonempty languages.
    if (auto v = verdict(ia == kDead && ib != kDead, ib == kDead && ia != kDead, {}))
        return *v;
    if (ia == kDead || ib == kDead) return IncludesResult{true, std::nullopt};

    struct Node {
        StateId qa, qb;
        Word word;
    };
    std::set<std::pair<StateId, StateId>> seen{{ia, ib}};
    std::deque<Node> queue{{ia, ib, {}}};
    while (!queue.empty()) {
        Node at = queue.front();
        queue.pop_front();
        for (const auto& e : alphabet) {
            auto da = at.qa == kDead ? std::nullopt : a.step(at.qa, e);
            auto db = at.qb == kDead ? std::nullopt : b.step(at.qb, e);
            StateId na = da ? *da : kDead;
            StateId nb = db ? *db : kDead;
            if (na == kDead && nb == kDead) continue;
            Word w = at.word;
            w.push_back(e);
            if (auto v = verdict(na == kDead, nb == kDead, w)) return *v;
            if (seen.emplace(na, nb).second) queue.push_back({na, nb, std::move(w)});
        }
    }
    return IncludesResult{true, std::nullopt};
}

std::vector<Word> enumerate_bounded(const Generator& g, std::size_t maxlen) {
    std::vector<Word> out;
    if (g.is_empty_language()) return out;
    // Level order with sorted transition maps yields (length, lex) order
    // directly.
    std::vector<std::pair<StateId, Word>> level{{g.initial(), {}}};
    out.push_back({});
    for (std::size_t len = 1; len <= maxlen && !level.empty(); ++len) {
        std::vector<std::pair<StateId, Word>> next;
        for (const auto& [q, w] : level) {
            for (const auto& [e, d] : g.transitions_from(q)) {
                Word ext = w;
                ext.push_back(e);
                out.push_back(ext);
                next.emplace_back(d, std::move(ext));
            }
        }
        level = std::move(next);
    }
    return out;
}

}  // namespace descoord
