#include "descoord/generator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

namespace descoord {

Generator::Generator(Alphabet alphabet, std::size_t state_count, StateId initial,
                     const std::vector<Transition>& transitions)
    : alphabet_(std::move(alphabet)), trans_(state_count), initial_(initial) {
    if (state_count == 0) {
        if (initial != -1)
            throw InputError("zero-state generator must have initial -1");
        return;
    }
    if (initial < 0 || static_cast<std::size_t>(initial) >= state_count)
        throw InputError("initial state " + std::to_string(initial) +
                         " out of range 0.." + std::to_string(state_count - 1));
    for (const auto& t : transitions) {
        if (t.src < 0 || static_cast<std::size_t>(t.src) >= state_count ||
            t.dst < 0 || static_cast<std::size_t>(t.dst) >= state_count)
            throw InputError("transition state out of range: " +
                             std::to_string(t.src) + " " + t.event.name() + " " +
                             std::to_string(t.dst));
        if (!alphabet_.contains(t.event))
            throw InputError("transition uses undeclared event '" + t.event.name() + "'");
        auto [it, inserted] = trans_[t.src].emplace(t.event, t.dst);
        if (!inserted)
            throw InputError("nondeterministic transitions from state " +
                             std::to_string(t.src) + " on '" + t.event.name() + "'");
    }
}

Generator Generator::empty_language(Alphabet alphabet) {
    return Generator(std::move(alphabet), 0, -1, {});
}

Generator Generator::epsilon_language(Alphabet alphabet) {
    return Generator(std::move(alphabet), 1, 0, {});
}

Generator Generator::universal(Alphabet alphabet) {
    std::vector<Transition> loops;
    for (const auto& e : alphabet) loops.push_back({0, e, 0});
    return Generator(std::move(alphabet), 1, 0, loops);
}

Generator Generator::from_words(Alphabet alphabet, const std::vector<Word>& words) {
    // Trie over the prefix closure, then canonical renumbering.
    std::vector<std::map<Event, StateId>> nodes(1);
    for (const auto& w : words) {
        StateId at = 0;
        for (const auto& e : w) {
            if (!alphabet.contains(e))
                throw InputError("word uses event '" + e.name() +
                                 "' outside the alphabet");
            auto it = nodes[at].find(e);
            if (it == nodes[at].end()) {
                nodes.emplace_back();
                it = nodes[at].emplace(e, static_cast<StateId>(nodes.size() - 1)).first;
            }
            at = it->second;
        }
    }
    std::vector<Transition> ts;
    for (StateId s = 0; s < static_cast<StateId>(nodes.size()); ++s)
        for (const auto& [e, d] : nodes[s]) ts.push_back({s, e, d});
    return trim(Generator(std::move(alphabet), nodes.size(), 0, ts));
}

std::optional<StateId> Generator::step(StateId state, const Event& event) const {
    const auto& out = trans_.at(state);
    auto it = out.find(event);
    if (it == out.end()) return std::nullopt;
    return it->second;
}

std::optional<StateId> Generator::run(const Word& word) const {
    if (is_empty_language()) return std::nullopt;
    StateId at = initial_;
    for (const auto& e : word) {
        auto next = step(at, e);
        if (!next) return std::nullopt;
        at = *next;
    }
    return at;
}

bool Generator::accepts(const Word& word) const { return run(word).has_value(); }

const std::map<Event, StateId>& Generator::transitions_from(StateId state) const {
    return trans_.at(state);
}

std::vector<Transition> Generator::transitions() const {
    std::vector<Transition> ts;
    for (StateId s = 0; s < static_cast<StateId>(trans_.size()); ++s)
        for (const auto& [e, d] : trans_[s]) ts.push_back({s, e, d});
    return ts;
}

Generator trim(const Generator& g) {
    if (g.is_empty_language()) return Generator::empty_language(g.alphabet());
    std::vector<StateId> relabel(g.state_count(), -1);
    std::vector<StateId> order;
    std::deque<StateId> queue{g.initial()};
    relabel[g.initial()] = 0;
    order.push_back(g.initial());
    while (!queue.empty()) {
        StateId at = queue.front();
        queue.pop_front();
        for (const auto& [e, d] : g.transitions_from(at)) {
            if (relabel[d] == -1) {
                relabel[d] = static_cast<StateId>(order.size());
                order.push_back(d);
                queue.push_back(d);
            }
        }
    }
    std::vector<Transition> ts;
    for (StateId old : order)
        for (const auto& [e, d] : g.transitions_from(old))
            ts.push_back({relabel[old], e, relabel[d]});
    return Generator(g.alphabet(), order.size(), 0, ts);
}

Generator minimize(const Generator& g) {
    Generator t = trim(g);
    if (t.is_empty_language() || t.state_count() <= 1) return t;
    const auto n = static_cast<StateId>(t.state_count());

    // Moore refinement; all states accepting, so the initial partition is
    // by enabled-event set.
    std::vector<int> block(n);
    {
        std::map<std::vector<std::string>, int> sig_block;
        for (StateId s = 0; s < n; ++s) {
            std::vector<std::string> sig;
            for (const auto& [e, d] : t.transitions_from(s)) sig.push_back(e.name());
            auto [it, inserted] =
                sig_block.emplace(sig, static_cast<int>(sig_block.size()));
            block[s] = it->second;
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, std::vector<int>>, int> sig_block;
        std::vector<int> next(n);
        for (StateId s = 0; s < n; ++s) {
            std::vector<int> sig;
            for (const auto& [e, d] : t.transitions_from(s)) sig.push_back(block[d]);
            auto key = std::make_pair(block[s], std::move(sig));
            auto [it, inserted] =
                sig_block.emplace(std::move(key), static_cast<int>(sig_block.size()));
            next[s] = it->second;
        }
        if (next != block) {
            block = std::move(next);
            changed = true;
        }
    }
    int blocks = *std::max_element(block.begin(), block.end()) + 1;
    std::vector<StateId> rep(blocks, -1);
    for (StateId s = 0; s < n; ++s)
        if (rep[block[s]] == -1) rep[block[s]] = s;
    std::vector<Transition> ts;
    for (int b = 0; b < blocks; ++b)
        for (const auto& [e, d] : t.transitions_from(rep[b]))
            ts.push_back({b, e, block[d]});
    return trim(Generator(t.alphabet(), blocks, block[t.initial()], ts));
}

}  // namespace descoord
