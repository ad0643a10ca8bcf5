#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "descoord/event.hpp"

namespace descoord {

using StateId = int;

/// A transition triple (src, event, dst).
struct Transition {
    StateId src;
    Event event;
    StateId dst;
};

/// A deterministic generator: finite states with dense ids 0..n-1, a named
/// alphabet, a partial transition function and an initial state. Every
/// state is accepting, so the generated language is prefix-closed by
/// construction. The value is immutable after construction.
///
/// The empty language is the generator with zero states (no initial
/// state); prefix-closedness means any other generator accepts epsilon.
class Generator {
public:
    /// Builds a generator and validates determinism and id ranges.
    /// Unreachable states are permitted; trim() removes them.
    Generator(Alphabet alphabet, std::size_t state_count, StateId initial,
              const std::vector<Transition>& transitions);

    /// The zero-state generator of the empty language over `alphabet`.
    static Generator empty_language(Alphabet alphabet);
    /// One state, no transitions: the language {epsilon}.
    static Generator epsilon_language(Alphabet alphabet);
    /// One state with a self-loop on every event: the universal language.
    static Generator universal(Alphabet alphabet);
    /// The smallest generator accepting exactly the prefix closure of the
    /// given words (a trie, canonically numbered).
    static Generator from_words(Alphabet alphabet, const std::vector<Word>& words);

    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t state_count() const { return trans_.size(); }
    bool is_empty_language() const { return trans_.empty(); }
    StateId initial() const { return initial_; }

    /// Successor of `state` on `event`, if defined.
    std::optional<StateId> step(StateId state, const Event& event) const;
    /// State reached from the initial state on `word`, if the whole word
    /// is defined.
    std::optional<StateId> run(const Word& word) const;
    /// Language membership. Events outside the alphabet are rejected.
    bool accepts(const Word& word) const;

    /// Outgoing transitions of a state in event-name order.
    const std::map<Event, StateId>& transitions_from(StateId state) const;

    /// All transitions sorted by (src, event name).
    std::vector<Transition> transitions() const;

private:
    Generator() = default;

    Alphabet alphabet_;
    std::vector<std::map<Event, StateId>> trans_;
    StateId initial_ = -1;
};

/// Reachable part of `g`, states renumbered in BFS discovery order with
/// events explored in name order. Language-preserving; the canonical form
/// every operation in the library emits.
Generator trim(const Generator& g);

/// Nerode minimization (partition refinement on enabled-event signatures).
/// Canonically renumbered. Exposed as an option; no pipeline result
/// depends on minimality.
Generator minimize(const Generator& g);

}  // namespace descoord
