#pragma once

#include <random>
#include <vector>

#include "descoord/generator.hpp"
#include "descoord/ops.hpp"
#include "descoord/verify.hpp"

namespace descoord::testing {

using Rng = std::mt19937_64;

/// Alphabet {a, b, c, ...} of the given size (max 8).
Alphabet small_alphabet(int size);

/// Random trimmed generator over the alphabet: up to max_states states,
/// each (state, event) transition present with probability density.
/// Always accepts at least epsilon.
Generator random_generator(Rng& rng, const Alphabet& alphabet, int max_states,
                           double density = 0.5);

/// Random sublanguage of g: drops transitions with the given probability.
Generator random_sublanguage(Rng& rng, const Generator& g, double drop = 0.3);

/// Random finite prefix-closed language as a trie: up to max_words words
/// of length up to max_len.
Generator random_finite_language(Rng& rng, const Alphabet& alphabet, int max_words,
                                 int max_len);

/// Random subset of the alphabet; at least min_size events.
Alphabet random_subalphabet(Rng& rng, const Alphabet& alphabet, double keep,
                            int min_size = 0);

/// Random agent alphabets over `alphabet` whose observable sets cover it
/// and whose controllable sets satisfy shared-event consistency (closed
/// under the consistency rule after random seeding).
std::vector<AgentAlphabet> random_consistent_agents(Rng& rng, const Alphabet& alphabet,
                                                    int agent_count);

/// Deterministic automaton for L(a) | L(b) (pair construction with dead
/// markers), trimmed and canonical.
Generator language_union(const Generator& a, const Generator& b);

/// A three-plant, two-group instance whose spec is two-level
/// conditionally decomposable w.r.t. the plan (built as a product over
/// the per-agent pieces and verified). Returns nothing when the random
/// draw fails the filters.
struct TwoLevelInstance {
    std::vector<Generator> plants;
    GroupingPlan plan;
    Generator spec;
    Alphabet uncontrollable;

    TwoLevelInstance() : spec(Generator::empty_language({})) {}
};

std::optional<TwoLevelInstance> random_two_level_instance(Rng& rng,
                                                          bool spec_inside_plant);

}  // namespace descoord::testing
