#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "descoord/generator.hpp"
#include "descoord/ops.hpp"
#include "descoord/verify.hpp"

// Brute-force reference semantics, kept independent of the library's
// algorithmic path: plain word enumeration, definition-literal filtering,
// and exhaustive sublanguage search. Everything here is only meant for
// desk-sized instances.
namespace descoord::testing {

using WordSet = std::set<Word>;

WordSet to_set(const std::vector<Word>& words);

/// Words of the synchronous product up to maxlen, computed by filtering
/// every word over the union alphabet through the per-part projections.
WordSet product_words_oracle(std::span<const Generator> parts, std::size_t maxlen);

/// Projection image of the bounded language.
WordSet project_words_oracle(const Generator& g, const Alphabet& onto,
                             std::size_t maxlen);

/// Words over `ambient` whose projection lands in L(g), up to maxlen.
WordSet inverse_project_words_oracle(const Generator& g, const Alphabet& ambient,
                                     std::size_t maxlen);

/// One-step controllability scan by enumeration of spec words.
std::optional<Word> controllability_violation_oracle(const Generator& spec,
                                                     const Generator& plant,
                                                     const Alphabet& uncontrollable,
                                                     std::size_t maxlen);

/// Exact language query: is there a string u from the state reached by s
/// such that su is in L(g) and P(su) = t? (reachability product of g with
/// the remainder of t).
bool realizable_continuation(const Generator& g, const Word& s, const Alphabet& onto,
                             const Word& t);

/// Observer definition scanned over words of length <= bound.
bool observer_oracle(const Generator& g, const Alphabet& onto, std::size_t bound);

/// LCC definition scanned over words of length <= bound; strict variant
/// demands fully uncontrollable silent paths everywhere.
bool lcc_oracle(const Generator& g, const Alphabet& onto, const Alphabet& uncontrollable,
                bool strict, std::size_t bound);

/// Supremal controllable sublanguage of a finite spec by enumerating all
/// prefix-closed sublanguages and keeping the controllable ones.
Generator supc_oracle(const Generator& finite_spec, const Generator& plant,
                      const Alphabet& uncontrollable);

/// All prefix-closed sublanguages of a finite language, as word sets.
std::vector<WordSet> prefix_closed_sublanguages(const Generator& finite_spec);

/// C&P coobservability by per-agent lookalike-state sets evolved along
/// every real word (memoized, depth-capped).
bool coobservable_oracle(const Generator& spec, const Generator& plant,
                         std::span<const AgentAlphabet> agents, std::size_t bound);

}  // namespace descoord::testing
