#pragma once

#include <optional>
#include <span>
#include <vector>

#include "descoord/generator.hpp"

namespace descoord {

/// Synchronous product of the given generators: components move together
/// on events shared with their alphabet and independently otherwise. The
/// result alphabet is the union of part alphabets; the result is trimmed
/// and canonically numbered. Throws InputError on an empty part list.
Generator sync_product(std::span<const Generator> parts);
Generator sync_product(const Generator& a, const Generator& b);

struct ProjectOptions {
    bool minimize = false;
};

/// Natural projection onto `onto`: a deterministic generator over `onto`
/// whose language is P(L(g)), built by subset construction with events
/// outside `onto` treated as silent. Events of `onto` missing from g's
/// alphabet simply never occur.
Generator project(const Generator& g, const Alphabet& onto,
                  const ProjectOptions& options = {});

/// Inverse projection into `ambient`: self-loops on ambient \ g.alphabet
/// at every state. Requires g.alphabet to be a subset of ambient.
Generator inverse_project(const Generator& g, const Alphabet& ambient);

enum class IncludesMode { Subset, Equal };

struct IncludesResult {
    bool holds = false;
    /// On failure, the shortest witness word (ties broken by event-name
    /// order) in the offending difference.
    std::optional<Word> witness;

    explicit operator bool() const { return holds; }
};

/// Subset mode decides L(b) <= L(a); Equal mode decides L(a) == L(b).
/// A word using an event unknown to one automaton is simply not in that
/// automaton's language.
IncludesResult language_includes(const Generator& a, const Generator& b,
                                 IncludesMode mode);

inline bool language_subset(const Generator& sub, const Generator& super) {
    return language_includes(super, sub, IncludesMode::Subset).holds;
}
inline bool language_equal(const Generator& a, const Generator& b) {
    return language_includes(a, b, IncludesMode::Equal).holds;
}

/// Exactly the words of L(g) of length <= maxlen, in length-then-
/// lexicographic order.
std::vector<Word> enumerate_bounded(const Generator& g, std::size_t maxlen);

}  // namespace descoord
