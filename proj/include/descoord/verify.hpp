#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "descoord/ops.hpp"

namespace descoord {

/// What an agent can see and what it can disable. The controllable set
/// need not be inside the observable set.
struct AgentAlphabet {
    Alphabet observable;
    Alphabet controllable;
};

enum class CheckKind {
    Controllability,
    Observer,
    Lcc,
    Occ,
    Decomposability,
    Coobservability,
    CondControllabilityItem1,
    CondControllabilityItem2,
};

const char* to_string(CheckKind kind);

/// A replayable witness for a failed check. `word` is the offending
/// string; `event` the offending continuation where one exists; `agent`
/// the agent or group index the failure names. Coobservability witnesses
/// additionally carry one lookalike string per agent that could not
/// disable the event.
struct Counterexample {
    CheckKind kind = CheckKind::Controllability;
    Word word;
    std::optional<Event> event;
    std::optional<int> agent;
    std::map<int, Word> lookalikes;
};

struct CheckResult {
    bool holds = true;
    std::optional<Counterexample> counterexample;

    explicit operator bool() const { return holds; }
};

/// Partition of agents into groups with their coordinator alphabets.
struct GroupingPlan {
    /// Partition of agent indices 0..n-1; groups and members sorted.
    std::vector<std::vector<int>> groups;
    /// Per-group coordinator alphabet A_kj (includes the high-level set).
    std::vector<Alphabet> group_coordinator_alphabets;
    /// High-level shared alphabet A_k.
    Alphabet high_level_shared;

    std::size_t group_count() const { return groups.size(); }

    /// Checks the partition shape and A_k <= A_kj. Throws InputError.
    void validate(std::size_t agent_count) const;
    /// Additionally checks that every in-group shared event is in the
    /// group alphabet and every cross-group shared event is in A_k.
    void validate_against(std::span<const Alphabet> agent_alphabets) const;
};

/// Controllability of L(spec) w.r.t. L(plant): no uncontrollable plant
/// continuation of a spec word may leave the spec. The witness is the
/// shortest violating word s·u.
CheckResult is_controllable(const Generator& spec, const Generator& plant,
                            const Alphabet& uncontrollable);

/// Decides whether the projection onto `onto` is an L(plant)-observer:
/// on the pair automaton tracking (state after s, projection state after
/// P(s)), every onto-event enabled on the projection side must be
/// reachable from the plant side through silent events. One-step
/// realizability at every reachable pair implies the full definition by
/// induction on the projected continuation.
CheckResult is_observer(const Generator& plant, const Alphabet& onto);

struct LccOptions {
    /// Default checks local control consistency (some silent path to the
    /// uncontrollable event can be made fully uncontrollable). The strict
    /// variant demands every such silent path be fully uncontrollable.
    bool strict_occ = false;
};

/// Local control consistency of the projection onto `onto` for L(plant).
CheckResult is_lcc(const Generator& plant, const Alphabet& onto,
                   const Alphabet& uncontrollable, const LccOptions& options = {});

/// Decides L(spec) == parallel composition of its projections onto the
/// pieces. Only the nontrivial inclusion (composition inside spec) is
/// tested; the converse holds for any covering piece family. The piece
/// union must cover the spec alphabet.
CheckResult is_decomposable(const Generator& spec, std::span<const Alphabet> pieces);

/// Conditional controllability w.r.t. a single coordinator: item (1) the
/// coordinator part of the spec is controllable against the coordinator,
/// item (2) each local part is controllable against its plant composed
/// with the coordinator part of the spec.
CheckResult is_conditionally_controllable(const Generator& spec,
                                          std::span<const Generator> plants,
                                          const Generator& coordinator,
                                          const Alphabet& coord_alphabet,
                                          const Alphabet& uncontrollable);

/// Two-level variant: item (1) per group against the group coordinator,
/// item (2) per group member against its plant composed with the group
/// part of the spec.
CheckResult is_two_level_conditionally_controllable(
    const Generator& spec, std::span<const Generator> plants,
    const GroupingPlan& plan, std::span<const Generator> coordinators,
    const Alphabet& uncontrollable);

struct CoobsOptions {
    /// The verifier is exponential in the number of agents; refuse larger
    /// instances unless the guard is raised.
    int max_agents = 6;
};

/// C&P coobservability of L(spec) inside L(plant) for the given agents:
/// every controllable exit from the spec can be unambiguously disabled by
/// at least one agent controlling it. Decided on the verifier product
/// whose states hold the real (spec, plant) pair plus one lookalike spec
/// state per agent. Requires L(spec) inside L(plant).
CheckResult is_coobservable(const Generator& spec, const Generator& plant,
                            std::span<const AgentAlphabet> agents,
                            const CoobsOptions& options = {});

struct SharedConsistencyResult {
    bool holds = true;
    int observing_agent = -1;
    int controlling_agent = -1;
    std::optional<Event> event;

    explicit operator bool() const { return holds; }
};

/// Shared events must have the same controllability status everywhere an
/// agent observes them: observable(i) & controllable(j) <= controllable(i).
SharedConsistencyResult check_shared_consistency(std::span<const AgentAlphabet> agents);

}  // namespace descoord
