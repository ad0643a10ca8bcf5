#pragma once

#include <optional>
#include <span>
#include <vector>

#include "descoord/synthesis.hpp"

namespace descoord {

/// A decentralized control problem: one global plant, a specification
/// inside it, and per-agent observation/control alphabets. Groups and
/// coordinator alphabets may be fixed by the caller; otherwise the solver
/// picks them.
struct DecentralizedProblem {
    Generator plant;
    Generator spec;
    std::vector<AgentAlphabet> agents;
    std::optional<std::vector<std::vector<int>>> groups;
    std::optional<std::vector<Alphabet>> coordinator_alphabets;
    std::optional<Alphabet> high_level_alphabet;

    DecentralizedProblem()
        : plant(Generator::empty_language({})), spec(Generator::empty_language({})) {}

    /// Union of the agents' controllable sets.
    Alphabet controllable_union() const;
    /// Plant events no agent controls.
    Alphabet uncontrollable() const;
};

/// The coordination-side image of a decentralized problem: agent i's
/// alphabet is its observation set, its controllable set the observable
/// part of what it controls, and its plant the projection of the global
/// plant (jointly an over-approximation of the plant).
struct TranslatedProblem {
    std::vector<Generator> plants;
    Generator spec;
    std::vector<Alphabet> agent_alphabets;
    std::vector<Alphabet> agent_controllable;
    /// Shared events must be controlled consistently for the separability
    /// route to coobservability; recorded, not enforced.
    SharedConsistencyResult shared_consistency;

    TranslatedProblem() : spec(Generator::empty_language({})) {}
};

TranslatedProblem translate(const DecentralizedProblem& problem);

/// Groups agents by shared observations: greedy agglomerative merging of
/// the pair with the most events observed on both sides, stopping when no
/// sharing remains or when all remaining pair counts are equal (no block
/// structure left to exploit). `target_groups` forces merging down to a
/// group count instead.
std::vector<std::vector<int>> group_agents(std::span<const AgentAlphabet> agents,
                                           std::optional<int> target_groups = {});

/// Which coordinator events each agent needs forwarded: events of its
/// group coordinator alphabet it does not observe itself.
struct CommunicationMap {
    std::vector<Alphabet> receive;                // per agent
    std::vector<Alphabet> coordinator_alphabets;  // per group
};

CommunicationMap communication_map(const GroupingPlan& plan,
                                   std::span<const AgentAlphabet> agents);

struct Solution {
    GroupingPlan plan;
    /// Agent i's supervisor over its enriched alphabet A_i + A_kj.
    std::map<int, Generator> supervisors;
    Generator global;
    CommunicationMap communication;
    /// Agents with observation enriched by communicated events and
    /// control extended to every controllable event they now observe (a
    /// supervisor whose language blocks a communicated event is exercising
    /// control over it).
    std::vector<AgentAlphabet> enriched_agents;
    SynthesisResult synthesis;
    CheckResult controllable;   // global vs the original plant
    CheckResult coobservable;   // global vs the original plant, enriched agents
    SharedConsistencyResult shared_consistency;
    std::vector<ExtensionStep> high_level_provenance;
    std::vector<std::vector<ExtensionStep>> group_provenance;

    Solution() : global(Generator::empty_language({})) {}
};

struct SolveOptions {
    SynthesisOptions synthesis;
    CoobsOptions coobservability;
    std::optional<int> target_groups;
    /// Extend coordinator alphabets until the coordinator projection is an
    /// observer for every group plant (skipped for user-supplied
    /// alphabets, which are validated as given).
    bool ensure_observer = true;
};

/// The grouping and alphabet-construction half of the pipeline: the
/// translated problem plus the grouping plan the solver would use, with
/// the provenance of every alphabet extension.
struct PreparedProblem {
    TranslatedProblem translated;
    GroupingPlan plan;
    std::vector<ExtensionStep> high_level_provenance;
    std::vector<std::vector<ExtensionStep>> group_provenance;  // per group
};

PreparedProblem prepare(const DecentralizedProblem& problem,
                        const SolveOptions& options = {});

/// Full pipeline: translate, group, build coordinator alphabets (user
/// alphabets validated, otherwise grown greedily until two-level
/// conditional decomposability holds), synthesize, and verify the result
/// against the original plant: controllability and coobservability w.r.t.
/// the enriched alphabets.
Solution solve(const DecentralizedProblem& problem, const SolveOptions& options = {});

}  // namespace descoord
