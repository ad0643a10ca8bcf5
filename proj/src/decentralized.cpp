#include "descoord/decentralized.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace descoord {

Alphabet DecentralizedProblem::controllable_union() const {
    Alphabet out;
    for (const auto& a : agents) out = out.unite(a.controllable);
    return out;
}

Alphabet DecentralizedProblem::uncontrollable() const {
    return plant.alphabet().subtract(controllable_union());
}

TranslatedProblem translate(const DecentralizedProblem& problem) {
    if (problem.agents.empty()) throw InputError("translate: no agents");
    auto inside = language_includes(problem.plant, problem.spec, IncludesMode::Subset);
    if (!inside.holds)
        throw InputError("translate: spec language not inside the plant (witness: " +
                         to_string(*inside.witness) + ")");
    Alphabet observed;
    for (const auto& a : problem.agents) {
        if (!a.observable.subset_of(problem.plant.alphabet()) ||
            !a.controllable.subset_of(problem.plant.alphabet()))
            throw InputError("translate: agent alphabets must be inside the plant's");
        observed = observed.unite(a.observable);
    }
    // The composed projections over-approximate the plant only when every
    // event is observed somewhere.
    Alphabet unobserved = problem.plant.alphabet().subtract(observed);
    if (!unobserved.empty())
        throw InputError("translate: events observed by no agent: {" +
                         unobserved.to_string() + "}");

    TranslatedProblem out;
    out.spec = problem.spec;
    out.shared_consistency = check_shared_consistency(problem.agents);
    for (const auto& a : problem.agents) {
        out.agent_alphabets.push_back(a.observable);
        out.agent_controllable.push_back(a.observable.intersect(a.controllable));
        out.plants.push_back(project(problem.plant, a.observable));
    }
    return out;
}

std::vector<std::vector<int>> group_agents(std::span<const AgentAlphabet> agents,
                                           std::optional<int> target_groups) {
    if (agents.empty()) throw InputError("group_agents: no agents");
    if (target_groups && (*target_groups < 1 ||
                          static_cast<std::size_t>(*target_groups) > agents.size()))
        throw InputError("group_agents: target group count out of range");

    struct Cluster {
        std::vector<int> members;
        Alphabet observed;
    };
    std::vector<Cluster> clusters;
    for (std::size_t i = 0; i < agents.size(); ++i)
        clusters.push_back({{static_cast<int>(i)}, agents[i].observable});

    auto weight = [&](const Cluster& a, const Cluster& b) {
        return a.observed.intersect(b.observed).size();
    };

    while (clusters.size() > 1) {
        std::size_t best_a = 0, best_b = 1;
        std::size_t best_w = 0, min_w = SIZE_MAX;
        bool first = true;
        for (std::size_t a = 0; a < clusters.size(); ++a)
            for (std::size_t b = a + 1; b < clusters.size(); ++b) {
                std::size_t w = weight(clusters[a], clusters[b]);
                min_w = std::min(min_w, w);
                if (first || w > best_w) {
                    best_w = w;
                    best_a = a;
                    best_b = b;
                    first = false;
                }
            }
        if (target_groups) {
            if (clusters.size() <= static_cast<std::size_t>(*target_groups)) break;
        } else {
            // Stop on disjoint clusters, or when no pair dominates the
            // rest (no block structure left).
            if (best_w == 0 || best_w == min_w) break;
        }
        Cluster merged;
        merged.members = clusters[best_a].members;
        merged.members.insert(merged.members.end(), clusters[best_b].members.begin(),
                              clusters[best_b].members.end());
        std::sort(merged.members.begin(), merged.members.end());
        merged.observed = clusters[best_a].observed.unite(clusters[best_b].observed);
        clusters.erase(clusters.begin() + static_cast<long>(best_b));
        clusters[best_a] = std::move(merged);
    }

    std::vector<std::vector<int>> out;
    for (auto& c : clusters) out.push_back(std::move(c.members));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return out;
}

CommunicationMap communication_map(const GroupingPlan& plan,
                                   std::span<const AgentAlphabet> agents) {
    plan.validate(agents.size());
    CommunicationMap out;
    out.coordinator_alphabets = plan.group_coordinator_alphabets;
    out.receive.resize(agents.size());
    for (std::size_t j = 0; j < plan.group_count(); ++j)
        for (int i : plan.groups[j])
            out.receive[i] =
                plan.group_coordinator_alphabets[j].subtract(agents[i].observable);
    return out;
}

PreparedProblem prepare(const DecentralizedProblem& problem,
                        const SolveOptions& options) {
    PreparedProblem out;
    out.translated = translate(problem);
    const TranslatedProblem& translated = out.translated;
    const Generator& spec = translated.spec;

    GroupingPlan& plan = out.plan;
    plan.groups = problem.groups ? *problem.groups
                                 : group_agents(problem.agents, options.target_groups);

    // High-level alphabet: the cross-group shared observations, grown
    // until the spec decomposes across the groups.
    std::vector<Alphabet> group_observed(plan.groups.size());
    for (std::size_t j = 0; j < plan.groups.size(); ++j)
        for (int i : plan.groups[j])
            group_observed[j] = group_observed[j].unite(translated.agent_alphabets[i]);

    Alphabet high;
    for (std::size_t j = 0; j < plan.groups.size(); ++j)
        for (std::size_t l = j + 1; l < plan.groups.size(); ++l)
            high = high.unite(group_observed[j].intersect(group_observed[l]));
    if (problem.high_level_alphabet) {
        if (!high.subset_of(*problem.high_level_alphabet))
            throw InputError("solve: the given high-level alphabet misses "
                             "cross-group shared events");
        high = *problem.high_level_alphabet;
    } else {
        // Events nobody observes were already rejected in translate; the
        // seed only needs greedy growth for decomposability.
        while (true) {
            std::vector<Alphabet> pieces;
            for (const auto& go : group_observed) pieces.push_back(go.unite(high));
            auto check = is_decomposable(spec, pieces);
            if (check.holds) break;
            std::optional<Event> added;
            std::set<Event> candidates(check.counterexample->word.begin(),
                                       check.counterexample->word.end());
            for (const auto& e : candidates)
                if (!high.contains(e)) {
                    added = e;
                    break;
                }
            if (!added)
                for (const auto& e : spec.alphabet())
                    if (!high.contains(e)) {
                        added = e;
                        break;
                    }
            if (!added)
                throw InputError("solve: spec not decomposable across groups even "
                                 "with the full alphabet");
            high.insert(*added);
            out.high_level_provenance.push_back({*added, "decomposability"});
        }
    }
    plan.high_level_shared = high;

    // Group coordinator alphabets: user-given ones are validated as-is;
    // otherwise grow the in-group shared observations greedily.
    out.group_provenance.resize(plan.groups.size());
    if (problem.coordinator_alphabets) {
        if (problem.coordinator_alphabets->size() != plan.groups.size())
            throw InputError("solve: need one coordinator alphabet per group");
        plan.group_coordinator_alphabets = *problem.coordinator_alphabets;
        for (auto& a : plan.group_coordinator_alphabets) a = a.unite(high);
    } else {
        for (std::size_t j = 0; j < plan.groups.size(); ++j) {
            Alphabet seed = high;
            const auto& group = plan.groups[j];
            for (std::size_t x = 0; x < group.size(); ++x)
                for (std::size_t y = x + 1; y < group.size(); ++y)
                    seed = seed.unite(translated.agent_alphabets[group[x]].intersect(
                        translated.agent_alphabets[group[y]]));
            Generator group_spec = project(spec, group_observed[j].unite(high));
            std::vector<Generator> members;
            for (int i : group) members.push_back(translated.plants[i]);
            AlphabetExtension ext =
                build_group_alphabet(group_spec, members, seed, options.ensure_observer);
            plan.group_coordinator_alphabets.push_back(ext.alphabet);
            out.group_provenance[j] = ext.provenance;
        }
    }
    return out;
}

Solution solve(const DecentralizedProblem& problem, const SolveOptions& options) {
    PreparedProblem prepared = prepare(problem, options);
    const TranslatedProblem& translated = prepared.translated;
    const GroupingPlan& plan = prepared.plan;
    const Generator& spec = translated.spec;
    Alphabet uncontrollable = problem.uncontrollable();

    Solution out;
    out.synthesis = synthesize_two_level(translated.plants, spec, plan,
                                         uncontrollable, options.synthesis);
    out.high_level_provenance = prepared.high_level_provenance;
    out.group_provenance = prepared.group_provenance;
    for (std::size_t j = 0; j < out.synthesis.coordinators.size(); ++j)
        out.synthesis.coordinators[j].provenance = prepared.group_provenance[j];
    out.plan = out.synthesis.plan;
    out.supervisors = out.synthesis.agent_supervisors;
    out.global = out.synthesis.global;
    out.shared_consistency = translated.shared_consistency;
    out.communication = communication_map(out.plan, problem.agents);

    // Communication extends the receiving supervisor's authority to the
    // controllable events it now observes; with anything less the
    // composed supervisors would block continuations nobody is entitled
    // to disable. Closing the control sets this way also restores the
    // shared-event consistency condition on the enriched alphabets.
    Alphabet controllable = problem.controllable_union();
    out.enriched_agents.resize(problem.agents.size(), AgentAlphabet{{}, {}});
    for (std::size_t j = 0; j < out.plan.group_count(); ++j)
        for (int i : out.plan.groups[j]) {
            Alphabet enriched_obs = problem.agents[i].observable.unite(
                out.plan.group_coordinator_alphabets[j]);
            out.enriched_agents[i] =
                AgentAlphabet{enriched_obs, controllable.intersect(enriched_obs)};
        }

    out.controllable = is_controllable(out.global, problem.plant, uncontrollable);
    out.coobservable = is_coobservable(out.global, problem.plant, out.enriched_agents,
                                       options.coobservability);
    return out;
}

}  // namespace descoord
