#include "descoord/verify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>

namespace descoord {

const char* to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::Controllability: return "controllability";
        case CheckKind::Observer: return "observer";
        case CheckKind::Lcc: return "lcc";
        case CheckKind::Occ: return "occ";
        case CheckKind::Decomposability: return "decomposability";
        case CheckKind::Coobservability: return "coobservability";
        case CheckKind::CondControllabilityItem1: return "cond-controllability-item1";
        case CheckKind::CondControllabilityItem2: return "cond-controllability-item2";
    }
    return "unknown";
}

void GroupingPlan::validate(std::size_t agent_count) const {
    if (groups.size() != group_coordinator_alphabets.size())
        throw InputError("grouping plan: one coordinator alphabet per group required");
    if (groups.empty()) throw InputError("grouping plan: no groups");
    std::vector<bool> seen(agent_count, false);
    for (const auto& group : groups) {
        if (group.empty()) throw InputError("grouping plan: empty group");
        for (int i : group) {
            if (i < 0 || static_cast<std::size_t>(i) >= agent_count)
                throw InputError("grouping plan: agent index " + std::to_string(i) +
                                 " out of range");
            if (seen[i])
                throw InputError("grouping plan: agent " + std::to_string(i) +
                                 " in two groups");
            seen[i] = true;
        }
    }
    for (std::size_t i = 0; i < agent_count; ++i)
        if (!seen[i])
            throw InputError("grouping plan: agent " + std::to_string(i) +
                             " missing from all groups");
    for (const auto& coord : group_coordinator_alphabets)
        if (!high_level_shared.subset_of(coord))
            throw InputError(
                "grouping plan: high-level alphabet must be inside every group "
                "coordinator alphabet");
}

void GroupingPlan::validate_against(std::span<const Alphabet> agent_alphabets) const {
    validate(agent_alphabets.size());
    for (std::size_t j = 0; j < groups.size(); ++j) {
        for (std::size_t x = 0; x < groups[j].size(); ++x)
            for (std::size_t y = x + 1; y < groups[j].size(); ++y) {
                Alphabet shared = agent_alphabets[groups[j][x]].intersect(
                    agent_alphabets[groups[j][y]]);
                if (!shared.subset_of(group_coordinator_alphabets[j]))
                    throw InputError("grouping plan: in-group shared events missing "
                                     "from coordinator alphabet of group " +
                                     std::to_string(j + 1));
            }
    }
    for (std::size_t j = 0; j < groups.size(); ++j)
        for (std::size_t l = j + 1; l < groups.size(); ++l) {
            Alphabet aj, al;
            for (int i : groups[j]) aj = aj.unite(agent_alphabets[i]);
            for (int i : groups[l]) al = al.unite(agent_alphabets[i]);
            if (!aj.intersect(al).subset_of(high_level_shared))
                throw InputError(
                    "grouping plan: cross-group shared events missing from the "
                    "high-level alphabet");
        }
}

namespace {

constexpr StateId kDead = -1;

}  // namespace

CheckResult is_controllable(const Generator& spec, const Generator& plant,
                            const Alphabet& uncontrollable) {
    if (spec.is_empty_language() || plant.is_empty_language()) return {};

    // BFS over live (spec, plant) pairs; a violation is an uncontrollable
    // plant move the spec cannot follow.
    struct Node {
        StateId qk, ql;
        Word word;
    };
    Alphabet alphabet = spec.alphabet().unite(plant.alphabet());
    std::set<std::pair<StateId, StateId>> seen{{spec.initial(), plant.initial()}};
    std::deque<Node> queue{{spec.initial(), plant.initial(), {}}};
    while (!queue.empty()) {
        Node at = queue.front();
        queue.pop_front();
        for (const auto& e : alphabet) {
            auto dk = spec.step(at.qk, e);
            auto dl = plant.step(at.ql, e);
            if (dl && !dk && uncontrollable.contains(e)) {
                Word w = at.word;
                w.push_back(e);
                return {false,
                        Counterexample{CheckKind::Controllability, std::move(w), e}};
            }
            if (dk && dl && seen.emplace(*dk, *dl).second) {
                Word w = at.word;
                w.push_back(e);
                queue.push_back({*dk, *dl, std::move(w)});
            }
        }
    }
    return {};
}

namespace {

// Pair automaton for the observer-style checks: states (q, X) where q is
// the plant state after s and X the silent-closed subset of states
// reachable by strings with projection P(s). q is always a member of X.
struct PairAutomaton {
    struct Node {
        StateId q;
        int subset;
        Word word;
    };
    std::vector<std::set<StateId>> subsets;
    std::vector<Node> nodes;

    PairAutomaton(const Generator& g, const Alphabet& onto) {
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
        std::map<std::set<StateId>, int> subset_ids;
        auto subset_id = [&](std::set<StateId> set) {
            auto [it, inserted] =
                subset_ids.emplace(std::move(set), static_cast<int>(subsets.size()));
            if (inserted) subsets.push_back(it->first);
            return it->second;
        };

        std::set<std::pair<StateId, int>> seen;
        int start = subset_id(closure({g.initial()}));
        nodes.push_back({g.initial(), start, {}});
        seen.emplace(g.initial(), start);
        for (std::size_t head = 0; head < nodes.size(); ++head) {
            Node at = nodes[head];
            for (const auto& [e, d] : g.transitions_from(at.q)) {
                int next_subset = at.subset;
                if (onto.contains(e)) {
                    std::set<StateId> moved;
                    for (StateId s : subsets[at.subset])
                        if (auto t = g.step(s, e)) moved.insert(*t);
                    next_subset = subset_id(closure(std::move(moved)));
                }
                if (seen.emplace(d, next_subset).second) {
                    Word w = at.word;
                    w.push_back(e);
                    nodes.push_back({d, next_subset, std::move(w)});
                }
            }
        }
    }
};

}  // namespace

CheckResult is_observer(const Generator& plant, const Alphabet& onto) {
    if (!onto.subset_of(plant.alphabet()))
        throw InputError("is_observer: projection alphabet not inside the plant's");
    if (plant.is_empty_language()) return {};

    PairAutomaton pairs(plant, onto);
    for (const auto& node : pairs.nodes) {
        for (const auto& e : onto) {
            bool enabled_in_projection = false;
            for (StateId s : pairs.subsets[node.subset])
                if (plant.step(s, e)) {
                    enabled_in_projection = true;
                    break;
                }
            if (!enabled_in_projection) continue;

            // Silent reachability from the concrete state.
            std::set<StateId> reach{node.q};
            std::deque<StateId> queue{node.q};
            bool realizable = plant.step(node.q, e).has_value();
            while (!queue.empty() && !realizable) {
                StateId at = queue.front();
                queue.pop_front();
                for (const auto& [f, d] : plant.transitions_from(at)) {
                    if (onto.contains(f)) continue;
                    if (reach.insert(d).second) {
                        if (plant.step(d, e)) {
                            realizable = true;
                            break;
                        }
                        queue.push_back(d);
                    }
                }
            }
            if (!realizable)
                return {false, Counterexample{CheckKind::Observer, node.word, e}};
        }
    }
    return {};
}

CheckResult is_lcc(const Generator& plant, const Alphabet& onto,
                   const Alphabet& uncontrollable, const LccOptions& options) {
    if (!onto.subset_of(plant.alphabet()))
        throw InputError("is_lcc: projection alphabet not inside the plant's");
    if (plant.is_empty_language()) return {};

    PairAutomaton pairs(plant, onto);
    CheckKind kind = options.strict_occ ? CheckKind::Occ : CheckKind::Lcc;
    for (const auto& node : pairs.nodes) {
        for (const auto& sigma : onto) {
            if (!uncontrollable.contains(sigma)) continue;
            bool enabled_in_projection = false;
            for (StateId s : pairs.subsets[node.subset])
                if (plant.step(s, sigma)) {
                    enabled_in_projection = true;
                    break;
                }
            if (!enabled_in_projection) continue;

            // Silent reachability from node.q, split by whether the path
            // used a controllable event.
            std::set<std::pair<StateId, bool>> seen{{node.q, false}};
            std::deque<std::pair<StateId, bool>> queue{{node.q, false}};
            bool any_path = false, unc_path = false, mixed_path = false;
            while (!queue.empty()) {
                auto [at, used_ctrl] = queue.front();
                queue.pop_front();
                if (plant.step(at, sigma)) {
                    any_path = true;
                    if (used_ctrl)
                        mixed_path = true;
                    else
                        unc_path = true;
                }
                for (const auto& [f, d] : plant.transitions_from(at)) {
                    if (onto.contains(f)) continue;
                    bool next_ctrl = used_ctrl || !uncontrollable.contains(f);
                    if (seen.emplace(d, next_ctrl).second) queue.emplace_back(d, next_ctrl);
                }
            }
            bool bad = options.strict_occ ? mixed_path : (any_path && !unc_path);
            if (bad) return {false, Counterexample{kind, node.word, sigma}};
        }
    }
    return {};
}

CheckResult is_decomposable(const Generator& spec, std::span<const Alphabet> pieces) {
    if (pieces.empty()) throw InputError("is_decomposable: no pieces");
    Alphabet covered;
    for (const auto& p : pieces) covered = covered.unite(p);
    if (!spec.alphabet().subset_of(covered))
        throw InputError("is_decomposable: pieces do not cover the spec alphabet");

    std::vector<Generator> parts;
    parts.reserve(pieces.size());
    for (const auto& p : pieces) parts.push_back(project(spec, p));
    Generator composed = sync_product(parts);

    // The composition always contains the spec; only the converse can fail.
    auto inc = language_includes(spec, composed, IncludesMode::Subset);
    if (inc.holds) return {};
    return {false, Counterexample{CheckKind::Decomposability, *inc.witness}};
}

CheckResult is_conditionally_controllable(const Generator& spec,
                                          std::span<const Generator> plants,
                                          const Generator& coordinator,
                                          const Alphabet& coord_alphabet,
                                          const Alphabet& uncontrollable) {
    Generator coord_spec = project(spec, coord_alphabet);
    auto item1 =
        is_controllable(coord_spec, coordinator, coord_alphabet.intersect(uncontrollable));
    if (!item1.holds) {
        Counterexample cex = *item1.counterexample;
        cex.kind = CheckKind::CondControllabilityItem1;
        return {false, std::move(cex)};
    }
    for (std::size_t i = 0; i < plants.size(); ++i) {
        Alphabet local = plants[i].alphabet().unite(coord_alphabet);
        auto item2 = is_controllable(project(spec, local),
                                     sync_product(plants[i], coord_spec),
                                     local.intersect(uncontrollable));
        if (!item2.holds) {
            Counterexample cex = *item2.counterexample;
            cex.kind = CheckKind::CondControllabilityItem2;
            cex.agent = static_cast<int>(i);
            return {false, std::move(cex)};
        }
    }
    return {};
}

CheckResult is_two_level_conditionally_controllable(
    const Generator& spec, std::span<const Generator> plants,
    const GroupingPlan& plan, std::span<const Generator> coordinators,
    const Alphabet& uncontrollable) {
    plan.validate(plants.size());
    if (coordinators.size() != plan.group_count())
        throw InputError("two-level check: one coordinator per group required");

    for (std::size_t j = 0; j < plan.group_count(); ++j) {
        const Alphabet& coord_alphabet = plan.group_coordinator_alphabets[j];
        Generator coord_spec = project(spec, coord_alphabet);
        auto item1 = is_controllable(coord_spec, coordinators[j],
                                     coord_alphabet.intersect(uncontrollable));
        if (!item1.holds) {
            Counterexample cex = *item1.counterexample;
            cex.kind = CheckKind::CondControllabilityItem1;
            cex.agent = static_cast<int>(j);
            return {false, std::move(cex)};
        }
        for (int i : plan.groups[j]) {
            Alphabet local = plants[i].alphabet().unite(coord_alphabet);
            auto item2 = is_controllable(project(spec, local),
                                         sync_product(plants[i], coord_spec),
                                         local.intersect(uncontrollable));
            if (!item2.holds) {
                Counterexample cex = *item2.counterexample;
                cex.kind = CheckKind::CondControllabilityItem2;
                cex.agent = i;
                return {false, std::move(cex)};
            }
        }
    }
    return {};
}

CheckResult is_coobservable(const Generator& spec, const Generator& plant,
                            std::span<const AgentAlphabet> agents,
                            const CoobsOptions& options) {
    if (agents.empty()) throw InputError("is_coobservable: no agents");
    if (static_cast<int>(agents.size()) > options.max_agents)
        throw InputError("is_coobservable: " + std::to_string(agents.size()) +
                         " agents exceed the verifier guard of " +
                         std::to_string(options.max_agents) +
                         " (the verifier is exponential in the agent count)");
    if (!language_includes(plant, spec, IncludesMode::Subset).holds)
        throw InputError("is_coobservable: spec language not inside the plant's");
    if (spec.is_empty_language()) return {};

    const int n = static_cast<int>(agents.size());
    Alphabet controllable_union;
    for (const auto& a : agents) controllable_union = controllable_union.unite(a.controllable);

    // Verifier tuple: (spec state, plant state, one lookalike spec state
    // per agent). Joint moves advance the real pair plus every observing
    // agent's lookalike; private moves advance a single lookalike on an
    // event that agent cannot see. Reachable tuples are exactly the
    // consistent configurations (s, s_1..s_n).
    using Tuple = std::vector<StateId>;
    struct Move {
        int parent;
        Event event;
        bool joint;
        int agent;  // private moves only
        Move(int parent, Event event, bool joint, int agent)
            : parent(parent), event(std::move(event)), joint(joint), agent(agent) {}
    };
    std::map<Tuple, int> ids;
    std::vector<Tuple> tuples;
    std::vector<std::optional<Move>> provenance;

    Tuple init(static_cast<std::size_t>(n) + 2);
    init[0] = spec.initial();
    init[1] = plant.initial();
    for (int i = 0; i < n; ++i) init[i + 2] = spec.initial();
    ids.emplace(init, 0);
    tuples.push_back(init);
    provenance.push_back(std::nullopt);

    auto rebuild = [&](int id, int agent_filter) {
        // agent_filter -1: the real string; otherwise agent i's lookalike.
        Word w;
        for (int at = id; provenance[at]; at = provenance[at]->parent) {
            const Move& m = *provenance[at];
            bool counts = false;
            if (agent_filter < 0)
                counts = m.joint;
            else if (m.joint)
                counts = agents[agent_filter].observable.contains(m.event);
            else
                counts = m.agent == agent_filter;
            if (counts) w.push_back(m.event);
        }
        std::reverse(w.begin(), w.end());
        return w;
    };

    Alphabet joint_events = plant.alphabet().unite(spec.alphabet());
    for (std::size_t head = 0; head < tuples.size(); ++head) {
        Tuple here = tuples[head];

        // Violation: a controllable plant continuation leaves the spec
        // while every agent that controls it still sees it enabled after
        // its lookalike.
        for (const auto& sigma : controllable_union) {
            if (!plant.step(here[1], sigma)) continue;
            if (spec.step(here[0], sigma)) continue;
            bool all_confused = true;
            for (int i = 0; i < n && all_confused; ++i)
                if (agents[i].controllable.contains(sigma) &&
                    !spec.step(here[i + 2], sigma))
                    all_confused = false;
            if (all_confused) {
                Counterexample cex;
                cex.kind = CheckKind::Coobservability;
                cex.word = rebuild(static_cast<int>(head), -1);
                cex.event = sigma;
                for (int i = 0; i < n; ++i)
                    if (agents[i].controllable.contains(sigma))
                        cex.lookalikes[i] = rebuild(static_cast<int>(head), i);
                return {false, std::move(cex)};
            }
        }

        auto visit = [&](Tuple next, Move move) {
            auto [it, inserted] = ids.emplace(std::move(next), static_cast<int>(tuples.size()));
            if (inserted) {
                tuples.push_back(it->first);
                provenance.push_back(std::move(move));
            }
        };

        for (const auto& e : joint_events) {
            auto dk = spec.step(here[0], e);
            auto dl = plant.step(here[1], e);
            if (!dk || !dl) continue;
            Tuple next = here;
            next[0] = *dk;
            next[1] = *dl;
            bool ok = true;
            for (int i = 0; i < n && ok; ++i) {
                if (!agents[i].observable.contains(e)) continue;
                auto di = spec.step(here[i + 2], e);
                if (!di)
                    ok = false;
                else
                    next[i + 2] = *di;
            }
            if (ok) visit(std::move(next), Move(static_cast<int>(head), e, true, -1));
        }
        for (int i = 0; i < n; ++i) {
            for (const auto& [e, d] : spec.transitions_from(here[i + 2])) {
                if (agents[i].observable.contains(e)) continue;
                Tuple next = here;
                next[i + 2] = d;
                visit(std::move(next), Move(static_cast<int>(head), e, false, i));
            }
        }
    }
    return {};
}

SharedConsistencyResult check_shared_consistency(std::span<const AgentAlphabet> agents) {
    for (std::size_t i = 0; i < agents.size(); ++i)
        for (std::size_t j = 0; j < agents.size(); ++j) {
            Alphabet seen_controlled =
                agents[i].observable.intersect(agents[j].controllable);
            for (const auto& e : seen_controlled)
                if (!agents[i].controllable.contains(e))
                    return {false, static_cast<int>(i), static_cast<int>(j), e};
        }
    return {};
}

}  // namespace descoord
