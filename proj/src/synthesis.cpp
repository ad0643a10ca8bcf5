#include "descoord/synthesis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace descoord {

const char* to_string(OptimalityTier tier) {
    switch (tier) {
        case OptimalityTier::OptimalThm3: return "OPTIMAL_THM3";
        case OptimalityTier::OptimalCor1: return "OPTIMAL_COR1";
        case OptimalityTier::OptimalLcc: return "OPTIMAL_LCC";
        case OptimalityTier::SafeOnly: return "SAFE_ONLY";
    }
    return "unknown";
}

Generator sup_c(const Generator& spec, const Generator& plant,
                const Alphabet& uncontrollable) {
    Alphabet alphabet = spec.alphabet().unite(plant.alphabet());
    if (spec.is_empty_language() || plant.is_empty_language())
        return Generator::empty_language(alphabet);

    // Product with both components required to move (the intersection of
    // the languages, unknown events rejecting).
    using Pair = std::pair<StateId, StateId>;
    std::map<Pair, StateId> ids;
    std::vector<Pair> states;
    ids.emplace(Pair{spec.initial(), plant.initial()}, 0);
    states.push_back({spec.initial(), plant.initial()});
    std::vector<std::map<Event, StateId>> succ;
    for (std::size_t head = 0; head < states.size(); ++head) {
        auto [qk, ql] = states[head];
        succ.emplace_back();
        for (const auto& [e, dk] : spec.transitions_from(qk)) {
            std::optional<StateId> dl;
            if (plant.alphabet().contains(e)) {
                dl = plant.step(ql, e);
                if (!dl) continue;
            } else {
                continue;  // plant rejects unknown events
            }
            Pair next{dk, *dl};
            auto [it, inserted] = ids.emplace(next, static_cast<StateId>(states.size()));
            if (inserted) states.push_back(next);
            succ[head].emplace(e, it->second);
        }
    }

    // Fixpoint: a state is bad when the plant enables an uncontrollable
    // event the surviving product cannot follow; deletions propagate, so
    // iterate with re-trimming until stable.
    std::vector<bool> alive(states.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t s = 0; s < states.size(); ++s) {
            if (!alive[s]) continue;
            for (const auto& u : uncontrollable) {
                if (!plant.alphabet().contains(u)) continue;
                if (!plant.step(states[s].second, u)) continue;
                auto it = succ[s].find(u);
                if (it == succ[s].end() || !alive[it->second]) {
                    alive[s] = false;
                    changed = true;
                    break;
                }
            }
        }
        if (!alive[0]) return Generator::empty_language(alphabet);
        // Restrict to the part reachable through surviving states.
        std::vector<bool> reachable(states.size(), false);
        std::deque<StateId> queue{0};
        reachable[0] = true;
        while (!queue.empty()) {
            StateId at = queue.front();
            queue.pop_front();
            for (const auto& [e, d] : succ[at])
                if (alive[d] && !reachable[d]) {
                    reachable[d] = true;
                    queue.push_back(d);
                }
        }
        for (std::size_t s = 0; s < states.size(); ++s)
            if (alive[s] && !reachable[s]) {
                alive[s] = false;
                changed = true;
            }
    }

    std::vector<Transition> ts;
    std::size_t alive_count = 0;
    std::vector<StateId> relabel(states.size(), -1);
    for (std::size_t s = 0; s < states.size(); ++s)
        if (alive[s]) relabel[s] = static_cast<StateId>(alive_count++);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (!alive[s]) continue;
        for (const auto& [e, d] : succ[s])
            if (alive[d]) ts.push_back({relabel[s], e, relabel[d]});
    }
    return trim(Generator(alphabet, alive_count, relabel[0], ts));
}

Generator closed_loop(const Generator& supervisor, const Generator& plant) {
    return sync_product(supervisor, plant);
}

namespace {

// Name-least event of the witness not yet in the alphabet; falls back to
// the name-least missing event of `pool`.
std::optional<Event> pick_extension(const Counterexample& witness,
                                    const Alphabet& current, const Alphabet& pool) {
    std::set<Event> candidates(witness.word.begin(), witness.word.end());
    if (witness.event) candidates.insert(*witness.event);
    for (const auto& e : candidates)
        if (!current.contains(e) && pool.contains(e)) return e;
    for (const auto& e : pool)
        if (!current.contains(e)) return e;
    return std::nullopt;
}

std::vector<Alphabet> joined_pieces(std::span<const Generator> plants,
                                    const Alphabet& coordinator) {
    std::vector<Alphabet> pieces;
    pieces.reserve(plants.size());
    for (const auto& p : plants) pieces.push_back(p.alphabet().unite(coordinator));
    return pieces;
}

}  // namespace

AlphabetExtension build_group_alphabet(const Generator& group_spec,
                                       std::span<const Generator> group_plants,
                                       const Alphabet& seed, bool ensure_observer) {
    if (group_plants.empty())
        throw InputError("build_group_alphabet: empty plant group");
    AlphabetExtension out{seed, {}};

    // Events of the spec nobody's alphabet covers can only live in the
    // coordinator alphabet.
    Alphabet covered = seed;
    for (const auto& p : group_plants) covered = covered.unite(p.alphabet());
    for (const auto& e : group_spec.alphabet().subtract(covered)) {
        out.alphabet.insert(e);
        out.provenance.push_back({e, "coverage"});
    }

    while (true) {
        auto check = is_decomposable(group_spec, joined_pieces(group_plants, out.alphabet));
        if (check.holds) break;
        auto pick = pick_extension(*check.counterexample, out.alphabet,
                                   group_spec.alphabet());
        if (!pick)
            throw InputError("build_group_alphabet: no event left to add but the "
                             "spec is still not decomposable");
        out.alphabet.insert(*pick);
        out.provenance.push_back({*pick, "decomposability"});
    }

    while (ensure_observer) {
        bool all_pass = true;
        for (const auto& plant : group_plants) {
            Alphabet onto = out.alphabet.intersect(plant.alphabet());
            auto check = is_observer(plant, onto);
            if (check.holds) continue;
            all_pass = false;
            auto pick =
                pick_extension(*check.counterexample, out.alphabet, plant.alphabet());
            if (!pick)
                throw InputError("build_group_alphabet: observer extension exhausted "
                                 "the plant alphabet");
            out.alphabet.insert(*pick);
            out.provenance.push_back({*pick, "observer"});
            break;
        }
        if (all_pass) break;
    }
    return out;
}

CoordinatorSpec build_coordinator(std::span<const Generator> plants,
                                  const Alphabet& alphabet, int group) {
    if (plants.empty()) throw InputError("build_coordinator: no plants");
    std::vector<Generator> parts;
    parts.reserve(plants.size());
    for (const auto& p : plants)
        parts.push_back(project(p, alphabet.intersect(p.alphabet())));
    Generator combined = sync_product(parts);
    // Declare the coordinator over the full requested alphabet; events no
    // plant carries never occur.
    Generator widened(alphabet.unite(combined.alphabet()), combined.state_count(),
                      combined.is_empty_language() ? -1 : combined.initial(),
                      combined.transitions());
    return CoordinatorSpec{group, alphabet, std::move(widened), {}};
}

namespace {

void check_two_level_decomposability(std::span<const Generator> plants,
                                     const Generator& spec, const GroupingPlan& plan) {
    std::vector<Alphabet> group_alphabets;
    for (const auto& group : plan.groups) {
        Alphabet a = plan.high_level_shared;
        for (int i : group) a = a.unite(plants[i].alphabet());
        group_alphabets.push_back(a);
    }
    auto top = is_decomposable(spec, group_alphabets);
    if (!top.holds) {
        Alphabet suggested = plan.high_level_shared;
        while (true) {
            auto again = is_decomposable(spec, [&] {
                std::vector<Alphabet> pieces;
                for (const auto& group : plan.groups) {
                    Alphabet a = suggested;
                    for (int i : group) a = a.unite(plants[i].alphabet());
                    pieces.push_back(a);
                }
                return pieces;
            }());
            if (again.holds) break;
            auto pick =
                pick_extension(*again.counterexample, suggested, spec.alphabet());
            if (!pick) break;
            suggested.insert(*pick);
        }
        throw DecomposabilityError(
            "spec is not decomposable across the groups; witness: " +
                to_string(top.counterexample->word) +
                "; high-level alphabet {" + suggested.to_string() + "} would repair it",
            *top.counterexample, suggested, -1);
    }
    for (std::size_t j = 0; j < plan.group_count(); ++j) {
        Generator group_spec = project(spec, group_alphabets[j]);
        std::vector<Generator> members;
        for (int i : plan.groups[j]) members.push_back(plants[i]);
        auto low = is_decomposable(
            group_spec, joined_pieces(members, plan.group_coordinator_alphabets[j]));
        if (!low.holds) {
            AlphabetExtension repair = build_group_alphabet(
                group_spec, members, plan.group_coordinator_alphabets[j], false);
            throw DecomposabilityError(
                "group " + std::to_string(j + 1) +
                    " spec is not decomposable w.r.t. its coordinator alphabet; "
                    "witness: " +
                    to_string(low.counterexample->word) + "; alphabet {" +
                    repair.alphabet.to_string() + "} would repair it",
                *low.counterexample, repair.alphabet, static_cast<int>(j));
        }
    }
}

}  // namespace

SynthesisResult synthesize_two_level(std::span<const Generator> plants,
                                     const Generator& spec, const GroupingPlan& plan,
                                     const Alphabet& uncontrollable,
                                     const SynthesisOptions& options) {
    std::vector<Alphabet> plant_alphabets;
    for (const auto& p : plants) plant_alphabets.push_back(p.alphabet());
    plan.validate_against(plant_alphabets);
    check_two_level_decomposability(plants, spec, plan);

    SynthesisResult result;
    result.plan = plan;
    result.plants.assign(plants.begin(), plants.end());
    result.uncontrollable = uncontrollable;

    for (std::size_t j = 0; j < plan.group_count(); ++j) {
        const Alphabet& akj = plan.group_coordinator_alphabets[j];
        CoordinatorSpec coord = build_coordinator(plants, akj, static_cast<int>(j));
        Generator sup_kj =
            sup_c(project(spec, akj), coord.coordinator, akj.intersect(uncontrollable));
        for (int i : plan.groups[j]) {
            Alphabet local = plants[i].alphabet().unite(akj);
            Generator sup_local = sup_c(project(spec, local),
                                        sync_product(plants[i], sup_kj),
                                        local.intersect(uncontrollable));
            result.agent_supervisors.emplace(i, std::move(sup_local));
        }
        result.coordinators.push_back(std::move(coord));
        result.group_supervisors.push_back(std::move(sup_kj));
    }

    std::vector<Generator> supervisors;
    for (const auto& [i, g] : result.agent_supervisors) supervisors.push_back(g);
    result.global = sync_product(supervisors);

    auto safety_ctrl = is_controllable(
        result.global, sync_product(std::span<const Generator>(plants)), uncontrollable);
    result.conditions["safety.controllable"] =
        HypothesisVerdict{safety_ctrl.holds, safety_ctrl.counterexample};
    auto within = language_includes(spec, result.global, IncludesMode::Subset);
    HypothesisVerdict within_verdict{within.holds, std::nullopt};
    if (!within.holds)
        within_verdict.witness =
            Counterexample{CheckKind::Decomposability, *within.witness};
    result.conditions["safety.within_spec"] = within_verdict;

    verify_optimality(result, options);
    return result;
}

namespace {

HypothesisVerdict from_check(const CheckResult& check) {
    return HypothesisVerdict{check.holds, check.counterexample};
}

}  // namespace

OptimalityTier verify_optimality(SynthesisResult& result,
                                 const SynthesisOptions& options) {
    const GroupingPlan& plan = result.plan;
    const Alphabet& high = plan.high_level_shared;
    const Alphabet& unctrl = result.uncontrollable;
    ConditionReport& report = result.conditions;
    report["occ_mode"] = HypothesisVerdict{!options.strict_occ, std::nullopt};

    bool t3 = true, c1 = true, l8 = true, abstraction = true;
    for (std::size_t j = 0; j < plan.group_count(); ++j) {
        std::string gtag = "group" + std::to_string(j + 1);
        const Alphabet& akj = plan.group_coordinator_alphabets[j];
        const Generator& coordinator = result.coordinators[j].coordinator;

        // Intersection of the per-agent supervisors projected to the group
        // alphabet (all over A_kj, so the product is the intersection).
        std::vector<Generator> projected;
        for (int i : plan.groups[j])
            projected.push_back(project(result.agent_supervisors.at(i), akj));
        Generator intersection = sync_product(projected);

        auto t3_ctrl = is_controllable(intersection, coordinator, akj.intersect(unctrl));
        report["T3." + gtag + ".intersection_controllable"] = from_check(t3_ctrl);
        t3 = t3 && t3_ctrl.holds;

        // Abstraction transfer to the high level: observer plus control
        // consistency of the coordinator projection, or the direct check
        // that the projected group behaviour stays controllable.
        auto obs = is_observer(coordinator, high);
        auto occ = is_lcc(coordinator, high, unctrl, LccOptions{options.strict_occ});
        auto transfer = is_controllable(project(intersection, high),
                                        project(coordinator, high),
                                        high.intersect(unctrl));
        report["abstraction." + gtag + ".observer"] = from_check(obs);
        report["abstraction." + gtag + ".occ"] = from_check(occ);
        report["abstraction." + gtag + ".projected_controllable"] = from_check(transfer);
        abstraction = abstraction && ((obs.holds && occ.holds) || transfer.holds);

        for (int i : plan.groups[j]) {
            std::string atag = gtag + ".agent" + std::to_string(i + 1);
            auto equal = language_includes(project(result.agent_supervisors.at(i), akj),
                                           result.group_supervisors[j],
                                           IncludesMode::Equal);
            HypothesisVerdict ev{equal.holds, std::nullopt};
            if (!equal.holds)
                ev.witness = Counterexample{CheckKind::Decomposability, *equal.witness};
            report["C1." + atag + ".projection_equals_group_supervisor"] = ev;
            c1 = c1 && equal.holds;

            Alphabet local = result.plants[i].alphabet().unite(akj);
            Generator lifted = inverse_project(result.plants[i], local);
            auto lobs = is_observer(lifted, akj);
            auto llcc = is_lcc(lifted, akj, unctrl, LccOptions{options.strict_occ});
            report["L8." + atag + ".lifted_observer"] = from_check(lobs);
            report["L8." + atag + ".lifted_lcc"] = from_check(llcc);
            l8 = l8 && lobs.holds && llcc.holds;
        }
    }

    OptimalityTier tier = OptimalityTier::SafeOnly;
    if (abstraction && t3)
        tier = OptimalityTier::OptimalThm3;
    else if (abstraction && c1)
        tier = OptimalityTier::OptimalCor1;
    else if (abstraction && l8)
        tier = OptimalityTier::OptimalLcc;
    result.tier = tier;
    if (tier == OptimalityTier::SafeOnly)
        result.caveat =
            "no optimality certificate: the result is controllable and within the "
            "specification but may be smaller than the supremal two-level solution";
    else
        result.caveat.clear();
    return tier;
}

bool check_inclusion_lemma(const SynthesisResult& result) {
    for (std::size_t j = 0; j < result.plan.group_count(); ++j) {
        const Alphabet& akj = result.plan.group_coordinator_alphabets[j];
        for (int i : result.plan.groups[j]) {
            Generator projected = project(result.agent_supervisors.at(i), akj);
            if (!language_includes(result.group_supervisors[j], projected,
                                   IncludesMode::Subset)
                     .holds)
                return false;
        }
    }
    return true;
}

SupTwoCCResult sup_two_cc(std::span<const Generator> plants, const Generator& spec,
                          const GroupingPlan& plan, const Alphabet& uncontrollable,
                          const SynthesisOptions& options) {
    SynthesisResult synthesis =
        synthesize_two_level(plants, spec, plan, uncontrollable, options);
    SupTwoCCResult out;
    out.language = synthesis.global;
    out.tier = synthesis.tier;
    out.exact = synthesis.tier != OptimalityTier::SafeOnly;
    return out;
}

}  // namespace descoord
