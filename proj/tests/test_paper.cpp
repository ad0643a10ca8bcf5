#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "support/paper_instance.hpp"

using namespace descoord;
using namespace descoord::testing;

namespace {

Word word(const std::string& raw) {
    Word w;
    std::istringstream is(raw);
    std::string tok;
    while (is >> tok) w.push_back(Event(tok));
    return w;
}

std::vector<std::string> word_strings(const std::vector<Word>& words) {
    std::vector<std::string> out;
    for (const auto& w : words) out.push_back(to_string(w));
    return out;
}

}  // namespace

TEST_CASE("worked example: the spec is inside the plant and uses all ten events") {
    PaperInstance inst = paper_instance();
    CHECK(inst.plant.alphabet().size() == 10);
    CHECK(language_subset(inst.spec, inst.plant));
    CHECK(inst.spec.accepts(word("v2 v1")));
    CHECK(inst.plant.accepts(word("v2 v1 b")));
    CHECK_FALSE(inst.spec.accepts(word("v2 v1 b")));
    CHECK(inst.plant.accepts(word("v1 v2")));
    CHECK(inst.spec.accepts(word("v1 v2 b")));
    CHECK(inst.spec.accepts(word("u1 u2 u a")));
    CHECK(inst.spec.accepts(word("u2 u1 u a")));
    CHECK(inst.spec.accepts(word("v b2 b1")));
    CHECK(inst.spec.accepts(word("u1 u2 u a v1 b")));
}

TEST_CASE("worked example: shared-event consistency holds for the four agents") {
    PaperInstance inst = paper_instance();
    CHECK(check_shared_consistency(inst.agents).holds);
}

TEST_CASE("worked example: the spec is not controllable, witness v2 v1 b") {
    PaperInstance inst = paper_instance();
    auto r = is_controllable(inst.spec, inst.plant, inst.uncontrollable);
    REQUIRE_FALSE(r.holds);
    const Word& w = r.counterexample->word;
    CHECK(w.back().name() == "b");
    CHECK(to_string(project_word(w, Alphabet::of({"v1", "v2"}))) == "v2 v1");
    CHECK(to_string(w) == "v2 v1 b");
}

TEST_CASE("worked example: if b were controllable the spec would be controllable") {
    PaperInstance inst = paper_instance();
    Alphabet without_b = inst.uncontrollable.subtract(Alphabet::of({"b"}));
    CHECK(is_controllable(inst.spec, inst.plant, without_b).holds);
}

TEST_CASE("worked example: the spec is coobservable but its supremal "
          "controllable sublanguage is not") {
    PaperInstance inst = paper_instance();
    CHECK(is_coobservable(inst.spec, inst.plant, inst.agents).holds);

    Generator n = sup_c(inst.spec, inst.plant, inst.uncontrollable);
    CHECK(n.accepts(word("v1 v2")));
    CHECK(n.accepts(word("v2")));
    CHECK_FALSE(n.accepts(word("v2 v1")));
    CHECK(inst.plant.accepts(word("v2 v1")));

    auto r = is_coobservable(n, inst.plant, inst.agents);
    REQUIRE_FALSE(r.holds);
    // The ambiguity: after v2 the supervisor controlling v1 (agent 3,
    // index 2) sees nothing, and its lookalike still allows v1.
    CHECK(to_string(r.counterexample->word) == "v2");
    CHECK(r.counterexample->event->name() == "v1");
    REQUIRE(r.counterexample->lookalikes.count(2) == 1);
    const Word& lookalike = r.counterexample->lookalikes.at(2);
    CHECK(project_word(lookalike, inst.agents[2].observable) ==
          project_word(r.counterexample->word, inst.agents[2].observable));
    Word extended = lookalike;
    extended.push_back(Event("v1"));
    CHECK(n.accepts(extended));
}

TEST_CASE("worked example: plant projections over-approximate it strictly") {
    PaperInstance inst = paper_instance();
    std::vector<Generator> projections;
    for (const auto& agent : inst.agents)
        projections.push_back(project(inst.plant, agent.observable));
    Generator composed = sync_product(projections);
    CHECK(language_subset(inst.plant, composed));
    auto equal = language_includes(inst.plant, composed, IncludesMode::Equal);
    CHECK_FALSE(equal.holds);
    // b2 before b1 is indistinguishable for agents that each see only one.
    CHECK(composed.accepts(word("v b1 b2")));
    CHECK_FALSE(inst.plant.accepts(word("v b1 b2")));
}

TEST_CASE("worked example: high-level alphabet {b} needs no extension") {
    PaperInstance inst = paper_instance();
    Alphabet left = Alphabet::of({"a", "b", "u", "u1", "u2"});
    Alphabet right = Alphabet::of({"b", "b1", "b2", "v", "v1", "v2"});
    // Cross-group shared observations are exactly {b}.
    Alphabet obs_left = inst.agents[0].observable.unite(inst.agents[1].observable);
    Alphabet obs_right = inst.agents[2].observable.unite(inst.agents[3].observable);
    CHECK(obs_left.intersect(obs_right) == inst.high_level);
    std::vector<Alphabet> pieces{left, right};
    CHECK(is_decomposable(inst.spec, pieces).holds);
}

TEST_CASE("worked example: group 1 decomposes with its shared events unchanged") {
    PaperInstance inst = paper_instance();
    CHECK(inst.agents[0].observable.intersect(inst.agents[1].observable) ==
          inst.coord_group1);
    Generator left_spec =
        project(inst.spec, Alphabet::of({"a", "b", "u", "u1", "u2"}));
    std::vector<Alphabet> pieces{inst.agents[0].observable,
                                 inst.agents[1].observable};
    CHECK(is_decomposable(left_spec, pieces).holds);
}

TEST_CASE("worked example: group 2 is not decomposable over raw observations "
          "but is over the chosen coordinator alphabet") {
    PaperInstance inst = paper_instance();
    Generator right_spec =
        project(inst.spec, Alphabet::of({"b", "b1", "b2", "v", "v1", "v2"}));

    std::vector<Alphabet> raw{inst.agents[2].observable.unite(inst.high_level),
                              inst.agents[3].observable.unite(inst.high_level)};
    auto fails = is_decomposable(right_spec, raw);
    CHECK_FALSE(fails.holds);

    std::vector<Alphabet> chosen{inst.agents[2].observable.unite(inst.coord_group2),
                                 inst.agents[3].observable.unite(inst.coord_group2)};
    CHECK(is_decomposable(right_spec, chosen).holds);
}

TEST_CASE("worked example: the group-2 coordinator has the five expected words") {
    PaperInstance inst = paper_instance();
    std::vector<Generator> plants;
    for (const auto& agent : inst.agents)
        plants.push_back(project(inst.plant, agent.observable));
    CoordinatorSpec coord = build_coordinator(plants, inst.coord_group2, 1);
    CHECK(word_strings(enumerate_bounded(coord.coordinator, 3)) ==
          std::vector<std::string>{"", "v", "v1", "v b2", "v1 b"});
    // And nothing longer.
    CHECK(enumerate_bounded(coord.coordinator, 6).size() == 5);
}

TEST_CASE("worked example: full pipeline reproduces the published supervisors") {
    PaperInstance inst = paper_instance();
    DecentralizedProblem problem = paper_problem();
    Solution solution = solve(problem);

    REQUIRE(solution.plan.group_count() == 2);
    CHECK(solution.plan.group_coordinator_alphabets[0] ==
          inst.coord_group1.unite(inst.high_level));
    CHECK(solution.plan.group_coordinator_alphabets[1] == inst.coord_group2);

    std::vector<Generator> plants;
    for (const auto& agent : inst.agents)
        plants.push_back(project(inst.plant, agent.observable));

    // Group 1 requires no control action: supervisors equal the plant
    // projections.
    CHECK(language_equal(solution.supervisors.at(0), plants[0]));
    CHECK(language_equal(solution.supervisors.at(1), plants[1]));

    // The group-2 supervisor equals its coordinator language.
    Generator coord2 =
        build_coordinator(plants, solution.plan.group_coordinator_alphabets[1], 1)
            .coordinator;
    CHECK(language_equal(solution.synthesis.group_supervisors[1], coord2));
    CHECK(language_equal(solution.synthesis.group_supervisors[1],
                         project(inst.spec, inst.coord_group2)));

    // Agent 3's supervisor is exactly the projected spec.
    Alphabet a3k2 = inst.agents[2].observable.unite(inst.coord_group2);
    CHECK(language_equal(solution.supervisors.at(2), project(inst.spec, a3k2)));

    // Agent 4's supervisor disables v1 after v2: no word contains v2
    // before v1.
    const Generator& s4 = solution.supervisors.at(3);
    CHECK(s4.accepts(word("v2")));
    CHECK(s4.accepts(word("v1 v2 b")));
    CHECK_FALSE(s4.accepts(word("v2 v1")));
    for (const auto& w : enumerate_bounded(s4, 8)) {
        bool seen_v2 = false;
        for (const auto& e : w) {
            if (e.name() == "v2") seen_v2 = true;
            if (e.name() == "v1") CHECK_FALSE(seen_v2);
        }
    }
    // Its projected spec alone is not controllable against its plant side.
    Alphabet a4k2 = inst.agents[3].observable.unite(inst.coord_group2);
    Generator p4k2_spec = project(inst.spec, a4k2);
    CHECK_FALSE(is_controllable(
                    p4k2_spec,
                    sync_product(plants[3], project(inst.spec, inst.coord_group2)),
                    a4k2.intersect(inst.uncontrollable))
                    .holds);

    // The final language is controllable and coobservable with the
    // enriched alphabets, and an optimality tier was certified.
    CHECK(solution.controllable.holds);
    CHECK(solution.coobservable.holds);
    CHECK(solution.synthesis.tier != OptimalityTier::SafeOnly);
    CHECK(solution.synthesis.tier == OptimalityTier::OptimalThm3);

    // Communication: agent 3 learns b2, agent 4 learns v1, group 1 nothing.
    CHECK(solution.communication.receive[0].empty());
    CHECK(solution.communication.receive[1].empty());
    CHECK(solution.communication.receive[2] == Alphabet::of({"b2"}));
    CHECK(solution.communication.receive[3] == Alphabet::of({"v1"}));

    CHECK(check_inclusion_lemma(solution.synthesis));
}

TEST_CASE("worked example: the spec itself is not two-level conditionally "
          "controllable (agent 4's part fails)") {
    PaperInstance inst = paper_instance();
    std::vector<Generator> plants;
    for (const auto& agent : inst.agents)
        plants.push_back(project(inst.plant, agent.observable));

    GroupingPlan plan;
    plan.groups = inst.groups;
    plan.high_level_shared = inst.high_level;
    plan.group_coordinator_alphabets = {inst.coord_group1.unite(inst.high_level),
                                        inst.coord_group2};
    std::vector<Generator> coordinators;
    for (std::size_t j = 0; j < plan.group_count(); ++j)
        coordinators.push_back(
            build_coordinator(plants, plan.group_coordinator_alphabets[j],
                              static_cast<int>(j))
                .coordinator);

    auto r = is_two_level_conditionally_controllable(inst.spec, plants, plan,
                                                     coordinators,
                                                     inst.uncontrollable);
    REQUIRE_FALSE(r.holds);
    CHECK(r.counterexample->kind == CheckKind::CondControllabilityItem2);
    CHECK(*r.counterexample->agent == 3);

    // Item 1 for group 2 passes: the projected spec equals the
    // coordinator language, trivially controllable against itself.
    Generator coord_spec = project(inst.spec, inst.coord_group2);
    CHECK(language_equal(coord_spec, coordinators[1]));
    CHECK(is_controllable(coord_spec, coordinators[1],
                          inst.coord_group2.intersect(inst.uncontrollable))
              .holds);
}

TEST_CASE("worked example: forcing shared-only group alphabets reports the "
          "decomposability failure") {
    DecentralizedProblem problem = paper_problem();
    // Group 2 keeps only its raw shared observations {v, b}.
    problem.coordinator_alphabets = {Alphabet::of({"a", "u", "b"}),
                                     Alphabet::of({"v", "b"})};
    try {
        solve(problem);
        FAIL("expected a decomposability error");
    } catch (const DecomposabilityError& e) {
        CHECK(e.group == 1);
        CHECK_FALSE(e.witness.word.empty());
        // The suggested repair communicates at least one of the private
        // right-hand events.
        Alphabet repair = e.suggested_extension;
        CHECK((repair.contains(Event("v1")) || repair.contains(Event("v2")) ||
               repair.contains(Event("b1")) || repair.contains(Event("b2"))));
    }
}

TEST_CASE("worked example: automatic grouping finds the published split") {
    PaperInstance inst = paper_instance();
    auto groups = group_agents(inst.agents, 2);
    REQUIRE(groups.size() == 2);
    CHECK(groups[0] == std::vector<int>{0, 1});
    CHECK(groups[1] == std::vector<int>{2, 3});

    // The untargeted heuristic stops at the same split: the remaining
    // cross-cluster sharing {b} is uniform.
    auto untargeted = group_agents(inst.agents);
    REQUIRE(untargeted.size() == 2);
    CHECK(untargeted[0] == std::vector<int>{0, 1});
    CHECK(untargeted[1] == std::vector<int>{2, 3});
}
