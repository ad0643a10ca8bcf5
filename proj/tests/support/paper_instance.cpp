#include "support/paper_instance.hpp"

#include "descoord/ops.hpp"

namespace descoord::testing {

namespace {

Event ev(const char* name) { return Event(name); }

// Left process: u1 and u2 in either order, then u, then a.
Generator left_plant() {
    Alphabet alphabet = Alphabet::of({"a", "u", "u1", "u2"});
    std::vector<Transition> ts = {
        {0, ev("u1"), 1}, {0, ev("u2"), 2}, {1, ev("u2"), 3},
        {2, ev("u1"), 3}, {3, ev("u"), 4},  {4, ev("a"), 5},
    };
    return trim(Generator(alphabet, 6, 0, ts));
}

// Right process of the plant: either v followed by b2 then b1, or an
// interleaving of v1 and v2 where b may follow v1, v1 v2 or v2 v1.
Generator right_plant() {
    Alphabet alphabet = Alphabet::of({"b", "b1", "b2", "v", "v1", "v2"});
    std::vector<Transition> ts = {
        {0, ev("v1"), 1}, {1, ev("v2"), 2}, {2, ev("b"), 3},  {1, ev("b"), 4},
        {0, ev("v2"), 5}, {5, ev("v1"), 6}, {6, ev("b"), 7},  {0, ev("v"), 8},
        {8, ev("b2"), 9}, {9, ev("b1"), 10},
    };
    return trim(Generator(alphabet, 11, 0, ts));
}

// Right half of the specification: as the plant but b is forbidden after
// v2 v1.
Generator right_spec() {
    Alphabet alphabet = Alphabet::of({"b", "b1", "b2", "v", "v1", "v2"});
    std::vector<Transition> ts = {
        {0, ev("v1"), 1}, {1, ev("v2"), 2}, {2, ev("b"), 3}, {1, ev("b"), 4},
        {0, ev("v2"), 5}, {5, ev("v1"), 6}, {0, ev("v"), 7}, {7, ev("b2"), 8},
        {8, ev("b1"), 9},
    };
    return trim(Generator(alphabet, 10, 0, ts));
}

}  // namespace

PaperInstance paper_instance() {
    PaperInstance out;
    out.plant = sync_product(left_plant(), right_plant());
    out.spec = sync_product(left_plant(), right_spec());
    out.agents = {
        AgentAlphabet{Alphabet::of({"a", "b", "u1", "u"}), Alphabet::of({"a"})},
        AgentAlphabet{Alphabet::of({"a", "b", "u2", "u"}), Alphabet::of({"a"})},
        AgentAlphabet{Alphabet::of({"v", "b", "v1", "b1"}),
                      Alphabet::of({"v", "v1", "b1"})},
        AgentAlphabet{Alphabet::of({"v", "b", "v2", "b2"}),
                      Alphabet::of({"v", "v2", "b2"})},
    };
    out.uncontrollable = Alphabet::of({"b", "u", "u1", "u2"});
    out.groups = {{0, 1}, {2, 3}};
    out.high_level = Alphabet::of({"b"});
    out.coord_group1 = Alphabet::of({"a", "u", "b"});
    out.coord_group2 = Alphabet::of({"v1", "b2", "v", "b"});
    return out;
}

DecentralizedProblem paper_problem() {
    PaperInstance inst = paper_instance();
    DecentralizedProblem problem;
    problem.plant = inst.plant;
    problem.spec = inst.spec;
    problem.agents = inst.agents;
    problem.groups = inst.groups;
    problem.coordinator_alphabets = {inst.coord_group1, inst.coord_group2};
    problem.high_level_alphabet = inst.high_level;
    return problem;
}

std::filesystem::path paper_data_dir() {
    return std::filesystem::path(DESCOORD_SOURCE_DIR) / "data" / "paper";
}

}  // namespace descoord::testing
