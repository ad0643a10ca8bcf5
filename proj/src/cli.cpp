#include "descoord/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "descoord/io.hpp"

namespace descoord {

namespace {

namespace fs = std::filesystem;

Alphabet parse_event_list(const std::string& raw) {
    std::vector<std::string> names;
    std::istringstream is(raw);
    std::string tok;
    while (std::getline(is, tok, ','))
        if (!tok.empty()) names.push_back(tok);
    return Alphabet::of(names);
}

std::vector<Alphabet> parse_piece_list(const std::string& raw) {
    std::vector<Alphabet> out;
    std::istringstream is(raw);
    std::string piece;
    while (std::getline(is, piece, ';')) out.push_back(parse_event_list(piece));
    return out;
}

std::vector<std::vector<int>> parse_group_list(const std::string& raw) {
    std::vector<std::vector<int>> out;
    std::istringstream is(raw);
    std::string group_raw;
    while (std::getline(is, group_raw, ';')) {
        std::vector<int> group;
        std::istringstream members(group_raw);
        std::string member;
        while (std::getline(members, member, ','))
            if (!member.empty()) group.push_back(std::stoi(member) - 1);
        if (group.empty()) throw InputError("empty group in --groups");
        std::sort(group.begin(), group.end());
        out.push_back(std::move(group));
    }
    if (out.empty()) throw InputError("--groups: no groups given");
    return out;
}

void write_or_print(const Generator& g, const std::string& out_path,
                    std::ostream& out, const Alphabet& controllable = {}) {
    if (out_path.empty())
        out << write_automaton(g, controllable);
    else
        write_automaton_file(out_path, g, controllable);
}

void maybe_emit(const Report& report, const std::string& path) {
    if (!path.empty()) emit_report(report, path);
}

int finish_check(const std::string& name, const CheckResult& result,
                 const std::string& report_path, std::ostream& out) {
    Report report;
    report.set("check", name);
    report.set("verdict", result.holds);
    if (result.counterexample)
        report_counterexample(report, "witness", *result.counterexample);
    maybe_emit(report, report_path);
    out << name << ": " << (result.holds ? "true" : "false") << "\n";
    if (result.counterexample) {
        out << "witness: " << to_string(result.counterexample->word) << "\n";
        if (result.counterexample->event)
            out << "event: " << result.counterexample->event->name() << "\n";
        if (result.counterexample->agent)
            out << "agent: " << *result.counterexample->agent + 1 << "\n";
        for (const auto& [agent, word] : result.counterexample->lookalikes)
            out << "lookalike." << agent + 1 << ": " << to_string(word) << "\n";
    }
    return result.holds ? 0 : 1;
}

void report_conditions(Report& report, const ConditionReport& conditions) {
    for (const auto& [key, verdict] : conditions) {
        report.set("condition." + key, verdict.holds);
        if (verdict.witness)
            report_counterexample(report, "condition." + key + ".witness",
                                  *verdict.witness);
    }
}

void report_plan(Report& report, const GroupingPlan& plan) {
    std::ostringstream groups;
    for (std::size_t j = 0; j < plan.groups.size(); ++j) {
        if (j) groups << ';';
        for (std::size_t x = 0; x < plan.groups[j].size(); ++x) {
            if (x) groups << ',';
            groups << plan.groups[j][x] + 1;
        }
    }
    report.set("plan.groups", groups.str());
    report.set("plan.highcoord", plan.high_level_shared.to_string());
    for (std::size_t j = 0; j < plan.group_coordinator_alphabets.size(); ++j)
        report.set("plan.coord." + std::to_string(j + 1),
                   plan.group_coordinator_alphabets[j].to_string());
}

void report_provenance(Report& report, const std::string& key,
                       const std::vector<ExtensionStep>& steps) {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (i) os << ' ';
        os << steps[i].event.name() << ':' << steps[i].reason;
    }
    report.set(key, os.str());
}

Report communication_report(const CommunicationMap& map, const GroupingPlan& plan) {
    Report out;
    for (std::size_t i = 0; i < map.receive.size(); ++i)
        out.set("agent." + std::to_string(i + 1) + ".receives",
                map.receive[i].to_string());
    for (std::size_t j = 0; j < plan.group_count(); ++j) {
        out.set("group." + std::to_string(j + 1) + ".alphabet",
                plan.group_coordinator_alphabets[j].to_string());
        std::ostringstream members;
        for (std::size_t x = 0; x < plan.groups[j].size(); ++x) {
            if (x) members << ',';
            members << plan.groups[j][x] + 1;
        }
        out.set("group." + std::to_string(j + 1) + ".agents", members.str());
    }
    return out;
}

struct CheckArgs {
    std::string spec, plant, onto, unctrl, pieces, problem, report;
    bool strict_occ = false;
    int max_agents = 6;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"coordination-control synthesis for modular discrete-event "
                 "systems and decentralized supervisors"};
    app.require_subcommand(1);

    // product
    auto* product = app.add_subcommand("product", "synchronous product of automata");
    std::vector<std::string> product_inputs;
    std::string product_out;
    product->add_option("inputs", product_inputs, "automaton files")->required();
    product->add_option("-o,--out", product_out, "output file (stdout otherwise)");

    // project
    auto* project_cmd = app.add_subcommand("project", "natural projection");
    std::string project_in, project_onto, project_out;
    bool project_min = false;
    project_cmd->add_option("input", project_in, "automaton file")->required();
    project_cmd->add_option("--onto", project_onto, "comma-separated events")->required();
    project_cmd->add_option("-o,--out", project_out, "output file");
    project_cmd->add_flag("--minimize", project_min, "state-minimize the result");

    // supc
    auto* supc_cmd = app.add_subcommand("supc", "supremal controllable sublanguage");
    std::string supc_spec, supc_plant, supc_unctrl, supc_out, supc_report;
    supc_cmd->add_option("--spec", supc_spec)->required();
    supc_cmd->add_option("--plant", supc_plant)->required();
    supc_cmd->add_option("--unctrl", supc_unctrl, "comma-separated uncontrollable events");
    supc_cmd->add_option("-o,--out", supc_out);
    supc_cmd->add_option("--report", supc_report);

    // enumerate
    auto* enum_cmd = app.add_subcommand("enumerate", "bounded language enumeration");
    std::string enum_in;
    int enum_maxlen = 0;
    enum_cmd->add_option("input", enum_in)->required();
    enum_cmd->add_option("--maxlen", enum_maxlen)->required();

    // check <property>
    auto* check = app.add_subcommand("check", "decision procedures");
    check->require_subcommand(1);
    CheckArgs ca;
    auto add_common = [&](CLI::App* cmd, bool wants_spec, bool wants_plant) {
        if (wants_spec) cmd->add_option("--spec", ca.spec);
        if (wants_plant) cmd->add_option("--plant", ca.plant);
        cmd->add_option("--report", ca.report);
    };
    auto* chk_ctrl = check->add_subcommand("controllable", "controllability");
    add_common(chk_ctrl, true, true);
    chk_ctrl->add_option("--unctrl", ca.unctrl)->required();
    auto* chk_obs = check->add_subcommand("observer", "observer property");
    add_common(chk_obs, false, true);
    chk_obs->add_option("--onto", ca.onto)->required();
    auto* chk_lcc = check->add_subcommand("lcc", "local control consistency");
    add_common(chk_lcc, false, true);
    chk_lcc->add_option("--onto", ca.onto)->required();
    chk_lcc->add_option("--unctrl", ca.unctrl)->required();
    chk_lcc->add_flag("--strict-occ", ca.strict_occ);
    auto* chk_cd = check->add_subcommand("cd", "conditional decomposability");
    add_common(chk_cd, true, false);
    chk_cd->add_option("--pieces", ca.pieces, "semicolon-separated event lists")
        ->required();
    auto* chk_coobs = check->add_subcommand("coobservable", "C&P coobservability");
    add_common(chk_coobs, true, false);
    chk_coobs->add_option("--problem", ca.problem)->required();
    chk_coobs->add_option("--max-agents-verifier", ca.max_agents);
    auto* chk_cc2 =
        check->add_subcommand("cc2", "two-level conditional controllability");
    add_common(chk_cc2, false, false);
    chk_cc2->add_option("--problem", ca.problem)->required();
    auto* chk_shared = check->add_subcommand("shared", "shared-event consistency");
    add_common(chk_shared, false, false);
    chk_shared->add_option("--problem", ca.problem)->required();

    // synth two-level
    auto* synth = app.add_subcommand("synth", "coordination-control synthesis");
    synth->require_subcommand(1);
    auto* synth2 = synth->add_subcommand("two-level", "two-level pipeline");
    std::string sy_plants, sy_spec, sy_unctrl, sy_groups, sy_high, sy_out, sy_report;
    std::vector<std::string> sy_coord;
    bool sy_strict = false;
    synth2->add_option("--plants", sy_plants, "comma-separated automaton files")
        ->required();
    synth2->add_option("--spec", sy_spec)->required();
    synth2->add_option("--unctrl", sy_unctrl);
    synth2->add_option("--groups", sy_groups, "e.g. \"1,2;3,4\"");
    synth2->add_option("--coord", sy_coord, "per-group alphabet, e.g. \"2:v1,b2,v,b\"");
    synth2->add_option("--highcoord", sy_high);
    synth2->add_option("-o,--out", sy_out, "output directory");
    synth2->add_option("--report", sy_report);
    synth2->add_flag("--strict-occ", sy_strict);

    // solve decentralized
    auto* solve_cmd = app.add_subcommand("solve", "decentralized control");
    solve_cmd->require_subcommand(1);
    auto* solve_dec = solve_cmd->add_subcommand(
        "decentralized", "communicating supervisors via group coordinators");
    std::string so_problem, so_out, so_report, so_groups;
    bool so_strict = false, so_no_observer = false;
    int so_max_agents = 6;
    std::optional<int> so_target;
    solve_dec->add_option("--problem", so_problem)->required();
    solve_dec->add_option("-o,--out", so_out, "output directory");
    solve_dec->add_option("--report", so_report);
    solve_dec->add_option("--groups", so_groups, "override the problem's groups");
    solve_dec->add_option("--target-groups", so_target);
    solve_dec->add_option("--max-agents-verifier", so_max_agents);
    solve_dec->add_flag("--strict-occ", so_strict);
    solve_dec->add_flag("--no-observer-extension", so_no_observer);

    try {
        std::vector<std::string> argv_rev(args.rbegin(), args.rend());
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*product) {
            std::vector<Generator> parts;
            for (const auto& path : product_inputs)
                parts.push_back(read_automaton_file(path).generator);
            write_or_print(sync_product(parts), product_out, out);
            return 0;
        }
        if (*project_cmd) {
            Generator g = read_automaton_file(project_in).generator;
            write_or_print(
                project(g, parse_event_list(project_onto), {.minimize = project_min}),
                project_out, out);
            return 0;
        }
        if (*supc_cmd) {
            ParsedAutomaton spec = read_automaton_file(supc_spec);
            ParsedAutomaton plant = read_automaton_file(supc_plant);
            Alphabet unctrl = supc_cmd->count("--unctrl")
                                  ? parse_event_list(supc_unctrl)
                                  : plant.generator.alphabet().subtract(plant.controllable);
            Generator result = sup_c(spec.generator, plant.generator, unctrl);
            write_or_print(result, supc_out, out,
                           result.alphabet().subtract(unctrl));
            Report report;
            report.set("operation", std::string("supc"));
            report.set("states", static_cast<long long>(result.state_count()));
            report.set("empty", result.is_empty_language());
            maybe_emit(report, supc_report);
            return 0;
        }
        if (*enum_cmd) {
            Generator g = read_automaton_file(enum_in).generator;
            if (enum_maxlen < 0) throw InputError("--maxlen must be nonnegative");
            for (const auto& w :
                 enumerate_bounded(g, static_cast<std::size_t>(enum_maxlen)))
                out << to_string(w) << "\n";
            return 0;
        }

        if (*chk_ctrl) {
            Generator spec = read_automaton_file(ca.spec).generator;
            Generator plant = read_automaton_file(ca.plant).generator;
            return finish_check("controllable",
                                is_controllable(spec, plant, parse_event_list(ca.unctrl)),
                                ca.report, out);
        }
        if (*chk_obs) {
            Generator plant = read_automaton_file(ca.plant).generator;
            return finish_check("observer", is_observer(plant, parse_event_list(ca.onto)),
                                ca.report, out);
        }
        if (*chk_lcc) {
            Generator plant = read_automaton_file(ca.plant).generator;
            return finish_check(ca.strict_occ ? "occ" : "lcc",
                                is_lcc(plant, parse_event_list(ca.onto),
                                       parse_event_list(ca.unctrl),
                                       LccOptions{ca.strict_occ}),
                                ca.report, out);
        }
        if (*chk_cd) {
            Generator spec = read_automaton_file(ca.spec).generator;
            return finish_check(
                "conditionally-decomposable",
                is_decomposable(spec, parse_piece_list(ca.pieces)), ca.report, out);
        }
        if (*chk_coobs) {
            DecentralizedProblem problem = read_problem_file(ca.problem);
            Generator spec = ca.spec.empty() ? problem.spec
                                             : read_automaton_file(ca.spec).generator;
            return finish_check("coobservable",
                                is_coobservable(spec, problem.plant, problem.agents,
                                                CoobsOptions{ca.max_agents}),
                                ca.report, out);
        }
        if (*chk_cc2) {
            DecentralizedProblem problem = read_problem_file(ca.problem);
            PreparedProblem prepared = prepare(problem);
            std::vector<Generator> coordinators;
            for (std::size_t j = 0; j < prepared.plan.group_count(); ++j)
                coordinators.push_back(
                    build_coordinator(prepared.translated.plants,
                                      prepared.plan.group_coordinator_alphabets[j],
                                      static_cast<int>(j))
                        .coordinator);
            return finish_check(
                "two-level-conditionally-controllable",
                is_two_level_conditionally_controllable(
                    problem.spec, prepared.translated.plants, prepared.plan,
                    coordinators, problem.uncontrollable()),
                ca.report, out);
        }
        if (*chk_shared) {
            DecentralizedProblem problem = read_problem_file(ca.problem);
            auto result = check_shared_consistency(problem.agents);
            Report report;
            report.set("check", std::string("shared"));
            report.set("verdict", result.holds);
            if (!result.holds) {
                report.set("witness.observing_agent",
                           std::to_string(result.observing_agent + 1));
                report.set("witness.controlling_agent",
                           std::to_string(result.controlling_agent + 1));
                report.set("witness.event", result.event->name());
            }
            maybe_emit(report, ca.report);
            out << "shared-consistency: " << (result.holds ? "true" : "false") << "\n";
            if (!result.holds)
                out << "agent " << result.observing_agent + 1 << " observes '"
                    << result.event->name() << "' controlled by agent "
                    << result.controlling_agent + 1 << " but cannot control it\n";
            return result.holds ? 0 : 1;
        }

        if (*synth2) {
            auto started = std::chrono::steady_clock::now();
            std::vector<Generator> plants;
            {
                std::istringstream is(sy_plants);
                std::string path;
                while (std::getline(is, path, ','))
                    if (!path.empty())
                        plants.push_back(read_automaton_file(path).generator);
            }
            if (plants.empty()) throw InputError("--plants: no plant files given");
            ParsedAutomaton spec = read_automaton_file(sy_spec);
            Alphabet everything;
            for (const auto& p : plants) everything = everything.unite(p.alphabet());
            Alphabet unctrl = synth2->count("--unctrl") ? parse_event_list(sy_unctrl)
                                                        : Alphabet{};

            GroupingPlan plan;
            plan.groups = sy_groups.empty()
                              ? std::vector<std::vector<int>>{[&] {
                                    std::vector<int> all(plants.size());
                                    for (std::size_t i = 0; i < plants.size(); ++i)
                                        all[i] = static_cast<int>(i);
                                    return all;
                                }()}
                              : parse_group_list(sy_groups);
            plan.high_level_shared =
                sy_high.empty() ? Alphabet{} : parse_event_list(sy_high);
            if (sy_high.empty()) {
                for (std::size_t j = 0; j < plan.groups.size(); ++j)
                    for (std::size_t l = j + 1; l < plan.groups.size(); ++l) {
                        Alphabet aj, al;
                        for (int i : plan.groups[j]) aj = aj.unite(plants[i].alphabet());
                        for (int i : plan.groups[l]) al = al.unite(plants[i].alphabet());
                        plan.high_level_shared =
                            plan.high_level_shared.unite(aj.intersect(al));
                    }
            }
            plan.group_coordinator_alphabets.resize(plan.groups.size());
            for (std::size_t j = 0; j < plan.groups.size(); ++j) {
                Alphabet seed = plan.high_level_shared;
                const auto& group = plan.groups[j];
                for (std::size_t x = 0; x < group.size(); ++x)
                    for (std::size_t y = x + 1; y < group.size(); ++y)
                        seed = seed.unite(plants[group[x]].alphabet().intersect(
                            plants[group[y]].alphabet()));
                plan.group_coordinator_alphabets[j] = seed;
            }
            for (const auto& entry : sy_coord) {
                auto colon = entry.find(':');
                if (colon == std::string::npos)
                    throw InputError("--coord expects \"<group>:e1,e2,...\"");
                std::size_t j = std::stoul(entry.substr(0, colon));
                if (j < 1 || j > plan.groups.size())
                    throw InputError("--coord: group index out of range");
                plan.group_coordinator_alphabets[j - 1] =
                    plan.group_coordinator_alphabets[j - 1].unite(
                        parse_event_list(entry.substr(colon + 1)));
            }

            SynthesisResult result = synthesize_two_level(
                plants, spec.generator, plan, unctrl, SynthesisOptions{sy_strict});

            Report report;
            report.set("operation", std::string("synth-two-level"));
            report.set("tier", std::string(to_string(result.tier)));
            if (!result.caveat.empty()) report.set("caveat", result.caveat);
            report_plan(report, result.plan);
            report_conditions(report, result.conditions);
            report.set("timing.total_ms",
                       static_cast<long long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count()));
            maybe_emit(report, sy_report);

            if (!sy_out.empty()) {
                fs::create_directories(sy_out);
                for (const auto& [i, g] : result.agent_supervisors)
                    write_automaton_file(
                        fs::path(sy_out) / ("supervisor_" + std::to_string(i + 1) + ".aut"),
                        g, g.alphabet().subtract(unctrl));
                for (std::size_t j = 0; j < result.group_supervisors.size(); ++j) {
                    write_automaton_file(fs::path(sy_out) / ("group_supervisor_" +
                                                             std::to_string(j + 1) + ".aut"),
                                         result.group_supervisors[j]);
                    write_automaton_file(
                        fs::path(sy_out) / ("coordinator_" + std::to_string(j + 1) + ".aut"),
                        result.coordinators[j].coordinator);
                }
                write_automaton_file(fs::path(sy_out) / "global.aut", result.global);
                emit_report(report, fs::path(sy_out) / "report.txt");
            }
            out << "tier: " << to_string(result.tier) << "\n";
            return result.tier != OptimalityTier::SafeOnly ? 0 : 1;
        }

        if (*solve_dec) {
            auto started = std::chrono::steady_clock::now();
            DecentralizedProblem problem = read_problem_file(so_problem);
            if (!so_groups.empty()) problem.groups = parse_group_list(so_groups);
            SolveOptions options;
            options.synthesis.strict_occ = so_strict;
            options.coobservability.max_agents = so_max_agents;
            options.ensure_observer = !so_no_observer;
            if (so_target) options.target_groups = so_target;

            Solution solution = solve(problem, options);

            Report report;
            report.set("operation", std::string("solve-decentralized"));
            report.set("tier", std::string(to_string(solution.synthesis.tier)));
            if (!solution.synthesis.caveat.empty())
                report.set("caveat", solution.synthesis.caveat);
            report.set("controllable", solution.controllable.holds);
            if (solution.controllable.counterexample)
                report_counterexample(report, "controllable.witness",
                                      *solution.controllable.counterexample);
            report.set("coobservable", solution.coobservable.holds);
            if (solution.coobservable.counterexample)
                report_counterexample(report, "coobservable.witness",
                                      *solution.coobservable.counterexample);
            report.set("shared_consistency", solution.shared_consistency.holds);
            report_plan(report, solution.plan);
            report_conditions(report, solution.synthesis.conditions);
            report_provenance(report, "provenance.highcoord",
                              solution.high_level_provenance);
            for (std::size_t j = 0; j < solution.group_provenance.size(); ++j)
                report_provenance(report, "provenance.group" + std::to_string(j + 1),
                                  solution.group_provenance[j]);
            report.set("timing.total_ms",
                       static_cast<long long>(
                           std::chrono::duration_cast<std::chrono::milliseconds>(
                               std::chrono::steady_clock::now() - started)
                               .count()));
            maybe_emit(report, so_report);

            if (!so_out.empty()) {
                fs::create_directories(so_out);
                for (const auto& [i, g] : solution.supervisors)
                    write_automaton_file(
                        fs::path(so_out) / ("supervisor_" + std::to_string(i + 1) + ".aut"),
                        g, solution.enriched_agents[i].controllable);
                for (std::size_t j = 0; j < solution.synthesis.coordinators.size(); ++j)
                    write_automaton_file(
                        fs::path(so_out) / ("coordinator_" + std::to_string(j + 1) + ".aut"),
                        solution.synthesis.coordinators[j].coordinator);
                write_automaton_file(fs::path(so_out) / "global.aut", solution.global);
                emit_report(communication_report(solution.communication, solution.plan),
                            fs::path(so_out) / "communication.map");
                emit_report(report, fs::path(so_out) / "report.txt");
            }
            out << "tier: " << to_string(solution.synthesis.tier) << "\n"
                << "controllable: " << (solution.controllable.holds ? "true" : "false")
                << "\n"
                << "coobservable: " << (solution.coobservable.holds ? "true" : "false")
                << "\n";
            bool ok = solution.synthesis.tier != OptimalityTier::SafeOnly &&
                      solution.controllable.holds && solution.coobservable.holds;
            return ok ? 0 : 1;
        }
    } catch (const DecomposabilityError& e) {
        err << "decomposability error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand executed\n";
    return 2;
}

}  // namespace descoord
