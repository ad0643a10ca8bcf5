#include "descoord/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace descoord {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& message) {
    throw InputError("line " + std::to_string(line_no) + ": " + message);
}

struct LineReader {
    std::vector<std::string> lines;
    std::size_t at = 0;

    explicit LineReader(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }

    // Skips blanks and '#' comments; returns false at end of input.
    bool next(std::string& out, std::size_t& line_no) {
        while (at < lines.size()) {
            const std::string& line = lines[at++];
            line_no = at;
            std::size_t first = line.find_first_not_of(" \t");
            if (first == std::string::npos || line[first] == '#') continue;
            out = line;
            return true;
        }
        return false;
    }

    void push_back() { --at; }
};

// "header: rest" split; returns false when the line has no such shape.
bool header_of(const std::string& line, std::string& header, std::string& rest) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return false;
    header = line.substr(0, colon);
    if (header.find(' ') != std::string::npos) return false;
    rest = line.substr(colon + 1);
    return true;
}

std::string expect_header(LineReader& reader, const std::string& want) {
    std::string line;
    std::size_t line_no = 0;
    if (!reader.next(line, line_no))
        throw InputError("unexpected end of input, expected '" + want + ":'");
    std::string header, rest;
    if (!header_of(line, header, rest) || header != want)
        parse_fail(line_no, "expected '" + want + ":' header");
    return rest;
}

}  // namespace

ParsedAutomaton parse_automaton(const std::string& text) {
    LineReader reader(text);

    Alphabet alphabet = Alphabet::of(split_ws(expect_header(reader, "alphabet")));
    Alphabet controllable = Alphabet::of(split_ws(expect_header(reader, "controllable")));
    if (!controllable.subset_of(alphabet))
        throw InputError("controllable events must be declared in the alphabet");

    auto parse_int = [&](const std::string& raw, const char* what) {
        try {
            std::size_t used = 0;
            int value = std::stoi(raw, &used);
            if (used != raw.size()) throw std::invalid_argument(raw);
            return value;
        } catch (const std::exception&) {
            throw InputError(std::string("malformed ") + what + ": '" + raw + "'");
        }
    };
    auto single_token = [](const std::string& raw, const char* what) {
        auto tokens = split_ws(raw);
        if (tokens.size() != 1)
            throw InputError(std::string("malformed ") + what + " header");
        return tokens[0];
    };
    int state_count = parse_int(single_token(expect_header(reader, "states"), "states"),
                                "state count");
    if (state_count < 0) throw InputError("negative state count");
    int initial = parse_int(single_token(expect_header(reader, "initial"), "initial"),
                            "initial state");
    if (state_count == 0 && initial != -1)
        throw InputError("a zero-state automaton must declare initial: -1");
    if (state_count > 0 && (initial < 0 || initial >= state_count))
        throw InputError("initial state " + std::to_string(initial) +
                         " unreachable (outside 0.." + std::to_string(state_count - 1) +
                         ")");
    std::string trans_rest = expect_header(reader, "trans");
    if (!split_ws(trans_rest).empty())
        throw InputError("'trans:' header takes no inline content");

    std::vector<Transition> transitions;
    std::set<std::pair<int, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (reader.next(line, line_no)) {
        auto parts = split_ws(line);
        if (parts.size() != 3) parse_fail(line_no, "expected 'src event dst'");
        int src = parse_int(parts[0], "source state");
        int dst = parse_int(parts[2], "target state");
        Event event(parts[1]);
        if (!alphabet.contains(event))
            parse_fail(line_no, "event '" + parts[1] + "' not declared in the alphabet");
        if (src < 0 || src >= state_count || dst < 0 || dst >= state_count)
            parse_fail(line_no, "state id outside 0.." + std::to_string(state_count - 1));
        if (!seen.emplace(src, parts[1]).second)
            parse_fail(line_no, "duplicate transition from state " + parts[0] +
                                    " on '" + parts[1] + "' (determinism)");
        transitions.push_back({src, event, dst});
    }

    ParsedAutomaton out;
    out.generator = Generator(alphabet, static_cast<std::size_t>(state_count),
                              initial, transitions);
    out.controllable = controllable;
    return out;
}

std::string write_automaton(const Generator& g, const Alphabet& controllable) {
    std::ostringstream os;
    auto header = [&os](const char* name, const std::string& value) {
        os << name << ':';
        if (!value.empty()) os << ' ' << value;
        os << '\n';
    };
    header("alphabet", g.alphabet().to_string());
    header("controllable", controllable.to_string());
    header("states", std::to_string(g.state_count()));
    header("initial", std::to_string(g.is_empty_language() ? -1 : g.initial()));
    os << "trans:\n";
    for (const auto& t : g.transitions())
        os << t.src << ' ' << t.event.name() << ' ' << t.dst << '\n';
    return os.str();
}

ParsedAutomaton read_automaton_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open automaton file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_automaton(buffer.str());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_automaton_file(const std::filesystem::path& path, const Generator& g,
                          const Alphabet& controllable) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write automaton file: " + path.string());
    out << write_automaton(g, controllable);
}

namespace {

std::vector<std::vector<int>> parse_groups(const std::string& raw,
                                           std::size_t line_no) {
    // "1,2;3,4" with 1-based agent indices.
    std::vector<std::vector<int>> out;
    std::istringstream groups_in(raw);
    std::string group_raw;
    while (std::getline(groups_in, group_raw, ';')) {
        std::vector<int> group;
        std::istringstream members(group_raw);
        std::string member;
        while (std::getline(members, member, ',')) {
            auto tokens = split_ws(member);
            if (tokens.size() != 1) parse_fail(line_no, "malformed groups list");
            try {
                group.push_back(std::stoi(tokens[0]) - 1);
            } catch (const std::exception&) {
                parse_fail(line_no, "malformed agent index '" + tokens[0] + "'");
            }
        }
        if (group.empty()) parse_fail(line_no, "empty group");
        std::sort(group.begin(), group.end());
        out.push_back(std::move(group));
    }
    if (out.empty()) parse_fail(line_no, "empty groups list");
    return out;
}

}  // namespace

DecentralizedProblem parse_problem(const std::string& text,
                                   const std::filesystem::path& base_dir) {
    LineReader reader(text);
    DecentralizedProblem problem;
    std::optional<std::filesystem::path> plant_path, spec_path;
    std::map<int, Alphabet> coord;  // 1-based group index in the file

    std::string line;
    std::size_t line_no = 0;
    bool in_agent = false;
    std::optional<Alphabet> agent_obs, agent_ctrl;
    auto close_agent = [&] {
        if (!in_agent) return;
        if (!agent_obs) throw InputError("agent block without an obs: line");
        problem.agents.push_back(
            AgentAlphabet{*agent_obs, agent_ctrl.value_or(Alphabet{})});
        agent_obs.reset();
        agent_ctrl.reset();
        in_agent = false;
    };

    while (reader.next(line, line_no)) {
        std::string header, rest;
        if (!header_of(line, header, rest)) parse_fail(line_no, "expected 'key: value'");
        if (header == "plant") {
            close_agent();
            plant_path = base_dir / split_ws(rest).at(0);
        } else if (header == "spec") {
            close_agent();
            spec_path = base_dir / split_ws(rest).at(0);
        } else if (header == "agent") {
            close_agent();
            in_agent = true;
        } else if (header == "obs") {
            if (!in_agent) parse_fail(line_no, "obs: outside an agent block");
            agent_obs = Alphabet::of(split_ws(rest));
        } else if (header == "ctrl") {
            if (!in_agent) parse_fail(line_no, "ctrl: outside an agent block");
            agent_ctrl = Alphabet::of(split_ws(rest));
        } else if (header == "groups") {
            close_agent();
            problem.groups = parse_groups(rest, line_no);
        } else if (header == "coord") {
            close_agent();
            // "coord: <group>: e1 e2 ..."
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                parse_fail(line_no, "expected 'coord: <group>: events'");
            auto index_tokens = split_ws(rest.substr(0, colon));
            if (index_tokens.size() != 1)
                parse_fail(line_no, "expected 'coord: <group>: events'");
            int group_index = 0;
            try {
                group_index = std::stoi(index_tokens[0]);
            } catch (const std::exception&) {
                parse_fail(line_no, "malformed group index '" + index_tokens[0] + "'");
            }
            coord[group_index] = Alphabet::of(split_ws(rest.substr(colon + 1)));
        } else if (header == "highcoord") {
            close_agent();
            problem.high_level_alphabet = Alphabet::of(split_ws(rest));
        } else {
            parse_fail(line_no, "unknown section '" + header + ":'");
        }
    }
    close_agent();

    if (!plant_path) throw InputError("problem file missing a plant: line");
    if (!spec_path) throw InputError("problem file missing a spec: line");
    if (problem.agents.empty()) throw InputError("problem file declares no agents");
    problem.plant = read_automaton_file(*plant_path).generator;
    problem.spec = read_automaton_file(*spec_path).generator;

    for (const auto& a : problem.agents) {
        if (!a.observable.subset_of(problem.plant.alphabet()))
            throw InputError("agent observation alphabet not inside the plant's");
        if (!a.controllable.subset_of(problem.plant.alphabet()))
            throw InputError("agent control alphabet not inside the plant's");
    }
    if (problem.groups) {
        std::vector<int> all;
        for (const auto& g : *problem.groups) all.insert(all.end(), g.begin(), g.end());
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < problem.agents.size(); ++i)
            if (i >= all.size() || all[i] != static_cast<int>(i))
                throw InputError("groups: must partition the agent indices");
        if (all.size() != problem.agents.size())
            throw InputError("groups: must partition the agent indices");
    }
    if (!coord.empty()) {
        if (!problem.groups)
            throw InputError("coord: lines require a groups: line");
        std::vector<Alphabet> alphabets(problem.groups->size());
        for (const auto& [index, alphabet] : coord) {
            if (index < 1 || static_cast<std::size_t>(index) > alphabets.size())
                throw InputError("coord: group index " + std::to_string(index) +
                                 " out of range");
            alphabets[index - 1] = alphabet;
        }
        problem.coordinator_alphabets = std::move(alphabets);
    }
    return problem;
}

DecentralizedProblem read_problem_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open problem file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_problem(buffer.str(), path.parent_path());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void Report::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
}

void Report::set(const std::string& key, bool value) {
    entries_[key] = value ? "true" : "false";
}

void Report::set(const std::string& key, long long value) {
    entries_[key] = std::to_string(value);
}

std::string Report::get(const std::string& key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw InputError("report has no key '" + key + "'");
    return it->second;
}

std::string Report::serialize() const {
    std::ostringstream os;
    for (const auto& [key, value] : entries_) os << key << '=' << value << '\n';
    return os.str();
}

Report Report::parse(const std::string& text) {
    Report out;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            parse_fail(line_no, "expected 'key=value' in report");
        out.entries_[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return out;
}

void report_counterexample(Report& report, const std::string& prefix,
                           const Counterexample& cex) {
    report.set(prefix + ".kind", std::string(to_string(cex.kind)));
    report.set(prefix + ".word", to_string(cex.word));
    if (cex.event) report.set(prefix + ".event", cex.event->name());
    if (cex.agent) report.set(prefix + ".agent", std::to_string(*cex.agent + 1));
    for (const auto& [agent, word] : cex.lookalikes)
        report.set(prefix + ".lookalike." + std::to_string(agent + 1), to_string(word));
}

void emit_report(const Report& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write report file: " + path.string());
    out << report.serialize();
}

}  // namespace descoord
