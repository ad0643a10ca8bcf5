#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "descoord/decentralized.hpp"

namespace descoord {

/// A parsed automaton file: the generator plus the optional controllable
/// set the file declares.
struct ParsedAutomaton {
    Generator generator;
    Alphabet controllable;

    ParsedAutomaton() : generator(Generator::empty_language({})) {}
};

/// Automaton text format, fixed header order, LF line endings:
///
///   alphabet: a b c
///   controllable: a
///   states: 3
///   initial: 0
///   trans:
///   0 a 1
///   1 b 2
///
/// Transitions are written sorted by (src, event name). The empty
/// language is states: 0 with initial: -1. Duplicate (src, event) lines,
/// undeclared events and out-of-range ids are line-numbered errors.
ParsedAutomaton parse_automaton(const std::string& text);
std::string write_automaton(const Generator& g, const Alphabet& controllable = {});

ParsedAutomaton read_automaton_file(const std::filesystem::path& path);
void write_automaton_file(const std::filesystem::path& path, const Generator& g,
                          const Alphabet& controllable = {});

/// Problem description: plant and spec automaton paths (relative to the
/// problem file), agent blocks, optional grouping and coordinator
/// alphabets:
///
///   plant: L.aut
///   spec: K.aut
///   agent:
///   obs: a b u1 u
///   ctrl: a
///   agent:
///   ...
///   groups: 1,2;3,4
///   coord: 2: v1 b2 v b
///   highcoord: b
DecentralizedProblem parse_problem(const std::string& text,
                                   const std::filesystem::path& base_dir);
DecentralizedProblem read_problem_file(const std::filesystem::path& path);

/// Flat key=value document with deterministically sorted keys. Witness
/// words are space-separated event names. Keys under "timing." carry
/// wall-clock measurements and are excluded from golden comparisons.
class Report {
public:
    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, bool value);
    void set(const std::string& key, long long value);

    bool contains(const std::string& key) const { return entries_.count(key) > 0; }
    std::string get(const std::string& key) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

    std::string serialize() const;
    static Report parse(const std::string& text);

private:
    std::map<std::string, std::string> entries_;
};

/// Fills the witness.* keys of a report from a counterexample.
void report_counterexample(Report& report, const std::string& prefix,
                           const Counterexample& cex);

void emit_report(const Report& report, const std::filesystem::path& path);

}  // namespace descoord
