#pragma once

#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace descoord {

/// Error thrown on malformed inputs (bad alphabets, parse errors, violated
/// preconditions). The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// A named event. Names are nonempty identifiers ([A-Za-z0-9_]+);
/// comparison and identity are by name.
class Event {
public:
    explicit Event(std::string name);

    const std::string& name() const { return name_; }

    bool operator==(const Event& other) const { return name_ == other.name_; }
    bool operator!=(const Event& other) const { return name_ != other.name_; }
    bool operator<(const Event& other) const { return name_ < other.name_; }
    bool operator>(const Event& other) const { return name_ > other.name_; }

private:
    std::string name_;
};

/// A finite set of events with set semantics. Iteration is in
/// lexicographic name order, which every deterministic tie-break in the
/// library relies on.
class Alphabet {
public:
    Alphabet() = default;
    Alphabet(std::initializer_list<Event> events) : events_(events) {}
    explicit Alphabet(std::set<Event> events) : events_(std::move(events)) {}

    /// Builds an alphabet from event names.
    static Alphabet of(const std::vector<std::string>& names);

    bool contains(const Event& e) const { return events_.count(e) > 0; }
    bool empty() const { return events_.empty(); }
    std::size_t size() const { return events_.size(); }

    void insert(const Event& e) { events_.insert(e); }

    bool subset_of(const Alphabet& other) const;

    Alphabet unite(const Alphabet& other) const;
    Alphabet intersect(const Alphabet& other) const;
    Alphabet subtract(const Alphabet& other) const;

    bool operator==(const Alphabet& other) const { return events_ == other.events_; }
    bool operator!=(const Alphabet& other) const { return events_ != other.events_; }

    auto begin() const { return events_.begin(); }
    auto end() const { return events_.end(); }

    std::string to_string() const;

private:
    std::set<Event> events_;
};

/// A word is a finite event sequence; the empty word is epsilon.
using Word = std::vector<Event>;

/// Length-then-lexicographic order on words; the canonical order for
/// enumeration output and shortest-counterexample tie-breaks.
bool word_less(const Word& a, const Word& b);

/// Space-separated event names; empty word prints as "" (empty string).
std::string to_string(const Word& w);

/// Erases events outside `onto` (the natural projection on words).
Word project_word(const Word& w, const Alphabet& onto);

}  // namespace descoord
