#include "descoord/event.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace descoord {

namespace {

bool valid_event_name(const std::string& name) {
    if (name.empty()) return false;
    return std::all_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_';
    });
}

}  // namespace

Event::Event(std::string name) : name_(std::move(name)) {
    if (!valid_event_name(name_))
        throw InputError("invalid event name '" + name_ +
                         "' (expected letters, digits, underscore)");
}

Alphabet Alphabet::of(const std::vector<std::string>& names) {
    std::set<Event> events;
    for (const auto& n : names) events.insert(Event(n));
    return Alphabet(std::move(events));
}

bool Alphabet::subset_of(const Alphabet& other) const {
    return std::includes(other.events_.begin(), other.events_.end(),
                         events_.begin(), events_.end());
}

Alphabet Alphabet::unite(const Alphabet& other) const {
    std::set<Event> out = events_;
    out.insert(other.events_.begin(), other.events_.end());
    return Alphabet(std::move(out));
}

Alphabet Alphabet::intersect(const Alphabet& other) const {
    std::set<Event> out;
    std::set_intersection(events_.begin(), events_.end(), other.events_.begin(),
                          other.events_.end(), std::inserter(out, out.begin()));
    return Alphabet(std::move(out));
}

Alphabet Alphabet::subtract(const Alphabet& other) const {
    std::set<Event> out;
    std::set_difference(events_.begin(), events_.end(), other.events_.begin(),
                        other.events_.end(), std::inserter(out, out.begin()));
    return Alphabet(std::move(out));
}

std::string Alphabet::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& e : events_) {
        if (!first) os << ' ';
        os << e.name();
        first = false;
    }
    return os.str();
}

bool word_less(const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const Word& w) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0) os << ' ';
        os << w[i].name();
    }
    return os.str();
}

Word project_word(const Word& w, const Alphabet& onto) {
    Word out;
    for (const auto& e : w)
        if (onto.contains(e)) out.push_back(e);
    return out;
}

}  // namespace descoord
