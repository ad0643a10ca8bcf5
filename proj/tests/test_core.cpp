#include <doctest.h>

#include <sstream>

#include "support/oracles.hpp"
#include "support/random_instances.hpp"

using namespace descoord;
using namespace descoord::testing;

namespace {

Generator gen_from(const std::vector<std::string>& alphabet,
                   const std::vector<std::string>& words) {
    std::vector<Word> ws;
    for (const auto& raw : words) {
        Word w;
        std::istringstream is(raw);
        std::string tok;
        while (is >> tok) w.push_back(Event(tok));
        ws.push_back(std::move(w));
    }
    return Generator::from_words(Alphabet::of(alphabet), ws);
}

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

TEST_CASE("event names are validated") {
    CHECK_NOTHROW(Event("a1_b"));
    CHECK_THROWS_AS(Event(""), InputError);
    CHECK_THROWS_AS(Event("a b"), InputError);
    CHECK_THROWS_AS(Event("x,y"), InputError);
}

TEST_CASE("alphabet set operations") {
    Alphabet ab = Alphabet::of({"a", "b"});
    Alphabet bc = Alphabet::of({"b", "c"});
    CHECK(ab.unite(bc) == Alphabet::of({"a", "b", "c"}));
    CHECK(ab.intersect(bc) == Alphabet::of({"b"}));
    CHECK(ab.subtract(bc) == Alphabet::of({"a"}));
    CHECK(Alphabet::of({"b"}).subset_of(ab));
    CHECK_FALSE(ab.subset_of(bc));
    CHECK(ab.to_string() == "a b");
}

TEST_CASE("generator construction validates determinism and ranges") {
    Alphabet a = Alphabet::of({"a"});
    CHECK_THROWS_AS(Generator(a, 1, 0,
                              {{0, Event("a"), 0}, {0, Event("a"), 0}}),
                    InputError);
    CHECK_THROWS_AS(Generator(a, 1, 2, {}), InputError);
    CHECK_THROWS_AS(Generator(a, 1, 0, {{0, Event("z"), 0}}), InputError);
    CHECK_THROWS_AS(Generator(a, 0, 0, {}), InputError);
}

TEST_CASE("sync_product on the worked two-part example") {
    // Shared c forces a before c before b.
    Generator g1 = gen_from({"a", "c"}, {"a c"});
    Generator g2 = gen_from({"c", "b"}, {"c b"});
    Generator p = sync_product(g1, g2);
    CHECK(word_strings(enumerate_bounded(p, 4)) ==
          std::vector<std::string>{"", "a", "a c", "a c b"});

    // Against the brute-force composition oracle.
    const Generator parts[] = {g1, g2};
    CHECK(to_set(enumerate_bounded(p, 4)) ==
          product_words_oracle(std::span<const Generator>(parts, 2), 4));
}

TEST_CASE("sync_product is idempotent and absorbs the universal generator") {
    Generator g = gen_from({"a", "b"}, {"a b", "b"});
    CHECK(language_equal(sync_product(g, g), g));
    Generator universal = Generator::universal(Alphabet::of({"a"}));
    CHECK(language_equal(sync_product(g, universal), g));
}

TEST_CASE("sync_product rejects an empty part list and respects empty parts") {
    std::vector<Generator> none;
    CHECK_THROWS_AS(sync_product(none), InputError);
    Generator g = gen_from({"a"}, {"a"});
    Generator empty = Generator::empty_language(Alphabet::of({"b"}));
    CHECK(sync_product(g, empty).is_empty_language());
}

TEST_CASE("product soundness on random generators") {
    Rng rng(20240811);
    for (int round = 0; round < 120; ++round) {
        Alphabet alphabet = small_alphabet(3 + static_cast<int>(rng() % 2));
        Generator g1 = random_generator(rng, random_subalphabet(rng, alphabet, 0.7, 1), 4);
        Generator g2 = random_generator(rng, random_subalphabet(rng, alphabet, 0.7, 1), 4);
        const Generator parts[] = {g1, g2};
        auto span = std::span<const Generator>(parts, 2);
        CHECK(to_set(enumerate_bounded(sync_product(span), 4)) ==
              product_words_oracle(span, 4));
    }
}

TEST_CASE("project removes silent events") {
    Generator g = gen_from({"a", "b", "u"}, {"u a b"});
    Generator p = project(g, Alphabet::of({"a", "b"}));
    CHECK(word_strings(enumerate_bounded(p, 3)) ==
          std::vector<std::string>{"", "a", "a b"});
}

TEST_CASE("projection onto the full alphabet and onto nothing") {
    Generator g = gen_from({"a", "b"}, {"a b", "b a"});
    CHECK(language_equal(project(g, g.alphabet()), g));
    Generator none = project(g, Alphabet{});
    CHECK(word_strings(enumerate_bounded(none, 2)) == std::vector<std::string>{""});
}

TEST_CASE("projection agrees with the word-level oracle on random generators") {
    Rng rng(77001);
    for (int round = 0; round < 120; ++round) {
        Alphabet alphabet = small_alphabet(4);
        Generator g = random_generator(rng, alphabet, 5);
        Alphabet onto = random_subalphabet(rng, alphabet, 0.5);
        Generator p = project(g, onto);
        // Membership in the image is an exact reachability query; the
        // enumerated image catches missing words.
        WordSet image = project_words_oracle(g, onto, 6);
        for (const auto& w : enumerate_bounded(p, 4))
            CHECK(realizable_continuation(g, {}, onto, w));
        for (const auto& w : image)
            if (w.size() <= 4) CHECK(p.accepts(w));
    }
}

TEST_CASE("projection minimization flag preserves the language") {
    Rng rng(3555);
    Alphabet alphabet = small_alphabet(3);
    for (int round = 0; round < 40; ++round) {
        Generator g = random_generator(rng, alphabet, 6);
        Alphabet onto = random_subalphabet(rng, alphabet, 0.6);
        Generator plain = project(g, onto);
        Generator minimized = project(g, onto, {.minimize = true});
        CHECK(language_equal(plain, minimized));
        CHECK(minimized.state_count() <= plain.state_count());
    }
}

TEST_CASE("inverse projection self-loops the new events") {
    Generator g = gen_from({"a"}, {"a"});
    Generator lifted = inverse_project(g, Alphabet::of({"a", "u"}));
    CHECK(to_set(enumerate_bounded(lifted, 3)) ==
          inverse_project_words_oracle(g, Alphabet::of({"a", "u"}), 3));
    CHECK(lifted.accepts(word("u u a")));
    CHECK(lifted.accepts(word("u a u")));
    CHECK_FALSE(lifted.accepts(word("a a")));

    CHECK(language_equal(inverse_project(g, g.alphabet()), g));
    Generator eps = Generator::epsilon_language({});
    Generator all_u = inverse_project(eps, Alphabet::of({"u"}));
    CHECK(all_u.accepts(word("u u u")));
}

TEST_CASE("inverse projection requires a covering ambient alphabet") {
    Generator g = gen_from({"a", "b"}, {"a b"});
    CHECK_THROWS_AS(inverse_project(g, Alphabet::of({"a"})), InputError);
}

TEST_CASE("project after inverse_project is the identity on languages") {
    Rng rng(98);
    for (int round = 0; round < 60; ++round) {
        Alphabet alphabet = small_alphabet(3);
        Generator g = random_generator(rng, alphabet, 5);
        Alphabet ambient = alphabet.unite(Alphabet::of({"x", "y"}));
        CHECK(language_equal(project(inverse_project(g, ambient), g.alphabet()), g));
    }
}

TEST_CASE("language_includes verdicts and witnesses") {
    Generator ab = gen_from({"a", "b"}, {"a b"});
    Generator a = gen_from({"a", "b"}, {"a"});
    CHECK(language_includes(ab, a, IncludesMode::Subset).holds);
    auto failed = language_includes(a, ab, IncludesMode::Subset);
    CHECK_FALSE(failed.holds);
    CHECK(to_string(*failed.witness) == "a b");

    Generator g1 = gen_from({"a", "b"}, {"a b", "b a"});
    Generator g2 = gen_from({"a", "b"}, {"b a", "a b"});
    CHECK(language_includes(g1, g2, IncludesMode::Equal).holds);
}

TEST_CASE("language_includes treats unknown events as rejecting") {
    Generator over_ab = gen_from({"a", "b"}, {"a b"});
    Generator over_abc = gen_from({"a", "b", "c"}, {"a b", "c"});
    auto r = language_includes(over_ab, over_abc, IncludesMode::Subset);
    CHECK_FALSE(r.holds);
    CHECK(to_string(*r.witness) == "c");
}

TEST_CASE("language_includes witness is shortest and name-least") {
    Generator none = Generator::epsilon_language(Alphabet::of({"a", "b"}));
    Generator both = gen_from({"a", "b"}, {"a", "b"});
    auto r = language_includes(none, both, IncludesMode::Subset);
    REQUIRE_FALSE(r.holds);
    CHECK(to_string(*r.witness) == "a");

    Generator empty = Generator::empty_language(Alphabet::of({"a"}));
    auto eps = language_includes(empty, none, IncludesMode::Subset);
    REQUIRE_FALSE(eps.holds);
    CHECK(eps.witness->empty());
    CHECK(language_includes(none, empty, IncludesMode::Subset).holds);
}

TEST_CASE("enumerate_bounded output is (length, lex) ordered and exact") {
    Generator g = gen_from({"a", "b"}, {"a b"});
    CHECK(word_strings(enumerate_bounded(g, 1)) == std::vector<std::string>{"", "a"});
    CHECK(word_strings(enumerate_bounded(g, 5)) ==
          std::vector<std::string>{"", "a", "a b"});
    Generator u_star = Generator::universal(Alphabet::of({"u"}));
    CHECK(word_strings(enumerate_bounded(u_star, 2)) ==
          std::vector<std::string>{"", "u", "u u"});
    CHECK(enumerate_bounded(Generator::empty_language({}), 3).empty());
}

TEST_CASE("trim drops unreachable states and keeps the language") {
    Alphabet a = Alphabet::of({"a"});
    Generator with_garbage(a, 3, 0, {{0, Event("a"), 0}, {2, Event("a"), 1}});
    Generator trimmed = trim(with_garbage);
    CHECK(trimmed.state_count() == 1);
    CHECK(language_equal(trimmed, with_garbage));

    Generator already = gen_from({"a"}, {"a"});
    Generator again = trim(already);
    CHECK(again.state_count() == already.state_count());
    CHECK(again.transitions().size() == already.transitions().size());

    Generator lonely(a, 1, 0, {});
    CHECK(trim(lonely).state_count() == 1);
}

TEST_CASE("composing projections onto nested alphabets changes nothing") {
    // P1(L) || P2(L) = P1(L) whenever B2 is inside B1.
    Rng rng(510);
    for (int round = 0; round < 100; ++round) {
        Alphabet alphabet = small_alphabet(4);
        Generator g = random_generator(rng, alphabet, 5);
        Alphabet b1 = random_subalphabet(rng, alphabet, 0.7);
        Alphabet b2 = random_subalphabet(rng, b1, 0.6);
        CHECK(language_equal(sync_product(project(g, b1), project(g, b2)),
                             project(g, b1)));
    }
}

TEST_CASE("projection distributes over products when the target covers sharing") {
    // Pk(L1 || L2) = Pk(L1) || Pk(L2) when all shared events are in Ak.
    Rng rng(511);
    for (int round = 0; round < 100; ++round) {
        Alphabet shared = Alphabet::of({"s", "t"});
        Alphabet a1 = shared.unite(Alphabet::of({"x"}));
        Alphabet a2 = shared.unite(Alphabet::of({"y"}));
        Generator g1 = random_generator(rng, a1, 4);
        Generator g2 = random_generator(rng, a2, 4);
        Alphabet ak = shared.unite(random_subalphabet(rng, Alphabet::of({"x", "y"}), 0.4));
        Generator lhs = project(sync_product(g1, g2), ak);
        Generator rhs = sync_product(project(g1, ak.intersect(a1)),
                                     project(g2, ak.intersect(a2)));
        CHECK(language_equal(lhs, rhs));
    }
}

TEST_CASE("operation outputs are canonical: trim is a fixpoint") {
    Rng rng(8080);
    for (int round = 0; round < 50; ++round) {
        Alphabet alphabet = small_alphabet(3);
        Generator g = random_generator(rng, alphabet, 5);
        Generator p = project(g, random_subalphabet(rng, alphabet, 0.5));
        Generator t = trim(p);
        CHECK(t.state_count() == p.state_count());
        auto a = t.transitions();
        auto b = p.transitions();
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].src == b[i].src);
            CHECK(a[i].dst == b[i].dst);
            CHECK(a[i].event == b[i].event);
        }
    }
}
