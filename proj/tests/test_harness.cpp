#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "helpers.hpp"
#include "rpda/harness.hpp"
#include "rpda/membership.hpp"
#include "rpda/reduction.hpp"

using namespace rpda;
using namespace rpda::harness;
using rpda::testing::val;
using rpda::testing::word;

namespace {

const Rpda kA1 = example_a1();
const Word kRoundTrip = word("a:d0 b:d1 b:d2 b:d2 b:d1 a:d0");

Rpda no_rules() {
    Rpda a;
    a.registers = 1;
    a.states = {"q0"};
    a.initial = "q0";
    return a;
}

}  // namespace

// ===========================================================================
// The worked example and its closed-form language
// ===========================================================================

TEST_CASE("the palindrome example is well-formed and general", "[harness]") {
    CHECK(validate(kA1).empty());
    CHECK(classify(kA1) == SubclassLabel::General);
    CHECK(kA1.registers == 2);
    CHECK(kA1.rules.size() == 5);
}

TEST_CASE("the closed-form predicate captures the intended words", "[harness]") {
    CHECK(a1_language_predicate(kRoundTrip));
    CHECK(a1_language_predicate(word("a:d0 a:d0")));
    CHECK(a1_language_predicate(word("a:_ a:_")));
    CHECK(a1_language_predicate(word("a:_ b:d1 b:d1 a:_")));
    CHECK(a1_language_predicate(word("a:d0 b:d1 b:d1 b:d1 b:d1 a:d0")));  // inner repeats allowed

    CHECK_FALSE(a1_language_predicate({}));
    CHECK_FALSE(a1_language_predicate(word("a:d0")));
    CHECK_FALSE(a1_language_predicate(word("a:d0 a:d1")));                // outer values differ
    CHECK_FALSE(a1_language_predicate(word("a:d0 b:d1 a:d0")));           // odd length
    CHECK_FALSE(a1_language_predicate(word("a:d0 b:d0 b:d0 a:d0")));      // inner equals outer
    CHECK_FALSE(a1_language_predicate(word("a:d0 b:d1 b:d2 a:d0")));      // mirror mismatch
    CHECK_FALSE(a1_language_predicate(word("b:d0 b:d1 b:d1 b:d0")));      // wrong bracket symbol
    CHECK_FALSE(a1_language_predicate(word("a:d0 a:d1 a:d1 a:d0")));      // wrong inner symbol
}

TEST_CASE("the deciders agree with the closed-form predicate on short words", "[harness]") {
    for (const Word& w :
         rpda::testing::all_words({"a", "b"}, {DataValue::bottom(), val("d0"), val("d1")}, 4)) {
        bool predicted = a1_language_predicate(w);
        bool decided = membership::member_general(kA1, w).outcome ==
                       membership::Membership::Accepted;
        INFO("word: " << io::print_word(w));
        CHECK(predicted == decided);
    }
}

// ===========================================================================
// Run enumeration
// ===========================================================================

TEST_CASE("the six-letter round trip word has exactly one accepting run", "[harness]") {
    std::vector<Trace> runs = enumerate_accepting_runs(kA1, kRoundTrip, 7, 4);
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].size() == 7);

    // The run replays, accepts, and rises to height 4 in the middle.
    std::optional<Configuration> last = membership::replay_run(kA1, kRoundTrip, runs[0]);
    REQUIRE(last);
    CHECK(is_accepting(*last));
    std::size_t peak = 0;
    for (const TraceStep& step : runs[0]) peak = std::max(peak, step.after.stack.size());
    CHECK(peak == 4);

    // Raising the bounds discovers nothing new; lowering either bound
    // hides the run.
    CHECK(enumerate_accepting_runs(kA1, kRoundTrip, 12, 9).size() == 1);
    CHECK(enumerate_accepting_runs(kA1, kRoundTrip, 6, 4).empty());
    CHECK(enumerate_accepting_runs(kA1, kRoundTrip, 7, 3).empty());
}

TEST_CASE("enumeration is exhaustive for the bounded decider", "[harness]") {
    for (const Word& w : rpda::testing::all_words({"a", "b"}, {DataValue::bottom(), val("d0")}, 3)) {
        bool accepted = membership::member_general(kA1, w).outcome ==
                        membership::Membership::Accepted;
        bool has_run = !enumerate_accepting_runs(kA1, w, 2 * w.size() + 1, w.size() + 2).empty();
        INFO("word: " << io::print_word(w));
        CHECK(accepted == has_run);
    }
}

TEST_CASE("runs differing only in the fresh value collapse to one", "[harness]") {
    // An epsilon rule loads an arbitrary value, pushes it twice, and two
    // pops drain the stack: on the empty word the loaded value is either
    // bottom or an arbitrary fresh value, and each gives one distinct run.
    Rpda a;
    a.registers = 1;
    a.states = {"q0", "q1", "q2", "q3"};
    a.initial = "q0";
    a.rules = {
        {"q0", std::nullopt, Guard::tt(), 1, Push{1, 1}, "q1"},
        {"q1", std::nullopt, Guard::tt(), std::nullopt, Pop{}, "q2"},
        {"q2", std::nullopt, Guard::tt(), std::nullopt, Pop{}, "q3"},
    };
    REQUIRE(validate(a).empty());
    std::vector<Trace> runs = enumerate_accepting_runs(a, {}, 5, 3);
    CHECK(runs.size() == 2);  // loaded bottom, loaded fresh; renamings collapse
    for (const Trace& run : runs) {
        std::optional<Configuration> last = membership::replay_run(a, {}, run);
        REQUIRE(last);
        CHECK(is_accepting(*last));
    }
}

TEST_CASE("accepting configurations terminate their runs", "[harness]") {
    // No enumerated run passes through an accepting configuration midway:
    // an empty stack admits no further step.
    std::vector<Trace> runs = enumerate_accepting_runs(kA1, kRoundTrip, 12, 9);
    for (const Trace& run : runs)
        for (std::size_t i = 0; i + 1 < run.size(); ++i)
            CHECK_FALSE(is_accepting(run[i].after));
}

// ===========================================================================
// Witness search
// ===========================================================================

TEST_CASE("witness search finds the shortest palindrome", "[harness]") {
    std::optional<Word> w = witness_search(kA1, 2);
    REQUIRE(w);
    CHECK(w->size() == 2);
    CHECK(a1_language_predicate(*w));
    CHECK(membership::member_general(kA1, *w).outcome == membership::Membership::Accepted);

    CHECK_FALSE(witness_search(kA1, 1).has_value());
    CHECK_FALSE(witness_search(kA1, 0).has_value());
}

TEST_CASE("witness search respects the length bound but may find shorter words", "[harness]") {
    std::optional<Word> w = witness_search(kA1, 6);
    REQUIRE(w);
    CHECK(w->size() <= 6);
    CHECK(membership::member_general(kA1, *w).outcome == membership::Membership::Accepted);
}

TEST_CASE("witness search reports absence for empty languages", "[harness]") {
    CHECK_FALSE(witness_search(no_rules(), 5).has_value());

    // A guard that can never hold: the register stays bottom, the input
    // must both equal and differ from it.
    Rpda a = no_rules();
    a.alphabet = {"a"};
    a.rules = {{"q0", "a", Guard::conj(Guard::reg_eq(1), Guard::reg_ne(1)), std::nullopt, Pop{},
                "q0"}};
    CHECK_FALSE(witness_search(a, 5).has_value());
}

TEST_CASE("witness search covers generated automata", "[harness]") {
    // The satisfiable formula automaton accepts its target word, but also
    // the all-bottom word of the same length (no clause register was ever
    // loaded, so every clause guard compares bottom to bottom).
    reduction::CnfFormula phi;
    phi.num_vars = 1;
    phi.clauses = {{reduction::Literal{1, false}, {1, false}, {1, false}}};
    reduction::ReductionReport report = reduction::cnf_to_rpda(phi);
    std::optional<Word> w = witness_search(report.generated, report.target_word.size());
    REQUIRE(w);
    CHECK(w->size() == report.target_word.size());
    CHECK(membership::member_growing(report.generated, *w).outcome ==
          membership::Membership::Accepted);
}

TEST_CASE("witness search is budget-bounded on pathological automata", "[harness]") {
    // An epsilon loop that only pushes: without the stack budget the
    // search space is infinite, with it the search answers absence.
    Rpda a = no_rules();
    a.rules = {{"q0", std::nullopt, Guard::tt(), std::nullopt, Push{1, 1}, "q0"}};
    membership::SearchBudget budget;
    budget.max_stack_height = 8;
    CHECK_FALSE(witness_search(a, 3, budget).has_value());
    CHECK_FALSE(witness_search(a, 3).has_value());  // default budget bounds it too
}

TEST_CASE("found witnesses replay on the original semantics", "[harness]") {
    for (std::size_t len : {2u, 4u}) {
        std::optional<Word> w = witness_search(kA1, len);
        REQUIRE(w);
        std::optional<Trace> run = membership::accepting_run(kA1, *w);
        REQUIRE(run);
        std::optional<Configuration> last = membership::replay_run(kA1, *w, *run);
        REQUIRE(last);
        CHECK(is_accepting(*last));
    }
}
