#include <catch2/catch_amalgamated.hpp>

#include <optional>
#include <vector>

#include "helpers.hpp"
#include "rpda/core.hpp"
#include "rpda/harness.hpp"

using namespace rpda;
using rpda::testing::val;
using rpda::testing::word;

namespace {

// The running palindrome example and its round-trip word
//   (a,d0) (b,d1) (b,d2) (b,d2) (b,d1) (a,d0).
const Rpda kA1 = harness::example_a1();
const Word kRoundTrip = word("a:d0 b:d1 b:d2 b:d2 b:d1 a:d0");

std::vector<DataValue> candidates(const Configuration& c, const Word& w) {
    return membership::candidate_values(c, w);
}

}  // namespace

// ===========================================================================
// Data values and register assignments
// ===========================================================================

TEST_CASE("data values compare by name with bottom distinct", "[core]") {
    CHECK(DataValue::bottom().is_bottom());
    CHECK(DataValue::bottom() == DataValue());
    CHECK(val("d0") == DataValue::named("d0"));
    CHECK_FALSE(val("d0") == val("d1"));
    CHECK_FALSE(val("d0") == DataValue::bottom());
    CHECK_THROWS_AS(DataValue::named(""), std::invalid_argument);
}

TEST_CASE("register assignments are 1-based and bounds-checked", "[core]") {
    RegisterAssignment regs = RegisterAssignment::bottoms(2);
    CHECK(regs.size() == 2);
    CHECK(regs.get(1).is_bottom());
    CHECK(regs.get(2).is_bottom());
    CHECK_THROWS_AS(regs.get(0), std::out_of_range);
    CHECK_THROWS_AS(regs.get(3), std::out_of_range);
    CHECK_THROWS_AS(RegisterAssignment::bottoms(-1), std::invalid_argument);
}

TEST_CASE("assign is functional: the original assignment is unchanged", "[core]") {
    RegisterAssignment regs = RegisterAssignment::bottoms(2);
    RegisterAssignment updated = assign(regs, 1, val("d0"));
    CHECK(updated.get(1) == val("d0"));
    CHECK(updated.get(2).is_bottom());
    CHECK(regs.get(1).is_bottom());
    CHECK_THROWS_AS(assign(regs, 0, val("d0")), std::out_of_range);
    CHECK_THROWS_AS(assign(regs, 3, val("d0")), std::out_of_range);
}

// ===========================================================================
// Guards
// ===========================================================================

TEST_CASE("base guards evaluate equality against registers and stack top", "[core]") {
    RegisterAssignment regs(std::vector<DataValue>{val("d0"), DataValue::bottom()});
    const DataValue top = val("d1");

    CHECK(eval_guard(Guard::tt(), regs, val("x"), top));
    CHECK(eval_guard(Guard::reg_eq(1), regs, val("d0"), top));
    CHECK_FALSE(eval_guard(Guard::reg_eq(1), regs, val("d1"), top));
    CHECK(eval_guard(Guard::reg_eq(2), regs, DataValue::bottom(), top));
    CHECK(eval_guard(Guard::top_eq(), regs, val("d1"), top));
    CHECK_FALSE(eval_guard(Guard::top_eq(), regs, val("d0"), top));
    CHECK_THROWS_AS(eval_guard(Guard::reg_eq(3), regs, val("d0"), top), std::out_of_range);
}

TEST_CASE("derived guards expand to their definitions", "[core]") {
    // Check the defining equivalences pointwise over a pool of scenarios.
    std::vector<Guard> pool = {Guard::tt(),     Guard::reg_eq(1), Guard::reg_eq(2),
                               Guard::top_eq(), Guard::reg_ne(1), Guard::top_ne()};
    std::vector<DataValue> values = {DataValue::bottom(), val("d0"), val("d1")};
    for (const DataValue& r1 : values)
        for (const DataValue& input : values)
            for (const DataValue& top : values) {
                RegisterAssignment regs(std::vector<DataValue>{r1, val("other")});
                auto holds = [&](const Guard& g) { return eval_guard(g, regs, input, top); };
                for (const Guard& g : pool) {
                    CHECK(holds(Guard::neg(g)) == !holds(g));
                    for (const Guard& h : pool) {
                        CHECK(holds(Guard::disj(g, h)) == (holds(g) || holds(h)));
                        CHECK(holds(Guard::conj(g, h)) == (holds(g) && holds(h)));
                    }
                }
                CHECK_FALSE(holds(Guard::ff()));
                CHECK(holds(Guard::reg_ne(1)) == !holds(Guard::reg_eq(1)));
                CHECK(holds(Guard::top_ne()) == !holds(Guard::top_eq()));
            }
}

TEST_CASE("derived guards are sugar over the five base constructors", "[core]") {
    CHECK(Guard::ff() == Guard::neg(Guard::tt()));
    CHECK(Guard::conj(Guard::tt(), Guard::top_eq()) ==
          Guard::neg(Guard::disj(Guard::neg(Guard::tt()), Guard::neg(Guard::top_eq()))));
    CHECK(Guard::reg_ne(2) == Guard::neg(Guard::reg_eq(2)));
    CHECK_FALSE(Guard::reg_eq(1) == Guard::reg_eq(2));
    CHECK(Guard::ff().kind() == Guard::Kind::Not);
    CHECK(Guard::conj(Guard::tt(), Guard::tt()).kind() == Guard::Kind::Not);
    CHECK_THROWS_AS(Guard::reg_eq(0), std::invalid_argument);
}

// ===========================================================================
// Classification and validation
// ===========================================================================

TEST_CASE("classify returns the tightest subclass label", "[core]") {
    Rpda a;
    a.registers = 1;
    a.states = {"q"};
    a.initial = "q";
    a.alphabet = {"a"};
    a.rules = {{"q", "a", Guard::tt(), std::nullopt, Pop{}, "q"}};
    CHECK(classify(a) == SubclassLabel::EpsilonFree);

    a.rules.push_back({"q", std::nullopt, Guard::tt(), std::nullopt, Push{1, 1}, "q"});
    CHECK(classify(a) == SubclassLabel::Growing);

    a.rules.push_back({"q", std::nullopt, Guard::tt(), std::nullopt, Replace{1}, "q"});
    CHECK(classify(a) == SubclassLabel::NonDecreasing);

    a.rules.push_back({"q", std::nullopt, Guard::tt(), std::nullopt, Pop{}, "q"});
    CHECK(classify(a) == SubclassLabel::General);

    CHECK(classify(kA1) == SubclassLabel::General);  // its epsilon rule pops
    CHECK(at_least(SubclassLabel::EpsilonFree, SubclassLabel::Growing));
    CHECK(at_least(SubclassLabel::Growing, SubclassLabel::NonDecreasing));
    CHECK_FALSE(at_least(SubclassLabel::NonDecreasing, SubclassLabel::Growing));
}

TEST_CASE("validate reports structural defects and passes the example", "[core]") {
    CHECK(validate(kA1).empty());

    Rpda broken = kA1;
    broken.initial = "nowhere";
    broken.rules[0].load = 3;                     // beyond the 2 registers
    broken.rules[1].guard = Guard::reg_eq(7);     // unknown register
    broken.rules[2].to = "ghost";                 // unknown state
    broken.rules[4].label = "c";                  // not in the alphabet
    std::vector<std::string> diags = validate(broken);
    REQUIRE(diags.size() == 5);
    CHECK(diags[0].find("initial state") != std::string::npos);
    CHECK(diags[1].find("load register 3") != std::string::npos);
    CHECK(diags[2].find("guard register 7") != std::string::npos);
    CHECK(diags[3].find("ghost") != std::string::npos);
    CHECK(diags[4].find("label 'c'") != std::string::npos);
}

TEST_CASE("automata compare equal up to state and alphabet order", "[core]") {
    Rpda shuffled = kA1;
    std::swap(shuffled.states[0], shuffled.states[3]);
    std::swap(shuffled.alphabet[0], shuffled.alphabet[1]);
    CHECK(shuffled == kA1);
    shuffled.rules[0].to = "q2";
    CHECK_FALSE(shuffled == kA1);
}

// ===========================================================================
// Small-step semantics
// ===========================================================================

TEST_CASE("the palindrome example runs the six-letter word in seven steps", "[core]") {
    Configuration c = initial_configuration(kA1, kRoundTrip);
    CHECK(c.state == "q0");
    CHECK(c.regs == RegisterAssignment::bottoms(2));
    CHECK(c.stack == Stack{DataValue::bottom()});
    CHECK_FALSE(is_accepting(c));

    // 1: read (a,d0), load register 1, push d0 d0 over the popped bottom.
    std::optional<Configuration> next = apply(kA1, c, 0, val("d0"));
    REQUIRE(next);
    c = *next;
    CHECK(c.state == "q1");
    CHECK(c.regs.get(1) == val("d0"));
    CHECK(c.regs.get(2).is_bottom());
    CHECK(c.stack == Stack{val("d0"), val("d0")});
    CHECK(c.input.size() == 5);

    // 2: read (b,d1) with d1 != register 1, push d1 d1.
    next = apply(kA1, c, 1, val("d1"));
    REQUIRE(next);
    c = *next;
    CHECK(c.regs.get(2) == val("d1"));
    CHECK(c.stack == Stack{val("d1"), val("d1"), val("d0")});

    // 3: read (b,d2), push d2 d2.
    next = apply(kA1, c, 4, val("d2"));
    CHECK_FALSE(next);  // rule 4 starts from q2, we are in q1
    next = apply(kA1, c, 1, val("d2"));
    REQUIRE(next);
    c = *next;
    CHECK(c.stack == Stack{val("d2"), val("d2"), val("d1"), val("d0")});
    CHECK(c.stack.size() == 4);

    // 4: the epsilon pop switches direction without consuming input.
    next = apply(kA1, c, 2, DataValue::bottom());
    REQUIRE(next);
    c = *next;
    CHECK(c.state == "q2");
    CHECK(c.input.size() == 3);
    CHECK(c.stack == Stack{val("d2"), val("d1"), val("d0")});

    // 5..6: read back (b,d2), (b,d1) against the stack.
    next = apply(kA1, c, 3, val("d2"));
    REQUIRE(next);
    c = *next;
    next = apply(kA1, c, 3, val("d1"));
    REQUIRE(next);
    c = *next;
    CHECK(c.stack == Stack{val("d0")});

    // 7: read the final (a,d0) against the stack and drain it.
    next = apply(kA1, c, 4, val("d0"));
    REQUIRE(next);
    c = *next;
    CHECK(c.state == "q3");
    CHECK(is_accepting(c));
}

TEST_CASE("apply refuses mismatched rules", "[core]") {
    Configuration c = initial_configuration(kA1, kRoundTrip);
    CHECK_FALSE(apply(kA1, c, 1, val("d1")));          // wrong source state symbol
    CHECK_FALSE(apply(kA1, c, 0, val("wrong")));       // value differs from the input head
    CHECK_FALSE(apply(kA1, c, 4, val("d0")));          // wrong source state
    CHECK_THROWS_AS(apply(kA1, c, 9, val("d0")), std::out_of_range);

    Configuration empty_stack = c;
    empty_stack.stack.clear();
    CHECK_FALSE(apply(kA1, empty_stack, 0, val("d0")));

    Configuration no_input = c;
    no_input.input.clear();
    CHECK_FALSE(apply(kA1, no_input, 0, val("d0")));   // non-epsilon rules need input
}

TEST_CASE("guards are evaluated before the load takes effect", "[core]") {
    // Rule: guard x1= with load 1.  The guard must see the old register
    // value, not the loaded one (which would make it a tautology).
    Rpda a;
    a.registers = 1;
    a.states = {"p", "q"};
    a.initial = "p";
    a.alphabet = {"a"};
    a.rules = {{"p", "a", Guard::reg_eq(1), 1, Replace{1}, "q"}};
    Word w = word("a:d0");
    Configuration c = initial_configuration(a, w);
    CHECK_FALSE(apply(a, c, 0, val("d0")));  // register still holds bottom

    Word w2 = {Letter{"a", DataValue::bottom()}};
    Configuration c2 = initial_configuration(a, w2);
    std::optional<Configuration> next = apply(a, c2, 0, DataValue::bottom());
    REQUIRE(next);  // bottom equals the initial register value
}

TEST_CASE("the stack effect uses registers after the load", "[core]") {
    Configuration c = initial_configuration(kA1, kRoundTrip);
    std::optional<Configuration> next = apply(kA1, c, 0, val("d0"));
    REQUIRE(next);
    CHECK(next->stack == Stack{val("d0"), val("d0")});  // pushed the freshly loaded d0
}

TEST_CASE("step fans out over rules with deduplicated epsilon choices", "[core]") {
    Configuration c = initial_configuration(kA1, kRoundTrip);
    std::vector<Successor> succs = step(kA1, c, candidates(c, kRoundTrip));
    REQUIRE(succs.size() == 1);
    CHECK(succs[0].rule == 0);
    CHECK(succs[0].value == val("d0"));

    // After two pushes the configuration offers the next push and the
    // epsilon pop; the pop fires once despite many candidate values.
    c = *apply(kA1, c, 0, val("d0"));
    c = *apply(kA1, c, 1, val("d1"));
    succs = step(kA1, c, candidates(c, kRoundTrip));
    REQUIRE(succs.size() == 2);
    CHECK(succs[0].rule == 1);
    CHECK(succs[1].rule == 2);

    Configuration empty_stack = c;
    empty_stack.stack.clear();
    CHECK(step(kA1, empty_stack, candidates(empty_stack, kRoundTrip)).empty());
}

TEST_CASE("step successors respect the one-letter and stack-delta contracts", "[core]") {
    // Walk the whole reachable space on a small word and check, for every
    // successor: input consumption matches the label, the stack changes by
    // the action's delta, and loads land in the named register.
    Word w = word("a:d0 b:d1 b:d1 a:d0");
    std::vector<Configuration> frontier = {initial_configuration(kA1, w)};
    int inspected = 0;
    for (int depth = 0; depth < 9 && !frontier.empty(); ++depth) {
        std::vector<Configuration> next_frontier;
        for (const Configuration& c : frontier) {
            for (const Successor& s : step(kA1, c, candidates(c, w))) {
                ++inspected;
                const TransitionRule& rule = kA1.rules[s.rule];
                if (rule.is_epsilon()) {
                    CHECK(s.next.input == c.input);
                } else {
                    REQUIRE_FALSE(c.input.empty());
                    CHECK(c.input.front().symbol == *rule.label);
                    CHECK(c.input.front().value == s.value);
                    CHECK(s.next.input == Word(c.input.begin() + 1, c.input.end()));
                }
                CHECK(static_cast<int>(s.next.stack.size()) ==
                      static_cast<int>(c.stack.size()) + stack_delta(rule.action));
                if (rule.load) CHECK(s.next.regs.get(*rule.load) == s.value);
                CHECK(eval_guard(rule.guard, c.regs, s.value, c.stack.front()));
                next_frontier.push_back(s.next);
            }
        }
        frontier = std::move(next_frontier);
    }
    CHECK(inspected > 0);
}

TEST_CASE("stack deltas are minus one, zero, plus one", "[core]") {
    CHECK(stack_delta(Pop{}) == -1);
    CHECK(stack_delta(Replace{1}) == 0);
    CHECK(stack_delta(Push{1, 2}) == 1);
}

TEST_CASE("acceptance needs both empty input and empty stack", "[core]") {
    Configuration c{"q", RegisterAssignment::bottoms(1), {}, {DataValue::bottom()}};
    CHECK_FALSE(is_accepting(c));
    c.stack.clear();
    CHECK(is_accepting(c));
    c.input = word("a:d0");
    CHECK_FALSE(is_accepting(c));
}
