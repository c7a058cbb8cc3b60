#pragma once

// Core data model and small-step semantics for register pushdown automata
// (RPDA) over data words.  A k-RPDA reads pairs (symbol, data value), keeps
// k registers and a stack of data values, and can compare values only for
// equality: against a register or against the stack top.
//
// All types are immutable values after construction and every operation is
// a pure function of its inputs, so shared automata can be used from
// multiple threads freely.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace rpda {

/// A data value: either the designated initial value (bottom, written `_`
/// in the textual formats) or a named value from an infinite domain.
/// Only equality of values is observable.
class DataValue {
public:
    DataValue() = default;  // bottom

    static DataValue bottom() { return DataValue{}; }

    static DataValue named(std::string name) {
        if (name.empty())
            throw std::invalid_argument("data value name must be nonempty");
        DataValue v;
        v.name_ = std::move(name);
        return v;
    }

    bool is_bottom() const { return name_.empty(); }

    /// Name of a non-bottom value.
    const std::string& name() const { return name_; }

    friend bool operator==(const DataValue&, const DataValue&) = default;
    friend auto operator<=>(const DataValue&, const DataValue&) = default;

private:
    std::string name_;  // empty encodes bottom
};

/// One position of a data word: a finite-alphabet symbol paired with a value.
struct Letter {
    std::string symbol;
    DataValue value;

    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Stack of data values, top at index 0.
using Stack = std::vector<DataValue>;

/// Assignment of data values to registers 1..k.  Register indices are
/// 1-based throughout, matching the usual notation x_1, ..., x_k.
class RegisterAssignment {
public:
    RegisterAssignment() = default;

    explicit RegisterAssignment(std::vector<DataValue> slots) : slots_(std::move(slots)) {}

    /// The initial assignment: every register holds bottom.
    static RegisterAssignment bottoms(int k) {
        if (k < 0) throw std::invalid_argument("register count must be >= 0");
        return RegisterAssignment(std::vector<DataValue>(static_cast<std::size_t>(k)));
    }

    int size() const { return static_cast<int>(slots_.size()); }

    const DataValue& get(int reg) const {
        check_index(reg);
        return slots_[static_cast<std::size_t>(reg - 1)];
    }

    const std::vector<DataValue>& values() const { return slots_; }

    friend bool operator==(const RegisterAssignment&, const RegisterAssignment&) = default;

    void check_index(int reg) const {
        if (reg < 1 || reg > size())
            throw std::out_of_range("register index " + std::to_string(reg) +
                                    " out of range [1," + std::to_string(size()) + "]");
    }

private:
    std::vector<DataValue> slots_;
};

/// Functional register update: returns a copy of `regs` with register `reg`
/// set to `value` and every other register unchanged.
inline RegisterAssignment assign(const RegisterAssignment& regs, int reg, const DataValue& value) {
    regs.check_index(reg);
    std::vector<DataValue> slots = regs.values();
    slots[static_cast<std::size_t>(reg - 1)] = value;
    return RegisterAssignment(std::move(slots));
}

/// Boolean guard over equality tests.  The base constructors are
///
///     tt | x_i^= (reg_eq) | x_top^= (top_eq) | disjunction | negation
///
/// and the derived forms ff, conjunction, x_i^!=, x_top^!= expand into the
/// base constructors, so pattern matching on guards only ever sees the five
/// kinds below.  Guards are immutable trees with shared subterms; copying
/// is cheap.
class Guard {
public:
    enum class Kind { True, RegEq, TopEq, Or, Not };

    Guard() : Guard(tt()) {}

    static Guard tt() { return Guard(std::make_shared<const Node>(Node{Kind::True, 0, nullptr, nullptr})); }

    static Guard reg_eq(int reg) {
        if (reg < 1) throw std::invalid_argument("register index must be >= 1");
        return Guard(std::make_shared<const Node>(Node{Kind::RegEq, reg, nullptr, nullptr}));
    }

    static Guard top_eq() { return Guard(std::make_shared<const Node>(Node{Kind::TopEq, 0, nullptr, nullptr})); }

    static Guard disj(const Guard& a, const Guard& b) {
        return Guard(std::make_shared<const Node>(Node{Kind::Or, 0, a.node_, b.node_}));
    }

    static Guard neg(const Guard& g) {
        return Guard(std::make_shared<const Node>(Node{Kind::Not, 0, g.node_, nullptr}));
    }

    // derived forms
    static Guard ff() { return neg(tt()); }
    static Guard conj(const Guard& a, const Guard& b) { return neg(disj(neg(a), neg(b))); }
    static Guard reg_ne(int reg) { return neg(reg_eq(reg)); }
    static Guard top_ne() { return neg(top_eq()); }

    Kind kind() const { return node_->kind; }

    /// Register index of a RegEq node.
    int reg() const { return node_->reg; }

    /// Left child of Or, or the single child of Not.
    Guard left() const { return Guard(node_->lhs); }

    /// Right child of Or.
    Guard right() const { return Guard(node_->rhs); }

    friend bool operator==(const Guard& a, const Guard& b) { return equal(a.node_.get(), b.node_.get()); }

private:
    struct Node {
        Kind kind;
        int reg;
        std::shared_ptr<const Node> lhs;
        std::shared_ptr<const Node> rhs;
    };

    explicit Guard(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    static bool equal(const Node* a, const Node* b) {
        if (a == b) return true;
        if (a == nullptr || b == nullptr) return false;
        if (a->kind != b->kind || a->reg != b->reg) return false;
        return equal(a->lhs.get(), b->lhs.get()) && equal(a->rhs.get(), b->rhs.get());
    }

    std::shared_ptr<const Node> node_;
};

/// Satisfaction of a guard by (register assignment, input value, stack top):
/// x_i^= holds iff register i equals the input value, x_top^= holds iff the
/// input value equals the stack top, and the boolean connectives are
/// classical.  Throws std::out_of_range if the guard mentions a register
/// beyond the assignment.
inline bool eval_guard(const Guard& g, const RegisterAssignment& regs, const DataValue& input,
                       const DataValue& top) {
    switch (g.kind()) {
        case Guard::Kind::True: return true;
        case Guard::Kind::RegEq: return regs.get(g.reg()) == input;
        case Guard::Kind::TopEq: return input == top;
        case Guard::Kind::Or:
            return eval_guard(g.left(), regs, input, top) || eval_guard(g.right(), regs, input, top);
        case Guard::Kind::Not: return !eval_guard(g.left(), regs, input, top);
    }
    throw std::logic_error("unreachable guard kind");
}

/// Collects every register index mentioned in a guard (with repetitions).
inline void guard_registers(const Guard& g, std::vector<int>& out) {
    switch (g.kind()) {
        case Guard::Kind::True:
        case Guard::Kind::TopEq: return;
        case Guard::Kind::RegEq: out.push_back(g.reg()); return;
        case Guard::Kind::Or:
            guard_registers(g.left(), out);
            guard_registers(g.right(), out);
            return;
        case Guard::Kind::Not: guard_registers(g.left(), out); return;
    }
}

// ---------------------------------------------------------------------------
// Transition rules and automata
// ---------------------------------------------------------------------------

/// Stack effect of a rule.  Every rule consumes the stack top e and then
/// pushes back zero, one or two register values (taken after the load).
struct Pop {
    friend bool operator==(const Pop&, const Pop&) = default;
};

struct Replace {
    int reg;  // the new top is the value of this register

    friend bool operator==(const Replace&, const Replace&) = default;
};

struct Push {
    int top;    // j1: value pushed on top
    int below;  // j2: value pushed beneath it

    friend bool operator==(const Push&, const Push&) = default;
};

using StackAction = std::variant<Pop, Replace, Push>;

/// Net stack height change of an action: -1, 0 or +1.
inline int stack_delta(const StackAction& action) {
    if (std::holds_alternative<Pop>(action)) return -1;
    if (std::holds_alternative<Replace>(action)) return 0;
    return 1;
}

/// A transition rule
///
///     (from, guard[, load]) --label--> (to, action)
///
/// where `label` is an alphabet symbol or absent (an epsilon rule) and
/// `load` optionally names the register that receives the chosen data value.
struct TransitionRule {
    std::string from;
    std::optional<std::string> label;  // nullopt = epsilon rule
    Guard guard;
    std::optional<int> load;
    StackAction action;
    std::string to;

    bool is_epsilon() const { return !label.has_value(); }

    friend bool operator==(const TransitionRule&, const TransitionRule&) = default;
};

/// A k-RPDA.  `states` and `alphabet` are finite sets kept in insertion
/// order; rule order is preserved and used for deterministic tie-breaking
/// in searches.
struct Rpda {
    int registers = 0;
    std::vector<std::string> states;
    std::string initial;
    std::vector<std::string> alphabet;
    std::vector<TransitionRule> rules;

    bool has_state(const std::string& s) const {
        return std::find(states.begin(), states.end(), s) != states.end();
    }

    bool has_symbol(const std::string& s) const {
        return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
    }

    /// Equality up to the (irrelevant) order of the state and alphabet sets.
    friend bool operator==(const Rpda& a, const Rpda& b) {
        auto sorted = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        return a.registers == b.registers && a.initial == b.initial && a.rules == b.rules &&
               sorted(a.states) == sorted(b.states) && sorted(a.alphabet) == sorted(b.alphabet);
    }
};

/// Instantaneous description: state, register assignment, remaining input
/// and stack.  The stack height is stack.size().
struct Configuration {
    std::string state;
    RegisterAssignment regs;
    Word input;
    Stack stack;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// The run of an automaton on w starts from (initial, all-bottom registers,
/// w, [bottom]).
inline Configuration initial_configuration(const Rpda& a, const Word& w) {
    return Configuration{a.initial, RegisterAssignment::bottoms(a.registers), w, {DataValue::bottom()}};
}

/// A word is accepted exactly when some run reaches empty input and empty
/// stack; the state and registers do not matter.
inline bool is_accepting(const Configuration& c) { return c.input.empty() && c.stack.empty(); }

// ---------------------------------------------------------------------------
// Subclasses
// ---------------------------------------------------------------------------

/// Ordered by generality; each label implies the ones before it.
enum class SubclassLabel { General, NonDecreasing, Growing, EpsilonFree };

inline const char* to_string(SubclassLabel label) {
    switch (label) {
        case SubclassLabel::General: return "general";
        case SubclassLabel::NonDecreasing: return "non-decreasing";
        case SubclassLabel::Growing: return "growing";
        case SubclassLabel::EpsilonFree: return "epsilon-free";
    }
    return "?";
}

/// Label implication: every epsilon-free automaton is growing, every growing
/// automaton is non-decreasing, and everything is general.
inline bool at_least(SubclassLabel label, SubclassLabel wanted) {
    return static_cast<int>(label) >= static_cast<int>(wanted);
}

/// Tightest applicable label: epsilon-free automata have no epsilon rules,
/// growing ones use epsilon rules only for pushes, non-decreasing ones never
/// pop on epsilon.
inline SubclassLabel classify(const Rpda& a) {
    bool has_epsilon = false;
    bool only_push = true;
    bool no_pop = true;
    for (const TransitionRule& r : a.rules) {
        if (!r.is_epsilon()) continue;
        has_epsilon = true;
        if (!std::holds_alternative<Push>(r.action)) only_push = false;
        if (std::holds_alternative<Pop>(r.action)) no_pop = false;
    }
    if (!has_epsilon) return SubclassLabel::EpsilonFree;
    if (only_push) return SubclassLabel::Growing;
    if (no_pop) return SubclassLabel::NonDecreasing;
    return SubclassLabel::General;
}

// ---------------------------------------------------------------------------
// Well-formedness
// ---------------------------------------------------------------------------

/// Structural diagnostics: out-of-range register indices, unknown states,
/// labels outside the alphabet.  An empty result means well-formed.
inline std::vector<std::string> validate(const Rpda& a) {
    std::vector<std::string> diags;
    auto complain = [&](std::size_t rule, const std::string& what) {
        diags.push_back("rule " + std::to_string(rule) + ": " + what);
    };
    if (a.registers < 0) diags.push_back("register count must be >= 0");
    if (!a.has_state(a.initial)) diags.push_back("initial state '" + a.initial + "' is not a state");
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        const TransitionRule& r = a.rules[i];
        if (!a.has_state(r.from)) complain(i, "unknown source state '" + r.from + "'");
        if (!a.has_state(r.to)) complain(i, "unknown target state '" + r.to + "'");
        if (r.label && !a.has_symbol(*r.label)) complain(i, "label '" + *r.label + "' is not in the alphabet");
        auto check_reg = [&](int reg, const std::string& role) {
            if (reg < 1 || reg > a.registers)
                complain(i, role + " register " + std::to_string(reg) + " out of range [1," +
                                std::to_string(a.registers) + "]");
        };
        if (r.load) check_reg(*r.load, "load");
        std::vector<int> used;
        guard_registers(r.guard, used);
        for (int reg : used) check_reg(reg, "guard");
        if (const Replace* rep = std::get_if<Replace>(&r.action)) check_reg(rep->reg, "replace");
        if (const Push* push = std::get_if<Push>(&r.action)) {
            check_reg(push->top, "push");
            check_reg(push->below, "push");
        }
    }
    return diags;
}

// ---------------------------------------------------------------------------
// Small-step semantics
// ---------------------------------------------------------------------------

/// Applies one rule with one chosen data value to a configuration, or
/// returns nullopt when the rule does not fire.  A rule fires when
///
///   * the source state matches and the stack is nonempty (top value e),
///   * for a non-epsilon rule the next input letter is (label, value),
///   * the guard holds for (registers, value, e),
///
/// and then the registers are updated by the optional load, the input
/// letter is consumed (non-epsilon rules only), and the stack top e is
/// replaced by nothing (pop), one register value (replace) or two register
/// values (push), taken from the updated registers.
inline std::optional<Configuration> apply(const Rpda& a, const Configuration& c, std::size_t rule,
                                          const DataValue& value) {
    const TransitionRule& r = a.rules.at(rule);
    if (r.from != c.state) return std::nullopt;
    if (c.stack.empty()) return std::nullopt;
    if (r.label) {
        if (c.input.empty()) return std::nullopt;
        const Letter& head = c.input.front();
        if (head.symbol != *r.label || !(head.value == value)) return std::nullopt;
    }
    if (!eval_guard(r.guard, c.regs, value, c.stack.front())) return std::nullopt;

    RegisterAssignment regs = r.load ? assign(c.regs, *r.load, value) : c.regs;
    Stack stack(c.stack.begin() + 1, c.stack.end());
    if (const Replace* rep = std::get_if<Replace>(&r.action)) {
        stack.insert(stack.begin(), regs.get(rep->reg));
    } else if (const Push* push = std::get_if<Push>(&r.action)) {
        stack.insert(stack.begin(), {regs.get(push->top), regs.get(push->below)});
    }
    Word input = r.label ? Word(c.input.begin() + 1, c.input.end()) : c.input;
    return Configuration{r.to, std::move(regs), std::move(input), std::move(stack)};
}

/// One successor configuration together with the rule and chosen value that
/// produced it.  `rule` indexes into Rpda::rules.
struct Successor {
    std::size_t rule;
    DataValue value;
    Configuration next;
};

/// All one-step successors of c.  Non-epsilon rules can only choose the
/// value at the head of the input; epsilon rules choose a value from
/// `epsilon_candidates` (callers pass membership::candidate_values, which is
/// exhaustive up to renaming of globally fresh values).  Choices that lead
/// to the same successor configuration under the same rule are reported
/// once, with the first candidate in order as witness.  A configuration
/// with an empty stack has no successors.
inline std::vector<Successor> step(const Rpda& a, const Configuration& c,
                                   std::span<const DataValue> epsilon_candidates) {
    std::vector<Successor> out;
    if (c.stack.empty()) return out;
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
        const TransitionRule& r = a.rules[i];
        if (r.from != c.state) continue;
        if (!r.is_epsilon()) {
            if (c.input.empty()) continue;
            if (auto next = apply(a, c, i, c.input.front().value))
                out.push_back(Successor{i, c.input.front().value, std::move(*next)});
        } else {
            for (const DataValue& d : epsilon_candidates) {
                auto next = apply(a, c, i, d);
                if (!next) continue;
                bool duplicate = false;
                for (const Successor& s : out) {
                    if (s.rule == i && s.next == *next) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) out.push_back(Successor{i, d, std::move(*next)});
            }
        }
    }
    return out;
}

/// One step of a concrete run: the rule taken, the value chosen for it, and
/// the configuration reached.
struct TraceStep {
    std::size_t rule;
    DataValue value;
    Configuration after;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

}  // namespace rpda
