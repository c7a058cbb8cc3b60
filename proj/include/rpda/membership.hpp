#pragma once

// Membership deciders.  Guards only test equality, so runs are invariant
// under bijective renaming of data values that fixes bottom and the values
// of the input word.  Two consequences drive everything here:
//
//   * epsilon choices can be finitized to bottom, the word values, the
//     values currently live in the configuration, and a single fresh value
//     (candidate_values);
//   * configurations can be canonicalized by renaming non-anchor values in
//     first-occurrence order (canonicalize), which makes memoization sound.
//
// member_growing and member_non_decreasing are complete deciders for their
// subclasses, justified by two bounds: a growing automaton accepts within
// 2|w|+1 steps if at all, and a non-decreasing automaton never needs a
// stack higher than the remaining input (every pop consumes a letter).
// member_general is a budgeted semi-decision for arbitrary automata.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rpda/core.hpp"

namespace rpda::membership {

/// Thrown when a subclass decider is handed an automaton outside its class.
class SubclassError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Membership { Accepted, Rejected, Unknown };

inline const char* to_string(Membership m) {
    switch (m) {
        case Membership::Accepted: return "accepted";
        case Membership::Rejected: return "rejected";
        case Membership::Unknown: return "unknown";
    }
    return "?";
}

/// Decider result.  Accepted verdicts carry a replayable run; Unknown
/// verdicts carry a note naming the budget that cut the search.
struct MembershipVerdict {
    Membership outcome = Membership::Rejected;
    Trace run;         // nonempty exactly when outcome == Accepted
    std::string note;  // set when outcome == Unknown

    static MembershipVerdict accepted(Trace run) {
        return MembershipVerdict{Membership::Accepted, std::move(run), ""};
    }
    static MembershipVerdict rejected() { return MembershipVerdict{}; }
    static MembershipVerdict unknown(std::string note) {
        return MembershipVerdict{Membership::Unknown, {}, std::move(note)};
    }
};

/// Exploration budget for member_general.  Absent fields are unbounded.
struct SearchBudget {
    std::optional<std::size_t> max_stack_height;
    std::optional<std::size_t> max_epsilon_steps;  // per path
    std::optional<std::size_t> max_total_steps;    // configurations expanded
};

/// Default budget: stack height |w| + k + 4, at most 1000 epsilon steps per
/// path, no global step cap.
inline SearchBudget default_budget(const Rpda& a, const Word& w) {
    SearchBudget b;
    b.max_stack_height = w.size() + static_cast<std::size_t>(a.registers < 0 ? 0 : a.registers) + 4;
    b.max_epsilon_steps = 1000;
    return b;
}

// ---------------------------------------------------------------------------
// Value finitization and canonical forms
// ---------------------------------------------------------------------------

/// Exhaustive (up to renaming) candidate set for the value chosen by an
/// epsilon rule at configuration c on word w: bottom, the word values in
/// first-occurrence order, the values live in the registers and the stack
/// (top to bottom), and one fresh value occurring nowhere in c or w.  The
/// order is deterministic and duplicates are dropped.
inline std::vector<DataValue> candidate_values(const Configuration& c, const Word& w) {
    std::vector<DataValue> out;
    auto add = [&](const DataValue& v) {
        for (const DataValue& seen : out)
            if (seen == v) return;
        out.push_back(v);
    };
    add(DataValue::bottom());
    for (const Letter& letter : w) add(letter.value);
    for (const DataValue& v : c.regs.values()) add(v);
    for (const DataValue& v : c.stack) add(v);

    std::set<std::string> used;
    for (const DataValue& v : out)
        if (!v.is_bottom()) used.insert(v.name());
    for (const Letter& letter : c.input)
        if (!letter.value.is_bottom()) used.insert(letter.value.name());
    for (int i = 1;; ++i) {
        std::string name = "f" + std::to_string(i);
        if (!used.count(name)) {
            out.push_back(DataValue::named(name));
            break;
        }
    }
    return out;
}

/// Anchors that any membership search on w must keep fixed: bottom and the
/// values of the word.
inline std::set<DataValue> word_anchors(const Word& w) {
    std::set<DataValue> anchors;
    anchors.insert(DataValue::bottom());
    for (const Letter& letter : w) anchors.insert(letter.value);
    return anchors;
}

/// Renames every non-anchor value of the registers and stack to n1, n2, ...
/// (skipping names already used by anchors) in first-occurrence order,
/// scanning registers 1..k and then the stack top to bottom.  The input is
/// left untouched; callers must anchor all input values.  Idempotent, and
/// two configurations are equal up to an anchor-fixing bijection exactly
/// when their canonical forms are equal.
inline Configuration canonicalize(const Configuration& c, const std::set<DataValue>& anchors) {
    std::map<DataValue, DataValue> renaming;
    int next = 1;
    auto note = [&](const DataValue& v) {
        if (v.is_bottom() || anchors.count(v) || renaming.count(v)) return;
        for (;;) {
            DataValue fresh = DataValue::named("n" + std::to_string(next++));
            if (!anchors.count(fresh)) {
                renaming.emplace(v, fresh);
                return;
            }
        }
    };
    for (const DataValue& v : c.regs.values()) note(v);
    for (const DataValue& v : c.stack) note(v);

    auto rename = [&](const DataValue& v) {
        auto it = renaming.find(v);
        return it == renaming.end() ? v : it->second;
    };
    std::vector<DataValue> regs;
    regs.reserve(c.regs.values().size());
    for (const DataValue& v : c.regs.values()) regs.push_back(rename(v));
    Stack stack;
    stack.reserve(c.stack.size());
    for (const DataValue& v : c.stack) stack.push_back(rename(v));
    return Configuration{c.state, RegisterAssignment(std::move(regs)), c.input, std::move(stack)};
}

namespace detail {

inline void append_token(std::string& out, const std::string& token) {
    out += std::to_string(token.size());
    out += ':';
    out += token;
}

inline void append_value(std::string& out, const DataValue& v) {
    append_token(out, v.is_bottom() ? std::string() : v.name());
}

/// Memoization key of a configuration: canonical state, registers and stack
/// plus the length of the remaining input (which is always a suffix of the
/// searched word, so its length determines it).
inline std::string canonical_key(const Configuration& c, const std::set<DataValue>& anchors) {
    Configuration canon = canonicalize(c, anchors);
    std::string key;
    append_token(key, canon.state);
    key += 'r';
    for (const DataValue& v : canon.regs.values()) append_value(key, v);
    key += 's';
    for (const DataValue& v : canon.stack) append_value(key, v);
    key += 'i';
    key += std::to_string(canon.input.size());
    return key;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Deciders
// ---------------------------------------------------------------------------

/// Complete decider for growing automata (epsilon rules all push).  An
/// accepting run, if any, exists within 2|w|+1 steps: each step pushes or
/// pops exactly one value net of the replaced top, pops all consume input,
/// and the run must drain the initial bottom.  The search is a depth-first
/// walk over canonical configurations with that depth bound, pruning stacks
/// higher than the remaining input and memoizing failed subtrees by their
/// remaining depth.
inline MembershipVerdict member_growing(const Rpda& a, const Word& w) {
    if (!at_least(classify(a), SubclassLabel::Growing))
        throw SubclassError("member_growing requires a growing automaton, got " +
                            std::string(to_string(classify(a))));
    const std::size_t max_len = 2 * w.size() + 1;
    const std::set<DataValue> anchors = word_anchors(w);
    std::unordered_map<std::string, std::size_t> failed;  // key -> depth fully explored
    Trace path;
    std::function<bool(const Configuration&, std::size_t)> dfs =
        [&](const Configuration& c, std::size_t remaining) -> bool {
        if (is_accepting(c)) return true;
        if (remaining == 0) return false;
        if (c.stack.size() > c.input.size()) return false;  // pops all consume input
        const std::string key = detail::canonical_key(c, anchors);
        if (auto it = failed.find(key); it != failed.end() && it->second >= remaining) return false;
        for (const Successor& s : step(a, c, candidate_values(c, w))) {
            path.push_back(TraceStep{s.rule, s.value, s.next});
            if (dfs(s.next, remaining - 1)) return true;
            path.pop_back();
        }
        std::size_t& depth = failed[key];
        if (depth < remaining) depth = remaining;
        return false;
    };
    if (dfs(initial_configuration(a, w), max_len)) return MembershipVerdict::accepted(std::move(path));
    return MembershipVerdict::rejected();
}

/// Complete decider for non-decreasing automata (no epsilon pops).  Every
/// pop consumes a letter, so accepting runs keep the stack within
/// max(1, |w|); with that prune the canonical configuration space is finite
/// and plain depth-first reachability with a visited set terminates.
inline MembershipVerdict member_non_decreasing(const Rpda& a, const Word& w) {
    if (!at_least(classify(a), SubclassLabel::NonDecreasing))
        throw SubclassError("member_non_decreasing requires a non-decreasing automaton, got " +
                            std::string(to_string(classify(a))));
    const std::set<DataValue> anchors = word_anchors(w);
    std::unordered_set<std::string> visited;
    Trace path;
    std::function<bool(const Configuration&)> dfs = [&](const Configuration& c) -> bool {
        if (is_accepting(c)) return true;
        if (c.stack.size() > c.input.size()) return false;
        if (!visited.insert(detail::canonical_key(c, anchors)).second) return false;
        for (const Successor& s : step(a, c, candidate_values(c, w))) {
            path.push_back(TraceStep{s.rule, s.value, s.next});
            if (dfs(s.next)) return true;
            path.pop_back();
        }
        return false;
    };
    if (dfs(initial_configuration(a, w))) return MembershipVerdict::accepted(std::move(path));
    return MembershipVerdict::rejected();
}

/// Budgeted semi-decision for arbitrary automata.  Explores canonical
/// configurations depth-first under the budget; answers Accepted with a run,
/// Rejected only when the search closed without any budget cut (then the
/// finitized state space was exhausted), and Unknown otherwise.
inline MembershipVerdict member_general(const Rpda& a, const Word& w, const SearchBudget& budget) {
    const std::set<DataValue> anchors = word_anchors(w);
    std::unordered_set<std::string> visited;
    Trace path;
    bool cut = false;
    std::string note;
    std::size_t expanded = 0;
    auto record_cut = [&](const char* which) {
        cut = true;
        if (note.empty()) note = which;
    };
    std::function<bool(const Configuration&, std::size_t)> dfs =
        [&](const Configuration& c, std::size_t epsilon_used) -> bool {
        if (is_accepting(c)) return true;
        if (budget.max_stack_height && c.stack.size() > *budget.max_stack_height) {
            record_cut("stack height budget exceeded");
            return false;
        }
        if (!visited.insert(detail::canonical_key(c, anchors)).second) return false;
        if (budget.max_total_steps && expanded >= *budget.max_total_steps) {
            record_cut("total step budget exceeded");
            return false;
        }
        ++expanded;
        for (const Successor& s : step(a, c, candidate_values(c, w))) {
            std::size_t next_epsilon = epsilon_used;
            if (a.rules[s.rule].is_epsilon()) {
                if (budget.max_epsilon_steps && epsilon_used >= *budget.max_epsilon_steps) {
                    record_cut("epsilon step budget exceeded");
                    continue;
                }
                next_epsilon = epsilon_used + 1;
            }
            path.push_back(TraceStep{s.rule, s.value, s.next});
            if (dfs(s.next, next_epsilon)) return true;
            path.pop_back();
        }
        return false;
    };
    if (dfs(initial_configuration(a, w), 0)) return MembershipVerdict::accepted(std::move(path));
    if (cut) return MembershipVerdict::unknown(note);
    return MembershipVerdict::rejected();
}

inline MembershipVerdict member_general(const Rpda& a, const Word& w) {
    return member_general(a, w, default_budget(a, w));
}

/// Dispatches to the tightest decider for the automaton's subclass and
/// returns the run when w is accepted.  For general automata this inherits
/// the default budget, so absence of a run means rejected-or-unknown.
inline std::optional<Trace> accepting_run(const Rpda& a, const Word& w) {
    MembershipVerdict v;
    switch (classify(a)) {
        case SubclassLabel::EpsilonFree:
        case SubclassLabel::Growing: v = member_growing(a, w); break;
        case SubclassLabel::NonDecreasing: v = member_non_decreasing(a, w); break;
        case SubclassLabel::General: v = member_general(a, w); break;
    }
    if (v.outcome == Membership::Accepted) return std::move(v.run);
    return std::nullopt;
}

/// Replays a run from the initial configuration on w, checking that every
/// step fires and reaches the recorded configuration.  Returns the final
/// configuration, or nullopt when the trace is not a run of a on w.
inline std::optional<Configuration> replay_run(const Rpda& a, const Word& w, const Trace& trace) {
    Configuration c = initial_configuration(a, w);
    for (const TraceStep& step : trace) {
        if (step.rule >= a.rules.size()) return std::nullopt;
        std::optional<Configuration> next = apply(a, c, step.rule, step.value);
        if (!next || !(*next == step.after)) return std::nullopt;
        c = std::move(*next);
    }
    return c;
}

}  // namespace rpda::membership
