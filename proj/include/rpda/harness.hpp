#pragma once

// Exploration utilities that sit on top of the deciders: exhaustive
// enumeration of accepting runs (the ground truth the deciders are checked
// against), bounded search for any accepted word, and the two worked
// examples used across the test suite.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rpda/core.hpp"
#include "rpda/membership.hpp"
#include "rpda/turing.hpp"

namespace rpda::harness {

namespace detail {

/// Signature of a whole run under one consistent renaming of all non-anchor
/// values, in first-occurrence order across the steps.  Two runs with equal
/// signatures differ only in the choice of fresh values.
inline std::string trace_signature(const Trace& trace, const std::set<DataValue>& anchors) {
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
    auto renamed = [&](const DataValue& v) {
        auto it = renaming.find(v);
        return it == renaming.end() ? v : it->second;
    };
    std::string sig;
    for (const TraceStep& step : trace) {
        note(step.value);
        for (const DataValue& v : step.after.regs.values()) note(v);
        for (const DataValue& v : step.after.stack) note(v);

        sig += '#';
        sig += std::to_string(step.rule);
        membership::detail::append_value(sig, renamed(step.value));
        membership::detail::append_token(sig, step.after.state);
        sig += 'r';
        for (const DataValue& v : step.after.regs.values()) membership::detail::append_value(sig, renamed(v));
        sig += 's';
        for (const DataValue& v : step.after.stack) membership::detail::append_value(sig, renamed(v));
        sig += 'i';
        sig += std::to_string(step.after.input.size());
    }
    return sig;
}

}  // namespace detail

/// All accepting runs of a on w with at most max_len steps that keep the
/// stack height at most max_height throughout, deduplicated up to renaming
/// of values outside bottom and the word (so each choice of a fresh value
/// is reported once).  Exhaustive within the bounds: epsilon choices range
/// over candidate_values, which covers every choice up to that renaming.
inline std::vector<Trace> enumerate_accepting_runs(const Rpda& a, const Word& w, std::size_t max_len,
                                                   std::size_t max_height) {
    std::vector<Trace> runs;
    std::set<std::string> seen;
    const std::set<DataValue> anchors = membership::word_anchors(w);
    Configuration initial = initial_configuration(a, w);
    if (initial.stack.size() > max_height) return runs;
    Trace path;
    std::function<void(const Configuration&)> dfs = [&](const Configuration& c) {
        if (is_accepting(c)) {  // accepting configurations have no successors
            if (seen.insert(detail::trace_signature(path, anchors)).second) runs.push_back(path);
            return;
        }
        if (path.size() == max_len) return;
        for (const Successor& s : step(a, c, membership::candidate_values(c, w))) {
            if (s.next.stack.size() > max_height) continue;
            path.push_back(TraceStep{s.rule, s.value, s.next});
            dfs(s.next);
            path.pop_back();
        }
    };
    dfs(initial);
    return runs;
}

/// Budget for witness_search analogous to membership::default_budget.
inline membership::SearchBudget witness_budget(const Rpda& a, std::size_t max_word_len) {
    membership::SearchBudget b;
    b.max_stack_height = max_word_len + static_cast<std::size_t>(a.registers < 0 ? 0 : a.registers) + 4;
    b.max_epsilon_steps = 1000;
    return b;
}

/// Searches for any word of length at most max_word_len accepted by a,
/// building the word letter by letter: each non-epsilon rule may read any
/// candidate value (live values plus one fresh), each epsilon rule chooses
/// likewise.  Nodes are memoized up to renaming of everything but bottom,
/// which is sound because future steps only see the registers and stack.
/// A found word is verified by replaying the found run on it before being
/// returned; absence only means no witness within the length and budget.
inline std::optional<Word> witness_search(const Rpda& a, std::size_t max_word_len,
                                          const membership::SearchBudget& budget) {
    const std::set<DataValue> bottom_only = {DataValue::bottom()};
    // Failed explorations per canonical node, as Pareto pairs of (letters
    // still allowed, epsilon steps already used): a new visit is subsumed
    // when some recorded visit had at least as many letters and at most as
    // many epsilon steps.
    std::unordered_map<std::string, std::vector<std::pair<std::size_t, std::size_t>>> failed;
    Word word;
    std::vector<std::pair<std::size_t, DataValue>> chosen;  // (rule, value) per step
    std::optional<Word> found;

    // Candidate values for the next chosen value at a node: bottom, the
    // live register/stack values, and one value fresh for the whole word
    // built so far.
    auto candidates = [&](const Configuration& c) {
        Configuration probe = c;
        probe.input = word;  // only used to keep the fresh value off the word
        return membership::candidate_values(probe, word);
    };

    // Replays the chosen rules on the built word from scratch; the search
    // never records an invalid run, so this is a pure sanity gate.
    auto verified = [&]() {
        Configuration c = initial_configuration(a, word);
        for (const auto& [rule, value] : chosen) {
            std::optional<Configuration> next = apply(a, c, rule, value);
            if (!next) return false;
            c = std::move(*next);
        }
        return is_accepting(c);
    };

    std::function<bool(const Configuration&, std::size_t, std::size_t)> dfs =
        [&](const Configuration& c, std::size_t letters_left, std::size_t epsilon_used) -> bool {
        if (c.stack.empty()) {
            if (verified()) {
                found = word;
                return true;
            }
            return false;
        }
        if (budget.max_stack_height && c.stack.size() > *budget.max_stack_height) return false;
        const std::string key = membership::detail::canonical_key(c, bottom_only);
        if (auto it = failed.find(key); it != failed.end())
            for (const auto& [letters, eps] : it->second)
                if (letters >= letters_left && eps <= epsilon_used) return false;
        for (std::size_t i = 0; i < a.rules.size(); ++i) {
            const TransitionRule& r = a.rules[i];
            if (r.from != c.state) continue;
            const bool epsilon = r.is_epsilon();
            if (!epsilon && letters_left == 0) continue;
            if (epsilon && budget.max_epsilon_steps && epsilon_used >= *budget.max_epsilon_steps) continue;
            for (const DataValue& d : candidates(c)) {
                Configuration probe = c;
                if (!epsilon) probe.input = {Letter{*r.label, d}};
                std::optional<Configuration> next = apply(a, probe, i, d);
                if (!next) continue;
                if (!epsilon) word.push_back(Letter{*r.label, d});
                chosen.emplace_back(i, d);
                bool ok = dfs(*next, epsilon ? letters_left : letters_left - 1,
                              epsilon ? epsilon_used + 1 : epsilon_used);
                chosen.pop_back();
                if (!epsilon) word.pop_back();
                if (ok) return true;
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>>& entries = failed[key];
        std::erase_if(entries, [&](const std::pair<std::size_t, std::size_t>& e) {
            return e.first <= letters_left && e.second >= epsilon_used;
        });
        entries.emplace_back(letters_left, epsilon_used);
        return false;
    };
    Configuration start{a.initial, RegisterAssignment::bottoms(a.registers), {}, {DataValue::bottom()}};
    dfs(start, max_word_len, 0);
    return found;
}

inline std::optional<Word> witness_search(const Rpda& a, std::size_t max_word_len) {
    return witness_search(a, max_word_len, witness_budget(a, max_word_len));
}

// ---------------------------------------------------------------------------
// Worked examples
// ---------------------------------------------------------------------------

/// The running example: a 2-register automaton over {a, b} accepting the
/// data palindromes
///
///     (a,d0) (b,d1) ... (b,dn) (b,dn) ... (b,d1) (a,d0)      n >= 0,
///
/// where each d_i with i >= 1 differs from d0 (values may otherwise repeat,
/// and d0 may be bottom).  It pushes the first half, switches direction
/// with an epsilon pop, and matches the second half against the stack.
inline Rpda example_a1() {
    Rpda a;
    a.registers = 2;
    a.states = {"q0", "q1", "q2", "q3"};
    a.initial = "q0";
    a.alphabet = {"a", "b"};
    a.rules = {
        {"q0", "a", Guard::tt(), 1, Push{1, 1}, "q1"},
        {"q1", "b", Guard::reg_ne(1), 2, Push{2, 2}, "q1"},
        {"q1", std::nullopt, Guard::tt(), std::nullopt, Pop{}, "q2"},
        {"q2", "b", Guard::conj(Guard::top_eq(), Guard::reg_ne(1)), std::nullopt, Pop{}, "q2"},
        {"q2", "a", Guard::top_eq(), std::nullopt, Pop{}, "q3"},
    };
    return a;
}

/// Closed-form membership predicate for the language of example_a1, written
/// directly from the shape of the words (no automaton involved); the test
/// suite checks it against the deciders word by word.
inline bool a1_language_predicate(const Word& w) {
    if (w.size() < 2 || w.size() % 2 != 0) return false;
    const std::size_t n = w.size() / 2 - 1;
    const Letter& first = w.front();
    const Letter& last = w.back();
    if (first.symbol != "a" || last.symbol != "a" || !(first.value == last.value)) return false;
    for (std::size_t i = 1; i <= n; ++i) {
        const Letter& up = w[i];
        const Letter& down = w[w.size() - 1 - i];
        if (up.symbol != "b" || down.symbol != "b") return false;
        if (!(up.value == down.value)) return false;
        if (up.value == first.value) return false;
    }
    return true;
}

/// A machine accepting the words over {2, 3} with an even number of 2s
/// (including the empty word), within |u| + 1 tape cells: it sweeps right
/// flipping between parity states and accepts from the even state on the
/// first blank; from the odd state it enters a sink that loops forever on
/// the spot.
inline turing::TuringMachine example_tm_even() {
    using turing::Move;
    turing::TuringMachine m;
    m.states = {"even", "odd", "acc", "dead"};
    m.gamma_size = 3;
    m.input_symbols = {2, 3};
    m.initial = "even";
    m.accepting = {"acc"};
    m.transition[{"even", 1}] = {"acc", 1, Move::Left};
    m.transition[{"even", 2}] = {"odd", 2, Move::Right};
    m.transition[{"even", 3}] = {"even", 3, Move::Right};
    m.transition[{"odd", 1}] = {"dead", 1, Move::Left};
    m.transition[{"odd", 2}] = {"even", 2, Move::Right};
    m.transition[{"odd", 3}] = {"odd", 3, Move::Right};
    for (int s = 1; s <= 3; ++s) {
        m.transition[{"acc", s}] = {"acc", s, Move::Left};
        m.transition[{"dead", s}] = {"dead", s, Move::Left};
    }
    return m;
}

}  // namespace rpda::harness
