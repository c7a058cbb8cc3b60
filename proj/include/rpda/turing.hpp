#pragma once

// Deterministic single-tape Turing machines with a total transition
// function, used as the source model of the tape-machine-to-RPDA
// construction.  The tape alphabet is {1, ..., gamma_size} with 1 as the
// blank; the input alphabet is a subset of {2, ..., gamma_size}.
//
// The tape is kept as the finite visited prefix and grows by one blank
// whenever the head moves right off its end; moving left at cell 1 leaves
// the head in place.  The machine accepts as soon as it enters an accepting
// state and rejects by repeating an instantaneous description, which is the
// only way a total machine fails to accept within bounded space.

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rpda::turing {

inline constexpr int kBlank = 1;

enum class Move { Left, Right };

/// Right-hand side of one transition: next state, symbol written, head move.
struct TmRule {
    std::string to;
    int write = kBlank;
    Move move = Move::Right;

    friend bool operator==(const TmRule&, const TmRule&) = default;
};

/// A deterministic Turing machine.  `transition` must be total on
/// states x {1..gamma_size}; use validate() to check.
struct TuringMachine {
    std::vector<std::string> states;
    int gamma_size = 1;                   // tape alphabet {1..gamma_size}, 1 = blank
    std::vector<int> input_symbols;       // subset of {2..gamma_size}
    std::string initial;
    std::set<std::string> accepting;
    std::map<std::pair<std::string, int>, TmRule> transition;

    bool has_state(const std::string& s) const {
        for (const std::string& q : states)
            if (q == s) return true;
        return false;
    }
};

/// Structural diagnostics; an empty result means well-formed (in particular
/// the transition function is total).
inline std::vector<std::string> validate(const TuringMachine& m) {
    std::vector<std::string> diags;
    if (m.gamma_size < 1) diags.push_back("tape alphabet size must be >= 1");
    if (!m.has_state(m.initial)) diags.push_back("initial state '" + m.initial + "' is not a state");
    for (const std::string& q : m.accepting)
        if (!m.has_state(q)) diags.push_back("accepting state '" + q + "' is not a state");
    for (int s : m.input_symbols)
        if (s < 2 || s > m.gamma_size)
            diags.push_back("input symbol " + std::to_string(s) + " outside {2.." +
                            std::to_string(m.gamma_size) + "}");
    for (const auto& [key, rule] : m.transition) {
        const auto& [q, a] = key;
        std::string where = "delta(" + q + "," + std::to_string(a) + ")";
        if (!m.has_state(q)) diags.push_back(where + ": unknown state");
        if (a < 1 || a > m.gamma_size) diags.push_back(where + ": symbol out of range");
        if (!m.has_state(rule.to)) diags.push_back(where + ": unknown target state '" + rule.to + "'");
        if (rule.write < 1 || rule.write > m.gamma_size)
            diags.push_back(where + ": written symbol out of range");
    }
    for (const std::string& q : m.states)
        for (int a = 1; a <= m.gamma_size; ++a)
            if (!m.transition.count({q, a}))
                diags.push_back("delta not total: delta(" + q + "," + std::to_string(a) + ") missing");
    return diags;
}

/// Instantaneous description: state, visited tape prefix, 1-based head
/// position within it.
struct TmConfiguration {
    std::string state;
    std::vector<int> tape;
    int head = 1;

    friend bool operator==(const TmConfiguration&, const TmConfiguration&) = default;
};

/// The start description on input u: head on cell 1 of u, or of a single
/// blank cell when u is empty.
inline TmConfiguration initial_tm_configuration(const TuringMachine& m, const std::vector<int>& input) {
    TmConfiguration c;
    c.state = m.initial;
    c.tape = input.empty() ? std::vector<int>{kBlank} : input;
    c.head = 1;
    return c;
}

/// One deterministic step.  Moving right off the visited prefix appends a
/// blank; moving left at cell 1 stays put.  Throws std::out_of_range if the
/// transition function misses the current (state, symbol) pair.
inline TmConfiguration tm_step(const TuringMachine& m, const TmConfiguration& c) {
    int scanned = c.tape.at(static_cast<std::size_t>(c.head - 1));
    auto it = m.transition.find({c.state, scanned});
    if (it == m.transition.end())
        throw std::out_of_range("no transition for (" + c.state + "," + std::to_string(scanned) + ")");
    const TmRule& r = it->second;
    TmConfiguration next = c;
    next.state = r.to;
    next.tape[static_cast<std::size_t>(c.head - 1)] = r.write;
    if (r.move == Move::Right) {
        if (static_cast<std::size_t>(c.head) == c.tape.size()) next.tape.push_back(kBlank);
        next.head = c.head + 1;
    } else {
        next.head = std::max(1, c.head - 1);
    }
    return next;
}

enum class TmRunResult { Accepts, Rejects, SpaceExceeded };

inline const char* to_string(TmRunResult r) {
    switch (r) {
        case TmRunResult::Accepts: return "accepts";
        case TmRunResult::Rejects: return "rejects";
        case TmRunResult::SpaceExceeded: return "space-exceeded";
    }
    return "?";
}

namespace detail {

inline std::string tm_key(const TmConfiguration& c) {
    std::string key = c.state;
    key += '\x1f';
    key += std::to_string(c.head);
    for (int cell : c.tape) {
        key += ',';
        key += std::to_string(cell);
    }
    return key;
}

}  // namespace detail

/// Runs the machine on `input` until it accepts, repeats a description
/// (rejects), or the visited tape prefix would exceed `space_bound` cells.
/// Terminates on every total machine: within the bound there are finitely
/// many descriptions.
inline TmRunResult tm_accepts(const TuringMachine& m, const std::vector<int>& input,
                              std::size_t space_bound) {
    TmConfiguration c = initial_tm_configuration(m, input);
    if (c.tape.size() > space_bound) return TmRunResult::SpaceExceeded;
    std::set<std::string> seen;
    for (;;) {
        if (m.accepting.count(c.state)) return TmRunResult::Accepts;
        if (!seen.insert(detail::tm_key(c)).second) return TmRunResult::Rejects;
        c = tm_step(m, c);
        if (c.tape.size() > space_bound) return TmRunResult::SpaceExceeded;
    }
}

/// True when the run on `input` stays within `bound` tape cells until it
/// accepts or repeats a description.
inline bool check_space_bound(const TuringMachine& m, const std::vector<int>& input, std::size_t bound) {
    return tm_accepts(m, input, bound) != TmRunResult::SpaceExceeded;
}

}  // namespace rpda::turing
