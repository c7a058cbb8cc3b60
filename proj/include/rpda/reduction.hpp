#pragma once

// Constructive reductions into RPDA emptiness/membership, with the
// independent oracles used to verify them:
//
//   * cnf_to_rpda: 3CNF satisfiability into membership of a fixed target
//     word for an epsilon-free (2n+1)-register automaton, verified against
//     sat_bruteforce;
//   * tm_to_rpda: acceptance of a space-bounded deterministic Turing
//     machine into membership of the one-letter word (a, bottom) for a
//     non-decreasing automaton, verified against turing::tm_accepts;
//   * de_epsilonize: relabels epsilon rules with an alphabet symbol,
//     preserving emptiness of the language.
//
// Both generators return a ReductionReport tagging every emitted rule with
// the rule family it belongs to, so tests can audit the construction
// family by family.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rpda/core.hpp"
#include "rpda/turing.hpp"

namespace rpda::reduction {

// ---------------------------------------------------------------------------
// 3CNF formulas
// ---------------------------------------------------------------------------

struct Literal {
    int var = 1;  // variable index in [1, num_vars]
    bool negated = false;

    friend bool operator==(const Literal&, const Literal&) = default;
};

using Clause = std::array<Literal, 3>;

/// A 3CNF formula over variables y_1..y_{num_vars}; clauses may repeat
/// literals.
struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;
};

/// Register dedicated to a literal: 2j for y_j, 2j+1 for its negation.
/// A non-bottom value in that register means the literal is true.
inline int literal_register(const Literal& lit) { return 2 * lit.var + (lit.negated ? 1 : 0); }

inline bool literal_true(const Literal& lit, const std::vector<bool>& assignment) {
    return assignment.at(static_cast<std::size_t>(lit.var - 1)) != lit.negated;
}

/// Exhaustive truth-table satisfiability check, the oracle against which
/// the CNF reduction is tested.  Guarded to at most 24 variables.
inline std::optional<std::vector<bool>> sat_bruteforce(const CnfFormula& phi) {
    if (phi.num_vars < 0) throw std::invalid_argument("variable count must be >= 0");
    if (phi.num_vars > 24) throw std::invalid_argument("sat_bruteforce: too many variables");
    for (const Clause& clause : phi.clauses)
        for (const Literal& lit : clause)
            if (lit.var < 1 || lit.var > phi.num_vars)
                throw std::invalid_argument("literal variable out of range");
    const std::size_t n = static_cast<std::size_t>(phi.num_vars);
    for (std::uint32_t bits = 0;; ++bits) {
        std::vector<bool> assignment(n);
        for (std::size_t j = 0; j < n; ++j) assignment[j] = (bits >> j) & 1;
        bool ok = true;
        for (const Clause& clause : phi.clauses) {
            bool clause_ok = false;
            for (const Literal& lit : clause) clause_ok = clause_ok || literal_true(lit, assignment);
            if (!clause_ok) {
                ok = false;
                break;
            }
        }
        if (ok) return assignment;
        if (bits + 1 == (std::uint32_t{1} << n)) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Reduction reports
// ---------------------------------------------------------------------------

/// Output of a generator: the automaton, the word whose membership encodes
/// the source problem, and one family tag per rule (parallel to
/// generated.rules).
struct ReductionReport {
    Rpda generated;
    Word target_word;
    std::vector<std::string> provenance;
};

// ---------------------------------------------------------------------------
// 3CNF -> RPDA
// ---------------------------------------------------------------------------

/// Builds a (2n+1)-register epsilon-free automaton over {a} such that the
/// uniform word (a, d)^{n+m+3} is accepted iff the formula is satisfiable.
/// The run seeds register 1 with the shared value d, then for each variable
/// nondeterministically loads d into the register of y_j or of its negation
/// (the truth assignment), then checks per clause that some literal
/// register holds d, and finally pops the initial bottom.
///
/// Rule families: "seed" (load d), "assign" (one of 2 per variable),
/// "bridge" (assignment done), "clause" (up to 3 per clause, duplicates for
/// equal literal registers collapsed), "accept" (final pop).
inline ReductionReport cnf_to_rpda(const CnfFormula& phi) {
    if (phi.num_vars < 0) throw std::invalid_argument("variable count must be >= 0");
    for (const Clause& clause : phi.clauses)
        for (const Literal& lit : clause)
            if (lit.var < 1 || lit.var > phi.num_vars)
                throw std::invalid_argument("literal variable out of range");
    const int n = phi.num_vars;
    const std::size_t m = phi.clauses.size();

    ReductionReport report;
    Rpda& a = report.generated;
    a.registers = 2 * n + 1;
    a.alphabet = {"a"};
    a.initial = "q0";
    a.states.push_back("q0");
    auto p_state = [](int i) { return "P" + std::to_string(i); };
    auto c_state = [](std::size_t i) { return "C" + std::to_string(i); };
    for (int i = 0; i <= n; ++i) a.states.push_back(p_state(i));
    for (std::size_t i = 0; i <= m; ++i) a.states.push_back(c_state(i));
    a.states.push_back("E");

    auto add = [&](TransitionRule rule, const char* family) {
        a.rules.push_back(std::move(rule));
        report.provenance.emplace_back(family);
    };
    add({"q0", "a", Guard::tt(), 1, Replace{1}, p_state(0)}, "seed");
    for (int j = 1; j <= n; ++j) {
        add({p_state(j - 1), "a", Guard::reg_eq(1), 2 * j, Replace{1}, p_state(j)}, "assign");
        add({p_state(j - 1), "a", Guard::reg_eq(1), 2 * j + 1, Replace{1}, p_state(j)}, "assign");
    }
    add({p_state(n), "a", Guard::reg_eq(1), std::nullopt, Replace{1}, c_state(0)}, "bridge");
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<int> regs;
        for (const Literal& lit : phi.clauses[i]) {
            int reg = literal_register(lit);
            if (std::find(regs.begin(), regs.end(), reg) == regs.end()) regs.push_back(reg);
        }
        for (int reg : regs)
            add({c_state(i), "a", Guard::reg_eq(reg), std::nullopt, Replace{1}, c_state(i + 1)}, "clause");
    }
    add({c_state(m), "a", Guard::reg_eq(1), std::nullopt, Pop{}, "E"}, "accept");

    const DataValue d = DataValue::named("d1");
    report.target_word.assign(static_cast<std::size_t>(n) + m + 3, Letter{"a", d});
    return report;
}

// ---------------------------------------------------------------------------
// Space-bounded TM -> RPDA
// ---------------------------------------------------------------------------

namespace detail {

inline std::string t_state(int i, int j) {
    return "T(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline std::string w_state(std::size_t i) { return "W(" + std::to_string(i) + ")"; }

inline std::string a_state(const std::string& q, int symbol, int cell) {
    return "A(" + q + "," + std::to_string(symbol) + "," + std::to_string(cell) + ")";
}

inline std::string b_state(const std::string& q, int symbol, int cell) {
    return "B(" + q + "," + std::to_string(symbol) + "," + std::to_string(cell) + ")";
}

}  // namespace detail

/// Builds a (|Gamma| + p)-register non-decreasing automaton over {a} such
/// that the single-letter word (a, bottom) is accepted iff the machine
/// accepts u within p tape cells.  Register i <= |Gamma| holds the value
/// representing tape symbol i (register 1 keeps bottom, representing the
/// blank); register |Gamma|+j holds the value written in tape cell j, with
/// bottom for cells never written.  All rules replace the stack top with
/// register 1, so the stack stays [bottom] until the final accepting pop.
///
/// Rule families: "1a"/"1b" load pairwise-distinct symbol values into
/// registers 2..|Gamma|, "2" ends that phase, "3" copies the input onto the
/// tape registers, "4" starts the simulation, "5" applies one machine
/// transition and guesses the next scanned symbol, "6" verifies the guess
/// against the tape register, "8" accepts.  A "5" rule that would move
/// beyond cell p is omitted: the space bound makes it unreachable in
/// accepting simulations.
inline ReductionReport tm_to_rpda(const turing::TuringMachine& m, const std::vector<int>& input,
                                  std::size_t space_bound) {
    {
        std::vector<std::string> diags = turing::validate(m);
        if (!diags.empty()) throw std::invalid_argument("invalid machine: " + diags.front());
    }
    for (int s : input) {
        bool known = false;
        for (int allowed : m.input_symbols) known = known || allowed == s;
        if (!known)
            throw std::invalid_argument("input symbol " + std::to_string(s) +
                                        " is not an input symbol of the machine");
    }
    if (!turing::check_space_bound(m, input, space_bound))
        throw std::invalid_argument("machine exceeds the space bound " + std::to_string(space_bound) +
                                    " on the given input");

    const int gamma = m.gamma_size;
    const int p = static_cast<int>(space_bound);
    ReductionReport report;
    Rpda& a = report.generated;
    a.registers = gamma + p;
    a.alphabet = {"a"};
    a.initial = detail::t_state(1, 0);

    a.states.push_back(detail::t_state(1, 0));
    for (int i = 2; i <= gamma; ++i)
        for (int j = 1; j < i; ++j) a.states.push_back(detail::t_state(i, j));
    for (std::size_t i = 0; i <= input.size(); ++i) a.states.push_back(detail::w_state(i));
    for (const std::string& q : m.states)
        for (int i = 1; i <= gamma; ++i)
            for (int j = 1; j <= p; ++j) {
                a.states.push_back(detail::a_state(q, i, j));
                a.states.push_back(detail::b_state(q, i, j));
            }
    a.states.push_back("E");

    auto add = [&](TransitionRule rule, const char* family) {
        a.rules.push_back(std::move(rule));
        report.provenance.emplace_back(family);
    };

    // Load a fresh value for each symbol 2..gamma and check pairwise
    // distinctness; register 1 keeps bottom for the blank.
    for (int i = 2; i <= gamma; ++i) {
        add({detail::t_state(i - 1, i - 2), std::nullopt, Guard::reg_ne(1), i, Replace{1},
             detail::t_state(i, 1)},
            "1a");
        for (int j = 2; j < i; ++j)
            add({detail::t_state(i, j - 1), std::nullopt, Guard::conj(Guard::reg_eq(i), Guard::reg_ne(j)),
                 std::nullopt, Replace{1}, detail::t_state(i, j)},
                "1b");
    }
    add({detail::t_state(gamma, gamma - 1), std::nullopt, Guard::tt(), std::nullopt, Replace{1},
         detail::w_state(0)},
        "2");

    // Copy the input word onto the tape registers.
    for (std::size_t i = 1; i <= input.size(); ++i)
        add({detail::w_state(i - 1), std::nullopt, Guard::reg_eq(input[i - 1]),
             gamma + static_cast<int>(i), Replace{1}, detail::w_state(i)},
            "3");

    // Start simulating: head on cell 1, scanning u_1 (or the blank when u
    // is empty, where the machine starts on a one-blank tape).
    const int first_scanned = input.empty() ? turing::kBlank : input.front();
    add({detail::w_state(input.size()), std::nullopt, Guard::tt(), std::nullopt, Replace{1},
         detail::a_state(m.initial, first_scanned, 1)},
        "4");

    // One machine step from every (state, scanned symbol, cell): write b'
    // into the cell's tape register and guess the next scanned symbol.
    const auto move_offset = [](turing::Move mv) { return mv == turing::Move::Right ? 1 : -1; };
    for (const std::string& q : m.states)
        for (int i = 1; i <= gamma; ++i) {
            const turing::TmRule& rule = m.transition.at({q, i});
            for (int j = 1; j <= p; ++j) {
                const int moved = j + move_offset(rule.move);
                if (moved > p) continue;  // space bound keeps accepting runs away
                const int cell = std::max(1, moved);
                for (int guess = 1; guess <= gamma; ++guess)
                    add({detail::a_state(q, i, j), std::nullopt, Guard::reg_eq(rule.write), gamma + j,
                         Replace{1}, detail::b_state(rule.to, guess, cell)},
                        "5");
            }
        }

    // Verify the guessed symbol against the tape register of the new cell.
    for (const std::string& q : m.states)
        for (int guess = 1; guess <= gamma; ++guess)
            for (int j = 1; j <= p; ++j)
                add({detail::b_state(q, guess, j), std::nullopt,
                     Guard::conj(Guard::reg_eq(guess), Guard::reg_eq(gamma + j)), std::nullopt,
                     Replace{1}, detail::a_state(q, guess, j)},
                    "6");

    // Accept: read the one-letter target word and drain the stack.
    for (const std::string& q : m.states) {
        if (!m.accepting.count(q)) continue;
        for (int i = 1; i <= gamma; ++i)
            for (int j = 1; j <= p; ++j)
                add({detail::a_state(q, i, j), "a", Guard::reg_eq(1), std::nullopt, Pop{}, "E"}, "8");
    }

    report.target_word = {Letter{"a", DataValue::bottom()}};
    return report;
}

// ---------------------------------------------------------------------------
// Epsilon relabeling
// ---------------------------------------------------------------------------

/// Relabels every epsilon rule with `label` (added to the alphabet when
/// missing), leaving everything else unchanged.  The result is epsilon-free
/// with exactly as many rules, and its language is empty iff the input's
/// is: each epsilon step of a run corresponds to reading one extra (label,
/// chosen-value) letter.
inline Rpda de_epsilonize(const Rpda& a, const std::string& label = "a") {
    if (label.empty()) throw std::invalid_argument("replacement label must be nonempty");
    Rpda out = a;
    if (!out.has_symbol(label)) out.alphabet.push_back(label);
    for (TransitionRule& rule : out.rules)
        if (rule.is_epsilon()) rule.label = label;
    return out;
}

}  // namespace rpda::reduction
