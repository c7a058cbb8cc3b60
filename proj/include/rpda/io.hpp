#pragma once

// Textual formats.  One line per entity, '#' starts a comment, whitespace
// separates tokens, and the bottom value is written `_`.  See
// docs/formats.md for the grammars.  Parsers throw ParseError with the
// offending line number; parse_rpda and parse_tm additionally validate the
// result and report structural diagnostics as parse errors.

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpda/core.hpp"
#include "rpda/reduction.hpp"
#include "rpda/turing.hpp"

namespace rpda::io {

class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    /// 1-based line of the offending input, or 0 when unknown.
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline std::vector<std::string> split_words(const std::string& line) {
    std::vector<std::string> words;
    std::istringstream in(line);
    std::string word;
    while (in >> word) words.push_back(word);
    return words;
}

inline std::string strip_comment(const std::string& line) {
    std::size_t hash = line.find('#');
    return hash == std::string::npos ? line : line.substr(0, hash);
}

inline int parse_int(const std::string& token, const char* what, int line) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(token, &used);
    } catch (const std::exception&) {
        throw ParseError(std::string(what) + ": expected an integer, got '" + token + "'", line);
    }
    if (used != token.size())
        throw ParseError(std::string(what) + ": expected an integer, got '" + token + "'", line);
    return value;
}

inline void add_unique(std::vector<std::string>& items, const std::string& item) {
    for (const std::string& existing : items)
        if (existing == item) return;
    items.push_back(item);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Values and words
// ---------------------------------------------------------------------------

inline std::string print_value(const DataValue& v) { return v.is_bottom() ? "_" : v.name(); }

/// Inverse of print_value: `_` is bottom, anything else a named value.
inline DataValue parse_value(const std::string& token) {
    if (token.empty()) throw ParseError("empty data value token");
    return token == "_" ? DataValue::bottom() : DataValue::named(token);
}

/// Words print as space-separated symbol:value pairs, e.g. `a:d0 b:_`;
/// the empty word prints as the empty string.
inline std::string print_word(const Word& w) {
    std::string out;
    for (const Letter& letter : w) {
        if (!out.empty()) out += ' ';
        out += letter.symbol + ":" + print_value(letter.value);
    }
    return out;
}

inline Word parse_word(const std::string& text) {
    Word w;
    for (const std::string& token : detail::split_words(text)) {
        std::size_t colon = token.find(':');
        if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
            throw ParseError("expected symbol:value, got '" + token + "'");
        w.push_back(Letter{token.substr(0, colon), parse_value(token.substr(colon + 1))});
    }
    return w;
}

// ---------------------------------------------------------------------------
// Guards
// ---------------------------------------------------------------------------

/// Grammar:  tt | ff | xI= | xI!= | top= | top!= | !G | (G & G) | (G | G).
/// The sugared forms print whenever the tree matches them, so printed
/// guards parse back to structurally equal trees.
inline std::string print_guard(const Guard& g) {
    switch (g.kind()) {
        case Guard::Kind::True: return "tt";
        case Guard::Kind::RegEq: return "x" + std::to_string(g.reg()) + "=";
        case Guard::Kind::TopEq: return "top=";
        case Guard::Kind::Or: return "(" + print_guard(g.left()) + " | " + print_guard(g.right()) + ")";
        case Guard::Kind::Not: {
            Guard inner = g.left();
            switch (inner.kind()) {
                case Guard::Kind::True: return "ff";
                case Guard::Kind::RegEq: return "x" + std::to_string(inner.reg()) + "!=";
                case Guard::Kind::TopEq: return "top!=";
                case Guard::Kind::Or:
                    if (inner.left().kind() == Guard::Kind::Not && inner.right().kind() == Guard::Kind::Not)
                        return "(" + print_guard(inner.left().left()) + " & " +
                               print_guard(inner.right().left()) + ")";
                    return "!" + print_guard(inner);
                default: return "!" + print_guard(inner);
            }
        }
    }
    throw std::logic_error("unreachable guard kind");
}

namespace detail {

/// Splits a guard string into parentheses, connectives and atoms; `!` sticks
/// to the following atom characters, so `x1!=` and `!tt` are single tokens
/// while `!!` before `(` stands alone as a run of negations.
inline std::vector<std::string> guard_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        if (c == ' ' || c == '\t') {
            flush();
        } else if (c == '(' || c == ')' || c == '&' || c == '|') {
            flush();
            tokens.push_back(std::string(1, c));
        } else {
            current += c;
        }
    }
    flush();
    return tokens;
}

inline Guard parse_guard_atom(const std::string& atom, int line) {
    if (atom == "tt") return Guard::tt();
    if (atom == "ff") return Guard::ff();
    if (atom == "top=") return Guard::top_eq();
    if (atom == "top!=") return Guard::top_ne();
    if (atom.size() >= 3 && atom.front() == 'x') {
        bool negated = atom.ends_with("!=");
        bool plain = !negated && atom.ends_with("=");
        if (negated || plain) {
            std::string digits = atom.substr(1, atom.size() - 1 - (negated ? 2 : 1));
            if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
                int reg = parse_int(digits, "guard register", line);
                return negated ? Guard::reg_ne(reg) : Guard::reg_eq(reg);
            }
        }
    }
    throw ParseError("unknown guard atom '" + atom + "'", line);
}

inline Guard parse_guard_expr(const std::vector<std::string>& tokens, std::size_t& pos, int line) {
    if (pos >= tokens.size()) throw ParseError("unexpected end of guard", line);
    const std::string token = tokens[pos++];
    if (token == "(") {
        Guard lhs = parse_guard_expr(tokens, pos, line);
        if (pos >= tokens.size() || (tokens[pos] != "&" && tokens[pos] != "|"))
            throw ParseError("expected '&' or '|' in guard", line);
        const std::string op = tokens[pos++];
        Guard rhs = parse_guard_expr(tokens, pos, line);
        if (pos >= tokens.size() || tokens[pos] != ")")
            throw ParseError("expected ')' in guard", line);
        ++pos;
        return op == "&" ? Guard::conj(lhs, rhs) : Guard::disj(lhs, rhs);
    }
    if (token == ")" || token == "&" || token == "|")
        throw ParseError("unexpected '" + token + "' in guard", line);
    std::size_t bangs = 0;
    while (bangs < token.size() && token[bangs] == '!') ++bangs;
    Guard g = bangs == token.size()
                  ? parse_guard_expr(tokens, pos, line)  // negation run before ( or atom
                  : parse_guard_atom(token.substr(bangs), line);
    for (std::size_t i = 0; i < bangs; ++i) g = Guard::neg(g);
    return g;
}

}  // namespace detail

inline Guard parse_guard(const std::string& text, int line = 0) {
    std::vector<std::string> tokens = detail::guard_tokens(text);
    std::size_t pos = 0;
    Guard g = detail::parse_guard_expr(tokens, pos, line);
    if (pos != tokens.size()) throw ParseError("trailing tokens after guard", line);
    return g;
}

// ---------------------------------------------------------------------------
// Automata
// ---------------------------------------------------------------------------

/// One rule per line: `FROM (label|eps) GUARD [load I] (pop | replace J |
/// push J1 J2) -> TO`.
inline std::string print_rule(const TransitionRule& r) {
    std::string out = r.from + ' ' + (r.label ? *r.label : "eps") + ' ' + print_guard(r.guard);
    if (r.load) out += " load " + std::to_string(*r.load);
    if (std::holds_alternative<Pop>(r.action)) {
        out += " pop";
    } else if (const Replace* rep = std::get_if<Replace>(&r.action)) {
        out += " replace " + std::to_string(rep->reg);
    } else {
        const Push& push = std::get<Push>(r.action);
        out += " push " + std::to_string(push.top) + " " + std::to_string(push.below);
    }
    out += " -> " + r.to;
    return out;
}

/// Header lines (`registers K`, `initial STATE`, optional repeatable
/// `alphabet ...` and `states ...`) followed by rule lines.  States and
/// symbols mentioned only in rules are added to the respective sets in
/// order of appearance, so the `states`/`alphabet` headers are needed only
/// for states or symbols no rule mentions.
inline std::string print_rpda(const Rpda& a) {
    std::string out = "registers " + std::to_string(a.registers) + "\n";
    out += "initial " + a.initial + "\n";
    if (!a.alphabet.empty()) {
        out += "alphabet";
        for (const std::string& s : a.alphabet) out += ' ' + s;
        out += '\n';
    }
    if (!a.states.empty()) {
        out += "states";
        for (const std::string& s : a.states) out += ' ' + s;
        out += '\n';
    }
    for (const TransitionRule& r : a.rules) out += print_rule(r) + "\n";
    return out;
}

namespace detail {

inline TransitionRule parse_rule_words(const std::vector<std::string>& words, int line) {
    if (words.size() < 2) throw ParseError("rule needs at least a source state and a label", line);
    TransitionRule r;
    r.from = words[0];
    if (words[1] != "eps") r.label = words[1];

    std::size_t pos = 2;
    std::string guard_text;
    auto is_keyword = [](const std::string& w) {
        return w == "load" || w == "pop" || w == "replace" || w == "push" || w == "->";
    };
    while (pos < words.size() && !is_keyword(words[pos])) {
        if (!guard_text.empty()) guard_text += ' ';
        guard_text += words[pos++];
    }
    r.guard = guard_text.empty() ? Guard::tt() : parse_guard(guard_text, line);

    if (pos < words.size() && words[pos] == "load") {
        if (++pos >= words.size()) throw ParseError("'load' needs a register index", line);
        r.load = parse_int(words[pos++], "load register", line);
    }
    if (pos >= words.size() || words[pos] == "->")
        throw ParseError("missing stack action (pop, replace or push)", line);
    const std::string action = words[pos++];
    if (action == "pop") {
        r.action = Pop{};
    } else if (action == "replace") {
        if (pos >= words.size()) throw ParseError("'replace' needs a register index", line);
        r.action = Replace{parse_int(words[pos++], "replace register", line)};
    } else if (action == "push") {
        if (pos + 1 >= words.size()) throw ParseError("'push' needs two register indices", line);
        int top = parse_int(words[pos++], "push register", line);
        int below = parse_int(words[pos++], "push register", line);
        r.action = Push{top, below};
    } else {
        throw ParseError("unknown stack action '" + action + "'", line);
    }
    if (pos >= words.size() || words[pos] != "->") throw ParseError("expected '->'", line);
    if (++pos >= words.size()) throw ParseError("expected target state after '->'", line);
    r.to = words[pos++];
    if (pos != words.size()) throw ParseError("unexpected trailing tokens after target state", line);
    return r;
}

}  // namespace detail

inline Rpda parse_rpda(std::istream& in) {
    Rpda a;
    std::vector<std::string> declared_states;
    std::vector<std::string> declared_alphabet;
    bool saw_registers = false;
    bool saw_initial = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> words = detail::split_words(detail::strip_comment(line));
        if (words.empty()) continue;
        const std::string& head = words[0];
        if (head == "registers") {
            if (saw_registers) throw ParseError("duplicate 'registers' header", lineno);
            if (words.size() != 2) throw ParseError("'registers' needs exactly one count", lineno);
            a.registers = detail::parse_int(words[1], "register count", lineno);
            saw_registers = true;
        } else if (head == "initial") {
            if (saw_initial) throw ParseError("duplicate 'initial' header", lineno);
            if (words.size() != 2) throw ParseError("'initial' needs exactly one state", lineno);
            a.initial = words[1];
            saw_initial = true;
        } else if (head == "alphabet") {
            for (std::size_t i = 1; i < words.size(); ++i)
                detail::add_unique(declared_alphabet, words[i]);
        } else if (head == "states") {
            for (std::size_t i = 1; i < words.size(); ++i) detail::add_unique(declared_states, words[i]);
        } else {
            a.rules.push_back(detail::parse_rule_words(words, lineno));
        }
    }
    if (!saw_registers) throw ParseError("missing 'registers' header");
    if (!saw_initial) throw ParseError("missing 'initial' header");

    a.states = declared_states;
    detail::add_unique(a.states, a.initial);
    a.alphabet = declared_alphabet;
    for (const TransitionRule& r : a.rules) {
        detail::add_unique(a.states, r.from);
        detail::add_unique(a.states, r.to);
        if (r.label) detail::add_unique(a.alphabet, *r.label);
    }

    std::vector<std::string> diags = validate(a);
    if (!diags.empty()) {
        std::string message = "invalid automaton";
        for (const std::string& d : diags) message += "; " + d;
        throw ParseError(message);
    }
    return a;
}

inline Rpda parse_rpda(const std::string& text) {
    std::istringstream in(text);
    return parse_rpda(in);
}

// ---------------------------------------------------------------------------
// Turing machines
// ---------------------------------------------------------------------------

/// Headers `states ...`, `gamma N`, `sigma ...`, `initial STATE`,
/// `accepting ...` plus one `delta FROM SCANNED -> TO WRITTEN L|R` line per
/// transition; the transition function must end up total.
inline turing::TuringMachine parse_tm(std::istream& in) {
    turing::TuringMachine m;
    bool saw_gamma = false;
    bool saw_initial = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> words = detail::split_words(detail::strip_comment(line));
        if (words.empty()) continue;
        const std::string& head = words[0];
        if (head == "states") {
            for (std::size_t i = 1; i < words.size(); ++i) detail::add_unique(m.states, words[i]);
        } else if (head == "gamma") {
            if (saw_gamma) throw ParseError("duplicate 'gamma' header", lineno);
            if (words.size() != 2) throw ParseError("'gamma' needs exactly one size", lineno);
            m.gamma_size = detail::parse_int(words[1], "tape alphabet size", lineno);
            saw_gamma = true;
        } else if (head == "sigma") {
            for (std::size_t i = 1; i < words.size(); ++i)
                m.input_symbols.push_back(detail::parse_int(words[i], "input symbol", lineno));
        } else if (head == "initial") {
            if (saw_initial) throw ParseError("duplicate 'initial' header", lineno);
            if (words.size() != 2) throw ParseError("'initial' needs exactly one state", lineno);
            m.initial = words[1];
            saw_initial = true;
        } else if (head == "accepting") {
            for (std::size_t i = 1; i < words.size(); ++i) m.accepting.insert(words[i]);
        } else if (head == "delta") {
            if (words.size() != 7 || words[3] != "->")
                throw ParseError("expected 'delta FROM SCANNED -> TO WRITTEN L|R'", lineno);
            std::string from = words[1];
            int scanned = detail::parse_int(words[2], "scanned symbol", lineno);
            turing::TmRule rule;
            rule.to = words[4];
            rule.write = detail::parse_int(words[5], "written symbol", lineno);
            if (words[6] == "L") {
                rule.move = turing::Move::Left;
            } else if (words[6] == "R") {
                rule.move = turing::Move::Right;
            } else {
                throw ParseError("move must be 'L' or 'R'", lineno);
            }
            if (!m.transition.emplace(std::make_pair(from, scanned), rule).second)
                throw ParseError("duplicate delta for (" + from + "," + words[2] + ")", lineno);
        } else {
            throw ParseError("unknown directive '" + head + "'", lineno);
        }
    }
    if (!saw_gamma) throw ParseError("missing 'gamma' header");
    if (!saw_initial) throw ParseError("missing 'initial' header");
    std::vector<std::string> diags = turing::validate(m);
    if (!diags.empty()) {
        std::string message = "invalid machine";
        for (const std::string& d : diags) message += "; " + d;
        throw ParseError(message);
    }
    return m;
}

inline turing::TuringMachine parse_tm(const std::string& text) {
    std::istringstream in(text);
    return parse_tm(in);
}

// ---------------------------------------------------------------------------
// CNF formulas (DIMACS)
// ---------------------------------------------------------------------------

/// Standard DIMACS: `c` comment lines, one `p cnf VARS CLAUSES` line, then
/// zero-terminated clauses of one to three literals (shorter clauses are
/// padded by repeating the last literal; more than three is an error).
inline reduction::CnfFormula parse_cnf(std::istream& in) {
    reduction::CnfFormula phi;
    bool saw_problem = false;
    std::size_t declared_clauses = 0;
    std::vector<reduction::Literal> pending;
    std::string line;
    int lineno = 0;
    auto finish_clause = [&](int line_no) {
        if (pending.empty()) throw ParseError("empty clause", line_no);
        if (pending.size() > 3) throw ParseError("clause has more than 3 literals", line_no);
        while (pending.size() < 3) pending.push_back(pending.back());
        if (phi.clauses.size() == declared_clauses)
            throw ParseError("more clauses than declared in the 'p cnf' line", line_no);
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<std::string> words = detail::split_words(line);
        if (words.empty() || words[0] == "c") continue;
        if (words[0] == "p") {
            if (saw_problem) throw ParseError("duplicate 'p cnf' line", lineno);
            if (words.size() != 4 || words[1] != "cnf")
                throw ParseError("expected 'p cnf VARS CLAUSES'", lineno);
            phi.num_vars = detail::parse_int(words[2], "variable count", lineno);
            int clauses = detail::parse_int(words[3], "clause count", lineno);
            if (phi.num_vars < 0 || clauses < 0)
                throw ParseError("'p cnf' counts must be nonnegative", lineno);
            declared_clauses = static_cast<std::size_t>(clauses);
            saw_problem = true;
            continue;
        }
        if (!saw_problem) throw ParseError("clause before the 'p cnf' line", lineno);
        for (const std::string& token : words) {
            int value = detail::parse_int(token, "literal", lineno);
            if (value == 0) {
                finish_clause(lineno);
                continue;
            }
            int var = value < 0 ? -value : value;
            if (var < 1 || var > phi.num_vars)
                throw ParseError("literal " + token + " outside 1.." + std::to_string(phi.num_vars),
                                 lineno);
            pending.push_back(reduction::Literal{var, value < 0});
        }
    }
    if (!pending.empty()) throw ParseError("clause not terminated by 0", lineno);
    if (phi.clauses.size() != declared_clauses)
        throw ParseError("expected " + std::to_string(declared_clauses) + " clauses, got " +
                         std::to_string(phi.clauses.size()));
    return phi;
}

inline reduction::CnfFormula parse_cnf(const std::string& text) {
    std::istringstream in(text);
    return parse_cnf(in);
}

}  // namespace rpda::io
