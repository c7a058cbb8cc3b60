#pragma once

// Command-line front end.  run_command implements the `rpda` tool on
// explicit streams so tests can drive it in-process; tools/rpda_main.cpp
// wraps it over the real stdio.
//
// Exit codes: 0 accepted/found/ok, 1 rejected/not-found, 2 unknown (budget
// exhausted), 64 usage error, 65 malformed or invalid input.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpda/core.hpp"
#include "rpda/harness.hpp"
#include "rpda/io.hpp"
#include "rpda/membership.hpp"
#include "rpda/reduction.hpp"
#include "rpda/turing.hpp"

namespace rpda::cli {

namespace detail {

inline constexpr int kExitAccepted = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitBadInput = 65;

inline std::string read_stream(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Reads a file, or standard input when the path is `-`.
inline std::string read_input(const std::string& path, std::istream& in) {
    if (path == "-") return read_stream(in);
    std::ifstream file(path);
    if (!file) throw io::ParseError("cannot open '" + path + "'");
    return read_stream(file);
}

/// Input symbols of a machine as written on the command line: integers
/// separated by spaces or commas, empty for the empty word.
inline std::vector<int> parse_tape_input(const std::string& text) {
    std::string spaced = text;
    std::replace(spaced.begin(), spaced.end(), ',', ' ');
    std::vector<int> symbols;
    for (const std::string& token : io::detail::split_words(spaced))
        symbols.push_back(io::detail::parse_int(token, "input symbol", 0));
    return symbols;
}

inline nlohmann::json trace_json(const Trace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const TraceStep& step : trace)
        steps.push_back({{"rule", step.rule},
                         {"value", io::print_value(step.value)},
                         {"state", step.after.state},
                         {"height", step.after.stack.size()}});
    return steps;
}

inline void print_trace(std::ostream& out, const Rpda& a, const Trace& trace) {
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const TraceStep& step = trace[i];
        out << "  " << (i + 1) << ". rule " << step.rule << " (" << io::print_rule(a.rules[step.rule])
            << ") value " << io::print_value(step.value) << " height " << step.after.stack.size()
            << "\n";
    }
}

inline nlohmann::json report_json(const char* command, const reduction::ReductionReport& report) {
    return nlohmann::json{{"command", command},
                          {"verdict", "ok"},
                          {"automaton", io::print_rpda(report.generated)},
                          {"target_word", io::print_word(report.target_word)},
                          {"provenance", report.provenance},
                          {"states", report.generated.states.size()},
                          {"rules", report.generated.rules.size()}};
}

inline void print_report(std::ostream& out, const reduction::ReductionReport& report) {
    out << io::print_rpda(report.generated);
    out << "# target-word: " << io::print_word(report.target_word) << "\n";
}

}  // namespace detail

/// Runs one `rpda` invocation (without the program name) against the given
/// streams and returns the exit code.
inline int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                       std::ostream& err) {
    CLI::App app{"register pushdown automata workbench"};
    app.name("rpda");
    app.require_subcommand(1);

    std::string file;
    std::string word_text;
    std::string label = "a";
    std::string tape_text;
    std::size_t max_len = 0;
    std::size_t max_height = 0;
    std::size_t space = 0;
    std::optional<std::size_t> max_stack;
    std::optional<std::size_t> max_eps;
    std::optional<std::size_t> max_steps;
    bool as_json = false;
    bool with_trace = false;

    auto add_file = [&](CLI::App* cmd, const char* what) {
        cmd->add_option("file", file, what)->required();
    };
    auto add_json = [&](CLI::App* cmd) { cmd->add_flag("--json", as_json, "emit JSON"); };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--max-stack", max_stack, "stack height budget (general automata)");
        cmd->add_option("--max-eps", max_eps, "per-path epsilon step budget (general automata)");
        cmd->add_option("--max-steps", max_steps, "total expansion budget (general automata)");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "print the subclass of an automaton");
    add_file(classify_cmd, "automaton file, or - for stdin");
    add_json(classify_cmd);

    CLI::App* member_cmd = app.add_subcommand("member", "decide membership of a data word");
    add_file(member_cmd, "automaton file, or - for stdin");
    member_cmd->add_option("--word", word_text, "data word, e.g. 'a:d0 b:_'")->required();
    member_cmd->add_flag("--trace", with_trace, "print the accepting run");
    add_budget(member_cmd);
    add_json(member_cmd);

    CLI::App* witness_cmd = app.add_subcommand("witness", "search for an accepted word");
    add_file(witness_cmd, "automaton file, or - for stdin");
    witness_cmd->add_option("--max-len", max_len, "maximum word length")->required();
    add_budget(witness_cmd);
    add_json(witness_cmd);

    CLI::App* runs_cmd = app.add_subcommand("runs", "enumerate accepting runs within bounds");
    add_file(runs_cmd, "automaton file, or - for stdin");
    runs_cmd->add_option("--word", word_text, "data word")->required();
    runs_cmd->add_option("--max-len", max_len, "maximum run length")->required();
    runs_cmd->add_option("--max-height", max_height, "maximum stack height")->required();
    add_json(runs_cmd);

    CLI::App* reduce_tm_cmd =
        app.add_subcommand("reduce-tm", "compile a space-bounded machine run into an automaton");
    add_file(reduce_tm_cmd, "machine file, or - for stdin");
    reduce_tm_cmd->add_option("--input", tape_text, "input symbols, e.g. '2 2' (empty for none)");
    reduce_tm_cmd->add_option("--space", space, "tape cell bound")->required();
    add_json(reduce_tm_cmd);

    CLI::App* reduce_cnf_cmd =
        app.add_subcommand("reduce-cnf", "compile a DIMACS 3CNF formula into an automaton");
    add_file(reduce_cnf_cmd, "DIMACS file, or - for stdin");
    add_json(reduce_cnf_cmd);

    CLI::App* de_eps_cmd = app.add_subcommand("de-eps", "relabel epsilon rules with a symbol");
    add_file(de_eps_cmd, "automaton file, or - for stdin");
    de_eps_cmd->add_option("--label", label, "replacement symbol (default a)");
    add_json(de_eps_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : detail::kExitUsage;
    }

    try {
        if (*classify_cmd) {
            Rpda a = io::parse_rpda(detail::read_input(file, in));
            SubclassLabel subclass = classify(a);
            if (as_json)
                out << nlohmann::json{{"command", "classify"}, {"verdict", to_string(subclass)}}.dump()
                    << "\n";
            else
                out << to_string(subclass) << "\n";
            return detail::kExitAccepted;
        }

        if (*member_cmd) {
            Rpda a = io::parse_rpda(detail::read_input(file, in));
            Word w = io::parse_word(word_text);
            membership::MembershipVerdict verdict;
            switch (classify(a)) {
                case SubclassLabel::EpsilonFree:
                case SubclassLabel::Growing: verdict = membership::member_growing(a, w); break;
                case SubclassLabel::NonDecreasing: verdict = membership::member_non_decreasing(a, w); break;
                case SubclassLabel::General: {
                    membership::SearchBudget budget = membership::default_budget(a, w);
                    if (max_stack) budget.max_stack_height = max_stack;
                    if (max_eps) budget.max_epsilon_steps = max_eps;
                    if (max_steps) budget.max_total_steps = max_steps;
                    verdict = membership::member_general(a, w, budget);
                    break;
                }
            }
            if (as_json) {
                nlohmann::json result{{"command", "member"},
                                      {"verdict", membership::to_string(verdict.outcome)}};
                if (verdict.outcome == membership::Membership::Accepted)
                    result["trace"] = detail::trace_json(verdict.run);
                if (verdict.outcome == membership::Membership::Unknown) result["note"] = verdict.note;
                out << result.dump() << "\n";
            } else {
                out << membership::to_string(verdict.outcome) << "\n";
                if (verdict.outcome == membership::Membership::Unknown) out << "note: " << verdict.note << "\n";
                if (with_trace && verdict.outcome == membership::Membership::Accepted)
                    detail::print_trace(out, a, verdict.run);
            }
            switch (verdict.outcome) {
                case membership::Membership::Accepted: return detail::kExitAccepted;
                case membership::Membership::Rejected: return detail::kExitRejected;
                case membership::Membership::Unknown: return detail::kExitUnknown;
            }
        }

        if (*witness_cmd) {
            Rpda a = io::parse_rpda(detail::read_input(file, in));
            membership::SearchBudget budget = harness::witness_budget(a, max_len);
            if (max_stack) budget.max_stack_height = max_stack;
            if (max_eps) budget.max_epsilon_steps = max_eps;
            if (max_steps) budget.max_total_steps = max_steps;
            std::optional<Word> witness = harness::witness_search(a, max_len, budget);
            if (as_json) {
                nlohmann::json result{{"command", "witness"},
                                      {"verdict", witness ? "found" : "none"}};
                if (witness) result["word"] = io::print_word(*witness);
                out << result.dump() << "\n";
            } else if (witness) {
                out << "witness: " << io::print_word(*witness) << "\n";
            } else {
                out << "no witness within bounds\n";
            }
            return witness ? detail::kExitAccepted : detail::kExitRejected;
        }

        if (*runs_cmd) {
            Rpda a = io::parse_rpda(detail::read_input(file, in));
            Word w = io::parse_word(word_text);
            std::vector<Trace> runs = harness::enumerate_accepting_runs(a, w, max_len, max_height);
            if (as_json) {
                nlohmann::json all = nlohmann::json::array();
                for (const Trace& run : runs) all.push_back(detail::trace_json(run));
                out << nlohmann::json{{"command", "runs"}, {"count", runs.size()}, {"runs", all}}.dump()
                    << "\n";
            } else {
                out << runs.size() << " accepting run" << (runs.size() == 1 ? "" : "s") << "\n";
                for (std::size_t i = 0; i < runs.size(); ++i) {
                    out << "run " << (i + 1) << ":\n";
                    detail::print_trace(out, a, runs[i]);
                }
            }
            return runs.empty() ? detail::kExitRejected : detail::kExitAccepted;
        }

        if (*reduce_tm_cmd) {
            turing::TuringMachine m = io::parse_tm(detail::read_input(file, in));
            std::vector<int> input = detail::parse_tape_input(tape_text);
            if (!turing::check_space_bound(m, input, space)) {
                err << "error: machine exceeds the space bound " << space << " on the given input\n";
                return detail::kExitRejected;
            }
            reduction::ReductionReport report = reduction::tm_to_rpda(m, input, space);
            if (as_json)
                out << detail::report_json("reduce-tm", report).dump() << "\n";
            else
                detail::print_report(out, report);
            return detail::kExitAccepted;
        }

        if (*reduce_cnf_cmd) {
            reduction::CnfFormula phi = io::parse_cnf(detail::read_input(file, in));
            reduction::ReductionReport report = reduction::cnf_to_rpda(phi);
            if (as_json)
                out << detail::report_json("reduce-cnf", report).dump() << "\n";
            else
                detail::print_report(out, report);
            return detail::kExitAccepted;
        }

        if (*de_eps_cmd) {
            Rpda a = io::parse_rpda(detail::read_input(file, in));
            Rpda relabeled = reduction::de_epsilonize(a, label);
            if (as_json)
                out << nlohmann::json{{"command", "de-eps"},
                                      {"verdict", "ok"},
                                      {"automaton", io::print_rpda(relabeled)}}
                           .dump()
                    << "\n";
            else
                out << io::print_rpda(relabeled);
            return detail::kExitAccepted;
        }
    } catch (const io::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return detail::kExitBadInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return detail::kExitBadInput;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return detail::kExitBadInput;
    }
    err << "error: no subcommand handled\n";
    return detail::kExitUsage;
}

}  // namespace rpda::cli
