#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "isd/denotational.hpp"
#include "isd/dsl.hpp"

namespace isd::cli {

namespace {

constexpr std::size_t kDefaultMaxLen = 6;
constexpr std::size_t kGuardedMaxLen = 10;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

SourceDocument load(const std::string& path) { return parse_interaction(read_file(path)); }

void require_identifier(const std::string& lifeline) {
    if (!is_valid_identifier(lifeline)) {
        throw UsageError("invalid lifeline identifier '" + lifeline + "'");
    }
}

void print_step(std::ostream& out, const Step& s) {
    out << render(s.action) << " → " << render_interaction(s.successor) << '\n';
}

struct Options {
    std::string file;
    std::size_t max_len = kDefaultMaxLen;
    bool allow_long = false;
    std::string semantics = "op";
    std::string trace;
    std::string trace_file;
    bool witness = false;
    std::string lifeline;
    std::string query;
    std::uint64_t seed = 42;
    std::size_t cases = 500;
    unsigned max_depth = 4;
    std::size_t equiv_max_len = kDefaultMaxLen;
};

int cmd_fmt(const Options& o, std::ostream& out) {
    out << render_interaction(load(o.file).interaction) << '\n';
    return kSuccess;
}

int cmd_traces(const Options& o, std::ostream& out) {
    if (o.max_len > kGuardedMaxLen && !o.allow_long) {
        throw UsageError("--max-len above " + std::to_string(kGuardedMaxLen) +
                         " requires --allow-long");
    }
    const auto doc = load(o.file);
    const TraceSet traces =
        o.semantics == "den"
            ? sigma_d(DenotationRequest{doc.interaction, Bound{o.max_len}, doc.signature})
            : sigma_o_up_to(doc.interaction, o.max_len);
    out << render(traces);
    return kSuccess;
}

int cmd_check(const Options& o, std::ostream& out) {
    if (o.trace.empty() == o.trace_file.empty()) {
        throw UsageError("exactly one of --trace and --trace-file is required");
    }
    const auto doc = load(o.file);
    if (!o.trace.empty()) {
        Trace t;
        try {
            t = parse_trace(o.trace);
        } catch (const ParseError& e) {
            throw UsageError("bad --trace: " + std::string(e.what()));
        }
        const Verdict v = accepts(doc.interaction, t);
        out << (v.accepted ? "accepted" : "rejected") << '\n';
        if (o.witness && v.witness) {
            for (const auto& s : *v.witness) {
                print_step(out, s);
            }
        }
        return v.accepted ? kSuccess : kNegative;
    }
    std::vector<Trace> batch;
    try {
        batch = parse_trace_lines(read_file(o.trace_file));
    } catch (const ParseError& e) {
        throw UsageError(o.trace_file + ":" + e.what());
    }
    bool all = true;
    for (const auto& t : batch) {
        const Verdict v = accepts(doc.interaction, t);
        all = all && v.accepted;
        out << (v.accepted ? "accepted " : "rejected ") << render(t) << '\n';
        if (o.witness && v.witness) {
            for (const auto& s : *v.witness) {
                out << "  ";
                print_step(out, s);
            }
        }
    }
    return all ? kSuccess : kNegative;
}

int cmd_frontier(const Options& o, std::ostream& out) {
    for (const auto& s : next_steps(load(o.file).interaction)) {
        print_step(out, s);
    }
    return kSuccess;
}

int cmd_prune(const Options& o, std::ostream& out) {
    require_identifier(o.lifeline);
    const auto doc = load(o.file);
    if (auto pruned = prune(doc.interaction, o.lifeline)) {
        out << render_interaction(*pruned) << '\n';
        return kSuccess;
    }
    out << "collision: interaction does not evade lifeline " << o.lifeline << '\n';
    return kNegative;
}

int cmd_eval(const Options& o, std::ostream& out) {
    const auto doc = load(o.file);
    bool result = false;
    if (o.query == "terminates") {
        result = terminates(doc.interaction);
    } else {
        if (o.lifeline.empty()) {
            throw UsageError("--query evades requires --lifeline");
        }
        require_identifier(o.lifeline);
        result = evades(doc.interaction, o.lifeline);
    }
    out << (result ? "true" : "false") << '\n';
    return result ? kSuccess : kNegative;
}

} // namespace

int run_equiv(const harness::EquivConfig& cfg, std::ostream& out, std::ostream& err,
              const StepFunction& steps) {
    if (cfg.cases == 0) {
        err << "error: --cases must be at least 1\n";
        return kUsageError;
    }
    const auto report = harness::run_differential(cfg, steps);
    for (const auto& c : report.cases) {
        out << "case " << c.index << " seed=" << c.seed << ' ';
        if (c.discrepancy) {
            out << "DISCREPANCY " << c.discrepancy->to_json() << '\n';
        } else {
            out << "ok traces=" << c.trace_count << ' ' << c.term << '\n';
        }
    }
    out << report.equivalent() << '/' << report.cases.size() << " equivalent\n";
    if (!report.ok()) {
        err << "error: operational and denotational semantics disagree on "
            << report.cases.size() - report.equivalent() << " case(s)\n";
        return kInternalError;
    }
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trace semantics of interaction terms"};
    app.require_subcommand(1);
    Options o;

    auto* fmt = app.add_subcommand("fmt", "Print the canonical form of an interaction");
    fmt->add_option("file", o.file, "Interaction document (.isd), '-' for stdin")->required();

    auto* traces = app.add_subcommand("traces", "List accepted traces up to a length bound");
    traces->add_option("file", o.file, "Interaction document")->required();
    traces->add_option("--max-len", o.max_len, "Maximum trace length")
        ->capture_default_str();
    traces->add_flag("--allow-long", o.allow_long,
                     "Permit --max-len above " + std::to_string(kGuardedMaxLen));
    traces->add_option("--semantics", o.semantics, "op (small-step) or den (denotational)")
        ->check(CLI::IsMember({"op", "den"}))
        ->capture_default_str();

    auto* check = app.add_subcommand("check", "Decide whether traces are accepted");
    check->add_option("file", o.file, "Interaction document")->required();
    check->add_option("--trace", o.trace, "Trace, e.g. l1!m1.l2?m1 or eps");
    check->add_option("--trace-file", o.trace_file, "File with one trace per line");
    check->add_flag("--witness", o.witness, "Print the execution steps of accepted traces");

    auto* frontier = app.add_subcommand("frontier", "List the immediate execution steps");
    frontier->add_option("file", o.file, "Interaction document")->required();

    auto* prune_cmd = app.add_subcommand("prune", "Prune an interaction w.r.t. a lifeline");
    prune_cmd->add_option("file", o.file, "Interaction document")->required();
    prune_cmd->add_option("--lifeline", o.lifeline, "Lifeline to evade")->required();

    auto* eval = app.add_subcommand("eval", "Evaluate the termination or evasion predicate");
    eval->add_option("file", o.file, "Interaction document")->required();
    eval->add_option("--query", o.query, "terminates or evades")
        ->required()
        ->check(CLI::IsMember({"terminates", "evades"}));
    eval->add_option("--lifeline", o.lifeline, "Lifeline for the evades query");

    auto* equiv = app.add_subcommand("equiv", "Differential test of both semantics");
    equiv->add_option("--seed", o.seed, "Root seed")->capture_default_str();
    equiv->add_option("--cases", o.cases, "Number of random terms")->capture_default_str();
    equiv->add_option("--max-depth", o.max_depth, "Maximum term depth")->capture_default_str();
    equiv->add_option("--max-len", o.equiv_max_len, "Trace length bound")->capture_default_str();

    std::vector<const char*> argv{"isd"};
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kSuccess;
        }
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*fmt) return cmd_fmt(o, out);
        if (*traces) return cmd_traces(o, out);
        if (*check) return cmd_check(o, out);
        if (*frontier) return cmd_frontier(o, out);
        if (*prune_cmd) return cmd_prune(o, out);
        if (*eval) return cmd_eval(o, out);
        if (*equiv) {
            harness::EquivConfig cfg;
            cfg.seed = o.seed;
            cfg.cases = o.cases;
            cfg.max_depth = o.max_depth;
            cfg.max_len = o.equiv_max_len;
            const StepFunction steps = [](const Interaction& i) { return next_steps(i); };
            return run_equiv(cfg, out, err, steps);
        }
    } catch (const ParseError& e) {
        err << o.file << ':' << e.what() << '\n';
        return kUsageError;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kUsageError;
}

} // namespace isd::cli
