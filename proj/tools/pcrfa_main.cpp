// Command-line front end: check, compile, translate, run, equiv, enum, audit.
// Exit codes: 0 success/accept/equivalent, 1 reject/counterexample/witnesses,
// 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pcrfa/analysis.hpp"
#include "pcrfa/compiler.hpp"
#include "pcrfa/errors.hpp"
#include "pcrfa/format.hpp"
#include "pcrfa/multihead.hpp"

namespace {

using namespace pcrfa;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

AutomatonDocument load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.good()) throw UsageError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

void store(const std::string& path, const AutomatonDocument& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out.good()) throw UsageError("cannot write '" + path + "'");
    out << serialize(doc);
}

std::string tuple_text(const StateTuple& tuple) {
    std::string out = "(";
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        if (i > 0) out += ",";
        out += tuple[i];
    }
    return out + ")";
}

std::string labels_text(const std::vector<Label>& labels) {
    std::string out = "(";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out += ",";
        out += labels[i].token();
    }
    return out + ")";
}

const char* verdict_word(Verdict verdict) {
    switch (verdict) {
        case Verdict::accept: return "accept";
        case Verdict::reject: return "reject";
        case Verdict::deadlock: return "deadlock";
        case Verdict::divergence: return "divergence";
    }
    return "?";
}

void print_fa_report(const ReversibilityReport& report) {
    std::cout << "deterministic: " << (report.deterministic ? "yes" : "no") << "\n";
    std::cout << "reversible: " << (report.reversible ? "yes" : "no") << "\n";
    for (const DeterminismWitness& w : report.determinism_witnesses) {
        std::cout << "nondeterministic: " << w.state << " on " << w.first.token() << " vs "
                  << w.second.token() << "\n";
    }
    for (const ReversibilityWitness& w : report.reversibility_witnesses) {
        std::cout << "merge: " << w.target << " <-" << w.label.token() << "- {";
        for (std::size_t i = 0; i < w.sources.size(); ++i) {
            if (i > 0) std::cout << ", ";
            std::cout << w.sources[i].first;
        }
        std::cout << "}\n";
    }
}

int cmd_check(const std::string& path) {
    AutomatonDocument doc = load(path);
    switch (doc.kind) {
        case DocKind::dfa:
        case DocKind::rfa: {
            ReversibilityReport report = check(doc.fa());
            print_fa_report(report);
            return report.reversible ? kExitAccept : kExitReject;
        }
        case DocKind::mhrfa: {
            MhReversibilityReport report = check_mh(doc.mh());
            std::cout << "deterministic: " << (report.deterministic ? "yes" : "no") << "\n";
            std::cout << "reversible: " << (report.reversible ? "yes" : "no") << "\n";
            for (const MhDeterminismWitness& w : report.determinism_witnesses) {
                std::cout << "nondeterministic: " << w.state << " on " << labels_text(w.first)
                          << " vs " << labels_text(w.second) << "\n";
            }
            for (const MhReversibilityWitness& w : report.reversibility_witnesses) {
                std::cout << "merge: " << w.target << " <- {";
                for (std::size_t i = 0; i < w.sources.size(); ++i) {
                    if (i > 0) std::cout << ", ";
                    std::cout << w.sources[i].first << " " << labels_text(w.sources[i].second);
                }
                std::cout << "}\n";
            }
            return report.reversible ? kExitAccept : kExitReject;
        }
        case DocKind::pcrfa: {
            const PcrfaSystem& sys = doc.system();
            std::size_t reversible_count = 0;
            for (std::size_t i = 0; i < sys.degree(); ++i) {
                ReversibilityReport report = check(sys.components()[i]);
                if (report.reversible) ++reversible_count;
                std::cout << "component A" << (i + 1)
                          << ": deterministic=" << (report.deterministic ? "yes" : "no")
                          << " reversible=" << (report.reversible ? "yes" : "no") << "\n";
            }
            std::cout << "components reversible: " << reversible_count << "/" << sys.degree()
                      << "\n";
            return reversible_count == sys.degree() ? kExitAccept : kExitReject;
        }
    }
    return kExitError;
}

int cmd_compile(const std::string& path, const std::string& out, bool complete) {
    AutomatonDocument doc = load(path);
    if (doc.kind != DocKind::dfa && doc.kind != DocKind::rfa) {
        throw UsageError("compile expects a dfa file");
    }
    PcrfaSystem sys = compile(doc.fa(), {.complete_with_sink = complete});
    store(out, make_document(std::move(sys)));
    return kExitAccept;
}

int cmd_translate(const std::string& path, const std::string& out, bool strict) {
    AutomatonDocument doc = load(path);
    if (doc.kind != DocKind::mhrfa) throw UsageError("translate expects an mhrfa file");
    PcrfaSystem sys = translate(doc.mh(), {.strict_paper = strict});
    store(out, make_document(std::move(sys)));
    return kExitAccept;
}

void print_trace(const std::vector<StepEvent>& events) {
    for (const StepEvent& event : events) {
        if (const auto* read = std::get_if<ReadStepEvent>(&event)) {
            std::cout << "READ";
            for (std::size_t i = 0; i < read->labels.size(); ++i) {
                std::cout << ' ' << (i + 1) << ':' << read->labels[i].token();
            }
            std::cout << "\n";
        } else if (const auto* comm = std::get_if<CommRoundEvent>(&event)) {
            std::cout << "COMM";
            for (const auto& r : comm->resolutions) {
                std::cout << ' ' << r.querier << "<-" << r.queried << ':' << r.delivered;
            }
            std::cout << "\n";
        } else if (const auto* halt = std::get_if<HaltEvent>(&event)) {
            std::cout << "HALT " << verdict_word(halt->verdict) << "\n";
        }
    }
}

// Replays a multi-head run one transition at a time for tracing.
void print_mh_trace(const MultiHeadRFA& m, const Word& word, const MhRunResult& result) {
    auto w = intern_word(m.alphabet(), word);
    std::string state = m.start();
    std::vector<std::size_t> positions(m.head_count(), 0);
    std::set<std::pair<std::string, std::vector<std::size_t>>> seen;
    for (;;) {
        const MhTransition* chosen = nullptr;
        for (const MhTransition& t : m.transitions()) {
            if (t.from != state) continue;
            bool ok = true;
            for (std::size_t h = 0; h < m.head_count(); ++h) {
                const Label& label = t.labels[h];
                if (label.is_lambda()) continue;
                if (label.is_end_marker()) {
                    if (positions[h] != w.size()) ok = false;
                } else if (positions[h] >= w.size() ||
                           m.alphabet().symbol(w[positions[h]]) != label.symbol_name()) {
                    ok = false;
                }
            }
            if (ok) {
                chosen = &t;
                break;
            }
        }
        if (!chosen) break;
        std::cout << "READ";
        for (std::size_t h = 0; h < m.head_count(); ++h) {
            std::cout << ' ' << (h + 1) << ':' << chosen->labels[h].token();
        }
        std::cout << "\n";
        bool advanced = false;
        for (std::size_t h = 0; h < m.head_count(); ++h) {
            const Label& label = chosen->labels[h];
            if (label.is_lambda() || label.is_end_marker()) continue;
            ++positions[h];
            advanced = true;
        }
        if (advanced) {
            seen.clear();
        } else {
            if (seen.empty()) seen.insert({state, positions});
            if (!seen.insert({chosen->to, positions}).second) {
                state = chosen->to;
                break;
            }
        }
        state = chosen->to;
    }
    const char* verdict = result.accepted                                  ? "accept"
                          : result.reason == FaHaltReason::lambda_divergence ? "divergence"
                                                                             : "reject";
    std::cout << "HALT " << verdict << "\n";
}

int cmd_run(const std::string& path, const std::string& input, bool trace) {
    AutomatonDocument doc = load(path);
    switch (doc.kind) {
        case DocKind::dfa:
        case DocKind::rfa: {
            // The degree-1 system is verdict-identical and carries the trace.
            Word word = parse_word(doc.fa().alphabet(), input);
            SystemRunResult r =
                run_system(PcrfaSystem::degree_one(doc.fa()), word, {.trace = trace});
            if (trace) print_trace(r.trace);
            std::cout << verdict_word(r.verdict) << "\n";
            return r.accepted ? kExitAccept : kExitReject;
        }
        case DocKind::mhrfa: {
            Word word = parse_word(doc.mh().alphabet(), input);
            MhRunResult r = run_mh(doc.mh(), word);
            if (trace) {
                print_mh_trace(doc.mh(), word, r);
            } else {
                std::cout << (r.accepted ? "accept"
                              : r.reason == FaHaltReason::lambda_divergence ? "divergence"
                                                                            : "reject")
                          << "\n";
            }
            return r.accepted ? kExitAccept : kExitReject;
        }
        case DocKind::pcrfa: {
            Word word = parse_word(doc.system().alphabet(), input);
            SystemRunResult r = run_system(doc.system(), word, {.trace = trace});
            if (trace) print_trace(r.trace);
            std::cout << verdict_word(r.verdict) << "\n";
            return r.accepted ? kExitAccept : kExitReject;
        }
    }
    return kExitError;
}

Runner runner_of(const AutomatonDocument& doc) {
    switch (doc.kind) {
        case DocKind::dfa:
        case DocKind::rfa: return make_runner(doc.fa());
        case DocKind::mhrfa: return make_runner(doc.mh());
        case DocKind::pcrfa: return make_runner(doc.system());
    }
    throw UsageError("unsupported document kind");
}

int cmd_equiv(const std::string& a, const std::string& b, std::size_t max_len) {
    Runner ra = runner_of(load(a));
    Runner rb = runner_of(load(b));
    if (ra.alphabet != rb.alphabet) throw UsageError("alphabets differ");
    auto counterexample = equivalent_up_to(ra, rb, max_len);
    if (!counterexample) {
        std::cout << "equivalent up to length " << max_len << "\n";
        return kExitAccept;
    }
    std::cout << "counterexample: " << render_word(ra.alphabet, *counterexample) << "\n";
    return kExitReject;
}

int cmd_enum(const std::string& path, std::size_t max_len) {
    Runner runner = runner_of(load(path));
    for (const Word& w : enumerate_language(runner, max_len)) {
        std::cout << render_word(runner.alphabet, w) << "\n";
    }
    return kExitAccept;
}

int cmd_audit(const std::string& path, std::size_t max_len, bool raw) {
    AutomatonDocument doc = load(path);
    PcrfaSystem sys = [&doc]() -> PcrfaSystem {
        switch (doc.kind) {
            case DocKind::dfa:
            case DocKind::rfa: return PcrfaSystem::degree_one(doc.fa());
            case DocKind::pcrfa: return doc.system();
            default: throw UsageError("audit expects a dfa, rfa, or pcrfa file");
        }
    }();
    AuditOptions options;
    options.granularity = raw ? EdgeKind::read : EdgeKind::macro;
    auto witnesses = audit_reversibility(sys, max_len, options);
    for (const PredecessorWitness& w : witnesses) {
        std::cout << "witness: " << tuple_text(w.config);
        if (w.kind == EdgeKind::comm) {
            std::cout << " comm";
        } else {
            std::cout << " read " << labels_text(w.labels);
        }
        std::cout << " predecessors {";
        for (std::size_t i = 0; i < w.predecessors.size(); ++i) {
            if (i > 0) std::cout << ", ";
            std::cout << tuple_text(w.predecessors[i]);
        }
        std::cout << "}\n";
    }
    std::cout << "witnesses: " << witnesses.size() << "\n";
    return witnesses.empty() ? kExitAccept : kExitReject;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible automata systems toolkit"};
    app.require_subcommand(1);

    std::string file, second_file, out, input;
    std::size_t max_len = 0;
    bool trace = false, strict = false, complete = false, raw = false;

    CLI::App* check_cmd = app.add_subcommand("check", "determinism/reversibility report");
    check_cmd->add_option("FILE", file)->required();

    CLI::App* compile_cmd =
        app.add_subcommand("compile", "compile a DFA into a reversible-component system");
    compile_cmd->add_option("FILE", file)->required();
    compile_cmd->add_option("-o,--output", out)->required();
    compile_cmd->add_flag("--complete", complete,
                          "complete a partial DFA with a sink state first");

    CLI::App* translate_cmd =
        app.add_subcommand("translate", "translate a multi-head machine into a system");
    translate_cmd->add_option("FILE", file)->required();
    translate_cmd->add_option("-o,--output", out)->required();
    translate_cmd->add_flag("--strict-paper", strict,
                            "emit the literal shared wait chains and plain finals");

    CLI::App* run_cmd = app.add_subcommand("run", "run a machine or system on a word");
    run_cmd->add_option("FILE", file)->required();
    run_cmd->add_option("--input", input, "word; concatenated or comma-separated symbols")
        ->required();
    run_cmd->add_flag("--trace", trace, "print one line per step event");

    CLI::App* equiv_cmd = app.add_subcommand("equiv", "bounded language equivalence");
    equiv_cmd->add_option("A", file)->required();
    equiv_cmd->add_option("B", second_file)->required();
    equiv_cmd->add_option("--max-len", max_len)->required();

    CLI::App* enum_cmd = app.add_subcommand("enum", "enumerate the accepted words");
    enum_cmd->add_option("FILE", file)->required();
    enum_cmd->add_option("--max-len", max_len)->required();

    CLI::App* audit_cmd =
        app.add_subcommand("audit", "search for configurations with multiple predecessors");
    audit_cmd->add_option("FILE", file)->required();
    audit_cmd->add_option("--max-len", max_len)->required();
    audit_cmd->add_flag("--raw", raw, "audit single read/communication steps");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : kExitError;
    }

    try {
        if (check_cmd->parsed()) return cmd_check(file);
        if (compile_cmd->parsed()) return cmd_compile(file, out, complete);
        if (translate_cmd->parsed()) return cmd_translate(file, out, strict);
        if (run_cmd->parsed()) return cmd_run(file, input, trace);
        if (equiv_cmd->parsed()) return cmd_equiv(file, second_file, max_len);
        if (enum_cmd->parsed()) return cmd_enum(file, max_len);
        if (audit_cmd->parsed()) return cmd_audit(file, max_len, raw);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
