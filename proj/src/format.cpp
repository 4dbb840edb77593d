#include "pcrfa/format.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

namespace pcrfa {

std::string to_string(DocKind kind) {
    switch (kind) {
        case DocKind::dfa: return "dfa";
        case DocKind::rfa: return "rfa";
        case DocKind::mhrfa: return "mhrfa";
        case DocKind::pcrfa: return "pcrfa";
    }
    return "?";
}

namespace {

std::optional<DocKind> kind_from_string(const std::string& s) {
    if (s == "dfa") return DocKind::dfa;
    if (s == "rfa") return DocKind::rfa;
    if (s == "mhrfa") return DocKind::mhrfa;
    if (s == "pcrfa") return DocKind::pcrfa;
    return std::nullopt;
}

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        Line line{number, {}};
        std::istringstream ls(raw);
        std::string token;
        while (ls >> token) line.tokens.push_back(token);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

struct BlockData {
    std::size_t line = 0;  // where the block started
    std::vector<std::string> states;
    std::optional<std::string> start;
    std::vector<std::string> finals;
    bool saw_finals = false;
    std::vector<std::pair<std::size_t, std::vector<std::string>>> trans;  // (line, tokens)
};

void check_state_token(const std::string& token, std::size_t line) {
    if (token == kLambdaToken || token == kEndMarkerToken) {
        throw SemanticError(line, "reserved token '" + token + "' cannot name a state");
    }
}

Label parse_single_label(const std::string& token, const Alphabet& alphabet, std::size_t line) {
    if (token == kLambdaToken) return Label::lambda();
    if (!alphabet.contains(token)) {
        throw SemanticError(line, "unknown symbol '" + token + "'");
    }
    return Label::symbol(token);
}

LabelVector parse_vector_label(const std::string& token,
                               const Alphabet& alphabet,
                               std::size_t heads,
                               std::size_t line) {
    LabelVector labels;
    std::string piece;
    std::istringstream in(token);
    while (std::getline(in, piece, ',')) {
        if (piece == kLambdaToken) {
            labels.push_back(Label::lambda());
        } else if (piece == kEndMarkerToken) {
            labels.push_back(Label::end_marker());
        } else if (alphabet.contains(piece)) {
            labels.push_back(Label::symbol(piece));
        } else {
            throw SemanticError(line, "unknown symbol '" + piece + "' in label vector");
        }
    }
    if (labels.size() != heads) {
        throw SyntaxError(line, "label vector '" + token + "' needs exactly " +
                                    std::to_string(heads) + " entries");
    }
    return labels;
}

PartialFA build_fa(const BlockData& block, const Alphabet& alphabet) {
    if (block.states.empty()) throw SemanticError(block.line, "block has no states line");
    if (!block.start) throw SemanticError(block.line, "block has no start line");
    std::set<std::string> known(block.states.begin(), block.states.end());
    std::vector<FaTransition> transitions;
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& [line, tokens] : block.trans) {
        const std::string& from = tokens[1];
        const std::string& label_token = tokens[2];
        const std::string& to = tokens[3];
        if (!known.count(from)) throw SemanticError(line, "unknown state '" + from + "'");
        if (!known.count(to)) throw SemanticError(line, "unknown state '" + to + "'");
        if (!keys.insert({from, label_token}).second) {
            throw SemanticError(line, "duplicate transition key (" + from + ", " + label_token + ")");
        }
        transitions.push_back({from, parse_single_label(label_token, alphabet, line), to});
    }
    for (const std::string& f : block.finals) {
        if (!known.count(f)) throw SemanticError(block.line, "unknown final state '" + f + "'");
    }
    if (!known.count(*block.start)) {
        throw SemanticError(block.line, "unknown start state '" + *block.start + "'");
    }
    try {
        return PartialFA(alphabet, block.states, *block.start, block.finals, transitions);
    } catch (const std::invalid_argument& e) {
        throw SemanticError(block.line, e.what());
    }
}

MultiHeadRFA build_mh(const BlockData& block, const Alphabet& alphabet, std::size_t heads) {
    if (block.states.empty()) throw SemanticError(block.line, "block has no states line");
    if (!block.start) throw SemanticError(block.line, "block has no start line");
    std::set<std::string> known(block.states.begin(), block.states.end());
    std::vector<MhTransition> transitions;
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& [line, tokens] : block.trans) {
        const std::string& from = tokens[1];
        const std::string& label_token = tokens[2];
        const std::string& to = tokens[3];
        if (!known.count(from)) throw SemanticError(line, "unknown state '" + from + "'");
        if (!known.count(to)) throw SemanticError(line, "unknown state '" + to + "'");
        if (!keys.insert({from, label_token}).second) {
            throw SemanticError(line, "duplicate transition key (" + from + ", " + label_token + ")");
        }
        transitions.push_back({from, parse_vector_label(label_token, alphabet, heads, line), to});
    }
    try {
        return MultiHeadRFA(alphabet, heads, block.states, *block.start, block.finals,
                            transitions);
    } catch (const std::invalid_argument& e) {
        throw SemanticError(block.line, e.what());
    }
}

}  // namespace

AutomatonDocument parse(const std::string& text) {
    std::vector<Line> lines = tokenize(text);
    if (lines.empty()) throw SyntaxError(1, "empty document");

    std::size_t at = 0;
    auto expect_arity = [](const Line& line, std::size_t arity) {
        if (line.tokens.size() != arity) {
            throw SyntaxError(line.number, "directive '" + line.tokens[0] + "' needs " +
                                               std::to_string(arity - 1) + " argument(s)");
        }
    };

    const Line& type_line = lines[at];
    if (type_line.tokens[0] != "type") throw SyntaxError(type_line.number, "expected 'type' line");
    expect_arity(type_line, 2);
    auto kind = kind_from_string(type_line.tokens[1]);
    if (!kind) throw SyntaxError(type_line.number, "unknown type '" + type_line.tokens[1] + "'");
    ++at;

    if (at >= lines.size() || lines[at].tokens[0] != "alphabet") {
        throw SyntaxError(at < lines.size() ? lines[at].number : type_line.number + 1,
                          "expected 'alphabet' line");
    }
    Alphabet alphabet;
    try {
        alphabet = Alphabet(std::vector<std::string>(lines[at].tokens.begin() + 1,
                                                     lines[at].tokens.end()));
    } catch (const std::invalid_argument& e) {
        throw SemanticError(lines[at].number, e.what());
    }
    std::size_t alphabet_line = lines[at].number;
    ++at;

    std::optional<std::size_t> heads;
    std::map<std::string, std::size_t> query_targets;
    std::map<std::string, std::size_t> query_lines;
    std::vector<BlockData> blocks;
    bool implicit_block = (*kind != DocKind::pcrfa);
    if (implicit_block) blocks.push_back({alphabet_line, {}, {}, {}, false, {}});

    for (; at < lines.size(); ++at) {
        const Line& line = lines[at];
        const std::string& directive = line.tokens[0];
        if (directive == "heads") {
            if (*kind != DocKind::mhrfa) {
                throw SyntaxError(line.number, "'heads' is only valid for mhrfa files");
            }
            expect_arity(line, 2);
            try {
                heads = std::stoul(line.tokens[1]);
            } catch (const std::exception&) {
                throw SyntaxError(line.number, "bad head count '" + line.tokens[1] + "'");
            }
            if (*heads == 0) throw SemanticError(line.number, "head count must be positive");
            continue;
        }
        if (directive == "query") {
            if (*kind != DocKind::pcrfa) {
                throw SyntaxError(line.number, "'query' is only valid for pcrfa files");
            }
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                const std::string& entry = line.tokens[i];
                auto eq = entry.find('=');
                if (eq == std::string::npos || eq == 0 || eq + 1 >= entry.size()) {
                    throw SyntaxError(line.number, "query entry '" + entry + "' is not NAME=INDEX");
                }
                std::string name = entry.substr(0, eq);
                std::size_t target = 0;
                try {
                    target = std::stoul(entry.substr(eq + 1));
                } catch (const std::exception&) {
                    throw SyntaxError(line.number, "bad component index in '" + entry + "'");
                }
                if (!query_targets.emplace(name, target).second) {
                    throw SemanticError(line.number, "duplicate query state '" + name + "'");
                }
                query_lines[name] = line.number;
            }
            continue;
        }
        if (directive == "component") {
            if (*kind != DocKind::pcrfa) {
                throw SyntaxError(line.number, "'component' is only valid for pcrfa files");
            }
            expect_arity(line, 2);
            blocks.push_back({line.number, {}, {}, {}, false, {}});
            continue;
        }
        if (blocks.empty()) {
            throw SyntaxError(line.number, "'" + directive + "' before the first component");
        }
        BlockData& block = blocks.back();
        if (directive == "states") {
            if (!block.states.empty()) throw SemanticError(line.number, "duplicate states line");
            for (std::size_t i = 1; i < line.tokens.size(); ++i) {
                check_state_token(line.tokens[i], line.number);
                block.states.push_back(line.tokens[i]);
            }
            if (block.states.empty()) throw SyntaxError(line.number, "states line needs entries");
        } else if (directive == "start") {
            expect_arity(line, 2);
            if (block.start) throw SemanticError(line.number, "duplicate start line");
            block.start = line.tokens[1];
        } else if (directive == "final") {
            if (block.saw_finals) throw SemanticError(line.number, "duplicate final line");
            block.saw_finals = true;
            block.finals.assign(line.tokens.begin() + 1, line.tokens.end());
        } else if (directive == "trans") {
            expect_arity(line, 4);
            block.trans.push_back({line.number, line.tokens});
        } else {
            throw SyntaxError(line.number, "unknown directive '" + directive + "'");
        }
    }

    AutomatonDocument doc;
    doc.kind = *kind;
    switch (*kind) {
        case DocKind::dfa:
        case DocKind::rfa:
            doc.body = build_fa(blocks.front(), alphabet);
            break;
        case DocKind::mhrfa:
            if (!heads) throw SemanticError(alphabet_line, "mhrfa file needs a heads line");
            doc.body = build_mh(blocks.front(), alphabet, *heads);
            break;
        case DocKind::pcrfa: {
            if (blocks.empty()) {
                throw SemanticError(alphabet_line, "pcrfa file needs at least one component");
            }
            std::vector<PartialFA> components;
            components.reserve(blocks.size());
            for (const BlockData& block : blocks) components.push_back(build_fa(block, alphabet));
            for (const auto& [name, target] : query_targets) {
                if (target < 1 || target > components.size()) {
                    throw SemanticError(query_lines[name], "query state '" + name +
                                                               "' targets component " +
                                                               std::to_string(target) + " of " +
                                                               std::to_string(components.size()));
                }
            }
            try {
                doc.body = PcrfaSystem(alphabet, std::move(components), query_targets);
            } catch (const std::invalid_argument& e) {
                throw SemanticError(alphabet_line, e.what());
            }
            break;
        }
    }
    return doc;
}

namespace {

void serialize_alphabet(std::ostream& out, const Alphabet& alphabet) {
    out << "alphabet";
    for (const std::string& s : alphabet.symbols()) out << ' ' << s;
    out << '\n';
}

void serialize_block(std::ostream& out, const PartialFA& fa) {
    out << "states";
    for (const std::string& s : fa.states()) out << ' ' << s;
    out << '\n';
    out << "start " << fa.start() << '\n';
    out << "final";
    for (const std::string& f : fa.finals()) out << ' ' << f;
    out << '\n';
    for (const FaTransition& t : fa.transitions()) {
        out << "trans " << t.from << ' ' << t.label.token() << ' ' << t.to << '\n';
    }
}

}  // namespace

std::string serialize(const AutomatonDocument& doc) {
    std::ostringstream out;
    out << "type " << to_string(doc.kind) << '\n';
    switch (doc.kind) {
        case DocKind::dfa:
        case DocKind::rfa: {
            const PartialFA& fa = doc.fa();
            serialize_alphabet(out, fa.alphabet());
            serialize_block(out, fa);
            break;
        }
        case DocKind::mhrfa: {
            const MultiHeadRFA& m = doc.mh();
            serialize_alphabet(out, m.alphabet());
            out << "heads " << m.head_count() << '\n';
            out << "states";
            for (const std::string& s : m.states()) out << ' ' << s;
            out << '\n';
            out << "start " << m.start() << '\n';
            out << "final";
            for (const std::string& f : m.finals()) out << ' ' << f;
            out << '\n';
            for (const MhTransition& t : m.transitions()) {
                out << "trans " << t.from << ' ';
                for (std::size_t i = 0; i < t.labels.size(); ++i) {
                    if (i > 0) out << ',';
                    out << t.labels[i].token();
                }
                out << ' ' << t.to << '\n';
            }
            break;
        }
        case DocKind::pcrfa: {
            const PcrfaSystem& sys = doc.system();
            serialize_alphabet(out, sys.alphabet());
            if (!sys.query_targets().empty()) {
                // Sorted by (component index, name) for readable K2=2 K3=3 ...
                std::vector<std::pair<std::size_t, std::string>> entries;
                for (const auto& [name, target] : sys.query_targets()) {
                    entries.push_back({target, name});
                }
                std::sort(entries.begin(), entries.end());
                out << "query";
                for (const auto& [target, name] : entries) {
                    out << ' ' << name << '=' << target;
                }
                out << '\n';
            }
            for (std::size_t i = 0; i < sys.degree(); ++i) {
                out << "component A" << (i + 1) << '\n';
                serialize_block(out, sys.components()[i]);
            }
            break;
        }
    }
    return out.str();
}

AutomatonDocument make_document(DocKind kind, PartialFA fa) {
    if (kind != DocKind::dfa && kind != DocKind::rfa) {
        throw std::invalid_argument("single automata must be dfa or rfa documents");
    }
    AutomatonDocument doc;
    doc.kind = kind;
    doc.body = std::move(fa);
    return doc;
}

AutomatonDocument make_document(MultiHeadRFA mh) {
    AutomatonDocument doc;
    doc.kind = DocKind::mhrfa;
    doc.body = std::move(mh);
    return doc;
}

AutomatonDocument make_document(PcrfaSystem sys) {
    AutomatonDocument doc;
    doc.kind = DocKind::pcrfa;
    doc.body = std::move(sys);
    return doc;
}

std::string render_word(const Alphabet& alphabet, const Word& word) {
    if (word.empty()) return std::string(kLambdaToken);
    bool single_char = true;
    for (const std::string& s : alphabet.symbols()) {
        if (s.size() != 1) single_char = false;
    }
    std::string out;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (!single_char && i > 0) out += ',';
        out += word[i];
    }
    return out;
}

Word parse_word(const Alphabet& alphabet, const std::string& text) {
    if (text.empty() || text == kLambdaToken) return {};
    Word word;
    if (text.find(',') != std::string::npos) {
        std::istringstream in(text);
        std::string piece;
        while (std::getline(in, piece, ',')) {
            if (piece.empty()) {
                throw InputSymbolUnknownError("empty token in word '" + text + "'");
            }
            word.push_back(piece);
        }
        return word;
    }
    bool single_char = true;
    for (const std::string& s : alphabet.symbols()) {
        if (s.size() != 1) single_char = false;
    }
    if (single_char) {
        for (char c : text) word.push_back(std::string(1, c));
    } else {
        word.push_back(text);
    }
    return word;
}

}  // namespace pcrfa
