#include "pcrfa/multihead.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "pcrfa/errors.hpp"
#include "pcrfa/state_names.hpp"

namespace pcrfa {

bool vectors_comparable(const LabelVector& a, const LabelVector& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!prefix_comparable(a[i], b[i])) return false;
    }
    return true;
}

MultiHeadRFA::MultiHeadRFA(Alphabet alphabet,
                           std::size_t head_count,
                           std::vector<std::string> states,
                           std::string start,
                           std::vector<std::string> finals,
                           std::vector<MhTransition> transitions)
    : alphabet_(std::move(alphabet)),
      head_count_(head_count),
      states_(std::move(states)),
      start_(std::move(start)),
      finals_(finals.begin(), finals.end()),
      transitions_(std::move(transitions)) {
    if (head_count_ == 0) throw std::invalid_argument("head count must be positive");
    if (states_.empty()) throw std::invalid_argument("machine needs at least one state");
    std::set<std::string> state_set;
    for (const std::string& s : states_) {
        if (s.empty()) throw std::invalid_argument("empty state name");
        if (!state_set.insert(s).second) {
            throw std::invalid_argument("duplicate state name: '" + s + "'");
        }
    }
    auto require_state = [&](const std::string& name) {
        if (!state_set.count(name)) throw std::invalid_argument("unknown state: '" + name + "'");
    };
    require_state(start_);
    for (const std::string& f : finals_) require_state(f);

    std::sort(transitions_.begin(), transitions_.end());
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        const MhTransition& t = transitions_[i];
        require_state(t.from);
        require_state(t.to);
        if (t.labels.size() != head_count_) {
            throw std::invalid_argument("transition from '" + t.from + "' has " +
                                        std::to_string(t.labels.size()) + " labels, expected " +
                                        std::to_string(head_count_));
        }
        for (const Label& label : t.labels) {
            if (label.is_lambda() || label.is_end_marker()) continue;
            if (!alphabet_.contains(label.symbol_name())) {
                throw std::invalid_argument("transition label outside alphabet: '" +
                                            label.symbol_name() + "'");
            }
        }
        if (i > 0 && transitions_[i - 1].from == t.from && transitions_[i - 1].labels == t.labels) {
            throw std::invalid_argument("duplicate transition key from '" + t.from + "'");
        }
    }
}

std::vector<const MhTransition*> MultiHeadRFA::transitions_from(const std::string& state) const {
    std::vector<const MhTransition*> out;
    for (const MhTransition& t : transitions_) {
        if (t.from == state) out.push_back(&t);
    }
    return out;
}

bool MultiHeadRFA::operator==(const MultiHeadRFA& other) const {
    return alphabet_ == other.alphabet_ && head_count_ == other.head_count_ &&
           states_ == other.states_ && start_ == other.start_ && finals_ == other.finals_ &&
           transitions_ == other.transitions_;
}

MhReversibilityReport check_mh(const MultiHeadRFA& m) {
    MhReversibilityReport report;
    const auto& ts = m.transitions();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            if (!vectors_comparable(ts[i].labels, ts[j].labels)) continue;
            if (ts[i].from == ts[j].from) {
                report.determinism_witnesses.push_back(
                    {ts[i].from, ts[i].labels, ts[j].labels});
            }
            if (ts[i].to == ts[j].to) {
                report.reversibility_witnesses.push_back(
                    {ts[i].to,
                     {{ts[i].from, ts[i].labels}, {ts[j].from, ts[j].labels}}});
            }
        }
    }
    report.deterministic = report.determinism_witnesses.empty();
    report.reversible = report.deterministic && report.reversibility_witnesses.empty();
    return report;
}

MhRunResult run_mh(const MultiHeadRFA& m, const Word& word) {
    MhReversibilityReport report = check_mh(m);
    if (!report.deterministic) {
        throw NonDeterministicError("run_mh requires a deterministic machine");
    }
    std::vector<std::size_t> w = intern_word(m.alphabet(), word);

    std::string state = m.start();
    std::vector<std::size_t> positions(m.head_count(), 0);
    std::set<std::pair<std::string, std::vector<std::size_t>>> seen_since_advance;

    auto applies = [&](const MhTransition& t) {
        for (std::size_t h = 0; h < m.head_count(); ++h) {
            const Label& label = t.labels[h];
            if (label.is_lambda()) continue;
            if (label.is_end_marker()) {
                if (positions[h] != w.size()) return false;
            } else {
                if (positions[h] >= w.size()) return false;
                if (m.alphabet().symbol(w[positions[h]]) != label.symbol_name()) return false;
            }
        }
        return true;
    };

    MhRunResult result;
    for (;;) {
        const MhTransition* chosen = nullptr;
        for (const MhTransition& t : m.transitions()) {
            if (t.from != state || !applies(t)) continue;
            chosen = &t;
            break;  // determinism makes the applicable transition unique
        }
        if (!chosen) break;
        bool advanced = false;
        for (std::size_t h = 0; h < m.head_count(); ++h) {
            const Label& label = chosen->labels[h];
            if (label.is_lambda() || label.is_end_marker()) continue;  // stays put
            ++positions[h];
            advanced = true;
        }
        if (advanced) {
            seen_since_advance.clear();
        } else {
            if (seen_since_advance.empty()) seen_since_advance.insert({state, positions});
            if (!seen_since_advance.insert({chosen->to, positions}).second) {
                result.halt_state = chosen->to;
                result.positions = positions;
                result.accepted = false;
                result.reason = FaHaltReason::lambda_divergence;
                return result;
            }
        }
        state = chosen->to;
    }
    result.halt_state = state;
    result.positions = positions;
    result.accepted = m.is_final(state);
    result.reason = FaHaltReason::no_transition;
    return result;
}

namespace {

// Label a head coordinate contributes to its component's read move: heads
// that stay put (lambda or the clamped end marker) read nothing.
Label component_read_label(const Label& coordinate) {
    if (coordinate.is_lambda() || coordinate.is_end_marker()) return Label::lambda();
    return coordinate;
}

struct ComponentBuilder {
    std::vector<std::string> order;
    std::set<std::string> known;
    std::map<std::pair<std::string, Label>, std::string> trans;
    std::set<std::string> finals;

    void add_state(const std::string& name) {
        if (known.insert(name).second) order.push_back(name);
    }
    void add_final(const std::string& name) { finals.insert(name); }
    void add_trans(const std::string& from, const Label& label, const std::string& to) {
        add_state(from);
        add_state(to);
        auto [it, inserted] = trans.insert({{from, label}, to});
        if (!inserted && it->second != to) {
            throw std::logic_error("conflicting translation moves from '" + from + "'");
        }
    }

    PartialFA build(const Alphabet& alphabet, const std::string& start) const {
        std::vector<FaTransition> list;
        list.reserve(trans.size());
        for (const auto& [key, to] : trans) list.push_back({key.first, key.second, to});
        return PartialFA(alphabet, order, start,
                         std::vector<std::string>(finals.begin(), finals.end()), list);
    }
};

void require_serially_decidable(const MultiHeadRFA& m) {
    for (const std::string& q : m.states()) {
        auto ts = m.transitions_from(q);
        for (std::size_t i = 0; i < m.head_count(); ++i) {
            std::map<LabelVector, std::set<Label>> extensions;
            for (const MhTransition* t : ts) {
                LabelVector prefix(t->labels.begin(), t->labels.begin() + i);
                extensions[prefix].insert(t->labels[i]);
            }
            for (const auto& [prefix, ext] : extensions) {
                bool has_nonconsuming = false;
                for (const Label& label : ext) {
                    if (label.is_lambda() || label.is_end_marker()) has_nonconsuming = true;
                }
                if (has_nonconsuming && ext.size() > 1) {
                    std::string coords;
                    for (const Label& label : ext) {
                        if (!coords.empty()) coords += ", ";
                        coords += label.token();
                    }
                    throw TranslationAmbiguityError(
                        "state '" + q + "': head " + std::to_string(i + 1) +
                        " would have to choose between {" + coords +
                        "} without seeing the other heads");
                }
            }
        }
    }
}

void validate_translatable_names(const MultiHeadRFA& m) {
    for (const std::string& q : m.states()) {
        if (q.find_first_of("[]{},") != std::string::npos) {
            throw std::invalid_argument("state name '" + q +
                                        "' collides with generated state name syntax");
        }
        if (q.size() >= 2 && q[0] == 'K' &&
            q.find_first_not_of("0123456789", 1) == std::string::npos) {
            throw std::invalid_argument("state name '" + q +
                                        "' collides with a generated query state");
        }
    }
}

}  // namespace

PcrfaSystem translate(const MultiHeadRFA& m, TranslateOptions options) {
    MhReversibilityReport report = check_mh(m);
    if (!report.reversible) {
        throw NotReversibleError("translate requires a reversible machine");
    }
    // End-of-input is only detectable by stalling inside a component, never
    // as a positive move, so a head decision that depends on seeing the end
    // marker cannot be serialized.
    for (const MhTransition& t : m.transitions()) {
        for (const Label& label : t.labels) {
            if (label.is_end_marker()) {
                throw TranslationAmbiguityError(
                    "transition from '" + t.from +
                    "' reads the end marker, which no component can verify");
            }
        }
    }
    const std::size_t n = m.head_count();

    if (n == 1) {
        std::vector<FaTransition> projected;
        for (const MhTransition& t : m.transitions()) {
            projected.push_back({t.from, t.labels[0], t.to});
        }
        return PcrfaSystem::degree_one(
            PartialFA(m.alphabet(), m.states(), m.start(),
                      std::vector<std::string>(m.finals().begin(), m.finals().end()),
                      std::move(projected)));
    }

    validate_translatable_names(m);
    require_serially_decidable(m);

    std::vector<ComponentBuilder> builders(n);
    for (ComponentBuilder& b : builders) {
        for (const std::string& q : m.states()) {
            b.add_state(q);
            if (m.is_final(q)) b.add_final(q);
        }
    }
    std::set<std::string> used_queries;
    auto query_name = [&used_queries](std::size_t j) {
        std::string name = query_state_name(j);
        used_queries.insert(name);
        return name;
    };
    // Mid-round states inherit finality from the source state they carry, so
    // a round that stalls (the machine halts) keeps the machine's verdict.
    auto mark = [&](ComponentBuilder& b, const std::string& state, const std::string& source) {
        if (!options.strict_paper && m.is_final(source)) b.add_final(state);
    };

    for (const std::string& q : m.states()) {
        auto ts = m.transitions_from(q);
        if (ts.empty()) continue;

        // Pre-read waits: component 2 asks component 1 right away; later
        // components idle through p-states until their predecessor is done.
        {
            std::string k1 = query_name(1);
            builders[1].add_trans(q, Label::lambda(), k1);
        }
        for (std::size_t i = 3; i <= n; ++i) {
            ComponentBuilder& b = builders[i - 1];
            std::string cur = options.strict_paper ? "p1" : wait_p_name(1, q);
            b.add_trans(q, Label::lambda(), cur);
            mark(b, cur, q);
            for (std::size_t j = 1; j + 2 <= i - 1; ++j) {
                std::string next =
                    options.strict_paper ? "p" + std::to_string(j + 1) : wait_p_name(j + 1, q);
                b.add_trans(cur, Label::lambda(), next);
                mark(b, next, q);
                cur = next;
            }
            b.add_trans(cur, Label::lambda(), query_name(i - 1));
        }

        for (const MhTransition* t : ts) {
            std::vector<std::string> tuples(n);
            for (std::size_t i = 1; i <= n; ++i) {
                tuples[i - 1] = tuple_state_name(
                    q, std::span<const Label>(t->labels.data(), i));
            }
            for (std::size_t i = 1; i <= n; ++i) {
                ComponentBuilder& b = builders[i - 1];
                const std::string& made = tuples[i - 1];
                // Read move: extend the carried tuple with this head's label.
                if (i == 1) {
                    b.add_trans(q, component_read_label(t->labels[0]), made);
                } else {
                    const std::string& received = tuples[i - 2];
                    b.add_state(received);  // arrives by communication
                    mark(b, received, q);
                    b.add_trans(received, component_read_label(t->labels[i - 1]), made);
                }
                mark(b, made, q);
                if (i == n) {
                    b.add_trans(made, Label::lambda(), t->to);
                    continue;
                }
                // Post-read waits until every component has had its turn.
                std::string cur = made;
                for (std::size_t j = i + 1; j <= n; ++j) {
                    std::string next = options.strict_paper ? "s" + std::to_string(j)
                                                            : wait_s_name(j, made);
                    b.add_trans(cur, Label::lambda(), next);
                    mark(b, next, q);
                    cur = next;
                }
                b.add_trans(cur, Label::lambda(), query_name(n));
            }
        }
    }

    std::map<std::string, std::size_t> query_targets;
    for (const std::string& name : used_queries) {
        query_targets[name] = static_cast<std::size_t>(std::stoul(name.substr(1)));
    }

    std::vector<PartialFA> components;
    components.reserve(n);
    for (const ComponentBuilder& b : builders) {
        components.push_back(b.build(m.alphabet(), m.start()));
    }
    return PcrfaSystem(m.alphabet(), std::move(components), std::move(query_targets));
}

}  // namespace pcrfa
