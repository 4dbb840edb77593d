#include "pcrfa/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcrfa {

namespace {

bool valid_symbol_token(std::string_view token) {
    if (token.empty()) return false;
    if (token == kLambdaToken || token == kEndMarkerToken) return false;
    for (char c : token) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    }
    return true;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const std::string& s = symbols_[i];
        if (!valid_symbol_token(s)) {
            throw std::invalid_argument("invalid alphabet symbol: '" + s + "'");
        }
        if (!index_.emplace(s, i).second) {
            throw std::invalid_argument("duplicate alphabet symbol: '" + s + "'");
        }
    }
}

bool Alphabet::contains(std::string_view token) const {
    return index_.find(std::string(token)) != index_.end();
}

std::optional<std::size_t> Alphabet::index_of(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Alphabet::sorted_symbols() const {
    std::vector<std::string> out = symbols_;
    std::sort(out.begin(), out.end());
    return out;
}

Label Label::symbol(std::string token) {
    if (token.empty() || token == kLambdaToken) {
        throw std::invalid_argument("symbol label must be a non-empty, non-reserved token");
    }
    return Label{std::move(token)};
}

const std::string& Label::symbol_name() const {
    if (is_lambda()) throw std::logic_error("lambda label has no symbol");
    return value_;
}

std::string Label::token() const {
    return is_lambda() ? std::string(kLambdaToken) : value_;
}

bool prefix_comparable(const Label& x, const Label& y) {
    return x == y || x.is_lambda() || y.is_lambda();
}

std::vector<Word> words_up_to(const Alphabet& alphabet, std::size_t max_len) {
    std::vector<Word> out;
    std::vector<std::string> order = alphabet.sorted_symbols();
    out.push_back({});  // the empty word
    std::size_t first_of_prev_len = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = first_of_prev_len; i < end; ++i) {
            for (const std::string& s : order) {
                Word w = out[i];
                w.push_back(s);
                out.push_back(std::move(w));
            }
        }
        first_of_prev_len = end;
    }
    return out;
}

}  // namespace pcrfa
