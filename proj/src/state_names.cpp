#include "pcrfa/state_names.hpp"

namespace pcrfa {

std::string tuple_state_name(std::string_view state, std::span<const Label> labels) {
    std::string out(state);
    out += '[';
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i > 0) out += ',';
        out += labels[i].token();
    }
    out += ']';
    return out;
}

std::string wait_s_name(std::size_t index, std::string_view memory) {
    std::string out = "s" + std::to_string(index);
    out += '{';
    out += memory;
    out += '}';
    return out;
}

std::string wait_p_name(std::size_t index, std::string_view memory) {
    std::string out = "p" + std::to_string(index);
    out += '{';
    out += memory;
    out += '}';
    return out;
}

std::string query_state_name(std::size_t component) {
    return "K" + std::to_string(component);
}

}  // namespace pcrfa
