#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcrfa/alphabet.hpp"

namespace pcrfa {

/// Canonical text encodings for the structured state names produced by the
/// multi-head translation. They are ordinary opaque state tokens everywhere
/// else; only the builder and its tests care about the structure.
///
///   tuple:   q[a,-]    remembered head labels, lambda as "-", end marker "$"
///   wait:    s3{q[a]}  post-read wait, index 3, carrying the tuple q[a]
///            p2{q}     pre-read wait, index 2, carrying the plain state q
///   query:   K4        bare query state addressing component 4

std::string tuple_state_name(std::string_view state, std::span<const Label> labels);
std::string wait_s_name(std::size_t index, std::string_view memory);
std::string wait_p_name(std::size_t index, std::string_view memory);
std::string query_state_name(std::size_t component);

}  // namespace pcrfa
