#pragma once

#include "paxp/index_set.hpp"

#include <optional>
#include <string_view>

namespace paxp {

enum class Backend { Builtin, SmtMult, SmtAdd };

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

// Answer to "is there a WeakPAXp within the bound?". The witness, when
// present, has already been re-checked by exact counting.
struct OracleAnswer {
  bool satisfiable = false;
  std::optional<FeatureSet> witness;
};

} // namespace paxp
