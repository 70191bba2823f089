#pragma once

// JSON system specs:
//   {"type":"spectral","energies":[...],"overlaps":[[re,im],...]}
//   {"type":"explicit","n":k,"h_s":[[[re,im],...],...],"a":"hadamard"|"identity"|matrix}
// Complex entries may also be written as plain real numbers. "a" defaults to
// "hadamard".

#include <filesystem>

#include <json.hpp>

#include "resonance/hamiltonian.hpp"

namespace resonance::spec_io {

hamiltonian::SystemSpec parse_system_spec(const nlohmann::json& j,
                                          const qcore::Limits& limits = {});
hamiltonian::SystemSpec load_system_spec(const std::filesystem::path& path,
                                         const qcore::Limits& limits = {});

nlohmann::json to_json(const hamiltonian::SystemSpec& spec);

/// {"hermiticity_tol": 1e-12, "max_dim": 16384}; missing keys keep defaults.
qcore::Limits parse_limits(const nlohmann::json& j);
qcore::Limits load_limits(const std::filesystem::path& path);

}  // namespace resonance::spec_io
