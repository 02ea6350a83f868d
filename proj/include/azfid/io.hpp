// Copyright 2026 The azfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AZFID_IO_HPP
#define AZFID_IO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "azfid/channels.hpp"
#include "azfid/states.hpp"

namespace azfid {

// Matrices are {"dim": d, "entries": [[[re, im], ...], ...]} in row-major order.
nlohmann::json matrix_to_json(const CMatrix& m);
// `field` names the value in error messages.
CMatrix matrix_from_json(const nlohmann::json& j, const std::string& field);

nlohmann::json state_to_json(const DensityMatrix& rho);
DensityMatrix state_from_json(const nlohmann::json& j, const std::string& field);

// {"dim": d, "kraus": [matrix, ...], "tags": ["cptp", ...]}. Loading re-derives
// the tags and rejects any declared tag that does not hold.
nlohmann::json channel_to_json(const KrausChannel& channel);
KrausChannel channel_from_json(const nlohmann::json& j, const std::string& field);

/// A state source is a JSON file path or a generator spec:
///   ginibre:d=4,rank=4[,seed=7]   random_density
///   diag:0.7,0.3                  diagonal state
///   mixed:d=4                     I/d
///   pure:d=4,index=0              basis projector
///   pure:d=4[,seed=3]             Haar-random pure state
/// `default_seed` fills in a missing seed.
DensityMatrix load_state(const std::string& source, std::uint64_t default_seed);

/// cptp:d=4,k=3[,seed=1], mixed-unitary:d=4,k=3[,seed=1], identity:d=4,
/// pinching:d=4[,seed=1] (seedless means the computational basis), or a path.
KrausChannel load_channel(const std::string& source, std::uint64_t default_seed);

/// coord:d=4,axes=0|1, random:d=4,m=2[,seed=3], or a path to a JSON file
/// holding a projector matrix or {"isometry": matrix-like with "rows"/"cols"}.
SubspaceProjector load_subspace(const std::string& source, std::uint64_t default_seed);

/// Reads a file into a string; throws ConfigError when it cannot be opened.
std::string read_text_file(const std::string& path);

/// Writes text, throwing ConfigError when the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

/// 17 significant digits, with "inf" / "-inf" / "nan" spelled out.
std::string format_double(double x);

}  // namespace azfid

#endif  // AZFID_IO_HPP
