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

#include "azfid/io.hpp"

#include <cmath>
#include <filesystem>
#include <limits>

#include "gtest/gtest.h"

#include "azfid/errors.hpp"

using namespace azfid;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("azfid_io_" + name)).string();
}

}  // namespace

TEST(io, matrix_round_trip) {
  Rng rng(1);
  const CMatrix m = haar_unitary(3, rng).matrix();
  EXPECT_EQ(matrix_from_json(matrix_to_json(m), "m"), m);
  CMatrix rect(2, 3);
  rect.setRandom();
  EXPECT_EQ(matrix_from_json(matrix_to_json(rect), "r"), rect);
}

TEST(io, malformed_matrix_names_field) {
  const nlohmann::json bad = nlohmann::json::parse(R"({"dim": 2, "entries": [[[1,0],[0,0]], [[0,0]]]})");
  try {
    matrix_from_json(bad, "rho");
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("rho.entries[1]"), std::string::npos) << e.what();
  }
  EXPECT_THROW(matrix_from_json(nlohmann::json::parse(R"({"entries": []})"), "x"), ConfigError);
}

TEST(io, state_round_trip) {
  const DensityMatrix rho = random_density(3, 2, 4);
  const DensityMatrix back = state_from_json(state_to_json(rho), "s");
  EXPECT_LT((back.raw() - rho.raw()).norm(), 1e-15);
  EXPECT_THROW(state_from_json(matrix_to_json(2.0 * CMatrix::Identity(2, 2)), "s"), ValidationError);
}

TEST(io, channel_round_trip) {
  const KrausChannel ch = random_cptp(2, 2, 5);
  const KrausChannel back = channel_from_json(channel_to_json(ch), "c");
  ASSERT_EQ(back.kraus().size(), ch.kraus().size());
  EXPECT_EQ(back.tags(), ch.tags());
  nlohmann::json lying = channel_to_json(ch);
  lying["tags"] = {"CPTP", "Pinching"};
  EXPECT_THROW(channel_from_json(lying, "c"), ValidationError);
}

TEST(io, generator_specs) {
  EXPECT_EQ(load_state("ginibre:d=3,rank=2,seed=7", 1).raw(), random_density(3, 2, 7).raw());
  EXPECT_EQ(load_state("ginibre:d=3,rank=2", 9).raw(), random_density(3, 2, 9).raw());
  const DensityMatrix d = load_state("diag:0.7,0.3", 1);
  EXPECT_EQ(d.spectrum_desc()[0], 0.7);
  EXPECT_LT((load_state("mixed:d=4", 1).raw() - 0.25 * CMatrix::Identity(4, 4)).norm(), 1e-15);
  EXPECT_EQ(load_state("pure:d=3,index=1", 1).rank(), 1);
  EXPECT_EQ(load_subspace("coord:d=4,axes=0|1", 1).rank(), 2);
  EXPECT_EQ(load_subspace("random:d=5,m=3,seed=2", 1).rank(), 3);
  EXPECT_TRUE(load_channel("identity:d=2", 1).has(ChannelTag::Unital));
  EXPECT_THROW(load_state("bogus:d=2", 1), ConfigError);
  EXPECT_THROW(load_state("/nonexistent/file.json", 1), ConfigError);
}

TEST(io, file_sources) {
  const std::string path = temp_path("state.json");
  const DensityMatrix rho = random_density(2, 2, 3);
  write_text_file(path, state_to_json(rho).dump());
  EXPECT_LT((load_state(path, 1).raw() - rho.raw()).norm(), 1e-15);
  write_text_file(path, "{not json");
  EXPECT_THROW(load_state(path, 1), ConfigError);
  std::filesystem::remove(path);
  EXPECT_THROW(write_text_file("/nonexistent-dir/x.json", "x"), ConfigError);
}

TEST(io, format_double) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}
