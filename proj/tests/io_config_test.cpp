// Copyright 2026 The freqbin Authors
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

#include <string>

#include "gtest/gtest.h"

#include "freqbin/config.hpp"
#include "freqbin/io.hpp"

using namespace freqbin;

TEST(config, defaults_from_empty_object) {
  const RunConfig c = parse_config_text("{}");
  ASSERT_EQ(c.resonator.n_min, 3);
  ASSERT_EQ(c.resonator.n_max, 83);
  ASSERT_DOUBLE_EQ(c.gate.mu1, 0.81);
  ASSERT_DOUBLE_EQ(c.gate.theta2 - c.gate.theta1, kPi);
  ASSERT_EQ(c.gate.guard_modes, 2);
  ASSERT_DOUBLE_EQ(c.qkd.key.threshold, 0.11);
  ASSERT_EQ(c.qkd.n_pairs, 17);
  ASSERT_TRUE(c.detector.accidentals);
}

TEST(config, bundled_default_matches_builtin) {
  const RunConfig c = load_config(std::string(FREQBIN_DATA_DIR) + "/default_config.json");
  ASSERT_EQ(config_hash(c), config_hash(RunConfig{}));
}

TEST(config, round_trip_through_json) {
  RunConfig c;
  c.resonator.pump_mw = 0.4;
  c.resonator.transmission = std::vector<std::pair<int, double>>{{10, 0.5}, {11, 0.25}};
  c.resonator.phase_model = "quadratic";
  c.resonator.phase_coeff = 0.01;
  c.gate.alpha = 1.0;
  c.detector.accidentals = false;
  c.qkd.first_pair = 12;
  c.seed = 77;
  const RunConfig back = parse_config(to_json(c));
  ASSERT_EQ(to_json(back), to_json(c));
  ASSERT_EQ(config_hash(back), config_hash(c));
}

TEST(config, hash_tracks_content_not_output_dir) {
  RunConfig a;
  RunConfig b;
  b.output_dir = "elsewhere";
  ASSERT_EQ(config_hash(a), config_hash(b));
  b.seed = 2;
  ASSERT_NE(config_hash(a), config_hash(b));
  const std::string line = provenance_line(a);
  ASSERT_EQ(line.rfind("# config_hash=", 0), 0u);
  ASSERT_EQ(line.size(), std::string("# config_hash=").size() + 16 + std::string(" seed=1").size());
}

TEST(config, schema_violations) {
  ASSERT_THROW(parse_config_text("{\"bogus\": 1}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"gate\": {\"mu\": 1}}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"gate\": {\"mu1\": \"high\"}}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"gate\": {\"truncation_margin\": 4}}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"detector\": {\"efficiency_i\": 2}}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"resonator\": {\"phase\": {\"model\": \"cubic\"}}}"), ConfigError);
  ASSERT_THROW(parse_config_text("{\"qkd\": {\"tau_s\": 0}}"), ConfigError);
  ASSERT_THROW(parse_config_text("[1, 2]"), ConfigError);
  ASSERT_THROW(parse_config_text("{not json"), ConfigError);
  ASSERT_THROW(load_config("/nonexistent/config.json"), ConfigError);
}

TEST(config, transmission_entries) {
  const RunConfig c = parse_config_text(R"({"resonator": {"transmission": [{"n": 5, "t": 0.5}]}})");
  const ResonatorModel m = c.resonator.model();
  ASSERT_DOUBLE_EQ(m.transmission_at(5), 0.5);
  ASSERT_DOUBLE_EQ(m.transmission_at(6), 1.0);
  const RunConfig bad = parse_config_text(R"({"resonator": {"transmission": [{"n": 500, "t": 0.5}]}})");
  ASSERT_THROW(bad.resonator.model(), ConfigError);
}

TEST(fmt_double, shortest_round_trip) {
  ASSERT_EQ(fmt_double(0.1), "0.1");
  ASSERT_EQ(fmt_double(12.636), "12.636");
  ASSERT_EQ(std::stod(fmt_double(kPi)), kPi);
}

TEST(record_io, json_and_csv_round_trip) {
  const auto rec = load_record(std::string(FREQBIN_DATA_DIR) + "/reference_counts.json", 1.0);
  ASSERT_EQ(rec.counts.size(), 16u);
  ASSERT_EQ(rec.tau_s, 125.0);
  ASSERT_EQ(rec.at({ProjectorLabel::PlusI, ProjectorLabel::PlusI}), 42);
  const auto csv = load_record(std::string(FREQBIN_DATA_DIR) + "/reference_counts.csv", 1.0);
  ASSERT_EQ(csv.counts, rec.counts);
  ASSERT_EQ(record_from_csv(record_to_csv(rec), 1.0).counts, rec.counts);
  ASSERT_EQ(record_from_json(record_to_json(rec)).counts, rec.counts);
}

TEST(record_io, malformed_input) {
  ASSERT_THROW(record_from_csv("i_label,s_label,counts\n0,0,abc\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_csv("i_label,s_label\n0,0\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_csv("i_label,s_label,counts\n0,0,1\n0,0,2\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_csv("i_label,s_label,counts\nq,0,1\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_csv("i_label,s_label,counts\n0,0,-3\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_csv("i_label,s_label,counts\n0,0,1.5\n", 1.0), ValidationError);
  ASSERT_THROW(record_from_json(nlohmann::json{{"pairs", 3}}), ValidationError);
  ASSERT_THROW(load_record("/nonexistent.json", 1.0), ValidationError);
}

TEST(record_io, default_tau_applies_without_comment) {
  const auto rec = record_from_csv("i_label,s_label,counts\n0,0,5\n", 42.0);
  ASSERT_EQ(rec.tau_s, 42.0);
}

TEST(basis_counts_io, round_trip) {
  BasisCounts c;
  c.c00 = 1548;
  c.c01 = 36;
  c.c10 = 22;
  c.c11 = 1553;
  c.cpp = 1275;
  c.cpm = 208;
  c.cmp = 39;
  c.cmm = 1067;
  c.tau_s = 125.0;
  const auto rows = basis_counts_from_csv(basis_counts_csv({{34, c}}, "# x=1"));
  ASSERT_EQ(rows.size(), 1u);
  ASSERT_EQ(rows[0].n, 34);
  ASSERT_EQ(rows[0].counts.cmm, 1067);
  ASSERT_EQ(rows[0].counts.tau_s, 125.0);
}

TEST(metrics_io, round_trip_and_flags) {
  LinkMetrics m;
  m.n = 14;
  m.raw_rate = 3.25;
  m.qber = 0.0421;
  m.sifted_rate = 1.625;
  m.secure = true;
  const auto back = metrics_from_csv(metrics_csv({m}, ""));
  ASSERT_EQ(back[0].n, 14);
  ASSERT_EQ(back[0].qber, 0.0421);
  ASSERT_TRUE(back[0].secure);
  ASSERT_FALSE(metrics_from_csv("n,raw_rate,qber,sifted_bps,secure\n1,1,0.2,0.5,false\n")[0].secure);
  ASSERT_THROW(metrics_from_csv("n,raw_rate,qber,sifted_bps,secure\n1,1,0.2,0.5,maybe\n"), ValidationError);
}

TEST(plan_io, json_shape) {
  NetworkPlan p;
  p.users = {"U1", "U2"};
  p.links = {{"U1", "U2", 10, 2.5}};
  p.unused_pairs = {14};
  p.max_users = 2;
  const auto j = plan_to_json(p);
  ASSERT_EQ(j.at("links").size(), 1u);
  ASSERT_EQ(j.at("links")[0].at("n"), 10);
  ASSERT_EQ(j.at("unused")[0], 14);
}
