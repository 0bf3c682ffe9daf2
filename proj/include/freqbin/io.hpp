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

// File formats: coincidence records (JSON, CSV), per-pair basis counts and link
// metrics (CSV), network plans and tomography reports (JSON).

#ifndef FREQBIN_IO_HPP
#define FREQBIN_IO_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "freqbin/errors.hpp"
#include "freqbin/measurement.hpp"
#include "freqbin/network.hpp"
#include "freqbin/qkd.hpp"
#include "freqbin/tomography.hpp"

namespace freqbin {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Shortest round-trip decimal form of a double.
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  double back = 0.0;
  for (int prec = 6; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw ValidationError("csv: missing column '" + name + "'");
  }
};

inline CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line);
      continue;
    }
    auto cells = split_csv_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size()) throw ValidationError("csv: row has " + std::to_string(cells.size()) +
                                                                 " cells, header has " +
                                                                 std::to_string(t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.empty()) throw ValidationError("csv: no header row");
  return t;
}

inline double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw ValidationError("csv: trailing characters in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ValidationError("csv: not a number: '" + s + "'");
  }
}

inline std::int64_t to_int(const std::string& s) {
  const double v = to_double(s);
  const auto i = static_cast<std::int64_t>(v);
  if (static_cast<double>(i) != v) throw ValidationError("csv: not an integer: '" + s + "'");
  return i;
}

/// Reads "key=value" tokens from comment lines.
inline bool comment_value(const std::vector<std::string>& comments, const std::string& key, std::string& out) {
  for (const auto& c : comments) {
    std::stringstream ss(c.substr(1));
    std::string tok;
    while (ss >> tok) {
      if (tok.rfind(key + "=", 0) == 0) {
        out = tok.substr(key.size() + 1);
        return true;
      }
    }
  }
  return false;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coincidence records

inline nlohmann::json record_to_json(const CoincidenceRecord& rec) {
  auto pairs = nlohmann::json::array();
  for (const auto& [l, c] : rec.counts) {
    pairs.push_back({{"i_label", std::string(to_string(l.idler))},
                     {"s_label", std::string(to_string(l.signal))},
                     {"counts", c}});
  }
  return {{"pairs", pairs}, {"tau_s", rec.tau_s}, {"seed", rec.seed}};
}

inline CoincidenceRecord record_from_json(const nlohmann::json& j) {
  try {
    CoincidenceRecord rec;
    rec.tau_s = j.at("tau_s").get<double>();
    rec.seed = j.value("seed", std::uint64_t{0});
    for (const auto& p : j.at("pairs")) {
      const LabelPair l{parse_label(p.at("i_label").get<std::string>()), parse_label(p.at("s_label").get<std::string>())};
      if (rec.has(l)) throw ValidationError("coincidence record: duplicate projection");
      rec.counts[l] = p.at("counts").get<std::int64_t>();
    }
    rec.validate();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("coincidence record: malformed JSON: ") + e.what());
  }
}

inline std::string record_to_csv(const CoincidenceRecord& rec) {
  std::string out = "# tau_s=" + fmt_double(rec.tau_s) + " seed=" + std::to_string(rec.seed) + "\n";
  out += "i_label,s_label,counts\n";
  for (const auto& [l, c] : rec.counts) {
    out += std::string(to_string(l.idler)) + "," + std::string(to_string(l.signal)) + "," + std::to_string(c) + "\n";
  }
  return out;
}

/// `default_tau_s` applies when the file carries no "# tau_s=" comment.
inline CoincidenceRecord record_from_csv(const std::string& text, double default_tau_s) {
  const auto t = detail::parse_csv(text);
  const int ci = t.column("i_label");
  const int cs = t.column("s_label");
  const int cc = t.column("counts");
  CoincidenceRecord rec;
  rec.tau_s = default_tau_s;
  std::string v;
  if (detail::comment_value(t.comments, "tau_s", v)) rec.tau_s = detail::to_double(v);
  if (detail::comment_value(t.comments, "seed", v)) rec.seed = static_cast<std::uint64_t>(detail::to_int(v));
  for (const auto& row : t.rows) {
    const LabelPair l{parse_label(row[static_cast<std::size_t>(ci)]), parse_label(row[static_cast<std::size_t>(cs)])};
    if (rec.has(l)) throw ValidationError("coincidence record: duplicate projection");
    rec.counts[l] = detail::to_int(row[static_cast<std::size_t>(cc)]);
  }
  rec.validate();
  return rec;
}

/// Dispatches on the extension: ".json" or anything else as CSV.
inline CoincidenceRecord load_record(const std::string& path, double default_tau_s) {
  const std::string text = read_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    try {
      return record_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ValidationError(std::string("coincidence record: malformed JSON: ") + e.what());
    }
  }
  return record_from_csv(text, default_tau_s);
}

// ---------------------------------------------------------------------------
// Per-pair basis counts and link metrics

struct PairCounts {
  int n = 0;
  BasisCounts counts;
};

inline std::string basis_counts_csv(const std::vector<PairCounts>& rows, const std::string& provenance) {
  std::string out = provenance.empty() ? "" : provenance + "\n";
  out += "n,c00,c01,c10,c11,cpp,cpm,cmp,cmm,tau_s\n";
  for (const auto& r : rows) {
    const auto& c = r.counts;
    out += std::to_string(r.n);
    for (double v : {c.c00, c.c01, c.c10, c.c11, c.cpp, c.cpm, c.cmp, c.cmm, c.tau_s}) out += "," + fmt_double(v);
    out += "\n";
  }
  return out;
}

inline std::vector<PairCounts> basis_counts_from_csv(const std::string& text) {
  const auto t = detail::parse_csv(text);
  const char* names[] = {"n", "c00", "c01", "c10", "c11", "cpp", "cpm", "cmp", "cmm", "tau_s"};
  int col[10];
  for (int i = 0; i < 10; ++i) col[i] = t.column(names[i]);
  std::vector<PairCounts> out;
  for (const auto& row : t.rows) {
    auto cell = [&](int i) { return row[static_cast<std::size_t>(col[i])]; };
    PairCounts p;
    p.n = static_cast<int>(detail::to_int(cell(0)));
    double* dst[] = {&p.counts.c00, &p.counts.c01, &p.counts.c10, &p.counts.c11, &p.counts.cpp,
                     &p.counts.cpm, &p.counts.cmp, &p.counts.cmm, &p.counts.tau_s};
    for (int i = 1; i < 10; ++i) *dst[i - 1] = detail::to_double(cell(i));
    p.counts.validate();
    out.push_back(p);
  }
  return out;
}

inline std::string metrics_csv(const std::vector<LinkMetrics>& rows, const std::string& provenance) {
  std::string out = provenance.empty() ? "" : provenance + "\n";
  out += "n,raw_rate,qber,sifted_bps,secure\n";
  for (const auto& m : rows) {
    out += std::to_string(m.n) + "," + fmt_double(m.raw_rate) + "," + fmt_double(m.qber) + "," +
           fmt_double(m.sifted_rate) + "," + (m.secure ? "1" : "0") + "\n";
  }
  return out;
}

inline std::vector<LinkMetrics> metrics_from_csv(const std::string& text) {
  const auto t = detail::parse_csv(text);
  const int cn = t.column("n");
  const int cr = t.column("raw_rate");
  const int cq = t.column("qber");
  const int cs = t.column("sifted_bps");
  const int cf = t.column("secure");
  std::vector<LinkMetrics> out;
  for (const auto& row : t.rows) {
    auto cell = [&](int i) { return row[static_cast<std::size_t>(i)]; };
    LinkMetrics m;
    m.n = static_cast<int>(detail::to_int(cell(cn)));
    m.raw_rate = detail::to_double(cell(cr));
    m.qber = detail::to_double(cell(cq));
    m.sifted_rate = detail::to_double(cell(cs));
    const std::string s = cell(cf);
    if (s == "1" || s == "true") {
      m.secure = true;
    } else if (s == "0" || s == "false") {
      m.secure = false;
    } else {
      throw ValidationError("csv: secure must be 0/1 or true/false, got '" + s + "'");
    }
    out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Network plans and density matrices

inline nlohmann::json plan_to_json(const NetworkPlan& plan) {
  auto links = nlohmann::json::array();
  for (const auto& l : plan.links) links.push_back({{"a", l.a}, {"b", l.b}, {"n", l.n}, {"sifted_bps", l.sifted_bps}});
  return {{"users", plan.users}, {"links", links}, {"unused", plan.unused_pairs}, {"max_users", plan.max_users}};
}

inline nlohmann::json matrix_to_json(const Matrix4c& m) {
  auto re = nlohmann::json::array();
  auto im = nlohmann::json::array();
  for (int i = 0; i < 4; ++i) {
    auto rr = nlohmann::json::array();
    auto ri = nlohmann::json::array();
    for (int j = 0; j < 4; ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

}  // namespace freqbin

#endif  // FREQBIN_IO_HPP
