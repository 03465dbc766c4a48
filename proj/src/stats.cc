// Copyright 2026 The wsdecode Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wsdecode/stats.h"

#include <cstdio>
#include <sstream>

namespace wsd {

namespace {

double Pct(int64_t part, int64_t whole) {
  return whole == 0 ? 0.0 : 100.0 * static_cast<double>(part) / whole;
}

std::string Pad(const std::string& s, size_t width, bool left) {
  if (s.size() >= width) return s;
  const std::string fill(width - s.size(), ' ');
  return left ? s + fill : fill + s;
}

}  // namespace

double OracleSummary::PctNotFound() const { return Pct(not_found, interaction_points); }
double OracleSummary::PctFoundCurrent() const {
  return Pct(found_current, interaction_points);
}
double OracleSummary::PctFoundNext() const { return Pct(found_next, interaction_points); }
double OracleSummary::PctSuccess() const { return Pct(successes, interaction_points); }
double OracleSummary::PctSuccessExclFirst() const {
  return Pct(successes_excl_first, interaction_points);
}
double OracleSummary::Wer() const {
  return reference_words == 0 ? 0.0 : static_cast<double>(edits) / reference_words;
}

nlohmann::json OracleSummary::ToJson() const {
  nlohmann::json j;
  j["sessions"] = sessions;
  j["interaction_points"] = interaction_points;
  j["counted_points"] = counted_points;
  j["found_current"] = found_current;
  j["found_next"] = found_next;
  j["not_found"] = not_found;
  j["terminal_not_found"] = terminal_not_found;
  j["successes"] = successes;
  j["successes_excl_first"] = successes_excl_first;
  j["auto_accepted"] = auto_accepted;
  j["pct_not_found"] = PctNotFound();
  j["pct_found_current"] = PctFoundCurrent();
  j["pct_found_next"] = PctFoundNext();
  j["pct_success"] = PctSuccess();
  j["pct_success_excl_first"] = PctSuccessExclFirst();
  j["reference_words"] = reference_words;
  j["edits"] = edits;
  j["wer"] = Wer();
  return j;
}

OracleSummary AggregateStats(std::span<const SessionStats> sessions) {
  OracleSummary s;
  for (const auto& st : sessions) {
    ++s.sessions;
    s.found_current += st.Count(OracleAction::kFoundCurrent);
    s.found_next += st.Count(OracleAction::kFoundNext);
    s.not_found += st.Count(OracleAction::kNotFound);
    s.terminal_not_found += st.Count(OracleAction::kTerminalNotFound);
    s.interaction_points += st.interaction_points;
    s.auto_accepted += st.auto_accepted;
    for (const auto& sel : st.selections) {
      if (sel.action != OracleAction::kNotFound && sel.rank >= 1) {
        ++s.successes_excl_first;
      }
    }
    s.reference_words += static_cast<int64_t>(st.reference.size());
    s.edits += st.edits;
  }
  s.counted_points = s.found_current + s.found_next + s.not_found;
  s.successes = s.found_current + s.found_next;
  return s;
}

std::map<int, int64_t> RankHistogram(std::span<const SessionStats> sessions) {
  std::map<int, int64_t> h;
  for (const auto& st : sessions) {
    for (const auto& sel : st.selections) ++h[sel.rank];
  }
  return h;
}

std::string RankHistogramCsv(const std::map<int, int64_t>& histogram, int cap) {
  std::ostringstream os;
  os << "rank,count\n";
  for (int r = 0; r < cap; ++r) {
    auto it = histogram.find(r);
    os << r << ',' << (it == histogram.end() ? 0 : it->second) << '\n';
  }
  for (auto it = histogram.lower_bound(cap); it != histogram.end(); ++it) {
    os << it->first << ',' << it->second << '\n';
  }
  return os.str();
}

std::string FormatPercent(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f%%", pct);
  return buf;
}

std::string FormatActionTable(const OracleSummary& s) {
  struct Row {
    std::string name;
    int64_t count;
    double pct;
  };
  const std::vector<Row> rows = {
      {"Not found", s.not_found, s.PctNotFound()},
      {"Found current", s.found_current, s.PctFoundCurrent()},
      {"Found next", s.found_next, s.PctFoundNext()},
      {"Success rate excl. first", s.successes_excl_first, s.PctSuccessExclFirst()},
      {"Success rate", s.successes, s.PctSuccess()},
  };
  const std::string rule(48, '-');
  std::ostringstream os;
  os << Pad("Oracle action", 26, true) << Pad("Count", 10, false)
     << Pad("%", 12, false) << '\n'
     << rule << '\n';
  for (const auto& r : rows) {
    os << Pad(r.name, 26, true) << Pad(std::to_string(r.count), 10, false)
       << Pad(FormatPercent(r.pct), 12, false) << '\n';
  }
  os << rule << '\n'
     << "Interaction points: " << s.interaction_points
     << " (terminal not found, not counted: " << s.terminal_not_found << ")\n";
  return os.str();
}

std::string FormatWerTable(const std::vector<WerRow>& rows) {
  std::ostringstream os;
  const std::string rule(44, '-');
  os << Pad("Decoding method", 32, true) << Pad("WER", 12, false) << '\n'
     << rule << '\n';
  for (const auto& r : rows) {
    os << Pad(r.method, 32, true) << Pad(FormatPercent(100.0 * r.Wer()), 12, false)
       << '\n';
  }
  return os.str();
}

}  // namespace wsd
