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

#ifndef WSDECODE_STATS_H_
#define WSDECODE_STATS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsdecode/oracle.h"

namespace wsd {

// Oracle action totals over a batch. Percentages are over every interaction
// point, TerminalNotFound included, which is how the action table is laid
// out: the terminal misses appear only in the denominator.
struct OracleSummary {
  int64_t sessions = 0;
  int64_t found_current = 0;
  int64_t found_next = 0;
  int64_t not_found = 0;
  int64_t terminal_not_found = 0;
  int64_t interaction_points = 0;
  int64_t counted_points = 0;         // excluding TerminalNotFound
  int64_t successes = 0;              // FoundCurrent + FoundNext
  int64_t successes_excl_first = 0;   // successes at rank >= 1
  int64_t auto_accepted = 0;
  int64_t reference_words = 0;
  int64_t edits = 0;

  double PctNotFound() const;
  double PctFoundCurrent() const;
  double PctFoundNext() const;
  double PctSuccess() const;
  double PctSuccessExclFirst() const;
  // Corpus-level WER: total edits over total reference words.
  double Wer() const;

  nlohmann::json ToJson() const;
};

OracleSummary AggregateStats(std::span<const SessionStats> sessions);

// Selected-rank counts over every selection in the batch (sparse).
std::map<int, int64_t> RankHistogram(std::span<const SessionStats> sessions);

// "rank,count" rows for ranks 0..cap-1 (plus any rank beyond).
std::string RankHistogramCsv(const std::map<int, int64_t>& histogram, int cap);

// Aligned text table: Not found, Found current, Found next, Success rate
// excl. first, Success rate, with counts and one-decimal percentages.
std::string FormatActionTable(const OracleSummary& summary);

struct WerRow {
  std::string method;
  int64_t edits = 0;
  int64_t reference_words = 0;
  double Wer() const {
    return reference_words == 0 ? 0.0
                                : static_cast<double>(edits) / reference_words;
  }
};
std::string FormatWerTable(const std::vector<WerRow>& rows);

// Percentage rounded to one decimal, as printed in the tables.
std::string FormatPercent(double pct);

}  // namespace wsd

#endif  // WSDECODE_STATS_H_
