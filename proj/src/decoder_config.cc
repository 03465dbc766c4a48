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

#include "wsdecode/decoder_config.h"

#include <limits>

#include "wsdecode/error.h"

namespace wsd {

namespace {

// JSON has no infinities; they travel as the strings "inf" / "-inf".
nlohmann::json EncodeReal(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  return v;
}

double DecodeReal(const nlohmann::json& v, const char* field) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    if (v == "inf") return std::numeric_limits<double>::infinity();
    if (v == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw DataError(std::string("config: field '") + field + "' must be a number");
}

int DecodeCount(const nlohmann::json& v, const char* field) {
  if (!v.is_number_integer() || v.get<long long>() < 1 ||
      v.get<long long>() > 1'000'000'000) {
    throw DataError(std::string("config: field '") + field +
                    "' must be a positive integer");
  }
  return v.get<int>();
}

}  // namespace

void DecoderConfig::Validate() const {
  if (beam_width < 1 || fst_branch_cap < 1 || candidate_cap < 1) {
    throw UsageError("config: caps must be positive");
  }
  if (std::isnan(phoneme_floor)) throw UsageError("config: phoneme_floor is NaN");
  if (auto_accept_threshold && std::isnan(*auto_accept_threshold)) {
    throw UsageError("config: auto_accept_threshold is NaN");
  }
}

nlohmann::json DecoderConfig::ToJson() const {
  nlohmann::json j;
  j["beam_width"] = beam_width;
  j["fst_branch_cap"] = fst_branch_cap;
  j["candidate_cap"] = candidate_cap;
  j["phoneme_floor"] = EncodeReal(phoneme_floor);
  if (auto_accept_threshold) {
    j["auto_accept_threshold"] = EncodeReal(*auto_accept_threshold);
  } else {
    j["auto_accept_threshold"] = nullptr;
  }
  return j;
}

DecoderConfig DecoderConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw DataError("config: expected an object");
  DecoderConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "beam_width") {
      c.beam_width = DecodeCount(v, "beam_width");
    } else if (key == "fst_branch_cap") {
      c.fst_branch_cap = DecodeCount(v, "fst_branch_cap");
    } else if (key == "candidate_cap") {
      c.candidate_cap = DecodeCount(v, "candidate_cap");
    } else if (key == "phoneme_floor") {
      c.phoneme_floor = DecodeReal(v, "phoneme_floor");
    } else if (key == "auto_accept_threshold") {
      if (v.is_null()) {
        c.auto_accept_threshold.reset();
      } else {
        c.auto_accept_threshold = DecodeReal(v, "auto_accept_threshold");
      }
    } else {
      throw DataError("config: unknown field '" + key + "'");
    }
  }
  c.Validate();
  return c;
}

}  // namespace wsd
