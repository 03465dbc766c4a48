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

#include "wsdecode/frame_probs.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wsdecode/error.h"
#include "wsdecode/log_math.h"

namespace wsd {

FrameProbs::FrameProbs(PhonemeInventory phonemes, int num_frames,
                       std::vector<double> log_probs)
    : phonemes_(std::move(phonemes)),
      num_frames_(num_frames),
      log_probs_(std::move(log_probs)) {
  if (num_frames_ < 1) throw DataError("frame probabilities need T >= 1");
  if (log_probs_.size() != static_cast<size_t>(num_frames_) * Width()) {
    throw DataError("frame probabilities: matrix size does not match T x (P+1)");
  }
  for (int t = 0; t < num_frames_; ++t) {
    double sum = 0;
    for (double lp : Row(t)) {
      if (std::isnan(lp) || lp == kInfWeight) {
        throw DataError("frame probabilities: row " + std::to_string(t) +
                        " has a NaN or +inf entry");
      }
      sum += std::exp(lp);
    }
    if (std::abs(sum - 1.0) > 1e-6) {
      throw DataError("frame probabilities: row " + std::to_string(t) +
                      " sums to " + std::to_string(sum));
    }
  }
}

bool FrameProbs::operator==(const FrameProbs& other) const {
  if (!(phonemes_ == other.phonemes_) || num_frames_ != other.num_frames_ ||
      log_probs_.size() != other.log_probs_.size()) {
    return false;
  }
  // Bitwise, so that -inf == -inf and round trips are checked exactly.
  return std::memcmp(log_probs_.data(), other.log_probs_.data(),
                     log_probs_.size() * sizeof(double)) == 0;
}

std::string FrameProbs::ToJsonText() const {
  nlohmann::ordered_json j;
  auto symbols = nlohmann::json::array({"<blank>"});
  for (const auto& p : phonemes_.Symbols()) symbols.push_back(p);
  j["phonemes"] = symbols;
  auto rows = nlohmann::json::array();
  for (int t = 0; t < num_frames_; ++t) {
    auto row = nlohmann::json::array();
    for (double lp : Row(t)) {
      if (lp == kLogZero) {
        row.push_back(nullptr);
      } else {
        row.push_back(lp);
      }
    }
    rows.push_back(std::move(row));
  }
  j["log_probs"] = std::move(rows);
  return j.dump() + "\n";
}

FrameProbs FrameProbs::FromJsonText(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("frame probabilities: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("phonemes") || !j.contains("log_probs") ||
      !j["phonemes"].is_array() || !j["log_probs"].is_array()) {
    throw DataError("frame probabilities: need 'phonemes' and 'log_probs' arrays");
  }
  std::vector<std::string> symbols;
  for (const auto& s : j["phonemes"]) {
    if (!s.is_string()) throw DataError("frame probabilities: non-string phoneme");
    symbols.push_back(s.get<std::string>());
  }
  if (symbols.empty()) throw DataError("frame probabilities: empty phoneme list");
  symbols.erase(symbols.begin());  // blank
  PhonemeInventory inventory(symbols);
  const size_t width = symbols.size() + 1;
  std::vector<double> data;
  int frames = 0;
  for (const auto& row : j["log_probs"]) {
    if (!row.is_array() || row.size() != width) {
      throw DataError("frame probabilities: row " + std::to_string(frames) +
                      " does not have P+1 entries");
    }
    for (const auto& v : row) {
      if (v.is_null()) {
        data.push_back(kLogZero);
      } else if (v.is_number()) {
        data.push_back(v.get<double>());
      } else {
        throw DataError("frame probabilities: non-numeric entry");
      }
    }
    ++frames;
  }
  return FrameProbs(std::move(inventory), frames, std::move(data));
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "binary frame format assumes a little-endian host");

template <typename T>
void Put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T Take(const std::string& in, size_t& pos) {
  if (pos + sizeof(T) > in.size()) {
    throw DataError("frame probabilities: truncated binary data");
  }
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::string Slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

bool IsBinaryPath(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".bin") == 0;
}

}  // namespace

std::string FrameProbs::ToBinary() const {
  std::string out = "WSFP";
  Put<uint32_t>(out, 1);
  Put<uint64_t>(out, static_cast<uint64_t>(num_frames_));
  Put<uint64_t>(out, static_cast<uint64_t>(Width()));
  std::vector<std::string> symbols{"<blank>"};
  for (const auto& p : phonemes_.Symbols()) symbols.push_back(p);
  for (const auto& s : symbols) {
    Put<uint32_t>(out, static_cast<uint32_t>(s.size()));
    out += s;
  }
  for (double v : log_probs_) Put<double>(out, v);
  return out;
}

FrameProbs FrameProbs::FromBinary(const std::string& bytes) {
  if (bytes.compare(0, 4, "WSFP") != 0) {
    throw DataError("frame probabilities: bad binary magic");
  }
  size_t pos = 4;
  if (Take<uint32_t>(bytes, pos) != 1) {
    throw DataError("frame probabilities: unsupported binary version");
  }
  const uint64_t frames = Take<uint64_t>(bytes, pos);
  const uint64_t width = Take<uint64_t>(bytes, pos);
  if (width < 1 || width > 4096 || frames > (1u << 24)) {
    throw DataError("frame probabilities: implausible binary header");
  }
  std::vector<std::string> symbols;
  for (uint64_t i = 0; i < width; ++i) {
    const uint32_t len = Take<uint32_t>(bytes, pos);
    if (pos + len > bytes.size()) throw DataError("frame probabilities: truncated symbol");
    symbols.emplace_back(bytes.substr(pos, len));
    pos += len;
  }
  symbols.erase(symbols.begin());
  std::vector<double> data(frames * width);
  for (auto& v : data) v = Take<double>(bytes, pos);
  if (pos != bytes.size()) throw DataError("frame probabilities: trailing bytes");
  return FrameProbs(PhonemeInventory(symbols), static_cast<int>(frames),
                    std::move(data));
}

void FrameProbs::Write(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  os << (IsBinaryPath(path) ? ToBinary() : ToJsonText());
  if (!os) throw DataError("write failed: " + path);
}

FrameProbs FrameProbs::Read(const std::string& path) {
  const std::string bytes = Slurp(path);
  return IsBinaryPath(path) ? FromBinary(bytes) : FromJsonText(bytes);
}

}  // namespace wsd
