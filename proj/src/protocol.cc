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

#include "wsdecode/protocol.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "wsdecode/error.h"
#include "wsdecode/wer.h"

namespace wsd {

namespace {

nlohmann::json Real(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json CandidateList(const std::vector<Candidate>& candidates) {
  auto list = nlohmann::json::array();
  for (const auto& c : candidates) {
    list.push_back({{"word", c.text}, {"score", Real(c.score)}, {"rank", c.rank}});
  }
  return list;
}

}  // namespace

nlohmann::json ErrorMessage(const std::string& session_id,
                            const std::string& code,
                            const std::string& message) {
  return {{"kind", msg::kError},
          {"session_id", session_id},
          {"code", code},
          {"message", message}};
}

ProtocolSession::ProtocolSession(std::shared_ptr<const WeightedFst> graph,
                                 std::string id)
    : graph_(std::move(graph)), id_(std::move(id)) {}

nlohmann::json ProtocolSession::Envelope(const char* kind) const {
  return {{"kind", kind}, {"session_id", id_}};
}

std::vector<nlohmann::json> ProtocolSession::Fail(const std::string& code,
                                                  const std::string& message) {
  finished_ = true;
  session_.reset();
  return {ErrorMessage(id_, code, message)};
}

std::vector<nlohmann::json> ProtocolSession::Handle(const nlohmann::json& message) {
  if (finished_) {
    return {ErrorMessage(id_, err::kProtocolViolation, "session has ended")};
  }
  if (!message.is_object() || !message.contains("kind") ||
      !message["kind"].is_string()) {
    return Fail(err::kMalformed, "message must be an object with a string 'kind'");
  }
  const std::string kind = message["kind"].get<std::string>();
  if (!session_) {
    if (kind != msg::kHello) {
      return Fail(err::kProtocolViolation, "expected hello, got " + kind);
    }
    return OnHello(message);
  }
  if (kind == msg::kSelect) return OnSelect(message);
  if (kind == msg::kStop) {
    session_->Stop();
    return Finish();
  }
  if (kind == msg::kHello) {
    return Fail(err::kProtocolViolation, "session already started");
  }
  return Fail(err::kMalformed, "unexpected message kind '" + kind + "'");
}

std::vector<nlohmann::json> ProtocolSession::OnHello(const nlohmann::json& message) {
  try {
    if (message.contains("config") && !message["config"].is_null()) {
      config_ = DecoderConfig::FromJson(message["config"]);
      config_.Validate();
    }
    if (message.contains("reference") && !message["reference"].is_null()) {
      reference_ = message["reference"].get<std::vector<std::string>>();
    }
  } catch (const std::exception& e) {
    return Fail(err::kMalformed, e.what());
  }
  try {
    if (message.contains("frames")) {
      frames_ = std::make_unique<FrameProbs>(
          FrameProbs::FromJsonText(message["frames"].dump()));
    } else if (message.contains("frames_path") && message["frames_path"].is_string()) {
      frames_ = std::make_unique<FrameProbs>(
          FrameProbs::Read(message["frames_path"].get<std::string>()));
    } else {
      return Fail(err::kMalformed, "hello needs 'frames' or 'frames_path'");
    }
  } catch (const std::exception& e) {
    return Fail(err::kBadFrames, e.what());
  }
  if (!(frames_->Phonemes() == graph_->Phonemes())) {
    return Fail(err::kIncompatibleInventory,
                "frame phoneme inventory differs from the graph's");
  }
  session_ = std::make_unique<InteractiveSession>(*graph_, *frames_, config_);
  return Advance();
}

std::vector<nlohmann::json> ProtocolSession::OnSelect(const nlohmann::json& message) {
  if (!message.contains("word") || !message["word"].is_string()) {
    return Fail(err::kMalformed, "select needs a string 'word'");
  }
  if (!session_->AwaitingSelection()) {
    return Fail(err::kProtocolViolation, "no candidate list is pending");
  }
  const std::string word = message["word"].get<std::string>();
  const auto& candidates = session_->Candidates();
  auto it = std::find_if(candidates.begin(), candidates.end(),
                         [&](const Candidate& c) { return c.text == word; });
  if (it == candidates.end()) {
    return {ErrorMessage(id_, err::kInvalidSelection,
                         "'" + word + "' is not in the current candidate list")};
  }
  selected_ranks_.push_back(it->rank);
  session_->Select(word);
  return Advance();
}

std::vector<nlohmann::json> ProtocolSession::Advance() {
  std::vector<nlohmann::json> out;
  while (true) {
    const auto& candidates = session_->NextInteraction();
    if (candidates.empty()) break;
    if (ShouldAutoAccept(config_, candidates)) {
      auto m = Envelope(msg::kAutoAccepted);
      m["position"] = session_->Position();
      m["word"] = candidates.front().text;
      m["score"] = Real(candidates.front().score);
      m["candidates"] = CandidateList(candidates);
      out.push_back(std::move(m));
      ++auto_accepted_;
      session_->Select(candidates.front().text);
      continue;
    }
    auto m = Envelope(msg::kCandidates);
    m["position"] = session_->Position();
    m["candidates"] = CandidateList(candidates);
    out.push_back(std::move(m));
    ++interaction_points_;
    return out;
  }
  auto tail = Finish();
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

std::vector<nlohmann::json> ProtocolSession::Finish() {
  const std::vector<std::string> transcript = session_->Transcript();
  auto result = Envelope(msg::kResult);
  result["transcript"] = transcript;
  auto stats = Envelope(msg::kStats);
  stats["interaction_points"] = interaction_points_;
  stats["selected_ranks"] = selected_ranks_;
  stats["auto_accepted"] = auto_accepted_;
  stats["transcript"] = transcript;
  if (reference_ && !reference_->empty()) {
    stats["wer"] = Wer(*reference_, transcript);
  }
  finished_ = true;
  session_.reset();
  return {std::move(result), std::move(stats)};
}

std::string EncodeFrame(const nlohmann::json& message) {
  const std::string body = message.dump();
  return std::to_string(body.size()) + "\n" + body;
}

std::optional<std::string> FrameDecoder::Next() {
  const size_t newline = buffer_.find('\n');
  if (newline == std::string::npos) {
    if (buffer_.size() > 20) throw DataError("frame header too long");
    return std::nullopt;
  }
  size_t length = 0;
  const char* begin = buffer_.data();
  auto [end, ec] = std::from_chars(begin, begin + newline, length);
  if (newline == 0 || ec != std::errc() || end != begin + newline) {
    throw DataError("bad frame length header");
  }
  if (length > max_message_) throw DataError("frame exceeds the message size limit");
  if (buffer_.size() < newline + 1 + length) return std::nullopt;
  std::string body = buffer_.substr(newline + 1, length);
  buffer_.erase(0, newline + 1 + length);
  return body;
}

}  // namespace wsd
