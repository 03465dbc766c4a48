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

#ifndef WSDECODE_PROTOCOL_H_
#define WSDECODE_PROTOCOL_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wsdecode/frame_probs.h"
#include "wsdecode/fst.h"
#include "wsdecode/interactive_decoder.h"

namespace wsd {

// Message kinds and error codes of the session protocol. Every message is a
// JSON object with "kind" and "session_id".
//
//   hello          client: {frames | frames_path, config?, reference?}
//   candidates     server: {position, candidates: [{word, score, rank}]}
//   select         client: {word}
//   auto_accepted  server: {position, word, score, candidates}
//   result         server: {transcript}
//   stats          server: {interaction_points, selected_ranks,
//                           auto_accepted, transcript, wer?}
//   stop           client: {}
//   error          server: {code, message}
namespace msg {
inline constexpr const char* kHello = "hello";
inline constexpr const char* kCandidates = "candidates";
inline constexpr const char* kSelect = "select";
inline constexpr const char* kAutoAccepted = "auto_accepted";
inline constexpr const char* kResult = "result";
inline constexpr const char* kStats = "stats";
inline constexpr const char* kStop = "stop";
inline constexpr const char* kError = "error";
}  // namespace msg

namespace err {
inline constexpr const char* kMalformed = "malformed_message";
inline constexpr const char* kUnknownSession = "unknown_session";
inline constexpr const char* kInvalidSelection = "invalid_selection";
inline constexpr const char* kBadFrames = "bad_frames";
inline constexpr const char* kIncompatibleInventory = "incompatible_inventory";
inline constexpr const char* kProtocolViolation = "protocol_violation";
}  // namespace err

nlohmann::json ErrorMessage(const std::string& session_id,
                            const std::string& code,
                            const std::string& message);

// One decode driven by protocol messages. Not thread-safe; the owner must
// serialize calls. Errors other than invalid_selection finish the session.
class ProtocolSession {
 public:
  ProtocolSession(std::shared_ptr<const WeightedFst> graph, std::string id);

  // Replies to one client message, in emission order.
  std::vector<nlohmann::json> Handle(const nlohmann::json& message);

  const std::string& Id() const { return id_; }
  bool Finished() const { return finished_; }

 private:
  std::vector<nlohmann::json> OnHello(const nlohmann::json& message);
  std::vector<nlohmann::json> OnSelect(const nlohmann::json& message);
  std::vector<nlohmann::json> Finish();
  std::vector<nlohmann::json> Fail(const std::string& code,
                                   const std::string& message);
  // Runs the decoder to the next point that needs the client, or to the end.
  std::vector<nlohmann::json> Advance();
  nlohmann::json Envelope(const char* kind) const;

  std::shared_ptr<const WeightedFst> graph_;
  std::string id_;
  std::unique_ptr<FrameProbs> frames_;
  std::unique_ptr<InteractiveSession> session_;
  DecoderConfig config_;
  std::optional<std::vector<std::string>> reference_;
  std::vector<int> selected_ranks_;
  int64_t interaction_points_ = 0;
  int64_t auto_accepted_ = 0;
  bool finished_ = false;
};

// Stream framing: the decimal byte length of the JSON text, a newline, then
// the JSON text.
std::string EncodeFrame(const nlohmann::json& message);

// Incremental decoder for the stream framing.
class FrameDecoder {
 public:
  explicit FrameDecoder(size_t max_message = 64u << 20)
      : max_message_(max_message) {}
  void Feed(std::string_view bytes) { buffer_.append(bytes); }
  // A complete message text, if one is buffered. Throws DataError on a bad
  // length header.
  std::optional<std::string> Next();

 private:
  std::string buffer_;
  size_t max_message_;
};

}  // namespace wsd

#endif  // WSDECODE_PROTOCOL_H_
