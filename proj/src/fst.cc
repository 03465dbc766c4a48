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

#include "wsdecode/fst.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>

#include "wsdecode/error.h"
#include "wsdecode/log_math.h"

namespace wsd {

StateId WeightedFst::AddState() {
  arcs_.emplace_back();
  final_.push_back(kInfWeight);
  word_boundary_.push_back(0);
  return static_cast<StateId>(arcs_.size() - 1);
}

void WeightedFst::SetStart(StateId s) {
  if (s < 0 || s >= NumStates()) throw UsageError("start state out of range");
  start_ = s;
}

void WeightedFst::AddArc(StateId s, const Arc& arc) {
  if (s < 0 || s >= NumStates()) throw UsageError("arc source out of range");
  arcs_[s].push_back(arc);
}

void WeightedFst::SetFinal(StateId s, double weight) { final_.at(s) = weight; }

void WeightedFst::MarkWordBoundary(StateId s) { word_boundary_.at(s) = 1; }

size_t WeightedFst::NumArcs() const {
  size_t n = 0;
  for (const auto& a : arcs_) n += a.size();
  return n;
}

std::optional<double> WeightedFst::Final(StateId s) const {
  if (final_[s] == kInfWeight) return std::nullopt;
  return final_[s];
}

std::vector<StateId> WeightedFst::WordBoundaryStates() const {
  std::vector<StateId> out;
  for (StateId s = 0; s < NumStates(); ++s) {
    if (word_boundary_[s]) out.push_back(s);
  }
  return out;
}

void WeightedFst::SortArcs() {
  for (auto& arcs : arcs_) {
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) {
      return std::tie(a.ilabel, a.olabel, a.next, a.weight) <
             std::tie(b.ilabel, b.olabel, b.next, b.weight);
    });
  }
}

void WeightedFst::Validate() const {
  if (start_ < 0 || start_ >= NumStates()) {
    throw DataError("fst: start state missing");
  }
  const int32_t num_phonemes = phonemes_.NumPhonemes();
  for (StateId s = 0; s < NumStates(); ++s) {
    for (const Arc& a : arcs_[s]) {
      if (a.next < 0 || a.next >= NumStates()) {
        throw DataError("fst: arc from state " + std::to_string(s) +
                        " targets missing state " + std::to_string(a.next));
      }
      if (!std::isfinite(a.weight)) {
        throw DataError("fst: non-finite arc weight at state " +
                        std::to_string(s));
      }
      const bool backoff = a.ilabel == kEpsilon && a.olabel == kEpsilon;
      if (!backoff && a.weight < 0) {
        throw DataError("fst: negative weight on a labelled arc at state " +
                        std::to_string(s));
      }
      const int32_t ilabel_limit =
          word_input_ ? words_.Size() : num_phonemes + 1;
      if (a.ilabel < 0 || a.ilabel >= ilabel_limit || a.olabel < 0 ||
          a.olabel >= words_.Size()) {
        throw DataError("fst: label out of range at state " +
                        std::to_string(s));
      }
    }
    if (final_[s] != kInfWeight && !std::isfinite(final_[s])) {
      throw DataError("fst: non-finite final weight at state " +
                      std::to_string(s));
    }
  }
  // Any epsilon-input cycle is rejected; closures then always terminate.
  enum : uint8_t { kWhite, kGrey, kBlack };
  std::vector<uint8_t> colour(NumStates(), kWhite);
  std::vector<std::pair<StateId, size_t>> stack;
  for (StateId root = 0; root < NumStates(); ++root) {
    if (colour[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    colour[root] = kGrey;
    while (!stack.empty()) {
      auto& [s, i] = stack.back();
      if (i == arcs_[s].size()) {
        colour[s] = kBlack;
        stack.pop_back();
        continue;
      }
      const Arc& a = arcs_[s][i++];
      if (a.ilabel != kEpsilon) continue;
      if (colour[a.next] == kGrey) {
        throw DataError("fst: epsilon-input cycle through state " +
                        std::to_string(a.next));
      }
      if (colour[a.next] == kWhite) {
        colour[a.next] = kGrey;
        stack.emplace_back(a.next, 0);
      }
    }
  }
}

namespace {

std::string FormatWeight(double w) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), w);
  return std::string(buf, res.ptr);
}

double ParseWeight(const std::string& token) {
  double w = 0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), w);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw DataError("fst text: bad weight '" + token + "'");
  }
  return w;
}

void ExpectHeader(std::istream& is, const std::string& name, size_t* count) {
  std::string word;
  if (!(is >> word) || word != name || !(is >> *count)) {
    throw DataError("fst text: expected section '" + name + "'");
  }
}

}  // namespace

void WeightedFst::WriteText(std::ostream& os) const {
  const auto ilabel = [&](Label l) -> const std::string& {
    static const std::string eps = "<eps>";
    if (l == kEpsilon) return eps;
    return word_input_ ? words_.Symbol(l) : phonemes_.Symbol(l);
  };
  os << "wsfst 1\n";
  os << "input " << (word_input_ ? "words" : "phonemes") << '\n';
  const auto phones = phonemes_.Symbols();
  os << "phonemes " << phones.size() << '\n';
  for (const auto& p : phones) os << p << '\n';
  const auto words = words_.Symbols();
  os << "words " << words.size() << '\n';
  for (const auto& w : words) os << w << '\n';
  os << "states " << NumStates() << '\n';
  os << "start " << start_ << '\n';
  os << "arcs " << NumArcs() << '\n';
  for (StateId s = 0; s < NumStates(); ++s) {
    for (const Arc& a : arcs_[s]) {
      os << s << ' ' << ilabel(a.ilabel) << ' ' << words_.Symbol(a.olabel)
         << ' ' << FormatWeight(a.weight) << ' ' << a.next << '\n';
    }
  }
  size_t num_final = 0;
  for (double f : final_) num_final += f != kInfWeight;
  os << "finals " << num_final << '\n';
  for (StateId s = 0; s < NumStates(); ++s) {
    if (final_[s] != kInfWeight) os << s << ' ' << FormatWeight(final_[s]) << '\n';
  }
  const auto boundary = WordBoundaryStates();
  os << "word_boundary " << boundary.size() << '\n';
  for (StateId s : boundary) os << s << '\n';
  os << "end\n";
}

WeightedFst WeightedFst::ReadText(std::istream& is) {
  std::string magic;
  int version = 0;
  if (!(is >> magic >> version) || magic != "wsfst" || version != 1) {
    throw DataError("fst text: bad header (expected 'wsfst 1')");
  }
  std::string input_kind;
  if (!(is >> magic >> input_kind) || magic != "input" ||
      (input_kind != "words" && input_kind != "phonemes")) {
    throw DataError("fst text: expected 'input words|phonemes'");
  }
  const bool word_input = input_kind == "words";
  size_t n = 0;
  ExpectHeader(is, "phonemes", &n);
  std::vector<std::string> phones(n);
  for (auto& p : phones) is >> p;
  ExpectHeader(is, "words", &n);
  SymbolTable words;
  for (size_t i = 0; i < n; ++i) {
    std::string w;
    is >> w;
    words.Add(w);
  }
  if (!is) throw DataError("fst text: truncated symbol sections");
  WeightedFst fst(PhonemeInventory(phones), std::move(words));
  fst.word_input_ = word_input;
  ExpectHeader(is, "states", &n);
  for (size_t i = 0; i < n; ++i) fst.AddState();
  std::string word;
  StateId start = kNoState;
  if (!(is >> word >> start) || word != "start") {
    throw DataError("fst text: expected 'start'");
  }
  if (start < 0 || start >= fst.NumStates()) {
    throw DataError("fst text: start state out of range");
  }
  fst.SetStart(start);
  ExpectHeader(is, "arcs", &n);
  const auto check_state = [&](long long s) {
    if (s < 0 || s >= fst.NumStates()) {
      throw DataError("fst text: state " + std::to_string(s) + " out of range");
    }
    return static_cast<StateId>(s);
  };
  for (size_t i = 0; i < n; ++i) {
    long long src = 0, dst = 0;
    std::string in, out, weight;
    if (!(is >> src >> in >> out >> weight >> dst)) {
      throw DataError("fst text: truncated arc list");
    }
    Arc arc;
    if (in != "<eps>") {
      auto id = word_input ? fst.Words().Find(in) : fst.Phonemes().Find(in);
      if (!id) throw DataError("fst text: unknown input symbol '" + in + "'");
      arc.ilabel = *id;
    }
    if (out != "<eps>") {
      auto id = fst.Words().Find(out);
      if (!id) throw DataError("fst text: unknown word '" + out + "'");
      arc.olabel = *id;
    }
    arc.weight = ParseWeight(weight);
    arc.next = check_state(dst);
    fst.AddArc(check_state(src), arc);
  }
  ExpectHeader(is, "finals", &n);
  for (size_t i = 0; i < n; ++i) {
    long long s = 0;
    std::string weight;
    if (!(is >> s >> weight)) throw DataError("fst text: truncated finals");
    fst.SetFinal(check_state(s), ParseWeight(weight));
  }
  ExpectHeader(is, "word_boundary", &n);
  for (size_t i = 0; i < n; ++i) {
    long long s = 0;
    if (!(is >> s)) throw DataError("fst text: truncated word_boundary");
    fst.MarkWordBoundary(check_state(s));
  }
  if (!(is >> word) || word != "end") {
    throw DataError("fst text: missing 'end'");
  }
  fst.Validate();
  return fst;
}

void WeightedFst::Write(const std::string& path) const {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open for writing: " + path);
  WriteText(os);
  if (!os) throw DataError("write failed: " + path);
}

WeightedFst WeightedFst::Read(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open: " + path);
  return ReadText(is);
}

bool WeightedFst::operator==(const WeightedFst& other) const {
  return phonemes_ == other.phonemes_ && words_ == other.words_ &&
         word_input_ == other.word_input_ &&
         start_ == other.start_ && arcs_ == other.arcs_ &&
         final_ == other.final_ && word_boundary_ == other.word_boundary_;
}

namespace {

using ClosureKey = std::pair<StateId, std::vector<Label>>;

// Relaxes epsilon-input arcs from `seeds`. With `stop_at_boundary`, word
// boundary states are kept but not expanded. The depth guard turns a
// malformed graph into an error instead of a hang.
std::map<ClosureKey, double> EpsilonClosure(const WeightedFst& fst,
                                            std::vector<FeedResult> seeds,
                                            bool stop_at_boundary) {
  std::map<ClosureKey, double> best;
  struct Item {
    FeedResult r;
    int32_t depth;
  };
  std::vector<Item> work;
  for (auto& s : seeds) {
    ClosureKey key{s.state, s.words};
    auto it = best.find(key);
    if (it != best.end() && it->second <= s.weight) continue;
    best[key] = s.weight;
    work.push_back({std::move(s), 0});
  }
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    const FeedResult& cur = item.r;
    if (best[{cur.state, cur.words}] < cur.weight) continue;  // stale
    if (stop_at_boundary && fst.IsWordBoundary(cur.state)) continue;
    for (const Arc& a : fst.Arcs(cur.state)) {
      if (a.ilabel != kEpsilon) continue;
      if (item.depth + 1 > fst.NumStates()) {
        throw DataError("epsilon closure exceeded the state count");
      }
      FeedResult next{a.next, cur.words, cur.weight + a.weight};
      if (a.olabel != kEpsilon) next.words.push_back(a.olabel);
      ClosureKey key{next.state, next.words};
      auto it = best.find(key);
      if (it != best.end() && it->second <= next.weight) continue;
      best[key] = next.weight;
      work.push_back({std::move(next), item.depth + 1});
    }
  }
  return best;
}

}  // namespace

std::vector<FeedResult> FeedSymbol(const WeightedFst& fst, StateId state,
                                   Label phoneme, size_t max_states) {
  if (state < 0 || state >= fst.NumStates()) {
    throw UsageError("FeedSymbol: state out of range");
  }
  if (phoneme <= 0 || (!fst.IsWordAcceptor() &&
                       phoneme > fst.Phonemes().NumPhonemes())) {
    throw UsageError("FeedSymbol: phoneme out of inventory");
  }
  const auto before = EpsilonClosure(fst, {FeedResult{state, {}, 0.0}},
                                     /*stop_at_boundary=*/false);
  std::vector<FeedResult> consumed;
  for (const auto& [key, weight] : before) {
    for (const Arc& a : fst.Arcs(key.first)) {
      if (a.ilabel != phoneme) continue;
      FeedResult r{a.next, key.second, weight + a.weight};
      if (a.olabel != kEpsilon) r.words.push_back(a.olabel);
      consumed.push_back(std::move(r));
    }
  }
  const auto after = EpsilonClosure(fst, std::move(consumed),
                                    /*stop_at_boundary=*/true);
  std::vector<FeedResult> out;
  out.reserve(after.size());
  for (const auto& [key, weight] : after) {
    out.push_back({key.first, key.second, weight});
  }
  std::sort(out.begin(), out.end(), [](const FeedResult& a, const FeedResult& b) {
    return std::tie(a.weight, a.state, a.words) <
           std::tie(b.weight, b.state, b.words);
  });
  if (out.size() > max_states) out.resize(max_states);
  return out;
}

std::optional<double> FinalWeightFrom(const WeightedFst& fst, StateId state) {
  const auto reach = EpsilonClosure(fst, {FeedResult{state, {}, 0.0}},
                                    /*stop_at_boundary=*/false);
  std::optional<double> best;
  for (const auto& [key, weight] : reach) {
    if (auto f = fst.Final(key.first)) {
      const double total = weight + *f;
      if (!best || total < *best) best = total;
    }
  }
  return best;
}

}  // namespace wsd
