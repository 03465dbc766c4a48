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

#include <charconv>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wsdecode/error.h"
#include "wsdecode/interactive_decoder.h"
#include "wsdecode/pipeline.h"
#include "wsdecode/session_server.h"
#include "wsdecode/standard_decoder.h"

namespace {

using wsd::DataError;
using wsd::UsageError;

struct ConfigFlags {
  std::string file;
  std::optional<int> beam_width;
  std::optional<int> fst_branch_cap;
  std::optional<int> candidate_cap;
  std::optional<double> phoneme_floor;
  std::optional<double> auto_accept_threshold;

  void Register(CLI::App* app) {
    app->add_option("--config", file, "decoder config JSON file");
    app->add_option("--beam-width", beam_width);
    app->add_option("--fst-branch-cap", fst_branch_cap);
    app->add_option("--candidate-cap", candidate_cap);
    app->add_option("--phoneme-floor", phoneme_floor, "natural-log floor");
    app->add_option("--auto-accept-threshold", auto_accept_threshold,
                    "score gap for taking rank 0 without asking (inf = never)");
  }

  wsd::DecoderConfig Resolve() const {
    wsd::DecoderConfig c;
    if (!file.empty()) {
      std::ifstream is(file);
      if (!is) throw DataError("cannot open config: " + file);
      nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
      if (j.is_discarded()) throw DataError("config " + file + " is not valid JSON");
      c = wsd::DecoderConfig::FromJson(j);
    }
    if (beam_width) c.beam_width = *beam_width;
    if (fst_branch_cap) c.fst_branch_cap = *fst_branch_cap;
    if (candidate_cap) c.candidate_cap = *candidate_cap;
    if (phoneme_floor) c.phoneme_floor = *phoneme_floor;
    if (auto_accept_threshold) c.auto_accept_threshold = *auto_accept_threshold;
    c.Validate();
    return c;
  }
};

struct LmFlags {
  std::string lexicon;
  std::string corpus;
  size_t vocab_size = 1000;
  double discount = 0.75;

  void Register(CLI::App* app) {
    app->add_option("--lexicon", lexicon, "WORD<TAB>PHONEMES[<TAB>WEIGHT] lines")->required();
    app->add_option("--corpus", corpus, "one sentence per line")->required();
    app->add_option("--vocab-size", vocab_size, "most frequent words kept");
    app->add_option("--discount", discount, "Kneser-Ney discount");
  }

  wsd::GraphInputs Load(const wsd::PhonemeInventory& inventory) const {
    return wsd::PrepareGraphInputs(wsd::ReadLexicon(lexicon, inventory),
                                   wsd::ReadCorpus(corpus), vocab_size, discount);
  }
};

std::string Join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

volatile std::sig_atomic_t g_stop = 0;

// Reads a choice from the terminal: a rank number, a listed word, empty for
// rank 0, or "q" to stop.
wsd::InteractionOutcome AskUser(const std::vector<wsd::Candidate>& candidates,
                                int position) {
  const size_t shown = std::min<size_t>(candidates.size(), 10);
  std::cout << "word " << position << ":\n";
  for (size_t i = 0; i < shown; ++i) {
    std::cout << "  [" << i << "] " << candidates[i].text << "  ("
              << candidates[i].score - candidates[0].score << ")\n";
  }
  if (candidates.size() > shown) {
    std::cout << "  ... " << candidates.size() - shown << " more\n";
  }
  while (true) {
    std::cout << "choice (rank, word, enter = 0, q = stop): " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line) || line == "q") {
      return wsd::InteractionOutcome::Stop();
    }
    if (line.empty()) return wsd::InteractionOutcome::Select(candidates[0].text);
    size_t rank = 0;
    auto [end, ec] = std::from_chars(line.data(), line.data() + line.size(), rank);
    if (ec == std::errc() && end == line.data() + line.size()) {
      if (rank < candidates.size()) {
        return wsd::InteractionOutcome::Select(candidates[rank].text);
      }
    } else {
      for (const auto& c : candidates) {
        if (c.text == line) return wsd::InteractionOutcome::Select(c.text);
      }
    }
    std::cout << "not a listed candidate\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Word-synchronous interactive decoding over CTC phoneme posteriors"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "compile lexicon and corpus into a decoder graph");
  LmFlags build_lm;
  std::string build_out;
  build_lm.Register(build);
  build->add_option("--out", build_out, "graph file")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic benchmark");
  LmFlags synth_lm;
  wsd::SynthConfig synth_config;
  int synth_n = 100;
  std::string synth_out;
  bool synth_binary = false;
  synth_lm.Register(synth);
  synth->add_option("-n,--utterances", synth_n);
  synth->add_option("--out-dir", synth_out)->required();
  synth->add_option("--seed", synth_config.seed);
  synth->add_option("--min-frames", synth_config.min_frames);
  synth->add_option("--max-frames", synth_config.max_frames);
  synth->add_option("--blank-prob", synth_config.blank_prob);
  synth->add_option("--temperature", synth_config.noise_temperature);
  synth->add_option("--confusion-mass", synth_config.confusion_mass);
  synth->add_option("--max-words", synth_config.max_words);
  synth->add_flag("--binary", synth_binary, "write frames in the binary format");

  // eval
  auto* eval = app.add_subcommand("eval", "run oracle and/or standard decoding over a benchmark");
  std::string eval_graph, eval_manifest, eval_out, eval_mode = "both";
  ConfigFlags eval_config;
  eval->add_option("--graph", eval_graph)->required();
  eval->add_option("--manifest", eval_manifest)->required();
  eval->add_option("--out-dir", eval_out)->required();
  eval->add_option("--mode", eval_mode)->check(CLI::IsMember({"oracle", "standard", "both"}));
  eval_config.Register(eval);

  // serve
  auto* serve = app.add_subcommand("serve", "run the interactive session service");
  std::string serve_graph, serve_listen, serve_http;
  double serve_idle = 600;
  serve->add_option("--graph", serve_graph)->required();
  serve->add_option("--listen", serve_listen, "stream socket: host:port or unix:/path");
  serve->add_option("--http", serve_http, "HTTP endpoint host:port");
  serve->add_option("--idle-timeout", serve_idle, "seconds before an idle session expires");

  // decode
  auto* decode = app.add_subcommand("decode", "decode one utterance, choosing words at the terminal");
  std::string decode_graph, decode_frames;
  bool decode_standard = false;
  ConfigFlags decode_config;
  decode->add_option("--graph", decode_graph)->required();
  decode->add_option("--frames", decode_frames)->required();
  decode->add_flag("--standard", decode_standard, "print the standard beam decode instead");
  decode_config.Register(decode);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const wsd::PhonemeInventory inventory = wsd::PhonemeInventory::Arpabet();
    if (*build) {
      const wsd::GraphInputs inputs = build_lm.Load(inventory);
      const wsd::WeightedFst graph = wsd::BuildDecoderGraph(inputs, inventory);
      graph.Write(build_out);
      std::cout << "vocab " << inputs.vocab.size() << " states " << graph.NumStates()
                << " arcs " << graph.NumArcs() << "\n";
    } else if (*synth) {
      const wsd::GraphInputs inputs = synth_lm.Load(inventory);
      const auto utterances = wsd::MakeBenchmark(inputs.lexicon, inputs.lm, synth_n,
                                                 synth_config, inventory);
      wsd::WriteBenchmark(synth_out, utterances, synth_config, synth_binary);
      std::cout << "wrote " << utterances.size() << " utterances to " << synth_out << "\n";
    } else if (*eval) {
      const wsd::DecoderConfig config = eval_config.Resolve();
      const wsd::WeightedFst graph = wsd::WeightedFst::Read(eval_graph);
      const auto utterances = wsd::LoadManifest(eval_manifest);
      const wsd::EvalMode mode = wsd::ParseEvalMode(eval_mode);
      const wsd::EvalReport report = wsd::RunEval(graph, utterances, config, mode);
      wsd::WriteEvalReports(eval_out, report, config, mode);
      std::cout << wsd::FormatActionTable(report.summary)
                << wsd::FormatWerTable(report.wer_rows);
    } else if (*serve) {
      if (serve_listen.empty() && serve_http.empty()) {
        throw UsageError("serve needs --listen and/or --http");
      }
      auto graph = std::make_shared<const wsd::WeightedFst>(wsd::WeightedFst::Read(serve_graph));
      wsd::ServerOptions options;
      options.idle_timeout = std::chrono::milliseconds(static_cast<int64_t>(serve_idle * 1000));
      wsd::StreamServer stream(graph, options);
      wsd::HttpServer http(graph, options);
      if (!serve_listen.empty()) {
        const int port = stream.Start(serve_listen);
        std::cout << "stream " << serve_listen;
        if (port > 0) std::cout << " (port " << port << ")";
        std::cout << "\n";
      }
      if (!serve_http.empty()) {
        const size_t colon = serve_http.rfind(':');
        if (colon == std::string::npos) throw UsageError("--http must be host:port");
        const int port = http.Start(serve_http.substr(0, colon),
                                    std::stoi(serve_http.substr(colon + 1)));
        std::cout << "http " << serve_http.substr(0, colon) << ":" << port << "\n";
      }
      std::cout << std::flush;
      std::signal(SIGINT, [](int) { g_stop = 1; });
      std::signal(SIGTERM, [](int) { g_stop = 1; });
      while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
      stream.Stop();
      http.Stop();
    } else if (*decode) {
      const wsd::DecoderConfig config = decode_config.Resolve();
      const wsd::WeightedFst graph = wsd::WeightedFst::Read(decode_graph);
      const wsd::FrameProbs frames = wsd::FrameProbs::Read(decode_frames);
      if (decode_standard) {
        std::cout << Join(wsd::StandardBeamDecode(graph, frames, config).transcript) << "\n";
      } else {
        const auto result = wsd::InteractiveDecode(graph, frames, AskUser, config);
        std::cout << Join(result.transcript) << "\n";
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
