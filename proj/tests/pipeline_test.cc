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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <fstream>
#include <sstream>

#include "test_util.h"
#include "wsdecode/error.h"

namespace wsd {
namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::string Slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

RunResult Cli(const testing::TempDir& dir, const std::string& args) {
  const std::string out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(WSD_CLI) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, Slurp(out), Slurp(err)};
}

void Write(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

const char* kToyLexicon = "CAT\tK AE T\nDOG\tD AO G\nSAT\tS AE T\nMAT\tM AE T\nON\tAA N\n";
const char* kToyCorpus =
    "CAT SAT ON MAT\nDOG SAT ON MAT\nCAT SAT\nDOG SAT ON CAT\nCAT ON MAT\nCAT\n";

TEST(CliBuild, ToyGraphIsReproducible) {
  testing::TempDir dir("build");
  Write(dir / "lex.txt", kToyLexicon);
  Write(dir / "corpus.txt", kToyCorpus);
  const std::string common = "build --lexicon " + (dir / "lex.txt") + " --corpus " +
                             (dir / "corpus.txt") + " --out ";
  const RunResult a = Cli(dir, common + (dir / "a.fst"));
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("states"), std::string::npos);
  EXPECT_NE(a.out.find("arcs"), std::string::npos);
  ASSERT_EQ(Cli(dir, common + (dir / "b.fst")).code, 0);
  EXPECT_EQ(Slurp(dir / "a.fst"), Slurp(dir / "b.fst"));
  EXPECT_NO_THROW(WeightedFst::Read(dir / "a.fst").Validate());
}

TEST(CliBuild, VocabularyTruncationKeepsMostFrequent) {
  const auto lexicon = ParseLexicon(kToyLexicon, PhonemeInventory::Arpabet());
  const GraphInputs in = PrepareGraphInputs(lexicon, ParseCorpus(kToyCorpus), 3);
  // CAT 5, SAT 4, ON 4, MAT 3, DOG 2.
  EXPECT_EQ(in.vocab, (std::vector<std::string>{"CAT", "ON", "SAT"}));
  EXPECT_EQ(in.lexicon.size(), 3u);
  EXPECT_DOUBLE_EQ(in.lm.Prob("ON", "MAT"), in.lm.Prob("ON", kUnk));
  EXPECT_DOUBLE_EQ(in.lm.Prob("DOG", "SAT"), in.lm.Prob(kUnk, "SAT"));
}

TEST(CliBuild, MissingFileIsDataError) {
  testing::TempDir dir("missing");
  Write(dir / "lex.txt", kToyLexicon);
  const RunResult r = Cli(dir, "build --lexicon " + (dir / "lex.txt") + " --corpus " +
                                   (dir / "nope.txt") + " --out " + (dir / "g.fst"));
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, UsageErrorsExitOne) {
  testing::TempDir dir("usage");
  EXPECT_EQ(Cli(dir, "").code, 1);
  EXPECT_EQ(Cli(dir, "build --bogus").code, 1);
  EXPECT_EQ(Cli(dir, "eval --graph x --manifest y --out-dir z --mode sideways").code, 1);
  EXPECT_EQ(Cli(dir, "--help").code, 0);
}

// Builds a graph and a benchmark through the CLI, then evaluates.
class CliEvalTest : public ::testing::Test {
 protected:
  void Prepare(const std::string& lexicon_text, const std::string& synth_flags) {
    Write(dir_ / "lex.txt", lexicon_text);
    const std::string lm = "--lexicon " + (dir_ / "lex.txt") + " --corpus " +
                           testing::DataPath("corpus.txt");
    ASSERT_EQ(Cli(dir_, "build " + lm + " --out " + (dir_ / "g.fst")).code, 0);
    const RunResult r = Cli(dir_, "synth " + lm + " --out-dir " + (dir_ / "bench") + " " + synth_flags);
    ASSERT_EQ(r.code, 0) << r.err;
  }
  RunResult Eval(const std::string& out, const std::string& extra = "") {
    return Cli(dir_, "eval --graph " + (dir_ / "g.fst") + " --manifest " +
                         (dir_ / "bench/manifest.json") + " --out-dir " + (dir_ / out) + " " + extra);
  }
  nlohmann::json Summary(const std::string& out) {
    return nlohmann::json::parse(Slurp(dir_ / (out + "/summary.json")));
  }
  testing::TempDir dir_{"eval"};
};

std::string LexiconText(const std::vector<LexiconEntry>& entries) {
  std::string text;
  for (const auto& e : entries) {
    text += e.word + "\t";
    for (size_t i = 0; i < e.pronunciation.size(); ++i) {
      text += (i ? " " : "") + e.pronunciation[i];
    }
    text += "\n";
  }
  return text;
}

TEST_F(CliEvalTest, NoiselessBothRowsZero) {
  Prepare(LexiconText(testing::CleanLexicon(testing::DataLexicon())), "-n 15 --seed 4");
  const RunResult r = Eval("out", "--mode both");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = Summary("out");
  ASSERT_EQ(s["wer"].size(), 2u);
  for (const auto& row : s["wer"]) EXPECT_EQ(row["edits"], 0) << row;
  for (const char* f : {"sessions.json", "table1.txt", "table2.txt", "rank_histogram.csv"}) {
    EXPECT_TRUE(std::filesystem::exists(dir_ / ("out/" + std::string(f)))) << f;
  }
}

TEST_F(CliEvalTest, HomophonesFavourInteraction) {
  Prepare(Slurp(testing::DataPath("lexicon.txt")), "-n 25 --seed 8 --confusion-mass 0.5");
  ASSERT_EQ(Eval("out", "--mode both").code, 0);
  const auto s = Summary("out");
  const double standard = s["wer"][0]["wer"], interactive = s["wer"][1]["wer"];
  EXPECT_EQ(s["wer"][0]["method"], "standard");
  EXPECT_LE(interactive, standard);
}

TEST_F(CliEvalTest, ReportsAreByteIdenticalAcrossRuns) {
  Prepare(Slurp(testing::DataPath("lexicon.txt")), "-n 10 --seed 2 --confusion-mass 0.4");
  ASSERT_EQ(Eval("a", "--mode both --auto-accept-threshold 3").code, 0);
  ASSERT_EQ(Eval("b", "--mode both --auto-accept-threshold 3").code, 0);
  for (const char* f :
       {"sessions.json", "summary.json", "table1.txt", "table2.txt", "rank_histogram.csv"}) {
    EXPECT_EQ(Slurp(dir_ / ("a/" + std::string(f))), Slurp(dir_ / ("b/" + std::string(f)))) << f;
  }
}

TEST_F(CliEvalTest, EmptyManifestGivesEmptyReports) {
  Prepare(kToyLexicon, "-n 1");
  Write(dir_ / "bench/manifest.json", "{\"version\": 1, \"utterances\": []}");
  const RunResult r = Eval("out");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = Summary("out");
  EXPECT_EQ(s["oracle"]["sessions"], 0);
  EXPECT_EQ(s["oracle"]["interaction_points"], 0);
}

TEST(RunEval, ModesSelectRows) {
  const auto p = testing::MakePipeline(testing::CleanLexicon(testing::DataLexicon()),
                                       testing::DataCorpus());
  SynthConfig c;
  c.seed = 6;
  std::vector<EvalUtterance> utts;
  for (auto& u : MakeBenchmark(p.inputs.lexicon, p.inputs.lm, 3, c, PhonemeInventory::Arpabet())) {
    utts.push_back({u.id, u.words, u.frames});
  }
  EXPECT_EQ(RunEval(p.graph, utts, DecoderConfig{}, EvalMode::kOracle).wer_rows.size(), 1u);
  EXPECT_TRUE(RunEval(p.graph, utts, DecoderConfig{}, EvalMode::kStandard).oracle.empty());
  EXPECT_EQ(RunEval(p.graph, utts, DecoderConfig{}, EvalMode::kBoth).standard.size(), 3u);
  EXPECT_THROW(ParseEvalMode("sideways"), UsageError);
}

}  // namespace
}  // namespace wsd
