/*
 * Copyright 2026 The Synthanom Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "synthanom/pipeline.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "support/scratch.hpp"
#include "synthanom/error.hpp"
#include "synthanom/labelling.hpp"
#include "synthanom/manifest.hpp"
#include "synthanom/ndt_io.hpp"
#include "synthanom/preview.hpp"

namespace synthanom {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineConfig base_config(const testing::ScratchDir& dir, std::size_t train_tasks) {
  return config_from_map({{"seed", "1234"},
                          {"train_tasks", std::to_string(train_tasks)},
                          {"input_dir", (dir / "in").string()},
                          {"external_dir", (dir / "ext").string()},
                          {"output_dir", (dir / "out").string()}});
}

std::vector<json> read_records(const fs::path& path) {
  std::vector<json> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(json::parse(line));
  }
  return out;
}

MaskSpec spec_from_json(const json& j) {
  MaskSpec s;
  s.kind = j.at("kind") == "cuboid" ? MaskKind::kCuboid : MaskKind::kEllipsoid;
  s.center = j.at("center").get<std::vector<double>>();
  s.semi_axes = j.at("semi_axes").get<std::vector<double>>();
  s.rotation = j.at("rotation").get<std::vector<double>>();
  return s;
}

TEST(PlanTest, ManifestForTenSamples) {
  testing::ScratchDir dir("plan");
  testing::write_phantoms(dir / "in", 10, 16, 16, 1);
  PipelineConfig cfg = base_config(dir, 1);
  const json doc = run_plan(cfg, dir / "m1.json");
  EXPECT_EQ(doc["iterations"].size(), 5u);
  run_plan(cfg, dir / "m2.json");
  EXPECT_EQ(testing::read_text(dir / "m1.json"), testing::read_text(dir / "m2.json"));
  const Manifest m = parse_manifest(json::parse(testing::read_text(dir / "m1.json")));
  EXPECT_EQ(m.samples.size(), 10u);
  for (std::size_t i = 0; i < 5; ++i) {
    std::set<std::string> all;
    for (const auto& id : m.role_samples(i, "train")) all.insert(id);
    for (const auto& id : m.role_samples(i, "val")) EXPECT_TRUE(all.insert(id).second);
    EXPECT_EQ(all.size(), 10u);
  }
  cfg.seed = 99;
  run_plan(cfg, dir / "m3.json");
  EXPECT_NE(testing::read_text(dir / "m1.json"), testing::read_text(dir / "m3.json"));
}

TEST(PlanTest, TooFewSamples) {
  testing::ScratchDir dir("plan_few");
  testing::write_phantoms(dir / "in", 3, 16, 16, 1);
  EXPECT_THROW(run_plan(base_config(dir, 2), dir / "m.json"), DataError);
}

class GenerateTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new testing::ScratchDir("generate");
    testing::write_phantoms(*dir_ / "in", 500, 20, 20, 7);
    testing::write_phantoms(*dir_ / "ext", 3, 28, 28, 8, "ext_");
    config_ = new PipelineConfig(base_config(*dir_, 1));
    run_plan(*config_, *dir_ / "manifest.json");
    summary_ = new GenerateSummary(
        run_generate(*config_, GenerateOptions{*dir_ / "manifest.json", 0, "val"}));
  }
  static void TearDownTestSuite() {
    delete summary_;
    delete config_;
    delete dir_;
  }
  static testing::ScratchDir* dir_;
  static PipelineConfig* config_;
  static GenerateSummary* summary_;
};

testing::ScratchDir* GenerateTest::dir_ = nullptr;
PipelineConfig* GenerateTest::config_ = nullptr;
GenerateSummary* GenerateTest::summary_ = nullptr;

TEST_F(GenerateTest, ValidationRoleCoversItsFourTasks) {
  EXPECT_EQ(summary_->written + summary_->failed, 100u);
  const auto records = read_records(config_->output_dir / "records.jsonl");
  ASSERT_EQ(records.size(), 100u);
  const Manifest m = parse_manifest(json::parse(testing::read_text(*dir_ / "manifest.json")));
  std::set<std::string> allowed;
  for (TaskKind k : m.plan.iterations[0].val_tasks) allowed.insert(std::string(task_name(k)));
  ASSERT_EQ(allowed.size(), 4u);
  std::set<std::string> seen;
  for (const json& r : records) {
    const std::string task = r.at("task");
    EXPECT_TRUE(allowed.count(task)) << task;
    seen.insert(task);
  }
  EXPECT_EQ(seen, allowed);
  std::size_t histogram_total = 0;
  for (const auto& [task, n] : summary_->task_histogram) histogram_total += n;
  EXPECT_EQ(histogram_total, 100u);
}

TEST_F(GenerateTest, OutputsExistAndLabelsMatch) {
  const auto records = read_records(config_->output_dir / "records.jsonl");
  for (const json& r : records) {
    if (r.at("status") != "ok") continue;
    const std::string id = r.at("sample");
    const Tensor clean = read_ndt(config_->input_dir / (id + ".ndt"));
    const Tensor corrupted = read_ndt(config_->output_dir / "images" / (id + ".ndt"));
    const Tensor label = read_ndt(config_->output_dir / "labels" / (id + ".ndt"));
    ASSERT_EQ(clean.shape(), corrupted.shape());
    for (double v : label.values()) {
      EXPECT_GE(v, 0.0);
      EXPECT_LT(v, 1.0);
    }
    // Labels are computed in double and stored as float.
    const Tensor expected = label_map(clean, corrupted, config_->sigma);
    double worst = 0.0;
    for (std::size_t i = 0; i < label.size(); ++i) worst = std::max(worst, std::abs(label[i] - expected[i]));
    EXPECT_LT(worst, 1e-4) << id;
  }
}

TEST_F(GenerateTest, SmoothIntensityLabelsStayInsideLoggedMasks) {
  const auto records = read_records(config_->output_dir / "records.jsonl");
  std::size_t checked = 0;
  for (const json& r : records) {
    if (r.at("task") != "smooth_intensity" || r.at("status") != "ok") continue;
    const std::string id = r.at("sample");
    const Tensor label = read_ndt(config_->output_dir / "labels" / (id + ".ndt"));
    BoolTensor inside(label.shape(), 0);
    for (const json& a : r.at("anomalies")) {
      const AnomalyMask m = rasterize_mask(spec_from_json(a.at("mask")), label.shape());
      for (std::size_t i = 0; i < inside.size(); ++i) inside[i] |= m.raster[i];
    }
    for (std::size_t i = 0; i < label.size(); ++i) {
      if (!inside[i]) {
        EXPECT_EQ(label[i], 0.0) << id << " voxel " << i;
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 5u);
}

TEST_F(GenerateTest, RunIsReproducibleAndReplayable) {
  PipelineConfig again = *config_;
  again.output_dir = *dir_ / "out_again";
  run_generate(again, GenerateOptions{*dir_ / "manifest.json", 0, "val"});
  EXPECT_EQ(testing::snapshot_tree(config_->output_dir), testing::snapshot_tree(again.output_dir));

  const fs::path replay_dir = *dir_ / "replayed";
  const std::size_t n = run_replay(config_->output_dir / "records.jsonl", config_->input_dir,
                                   config_->external_dir, replay_dir);
  EXPECT_EQ(n, summary_->written);
  for (const char* sub : {"images", "labels"}) {
    EXPECT_EQ(testing::snapshot_tree(config_->output_dir / sub),
              testing::snapshot_tree(replay_dir / sub));
  }
}

TEST_F(GenerateTest, RecordsCarryReplayParameters) {
  const auto records = read_records(config_->output_dir / "records.jsonl");
  const json& r = records.front();
  for (const char* key : {"sample", "iteration", "role", "seed", "stream", "task", "sigma", "status"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_EQ(r.at("stream").get<std::uint64_t>(),
            sample_stream_id(r.at("sample").get<std::string>(), 0));
}

TEST(GenerateErrorsTest, BadRoleAndIteration) {
  testing::ScratchDir dir("generate_err");
  testing::write_phantoms(dir / "in", 10, 16, 16, 1);
  const PipelineConfig cfg = base_config(dir, 2);
  run_plan(cfg, dir / "m.json");
  EXPECT_THROW(run_generate(cfg, GenerateOptions{dir / "m.json", 0, "test"}), ConfigError);
  EXPECT_THROW(run_generate(cfg, GenerateOptions{dir / "m.json", 99, "val"}), ConfigError);
  EXPECT_THROW(run_generate(cfg, GenerateOptions{dir / "absent.json", 0, "val"}), DataError);
}

TEST(GenerateErrorsTest, CorruptInputAborts) {
  testing::ScratchDir dir("generate_corrupt");
  testing::write_phantoms(dir / "in", 10, 16, 16, 1);
  const PipelineConfig cfg = base_config(dir, 4);
  run_plan(cfg, dir / "m.json");
  const Manifest m = parse_manifest(json::parse(testing::read_text(dir / "m.json")));
  const std::string victim = m.role_samples(0, "train").front();
  write_file_atomic(dir / "in" / (victim + ".ndt"), std::string_view("garbage"));
  EXPECT_THROW(run_generate(cfg, GenerateOptions{dir / "m.json", 0, "train"}), DataError);
}

TEST(ZscoreTest, ForegroundStatistics) {
  const Tensor x({6}, std::vector<double>{-5, -5, 1, 2, 3, 4});
  const Tensor z = zscore_foreground(x, 0.0);
  const double mean = 2.5, sd = std::sqrt(1.25);
  EXPECT_NEAR(z[2], (1 - mean) / sd, 1e-12);
  EXPECT_NEAR(z[0], (-5 - mean) / sd, 1e-12);
  const Tensor flat = zscore_foreground(Tensor({3}, 2.0), 0.0);
  for (double v : flat.values()) EXPECT_EQ(v, 0.0);
}

class EvalTest : public ::testing::Test {
 protected:
  void SetUp() override {
    fs::create_directories(dir_ / "labels");
    std::mt19937_64 gen(5);
    std::bernoulli_distribution coin(0.25);
    for (int i = 0; i < 4; ++i) {
      Tensor label({50, 50}, 0.0);
      for (double& v : label.values()) v = coin(gen) ? 0.9 : 0.0;
      write_ndt(dir_ / "labels" / ("s" + std::to_string(i) + ".ndt"), label);
      prevalence_total_ += std::count(label.values().begin(), label.values().end(), 0.9);
    }
  }
  void write_predictions(const std::string& name, auto&& fill) {
    for (int i = 0; i < 4; ++i) {
      const std::string file = "s" + std::to_string(i) + ".ndt";
      const Tensor label = read_ndt(dir_ / "labels" / file);
      write_ndt(dir_ / name / file, fill(label));
    }
  }
  EvalOptions options(const std::string& name) {
    EvalOptions o;
    o.predictions = dir_ / name;
    o.labels = dir_ / "labels";
    return o;
  }
  testing::ScratchDir dir_{"eval"};
  double prevalence_total_ = 0;
};

TEST_F(EvalTest, PerfectPredictions) {
  fs::create_directories(dir_ / "perfect");
  write_predictions("perfect", [](const Tensor& l) { return l; });
  EvalOptions o = options("perfect");
  o.report = dir_ / "reports" / "perfect.json";
  const EvalReport r = run_eval(o);
  EXPECT_EQ(r.average_precision, 1.0);
  EXPECT_EQ(r.auroc, 1.0);
  EXPECT_EQ(r.pairs, 4u);
  EXPECT_EQ(r.entries, 4u * 2500u);
  const json report = json::parse(testing::read_text(o.report));
  EXPECT_EQ(report.at("ap_percent").get<double>(), 100.0);
  EXPECT_EQ(report.at("auroc_percent").get<double>(), 100.0);
}

TEST_F(EvalTest, ConstantPredictions) {
  fs::create_directories(dir_ / "constant");
  write_predictions("constant", [](const Tensor& l) { return Tensor(l.shape(), 0.3); });
  const EvalReport r = run_eval(options("constant"));
  EXPECT_NEAR(r.average_precision, prevalence_total_ / 10000.0, 1e-12);
  EXPECT_EQ(r.auroc, 0.5);
}

TEST_F(EvalTest, RandomPredictionsAtChance) {
  fs::create_directories(dir_ / "random");
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Tensor> preds;
  // 4 x 2500 pixels plus 10 extra volumes give over 10^5 scored pixels.
  for (int i = 4; i < 44; ++i) {
    Tensor label({50, 50}, 0.0);
    std::bernoulli_distribution coin(0.25);
    for (double& v : label.values()) v = coin(gen) ? 1.0 : 0.0;
    write_ndt(dir_ / "labels" / ("s" + std::to_string(i) + ".ndt"), label);
  }
  for (int i = 0; i < 44; ++i) {
    Tensor p({50, 50});
    for (double& v : p.values()) v = u(gen);
    write_ndt(dir_ / "random" / ("s" + std::to_string(i) + ".ndt"), p);
  }
  const EvalReport r = run_eval(options("random"));
  EXPECT_EQ(r.entries, 110000u);
  EXPECT_NEAR(100.0 * r.auroc, 50.0, 1.0);
}

TEST_F(EvalTest, MismatchedPairsAreSkipped) {
  fs::create_directories(dir_ / "mixed");
  write_predictions("mixed", [](const Tensor& l) { return l; });
  write_ndt(dir_ / "mixed" / "s0.ndt", Tensor({10, 10}, 0.0));
  const EvalReport r = run_eval(options("mixed"));
  EXPECT_EQ(r.pairs, 3u);
  ASSERT_EQ(r.skipped.size(), 1u);
  fs::create_directories(dir_ / "empty");
  EXPECT_THROW(run_eval(options("empty")), DataError);
}

TEST_F(EvalTest, SliceAndSampleLevels) {
  fs::create_directories(dir_ / "perfect");
  write_predictions("perfect", [](const Tensor& l) { return l; });
  EvalOptions o = options("perfect");
  o.level = EvalLevel::kSample;
  o.reducer = Reducer::kMax;
  // Every sample holds anomalous pixels, so AUROC has no negatives.
  EXPECT_THROW(run_eval(o), DataError);

  write_ndt(dir_ / "labels" / "s4.ndt", Tensor({50, 50}, 0.0));
  write_ndt(dir_ / "perfect" / "s4.ndt", Tensor({50, 50}, 0.0));
  const EvalReport samples = run_eval(o);
  EXPECT_EQ(samples.entries, 5u);
  EXPECT_EQ(samples.positives, 4u);
  EXPECT_EQ(samples.auroc, 1.0);
  o.level = EvalLevel::kSlice;
  const EvalReport slices = run_eval(o);
  EXPECT_EQ(slices.entries, 5u * 50u);
  EXPECT_EQ(slices.positives, 4u * 50u);
  EXPECT_EQ(slices.average_precision, 1.0);
  EXPECT_EQ(parse_eval_level("slice"), EvalLevel::kSlice);
  EXPECT_THROW(parse_eval_level("voxel"), ConfigError);
}

TEST(PreviewTest, IdenticalInputsGiveIdenticalPanels) {
  testing::ScratchDir dir("preview_same");
  std::mt19937_64 gen(3);
  const Tensor x = testing::disc_phantom(24, 30, gen);
  write_ndt(dir / "clean.ndt", x);
  PreviewOptions o;
  o.clean = dir / "clean.ndt";
  o.corrupted = dir / "clean.ndt";
  o.output_prefix = dir / "pv" / "same";
  const PreviewFiles f = run_preview(o);
  const std::string pgm = testing::read_text(f.montage);
  const std::string header = "P5\n92 24\n255\n";
  ASSERT_EQ(pgm.substr(0, header.size()), header);
  const std::string body = pgm.substr(header.size());
  ASSERT_EQ(body.size(), 92u * 24u);
  for (std::size_t r = 0; r < 24; ++r) {
    EXPECT_EQ(body.substr(r * 92, 30), body.substr(r * 92 + 31, 30)) << "row " << r;
    EXPECT_EQ(static_cast<unsigned char>(body[r * 92 + 30]), 255);
    for (std::size_t c = 62; c < 92; ++c) EXPECT_EQ(body[r * 92 + c], 0);
  }
  EXPECT_TRUE(fs::exists(f.profile_image));
  EXPECT_TRUE(fs::exists(f.profile_csv));
}

TEST(PreviewTest, SmoothIntensityProfileHasPlateauAndRamps) {
  testing::ScratchDir dir("preview_profile");
  const Tensor clean({31, 41}, 1.0);
  const MaskSpec spec{MaskKind::kCuboid, {15.0, 20.0}, {8.0, 12.0}, {0.0}};
  const AnomalyMask m = rasterize_mask(spec, clean.shape());
  const Tensor corrupted = smooth_intensity(clean, m, IntensityParams{0.6, 1, 4.0});
  write_ndt(dir / "clean.ndt", clean);
  write_ndt(dir / "bad.ndt", corrupted);
  json rec{{"sample", "clean"},
           {"anomalies", json::array({json{{"mask", {{"center", spec.center}}}}})}};
  write_file_atomic(dir / "records.jsonl", rec.dump() + "\n");
  PreviewOptions o;
  o.clean = dir / "clean.ndt";
  o.corrupted = dir / "bad.ndt";
  o.records = dir / "records.jsonl";
  o.output_prefix = dir / "p";
  const PreviewFiles f = run_preview(o);
  EXPECT_EQ(f.profile_row, 15u);
  const Profile p = extract_profile(read_ndt(o.clean), read_ndt(o.corrupted), f.profile_row);
  // Columns 8..32 are inside; the change ramps over 4 voxels from each side.
  for (std::size_t c = 0; c < 41; ++c) {
    const double change = p.after[c] - p.before[c];
    double want = 0.0;
    if (c >= 8 && c <= 32) want = 0.6 * std::min(std::min(c - 8, 32 - c) / 4.0, 1.0);
    EXPECT_NEAR(change, want, 1e-6) << "column " << c;
  }
}

TEST(PreviewTest, VolumeNeedsValidSlice) {
  testing::ScratchDir dir("preview_volume");
  write_ndt(dir / "v.ndt", Tensor({4, 5, 6}, 1.0));
  PreviewOptions o;
  o.clean = dir / "v.ndt";
  o.corrupted = dir / "v.ndt";
  o.output_prefix = dir / "v";
  EXPECT_THROW(run_preview(o), InvalidArgument);
  o.slice = 9;
  EXPECT_THROW(run_preview(o), InvalidArgument);
  o.slice = 2;
  o.slice_axis = 2;
  const PreviewFiles f = run_preview(o);
  EXPECT_EQ(testing::read_text(f.montage).substr(0, 12), "P5\n17 4\n255\n");
}

}  // namespace
}  // namespace synthanom
