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


// Command-line front end: plan, generate, eval, preview.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "synthanom/config.hpp"
#include "synthanom/error.hpp"
#include "synthanom/pipeline.hpp"
#include "synthanom/preview.hpp"

namespace {

using namespace synthanom;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ConfigSource {
  std::string file;
  ConfigMap overrides;

  ConfigMap merged() const {
    ConfigMap values = file.empty() ? ConfigMap{} : read_config_file(file);
    for (const auto& [k, v] : overrides) values[k] = v;
    return values;
  }
};

void add_config_flags(CLI::App* sub, ConfigSource& source) {
  sub->add_option("--config", source.file, "key = value configuration file");
  for (const ConfigKey& key : config_keys()) {
    const std::string name(key.name);
    sub->add_option_function<std::string>(
        "--" + name, [&source, name](const std::string& v) { source.overrides[name] = v; },
        std::string(key.help));
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Synthetic anomaly generation, cross-validation planning and evaluation"};
  app.require_subcommand(1);

  ConfigSource plan_cfg, gen_cfg, eval_cfg, preview_cfg;

  CLI::App* plan = app.add_subcommand("plan", "assign samples to folds and write the split manifest");
  add_config_flags(plan, plan_cfg);
  std::string plan_manifest;
  plan->add_option("--manifest", plan_manifest, "manifest output path")->required();

  CLI::App* gen = app.add_subcommand("generate", "corrupt the samples of one split role");
  add_config_flags(gen, gen_cfg);
  GenerateOptions gen_opts;
  std::string gen_manifest, replay_log;
  gen->add_option("--manifest", gen_manifest, "split manifest");
  gen->add_option("--iteration", gen_opts.iteration, "iteration id")->default_val(0);
  gen->add_option("--role", gen_opts.role, "train or val")->check(CLI::IsMember({"train", "val"}));
  gen->add_option("--replay", replay_log, "rebuild outputs from a record log instead of sampling");

  CLI::App* eval = app.add_subcommand("eval", "compute AP and AUROC of predictions against labels");
  add_config_flags(eval, eval_cfg);
  EvalOptions eval_opts;
  std::string predictions, labels, level = "pixel", report;
  eval->add_option("--predictions", predictions, "directory of predicted score maps")->required();
  eval->add_option("--labels", labels, "directory of label maps")->required();
  eval->add_option("--level", level, "pixel, slice or sample")
      ->check(CLI::IsMember({"pixel", "slice", "sample"}));
  eval->add_option("--axis", eval_opts.slice_axis, "slice axis for slice-level evaluation");
  eval->add_option("--report", report, "JSON report path");

  CLI::App* prev = app.add_subcommand("preview", "write a clean | corrupted | label montage");
  add_config_flags(prev, preview_cfg);
  PreviewOptions prev_opts;
  std::string clean, corrupted, label, records, output;
  std::optional<std::size_t> slice;
  prev->add_option("--clean", clean, "clean .ndt file")->required();
  prev->add_option("--corrupted", corrupted, "corrupted .ndt file")->required();
  prev->add_option("--label", label, "label .ndt file (computed when omitted)");
  prev->add_option("--records", records, "record log used to centre the profile");
  prev->add_option("--sample", prev_opts.sample, "record sample id (defaults to the clean file stem)");
  prev->add_option("--anomaly", prev_opts.anomaly, "anomaly index within the record");
  prev->add_option("--slice", slice, "slice index for 3-D volumes");
  prev->add_option("--slice-axis", prev_opts.slice_axis, "slice axis for 3-D volumes");
  prev->add_option("--output", output, "output path prefix")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (plan->parsed()) {
      const PipelineConfig config = config_from_map(plan_cfg.merged());
      const auto doc = run_plan(config, plan_manifest);
      std::cout << "wrote " << plan_manifest << " with " << doc.at("iterations").size()
                << " iterations\n";
    } else if (gen->parsed()) {
      const PipelineConfig config = config_from_map(gen_cfg.merged());
      if (!replay_log.empty()) {
        if (config.output_dir.empty() || config.input_dir.empty()) {
          throw ConfigError("replay needs input_dir and output_dir");
        }
        const std::size_t n =
            run_replay(replay_log, config.input_dir, config.external_dir, config.output_dir);
        std::cout << "replayed " << n << " samples into " << config.output_dir.string() << "\n";
      } else {
        if (gen_manifest.empty() || gen_opts.role.empty()) {
          throw ConfigError("generate needs --manifest and --role (or --replay)");
        }
        gen_opts.manifest = gen_manifest;
        const GenerateSummary s = run_generate(config, gen_opts);
        std::cout << "generated " << s.written << " samples, " << s.failed << " failed";
        for (const auto& [task, n] : s.task_histogram) std::cout << ", " << task << "=" << n;
        std::cout << "\n";
      }
    } else if (eval->parsed()) {
      const PipelineConfig config = config_from_map(eval_cfg.merged(), false);
      eval_opts.predictions = predictions;
      eval_opts.labels = labels;
      eval_opts.level = parse_eval_level(level);
      eval_opts.reducer = config.reducer;
      eval_opts.label_threshold = config.label_threshold;
      eval_opts.report = report;
      const EvalReport r = run_eval(eval_opts);
      std::cout.setf(std::ios::fixed);
      std::cout.precision(1);
      std::cout << "AP " << 100.0 * r.average_precision << " AUROC " << 100.0 * r.auroc
                << " (level=" << level << ", reducer=" << reducer_name(eval_opts.reducer)
                << ", pairs=" << r.pairs << ", skipped=" << r.skipped.size() << ")\n";
      for (const auto& s : r.skipped) std::cerr << "skipped " << s << "\n";
    } else if (prev->parsed()) {
      const PipelineConfig config = config_from_map(preview_cfg.merged(), false);
      prev_opts.clean = clean;
      prev_opts.corrupted = corrupted;
      prev_opts.label = label;
      prev_opts.records = records;
      prev_opts.slice = slice;
      prev_opts.sigma = config.sigma;
      prev_opts.output_prefix = output;
      const PreviewFiles f = run_preview(prev_opts);
      std::cout << "wrote " << f.montage.string() << ", " << f.profile_image.string() << ", "
                << f.profile_csv.string() << " (profile row " << f.profile_row << ")\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
