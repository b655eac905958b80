// Copyright 2026 The Forge Authors
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

// forge: the dataset construction command line.
//
//   forge script  seeds -> drafts.jsonl (dialogue synthesis and validation)
//   forge audio   drafts -> <id>.wav + <id>.json
//   forge pack    drafts + audio + frames -> manifest, shards
//   forge stats | sample | check          dataset inspection
//   forge serve   verification service

#include <csignal>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "forge/audio/acoustic.hpp"
#include "forge/audio/tts.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/dataset/check.hpp"
#include "forge/dataset/review.hpp"
#include "forge/dataset/stats.hpp"
#include "forge/pipeline/pipeline.hpp"
#include "forge/script/templates.hpp"
#include "forge/verify/server.hpp"

#ifndef FORGE_DEFAULT_TEMPLATE_DIR
#define FORGE_DEFAULT_TEMPLATE_DIR "templates/v1"
#endif

namespace fs = std::filesystem;
using namespace forge;
using nlohmann::json;

namespace {

// Exit status for an uncaught error: 2 for I/O and corruption, 1 otherwise.
int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::IoError:
    case ErrorCode::NotFound:
    case ErrorCode::CorruptLine:
    case ErrorCode::DuplicateId:
      return 2;
    default:
      return 1;
  }
}

fs::path manifest_of(const fs::path& p) {
  return fs::is_directory(p) ? p / "manifest.jsonl" : p;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::vector<episode::InstructionType> parse_types(const std::string& csv) {
  std::vector<episode::InstructionType> out;
  for (const auto& name : split(csv, ',')) {
    const auto t = episode::parse_instruction_type(trim(name));
    if (!t) throw Error(ErrorCode::InvalidArgument, "unknown instruction type '" + std::string(name) + "'");
    out.push_back(*t);
  }
  return out;
}

std::vector<std::string> parse_list(const std::string& csv) {
  std::vector<std::string> out;
  for (const auto& s : split(csv, ',')) {
    if (!trim(s).empty()) out.emplace_back(trim(s));
  }
  return out;
}

// ---- script ------------------------------------------------------------------------

struct ScriptArgs {
  std::string seeds, out, types, templates = FORGE_DEFAULT_TEMPLATE_DIR, mock, endpoint, model, cache;
  std::string sound_types, report;
  std::uint64_t seed = 0;
  std::size_t expansion = 2;
  bool no_judge = false;
};

int run_script(const ScriptArgs& a) {
  std::shared_ptr<script::ChatClient> client;
  if (!a.mock.empty()) {
    client = std::make_shared<script::MockChatClient>(script::MockChatClient::from_file(a.mock));
  } else {
    if (a.endpoint.empty() || a.model.empty()) {
      throw Error(ErrorCode::InvalidArgument, "either --mock or both --endpoint and --model are required");
    }
    script::ChatClientConfig cfg;
    cfg.endpoint = a.endpoint;
    cfg.model = a.model;
    client = std::make_shared<script::HttpChatClient>(cfg);
  }
  if (!a.cache.empty()) {
    client = std::make_shared<script::CachedChatClient>(client, std::make_shared<DiskCache>(a.cache));
  }
  script::StageConfig cfg;
  if (!a.types.empty()) cfg.types = parse_types(a.types);
  cfg.seed = a.seed;
  cfg.expansion = a.expansion;
  cfg.sound_types = parse_list(a.sound_types);
  cfg.judge = !a.no_judge;

  const auto seeds = pipeline::load_seeds(a.seeds);
  const auto templates = script::TemplateSet::load(a.templates);
  const auto report = script::run_script_stage(seeds, cfg, *client, templates);
  pipeline::save_drafts(report.accepted, a.out);

  json rejected = json::array();
  for (const auto& r : report.rejected) {
    rejected.push_back({{"id", r.id}, {"code", r.code}, {"message", r.message}});
    std::cerr << "rejected " << r.id << ": " << r.code << ": " << r.message << "\n";
  }
  if (!a.report.empty()) {
    write_file_atomic(a.report, json{{"accepted", report.accepted.size()}, {"rejected", rejected}}.dump(2) + "\n");
  }
  std::cerr << "script: " << report.accepted.size() << " accepted, " << report.rejected.size()
            << " rejected, templates " << templates.version() << "\n";
  return report.accepted.empty() && !seeds.empty() ? 1 : 0;
}

// ---- audio ----------------------------------------------------------------------------

struct AudioArgs {
  std::string plans, voices, events, backgrounds, out, tts_endpoint, tts_model = "tts-1", cache;
  double snr_min = 0.0, snr_max = 20.0;
  std::uint64_t seed = 0;
  bool mock_tts = false;
};

int run_audio(const AudioArgs& a) {
  std::shared_ptr<audio::TtsClient> tts;
  if (a.mock_tts) {
    tts = std::make_shared<audio::MockTtsClient>();
  } else {
    if (a.tts_endpoint.empty()) throw Error(ErrorCode::InvalidArgument, "either --mock-tts or --tts-endpoint is required");
    audio::TtsConfig cfg;
    cfg.endpoint = a.tts_endpoint;
    cfg.model = a.tts_model;
    tts = std::make_shared<audio::HttpTtsClient>(cfg);
  }
  if (!a.cache.empty()) tts = std::make_shared<audio::CachedTtsClient>(tts, std::make_shared<DiskCache>(a.cache));
  if (a.snr_min > a.snr_max) throw Error(ErrorCode::InvalidArgument, "--snr-min exceeds --snr-max");

  pipeline::AudioStageConfig cfg;
  cfg.seed = a.seed;
  cfg.render.snr_min_db = a.snr_min;
  cfg.render.snr_max_db = a.snr_max;
  audio::UniformRateAcousticModel acoustic;
  const auto drafts = pipeline::load_drafts(a.plans);
  const auto failures = pipeline::run_audio_stage(
      drafts, pipeline::load_voices(a.voices), *tts, acoustic, audio::ClipCatalog::load(a.events),
      audio::ClipCatalog::load(a.backgrounds), cfg, a.out);
  for (const auto& f : failures) std::cerr << "failed " << f.id << ": " << f.code << ": " << f.message << "\n";
  std::cerr << "audio: " << drafts.size() - failures.size() << " rendered, " << failures.size() << " failed\n";
  return failures.size() == drafts.size() && !drafts.empty() ? 1 : 0;
}

// ---- dataset commands --------------------------------------------------------------------

int report_check(const fs::path& manifest) {
  const auto r = dataset::check_manifest(manifest);
  std::cout << dataset::to_json(r).dump(2) << "\n";
  if (!r.io_error.empty()) std::cerr << "check: " << r.io_error << "\n";
  for (const auto& i : r.issues) {
    std::cerr << "check: " << (i.episode_id.empty() ? "<manifest>" : i.episode_id) << ": " << i.code << ": "
              << i.message << "\n";
  }
  return r.exit_code();
}

struct PackArgs {
  std::string drafts, audio, frames_root = ".", out;
  std::size_t shard_size = dataset::kDefaultShardSize;
  bool check = false;
};

int run_pack(const PackArgs& a) {
  const auto result = pipeline::pack_dataset(pipeline::load_drafts(a.drafts),
                                             {a.audio, a.frames_root, a.out, a.shard_size});
  for (const auto& s : result.skipped) std::cerr << "skipped " << s.id << ": " << s.code << ": " << s.message << "\n";
  std::cerr << "pack: " << result.episodes << " episodes in " << result.shards.size() << " shards, "
            << result.skipped.size() << " skipped\n";
  if (a.check) return report_check(fs::path(a.out) / "manifest.jsonl");
  return 0;
}

struct SampleArgs {
  std::string dataset = ".", out, calibration;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool stratify = false;
};

int run_sample(const SampleArgs& a) {
  const auto manifest = dataset::Manifest::open(manifest_of(a.dataset));
  auto batch = dataset::sample_for_review(manifest, a.n, a.seed, a.stratify);
  if (!a.calibration.empty()) {
    std::vector<std::string> ids;
    for_each_line(a.calibration, [&](std::string_view l, std::size_t) {
      if (!trim(l).empty()) ids.emplace_back(trim(l));
    });
    dataset::add_calibration(batch, manifest, ids);
  }
  write_output(a.out, dataset::to_json(batch).dump(2) + "\n");
  return 0;
}

// ---- serve ----------------------------------------------------------------------------------

struct ServeArgs {
  std::string batch, listen = "127.0.0.1:8080", log = "verdicts.jsonl", static_dir;
};

int run_serve(const ServeArgs& a) {
  const auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--listen wants HOST:PORT");
  const auto host = a.listen.substr(0, colon);
  const int port = std::stoi(a.listen.substr(colon + 1));

  // Block the stop signals here so every thread inherits the mask; a
  // dedicated thread waits for them and shuts the server down.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  verify::VerifyService service(a.log);
  if (!a.batch.empty()) service.load_batch(dataset::load_review_batch(a.batch));
  verify::VerifyServer server(service, a.static_dir);
  const int bound = server.bind(host, port);
  std::cout << "listening on " << host << ":" << bound << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.serve();
  // serve() can also return on its own; wake the waiter either way.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forge: build spoken-instruction robot episodes"};
  app.require_subcommand(1);
  int status = 0;

  ScriptArgs sa;
  auto* script = app.add_subcommand("script", "synthesize and validate dialogue drafts");
  script->add_option("--seeds", sa.seeds, "trajectory seeds (JSONL)")->required();
  script->add_option("--out", sa.out, "drafts output (JSONL)")->required();
  script->add_option("--types", sa.types, "comma-separated instruction types (default: all)");
  script->add_option("--templates", sa.templates, "prompt template directory")->capture_default_str();
  script->add_option("--mock", sa.mock, "canned chat responses (JSONL rules)");
  script->add_option("--endpoint", sa.endpoint, "chat-completions base URL");
  script->add_option("--model", sa.model, "chat model name");
  script->add_option("--cache", sa.cache, "response cache directory");
  script->add_option("--seed", sa.seed, "run seed")->capture_default_str();
  script->add_option("--expansion", sa.expansion, "episodes per kept trajectory")->capture_default_str();
  script->add_option("--sound-types", sa.sound_types, "comma-separated event tags offered to the model");
  script->add_option("--report", sa.report, "write accepted/rejected summary (JSON)");
  script->add_flag("--no-judge", sa.no_judge, "skip the intent check");
  script->callback([&] { status = run_script(sa); });

  AudioArgs aa;
  auto* audio = app.add_subcommand("audio", "render drafts to 16 kHz mono PCM16 audio");
  audio->add_option("--plans", aa.plans, "drafts (JSONL)")->required();
  audio->add_option("--voices", aa.voices, "speaker profiles (JSONL)")->required();
  audio->add_option("--events", aa.events, "event clip catalog directory")->required();
  audio->add_option("--backgrounds", aa.backgrounds, "background catalog directory")->required();
  audio->add_option("--out", aa.out, "output directory")->required();
  audio->add_option("--snr-min", aa.snr_min, "lowest background SNR (dB)")->capture_default_str();
  audio->add_option("--snr-max", aa.snr_max, "highest background SNR (dB)")->capture_default_str();
  audio->add_option("--seed", aa.seed, "run seed")->capture_default_str();
  audio->add_option("--tts-endpoint", aa.tts_endpoint, "speech synthesis base URL");
  audio->add_option("--tts-model", aa.tts_model, "speech model name")->capture_default_str();
  audio->add_option("--cache", aa.cache, "synthesis cache directory");
  audio->add_flag("--mock-tts", aa.mock_tts, "use the offline stand-in voice");
  audio->callback([&] { status = run_audio(aa); });

  PackArgs pa;
  auto* pack = app.add_subcommand("pack", "assemble manifest and shards");
  pack->add_option("--drafts", pa.drafts, "drafts (JSONL)")->required();
  pack->add_option("--audio", pa.audio, "rendered audio directory")->required();
  pack->add_option("--frames-root", pa.frames_root, "base for relative frame paths")->capture_default_str();
  pack->add_option("--out", pa.out, "dataset directory")->required();
  pack->add_option("--shard-size", pa.shard_size, "episodes per shard")->capture_default_str()->check(CLI::PositiveNumber);
  pack->add_flag("--check", pa.check, "run the integrity check afterwards");
  pack->callback([&] { status = run_pack(pa); });

  std::string stats_dataset = ".", stats_out;
  auto* stats = app.add_subcommand("stats", "corpus statistics");
  stats->add_option("--dataset", stats_dataset, "dataset directory or manifest")->capture_default_str();
  stats->add_option("--out", stats_out, "report file (default: stdout)");
  stats->callback([&] {
    write_output(stats_out, dataset::to_json(dataset::compute_stats(manifest_of(stats_dataset))).dump(2) + "\n");
  });

  SampleArgs sp;
  auto* sample = app.add_subcommand("sample", "draw a verification batch");
  sample->add_option("--dataset", sp.dataset, "dataset directory or manifest")->capture_default_str();
  sample->add_option("--n", sp.n, "batch size")->required();
  sample->add_option("--seed", sp.seed, "sampling seed")->capture_default_str();
  sample->add_flag("--stratify", sp.stratify, "equal share per instruction type");
  sample->add_option("--calibration", sp.calibration, "episode ids (one per line) to flag as calibration");
  sample->add_option("--out", sp.out, "batch file (default: stdout)");
  sample->callback([&] { status = run_sample(sp); });

  std::string check_dataset = ".";
  auto* check = app.add_subcommand("check", "validate a dataset (exit 0 ok, 1 violations, 2 I/O)");
  check->add_option("--dataset", check_dataset, "dataset directory or manifest")->capture_default_str();
  check->callback([&] { status = report_check(manifest_of(check_dataset)); });

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "run the verification service");
  serve->add_option("--batch", sv.batch, "review batch (JSON)");
  serve->add_option("--listen", sv.listen, "HOST:PORT (port 0 picks one)")->capture_default_str();
  serve->add_option("--log", sv.log, "verdict log (JSONL)")->capture_default_str();
  serve->add_option("--static", sv.static_dir, "review console bundle to serve at /");
  serve->callback([&] { status = run_serve(sv); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "forge: " << e.what() << "\n";
    return 2;
  }
  return status;
}
