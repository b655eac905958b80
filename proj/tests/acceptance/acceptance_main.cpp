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

// Acceptance suite: one PASS/FAIL line per headline criterion.
//
// Exits non-zero if any criterion fails. The end-to-end criterion drives the
// real command-line tools with mocked chat and speech backends.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include <httplib.h>

#include "ctc_oracle.hpp"
#include "fixture_files.hpp"
#include "forge/audio/ctc.hpp"
#include "forge/audio/timeline.hpp"
#include "forge/audio/waveform.hpp"
#include "forge/codec/codec.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"
#include "forge/dataset/manifest.hpp"
#include "forge/demux/demux.hpp"
#include "forge/episode/markup.hpp"
#include "forge/verify/server.hpp"
#include "forge/verify/service.hpp"
#include "mock_corpus.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using forge::Error;
using forge::ErrorCode;
using forge::Rng;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

fs::path work_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("forge_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

template <typename F>
std::optional<ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

// ---- codec -----------------------------------------------------------------------

// Dequantize and invert from the textbook DCT definitions, independent of the
// token path.
forge::codec::ActionChunk oracle_reconstruct(const forge::codec::ActionChunk& x, const forge::codec::CodecModel& m) {
  const auto n = static_cast<double>(m.chunk_len);
  forge::codec::ActionChunk out(m.chunk_len, m.dims);
  for (std::size_t d = 0; d < m.dims; ++d) {
    std::vector<double> coef(m.chunk_len);
    for (std::size_t k = 0; k < m.chunk_len; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < m.chunk_len; ++i) {
        s += x.at(i, d) * std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) * static_cast<double>(k) / n);
      }
      s *= k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
      coef[k] = std::clamp(std::round(s / (m.scales[d] * m.step)), -127.0, 127.0) * m.scales[d] * m.step;
    }
    for (std::size_t i = 0; i < m.chunk_len; ++i) {
      double s = coef[0] * std::sqrt(1.0 / n);
      for (std::size_t k = 1; k < m.chunk_len; ++k) {
        s += coef[k] * std::sqrt(2.0 / n) *
             std::cos(std::numbers::pi * (static_cast<double>(i) + 0.5) * static_cast<double>(k) / n);
      }
      out.at(i, d) = s;
    }
  }
  return out;
}

Outcome codec_round_trip() {
  const auto t0 = Clock::now();
  Rng train_rng(31);
  std::vector<forge::codec::ActionChunk> corpus;
  for (int i = 0; i < 1000; ++i) corpus.push_back(forge::synth::random_chunk(train_rng));
  const auto model = forge::codec::train_codec(corpus, forge::codec::CodecConfig{});
  const double bound = model.max_error_bound();

  Rng rng(32);
  double worst = 0.0, worst_oracle = 0.0;
  std::size_t over = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = forge::synth::random_chunk(rng);
    const auto y = forge::codec::decode_tokens(forge::codec::encode_chunk(x, model), model);
    const auto o = oracle_reconstruct(x, model);
    for (std::size_t t = 0; t < 6; ++t) {
      for (std::size_t d = 0; d < 7; ++d) {
        const double err = std::abs(y.at(t, d) - x.at(t, d));
        worst = std::max(worst, err);
        worst_oracle = std::max(worst_oracle, std::abs(y.at(t, d) - o.at(t, d)));
        if (err > bound + 1e-12) ++over;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {over == 0 && worst_oracle <= 1e-9 && secs < 5.0,
          "1000 chunks, max err " + fmt(worst, 5) + " <= bound " + fmt(bound, 5) + ", oracle diff " +
              fmt(worst_oracle, 12) + ", " + fmt(secs, 2) + " s (< 5)"};
}

// ---- audio ----------------------------------------------------------------------------

// SNR recomputed without the library's meter: the active region follows the
// documented rule (25 ms frames, 10 ms hop, RMS >= 1e-4) and the noise is
// whatever the final mix adds on top of the speech.
double oracle_snr(const forge::audio::Waveform& speech, const forge::audio::Waveform& mix) {
  const std::size_t frame = 400, hop = 160, n = speech.size();
  std::vector<bool> active(n, false);
  for (std::size_t start = 0; start < n; start += hop) {
    const std::size_t end = std::min(n, start + frame);
    double e = 0.0;
    for (std::size_t i = start; i < end; ++i) e += speech.samples[i] * speech.samples[i];
    if (std::sqrt(e / static_cast<double>(end - start)) >= 1e-4) std::fill(active.begin() + start, active.begin() + end, true);
    if (end == n) break;
  }
  double ps = 0.0, pn = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    const double noise = mix.samples[i] - speech.samples[i];
    ps += speech.samples[i] * speech.samples[i];
    pn += noise * noise;
  }
  return 10.0 * std::log10(ps / pn);
}

Outcome snr_closure() {
  const auto t0 = Clock::now();
  Rng rng(99);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<forge::audio::Waveform> clips;
    for (int k = 0; k < 3; ++k) clips.push_back(forge::synth::speechlike_clip(rng, rng.uniform(0.4, 1.5)));
    const std::vector<double> gaps{rng.uniform(0.0, 0.5), rng.uniform(0.0, 0.5)};
    const auto tl = forge::audio::assemble_timeline(clips, gaps, {});
    const auto noise = forge::synth::noise_clip(rng, rng.uniform(0.5, 5.0));
    const double target = rng.uniform(0.0, 20.0);
    const auto m = forge::audio::mix_background_detailed(tl, noise, target);
    worst = std::max(worst, std::abs(oracle_snr(forge::audio::render(tl), m.mix) - target));
  }
  const double secs = seconds_since(t0);
  return {worst <= 0.1 && secs < 10.0,
          "100 cases, max |achieved - target| " + fmt(worst, 6) + " dB (<= 0.1), " + fmt(secs, 2) + " s (< 10)"};
}

Outcome ctc_optimality() {
  const auto t0 = Clock::now();
  Rng rng(2024);
  std::size_t cases = 0, mismatches = 0;
  while (cases < 1200) {
    const std::size_t T = 1 + rng.below(8);
    const std::size_t L = rng.below(5);
    std::vector<int> labels;
    for (std::size_t i = 0; i < L; ++i) labels.push_back(1 + static_cast<int>(rng.below(3)));
    if (forge::audio::ctc_min_frames(labels) > T) continue;
    const auto post = forge::synth::random_posteriors(rng, T, 4);
    const auto a = forge::audio::ctc_force_align(post, labels);
    const auto oracle = forge::synth::ctc_brute_force(post, labels);
    if (oracle.valid_paths == 0 || std::abs(a.score - oracle.best) > 1e-9 ||
        !forge::synth::alignment_consistent(post, labels, a)) {
      ++mismatches;
    }
    ++cases;
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 30.0, std::to_string(cases) + " cases (T<=8, L<=4), " +
                                              std::to_string(mismatches) + " mismatches, " + fmt(secs, 2) +
                                              " s (< 30)"};
}

Outcome overlap_exactness() {
  Rng rng(77);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + rng.below(4);
    std::vector<forge::audio::Waveform> clips;
    for (std::size_t k = 0; k < n; ++k) clips.push_back(forge::synth::speechlike_clip(rng, rng.uniform(0.3, 2.0)));
    std::vector<double> gaps;
    for (std::size_t k = 0; k + 1 < n; ++k) gaps.push_back(rng.uniform(0.0, 0.5));
    const std::size_t a = rng.below(n - 1);
    const double d = rng.uniform(0.001, std::min(clips[a].duration(), clips[a + 1].duration()));
    const std::vector<forge::audio::OverlapSpec> ov{{a, a + 1, d}};
    const auto tl = forge::audio::assemble_timeline(clips, gaps, ov);
    const auto realized = forge::audio::overlap_samples(tl.placements[a], tl.placements[a + 1]);
    worst = std::max(worst, std::abs(static_cast<double>(realized) - d * 16000.0));
  }
  return {worst <= 1.0, "200 specs, max |realized - requested| " + fmt(worst, 3) + " samples (<= 1)"};
}

// ---- markup ----------------------------------------------------------------------------

Outcome markup_grammar() {
  const fs::path data(FORGE_TEST_DATA_DIR);
  std::size_t examples = 0, example_failures = 0;
  for (const auto& entry : fs::directory_iterator(data / "transcripts")) {
    ++examples;
    try {
      const auto doc = forge::episode::parse_markup(forge::read_file(entry.path()));
      const auto canonical = forge::episode::render_markup(doc);
      if (doc.turns.empty() || forge::episode::parse_markup(canonical) != doc ||
          forge::episode::render_markup(forge::episode::parse_markup(canonical)) != canonical) {
        ++example_failures;
      }
    } catch (const Error&) {
      ++example_failures;
    }
  }
  std::size_t malformed = 0, wrong = 0;
  forge::for_each_line(data / "malformed_markup.jsonl", [&](std::string_view line, std::size_t) {
    const auto j = json::parse(line);
    ++malformed;
    const auto code = error_of([&] { forge::episode::parse_markup(j["text"].get<std::string>()); });
    if (!code || forge::to_string(*code) != j["code"].get<std::string>()) ++wrong;
  });
  return {examples == 12 && example_failures == 0 && malformed >= 20 && wrong == 0,
          std::to_string(examples - example_failures) + "/" + std::to_string(examples) +
              " examples round-trip, " + std::to_string(malformed - wrong) + "/" + std::to_string(malformed) +
              " malformed rejected with the expected code"};
}

// ---- demux -------------------------------------------------------------------------------

Outcome demux_losslessness() {
  const forge::demux::VocabLayout layout{32000, 32000, 32001, forge::codec::kVocabSize};
  Rng rng(1234);
  std::size_t lossy = 0;
  std::vector<std::vector<std::int64_t>> streams;
  for (int i = 0; i < 1000; ++i) {
    auto s = forge::synth::legal_stream(rng, layout);
    if (forge::demux::serialize(forge::demux::demux(s, layout), layout) != s) ++lossy;
    streams.push_back(std::move(s));
  }

  // Positions where the demuxer is in text mode.
  const auto text_positions = [&](const std::vector<std::int64_t>& s) {
    std::vector<std::size_t> out;
    bool in_window = false;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (!in_window) out.push_back(i);
      if (i == s.size()) break;
      if (s[i] == layout.act_marker_id) in_window = true;
      else if (s[i] == layout.action_offset + forge::codec::kEosAct) in_window = false;
    }
    return out;
  };
  const auto expect = [&](std::vector<std::int64_t> s, ErrorCode want) {
    const auto got = error_of([&] { forge::demux::demux(s, layout); });
    return got && *got == want;
  };
  std::map<std::string, std::size_t> rejected;
  const std::size_t per_class = 100;
  for (std::size_t i = 0; i < per_class; ++i) {
    const auto& base = streams[i];
    const auto pos = text_positions(base);
    {
      auto s = base;
      const std::int64_t bad = rng.below(2) ? -1 - static_cast<std::int64_t>(rng.below(100))
                                            : layout.action_offset + layout.action_size + static_cast<std::int64_t>(rng.below(100));
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos[rng.below(pos.size())]), bad);
      rejected["IllegalId"] += expect(s, ErrorCode::IllegalId);
    }
    {
      auto s = base;
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos[rng.below(pos.size())]),
               layout.action_offset + static_cast<std::int64_t>(rng.below(forge::codec::kVocabSize)));
      rejected["StrayActionToken"] += expect(s, ErrorCode::StrayActionToken);
    }
    {
      auto s = base;
      s.push_back(layout.act_marker_id);
      if (rng.below(4)) s.push_back(layout.action_offset + forge::codec::kBosAct);
      for (auto k = rng.below(6); k > 0; --k) s.push_back(layout.action_offset + static_cast<std::int64_t>(rng.below(255)));
      rejected["UnterminatedAction"] += expect(s, ErrorCode::UnterminatedAction);
    }
  }
  bool all = lossy == 0;
  std::string detail = std::to_string(1000 - lossy) + "/1000 streams lossless";
  for (const auto& [name, n] : rejected) {
    all = all && n == per_class;
    detail += ", " + name + " " + std::to_string(n) + "/" + std::to_string(per_class);
  }
  return {all && rejected.size() == 3, detail};
}

// ---- end to end -------------------------------------------------------------------------

int run(const std::string& cmd, const fs::path& log) {
  const auto full = cmd + " > " + (log.string() + ".out") + " 2> " + log.string() + ".err";
  const int rc = std::system(full.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

Outcome end_to_end() {
  const auto t0 = Clock::now();
  const auto dir = work_dir("e2e");
  const std::string forge_bin = FORGE_CLI;
  const auto seeds = forge::synth::household_seeds(35, 2026);
  forge::synth::write_seeds(dir / "seeds.jsonl", seeds);
  forge::synth::write_frames(dir / "raw", seeds);
  forge::synth::write_voices(dir / "voices.jsonl");
  forge::synth::write_event_catalog(dir / "events", {"doorbell", "dog bark", "phone ring"});
  forge::synth::write_background_catalog(dir / "bg");
  std::string rules;
  for (const auto& r : forge::synth::mock_rules(seeds, "doorbell")) rules += forge::script::to_json(r).dump() + "\n";
  forge::write_file_atomic(dir / "mock.jsonl", rules);

  const auto fail = [&](const std::string& why) { return Outcome{false, why + " (logs in " + dir.string() + ")"}; };

  if (run(forge_bin + " script --seeds " + q(dir / "seeds.jsonl") + " --out " + q(dir / "drafts.jsonl") +
              " --mock " + q(dir / "mock.jsonl") + " --sound-types doorbell --seed 7 --report " +
              q(dir / "script_report.json"),
          dir / "script") != 0) {
    return fail("forge script failed");
  }
  if (run(forge_bin + " audio --plans " + q(dir / "drafts.jsonl") + " --voices " + q(dir / "voices.jsonl") +
              " --events " + q(dir / "events") + " --backgrounds " + q(dir / "bg") +
              " --snr-min 0 --snr-max 20 --seed 7 --mock-tts --out " + q(dir / "audio"),
          dir / "audio") != 0) {
    return fail("forge audio failed");
  }
  if (run(forge_bin + " pack --drafts " + q(dir / "drafts.jsonl") + " --audio " + q(dir / "audio") +
              " --frames-root " + q(dir / "raw") + " --out " + q(dir / "dataset"),
          dir / "pack") != 0) {
    return fail("forge pack failed");
  }
  const int check_rc = run(forge_bin + " check --dataset " + q(dir / "dataset"), dir / "check");
  const auto check = json::parse(forge::read_file(dir / "check.out"), nullptr, false);
  if (run(forge_bin + " stats --dataset " + q(dir / "dataset") + " --out " + q(dir / "stats.json"), dir / "stats") != 0) {
    return fail("forge stats failed");
  }
  const auto stats = json::parse(forge::read_file(dir / "stats.json"));

  const auto manifest = forge::dataset::Manifest::open(dir / "dataset" / "manifest.jsonl");
  std::size_t bad_audio = 0;
  for (const auto& [id, e] : manifest.episodes()) {
    const auto info = forge::audio::probe_wav(manifest.resolve(e.audio_ref));
    if (info.channels != 1 || info.rate != 16000 || info.format_tag != 1 || info.bits_per_sample != 16) ++bad_audio;
  }
  std::string histogram;
  bool ten_each = stats["per_type"].size() == 7;
  for (const auto& [type, n] : stats["per_type"].items()) {
    ten_each = ten_each && n == 10;
    histogram += (histogram.empty() ? "" : " ") + type + "=" + n.dump();
  }
  const double secs = seconds_since(t0);
  const bool ok = manifest.size() == 70 && check_rc == 0 && !check.is_discarded() && check["violations"] == 0 &&
                  bad_audio == 0 && ten_each && secs < 120.0;
  return {ok, std::to_string(manifest.size()) + " episodes, check exit " + std::to_string(check_rc) + " with " +
                  (check.is_discarded() ? std::string("?") : check["violations"].dump()) + " violations, " +
                  std::to_string(bad_audio) + " non-conforming audio files, per-type [" + histogram + "], " +
                  fmt(secs, 1) + " s (< 120)"};
}

// ---- verification ----------------------------------------------------------------------

forge::dataset::ReviewBatch plain_batch(std::size_t n) {
  forge::dataset::ReviewBatch b;
  for (std::size_t i = 0; i < n; ++i) {
    forge::dataset::ReviewItem it;
    it.episode_id = "ep" + std::to_string(10000 + i);
    it.instruction_type = forge::episode::kAllInstructionTypes[i % 7];
    it.original_instruction = "pick up the cup";
    it.conversation = "[S1] My hands are full. [Robot] Shall I take the cup? [ACT]";
    b.items.push_back(it);
  }
  return b;
}

forge::verify::Verdict make_verdict(const std::string& ep, const std::string& who, bool rec) {
  forge::verify::Verdict v;
  v.episode_id = ep;
  v.annotator_id = who;
  v.intent_recoverable = rec;
  v.phenomenon_fidelity = true;
  return v;
}

Outcome agreement_replication() {
  const auto dir = work_dir("agreement");
  const auto batch = plain_batch(1000);
  std::string log;
  for (std::size_t i = 0; i < 1000; ++i) {
    log += forge::verify::to_json(make_verdict(batch.items[i].episode_id, "annotator-1", i >= 13)).dump() + "\n";
  }
  forge::write_file_atomic(dir / "verdicts.jsonl", log);

  forge::verify::VerifyService svc(dir / "verdicts.jsonl");
  svc.load_batch(batch);
  forge::verify::VerifyServer server(svc);
  const int port = server.bind("127.0.0.1", 0);
  std::thread t([&] { server.serve(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get("/api/report");
  server.stop();
  t.join();
  if (!res || res->status != 200) return {false, "GET /api/report failed"};
  const auto report = json::parse(res->body);

  std::size_t yes = 0, total = 0;
  forge::for_each_line(dir / "verdicts.jsonl", [&](std::string_view l, std::size_t) {
    ++total;
    yes += json::parse(l)["intent_recoverable"].get<bool>() ? 1 : 0;
  });
  const double served = report["recoverable_rate"].get<double>();
  const bool ok = served == 98.7 && report["n_verdicts"] == 1000 && report["recoverable_yes"] == yes &&
                  forge::verify::percent_1dp(yes, total) == served;
  return {ok, std::to_string(yes) + " yes of " + std::to_string(total) + " -> recoverable_rate " +
                  report["recoverable_rate"].dump() + "% (served over HTTP, recomputed from the raw log)"};
}

Outcome crash_durability() {
  const auto batch = plain_batch(30);
  const std::vector<std::string> annotators{"a", "b", "c"};
  Rng rng(4242);
  std::size_t lost = 0, doubled = 0, bad_retry = 0, trials = 0;
  std::map<std::string, std::size_t> points;
  for (int trial = 0; trial < 100; ++trial) {
    const auto dir = work_dir("crash");
    std::set<std::pair<std::string, std::string>> acked;  // (annotator, episode)
    std::optional<forge::verify::Verdict> crashed;
    const auto point = rng.below(2) ? forge::verify::CrashPoint::MidWrite : forge::verify::CrashPoint::AfterAppend;
    const auto crash_at = rng.below(40);
    {
      forge::verify::VerifyService svc(dir / "verdicts.jsonl");
      svc.load_batch(batch);
      for (std::uint64_t step = 0; step <= crash_at; ++step) {
        forge::verify::Verdict v;
        do {  // always a fresh pair, so every trial reaches its crash
          v = make_verdict(batch.items[rng.below(batch.items.size())].episode_id,
                           annotators[rng.below(annotators.size())], rng.below(2) == 0);
        } while (acked.count({v.annotator_id, v.episode_id}));
        if (step == crash_at) {
          svc.set_crash_point(point, rng.uniform());
          try {
            svc.submit_verdict(v);
          } catch (const forge::verify::SimulatedCrash&) {
            crashed = v;
          }
          break;
        }
        svc.submit_verdict(v);
        acked.insert({v.annotator_id, v.episode_id});
      }
    }  // the crashed process is gone
    trials += crashed ? 1 : 0;
    ++points[point == forge::verify::CrashPoint::MidWrite ? "mid-write" : "after-append"];

    forge::verify::VerifyService restarted(dir / "verdicts.jsonl");
    restarted.load_batch(batch);
    std::multiset<std::pair<std::string, std::string>> stored;
    for (const auto& v : restarted.verdicts()) stored.insert({v.annotator_id, v.episode_id});
    for (const auto& k : acked) lost += stored.count(k) == 0;
    for (const auto& k : stored) doubled += stored.count(k) > 1;
    if (crashed) {
      // The client never saw an ack, so it retries.
      const auto retry = error_of([&] { restarted.submit_verdict(*crashed); });
      const bool was_persisted = point == forge::verify::CrashPoint::AfterAppend;
      if (was_persisted ? retry != ErrorCode::DuplicateVerdict : retry.has_value()) ++bad_retry;
      acked.insert({crashed->annotator_id, crashed->episode_id});
    }
    // A later restart sees exactly the acknowledged set, once each.
    forge::verify::VerifyService again(dir / "verdicts.jsonl");
    again.load_batch(batch);
    if (again.verdicts().size() != acked.size()) ++doubled;
  }
  return {lost == 0 && doubled == 0 && bad_retry == 0 && trials == 100,
          std::to_string(trials) + " injected crashes (" + std::to_string(points["mid-write"]) + " mid-write, " +
              std::to_string(points["after-append"]) + " after-append): " + std::to_string(lost) +
              " acked verdicts lost, " + std::to_string(doubled) + " double counts, " + std::to_string(bad_retry) +
              " wrong retry outcomes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"codec round trip", codec_round_trip},
      {"SNR closure", snr_closure},
      {"CTC alignment optimality", ctc_optimality},
      {"overlap exactness", overlap_exactness},
      {"markup grammar", markup_grammar},
      {"demux losslessness", demux_losslessness},
      {"end-to-end mini-forge", end_to_end},
      {"agreement replication", agreement_replication},
      {"crash durability", crash_durability},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
