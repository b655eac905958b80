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

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <set>

#include "forge/audio/waveform.hpp"
#include "forge/common/error.hpp"
#include "forge/common/io.hpp"
#include "forge/common/rng.hpp"
#include "forge/dataset/check.hpp"
#include "forge/dataset/manifest.hpp"
#include "forge/dataset/review.hpp"
#include "forge/dataset/shard.hpp"
#include "forge/dataset/stats.hpp"

using namespace forge;
using namespace forge::dataset;
using episode::Episode;
using episode::InstructionType;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("forge_dataset_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

template <typename F>
Error error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no forge::Error thrown";
  return Error(ErrorCode::InvalidArgument, "none");
}

void write_tone(const fs::path& p, double seconds, int rate = 16000, int channels = 1) {
  fs::create_directories(p.parent_path());
  audio::Waveform w;
  w.rate = rate;
  const auto n = static_cast<std::size_t>(seconds * rate);
  for (std::size_t i = 0; i < n; ++i) w.samples.push_back(0.3 * std::sin(0.05 * static_cast<double>(i)));
  if (channels == 1) {
    audio::write_wav(p, w);
    return;
  }
  // Hand-rolled stereo PCM16 file.
  std::string data;
  for (double s : w.samples) {
    const auto v = static_cast<std::int16_t>(s * 32767);
    for (int c = 0; c < channels; ++c) data.append(reinterpret_cast<const char*>(&v), 2);
  }
  const auto u32 = [](std::uint32_t v) { return std::string(reinterpret_cast<const char*>(&v), 4); };
  const auto u16 = [](std::uint16_t v) { return std::string(reinterpret_cast<const char*>(&v), 2); };
  std::string f = "RIFF" + u32(36 + static_cast<std::uint32_t>(data.size())) + "WAVEfmt " + u32(16) +
                  u16(1) + u16(static_cast<std::uint16_t>(channels)) + u32(static_cast<std::uint32_t>(rate)) +
                  u32(static_cast<std::uint32_t>(rate * channels * 2)) +
                  u16(static_cast<std::uint16_t>(channels * 2)) + u16(16) + "data" +
                  u32(static_cast<std::uint32_t>(data.size())) + data;
  write_file_atomic(p, f);
}

Episode make_episode(const fs::path& root, const std::string& id, InstructionType t,
                     const std::string& instruction, std::size_t frames = 12, double seconds = 1.2) {
  Episode e;
  e.id = id;
  e.instruction_type = t;
  e.original_instruction = instruction;
  e.conversation = "[S1] Hmm, look at that. [Robot] Shall I? [S1] Yes. [Robot] On it. [ACT]";
  e.audio_ref = "audio/" + id + ".wav";
  write_tone(root / e.audio_ref, seconds);
  e.frame_refs = {"frames/" + id + "/0.png"};
  fs::create_directories(root / "frames" / id);
  write_file_atomic(root / e.frame_refs[0], "png:" + id);
  for (std::size_t k = 0; k < frames; ++k) {
    e.actions.push_back({{0.1, -0.2, 0.0, 0.05, 0.0, -0.05, k < frames / 2 ? -1.0 : 1.0}});
  }
  e.speakers = {{"v-" + id, episode::AgeGroup::Adult, episode::Gender::Female, "voices/a.wav"}};
  e.mix_plan = episode::MixPlan{"bg-kitchen", 12.5, {}};
  e.provenance = {"synthetic", "traj-" + id};
  return e;
}

}  // namespace

// ---- manifest ------------------------------------------------------------------

TEST(Manifest, WriteReadRoundTrip) {
  const auto dir = temp_dir("rt");
  auto m = Manifest::open(dir / "manifest.jsonl");
  const auto e = make_episode(dir, "ep-1", InstructionType::Dyadic, "pick up the banana");
  write_episode(e, m);
  EXPECT_EQ(read_episode("ep-1", dir / "manifest.jsonl"), e);
  EXPECT_EQ(error_of([&] { write_episode(e, m); }).code(), ErrorCode::DuplicateId);
  EXPECT_EQ(error_of([&] { read_episode("ep-2", dir / "manifest.jsonl"); }).code(), ErrorCode::NotFound);

  auto bad = e;
  bad.id = "ep-bad";
  bad.actions[0].delta.pop_back();
  const auto err = error_of([&] { write_episode(bad, m); });
  EXPECT_EQ(err.code(), ErrorCode::InvalidArgument);
  EXPECT_NE(std::string(err.what()).find("ACTION_DIM"), std::string::npos);
}

TEST(Manifest, TruncatedLineIsCorruptLine) {
  const auto dir = temp_dir("corrupt");
  auto m = Manifest::open(dir / "manifest.jsonl");
  for (int i = 0; i < 20; ++i) {
    m.add(make_episode(dir, "ep-" + std::to_string(100 + i), InstructionType::Triadic, "open the drawer"));
  }
  m.save();
  std::vector<std::string> lines;
  for_each_line(dir / "manifest.jsonl", [&](std::string_view l, std::size_t) { lines.emplace_back(l); });
  ASSERT_EQ(lines.size(), 20u);
  lines[16].resize(lines[16].size() / 2);  // line 17
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  write_file_atomic(dir / "manifest.jsonl", text);
  const auto err = error_of([&] { read_episode("ep-100", dir / "manifest.jsonl"); });
  EXPECT_EQ(err.code(), ErrorCode::CorruptLine);
  EXPECT_EQ(err.index(), 17);
}

TEST(Manifest, DuplicateIdInFileIsRejected) {
  const auto dir = temp_dir("dup");
  const auto line = episode::to_json(make_episode(dir, "x", InstructionType::Dyadic, "pick up the cup")).dump();
  write_file_atomic(dir / "manifest.jsonl", line + "\n" + line + "\n");
  const auto err = error_of([&] { Manifest::open(dir / "manifest.jsonl"); });
  EXPECT_EQ(err.code(), ErrorCode::DuplicateId);
  EXPECT_EQ(err.index(), 2);
  EXPECT_EQ(error_of([&] { compute_stats(dir / "manifest.jsonl"); }).code(), ErrorCode::DuplicateId);
}

TEST(Manifest, RepackIsByteIdentical) {
  const auto dir = temp_dir("repack");
  std::vector<Episode> eps;
  for (int i = 0; i < 30; ++i) {
    eps.push_back(make_episode(dir, "e" + std::to_string((i * 7) % 30), InstructionType::Sentiment,
                               "move the pot onto the towel"));
  }
  auto a = Manifest::open(dir / "a.jsonl");
  for (const auto& e : eps) a.add(e);
  a.save();
  Rng rng(3);
  rng.shuffle(std::span(eps));
  auto b = Manifest::open(dir / "b.jsonl");
  for (const auto& e : eps) b.add(e);
  b.save();
  EXPECT_EQ(read_file(dir / "a.jsonl"), read_file(dir / "b.jsonl"));
  const auto s1 = write_shards(a, dir / "s1", 7);
  const auto s2 = write_shards(b, dir / "s2", 7);
  ASSERT_EQ(s1.size(), 5u);
  for (std::size_t k = 0; k < s1.size(); ++k) {
    EXPECT_EQ(read_file(s1[k].tar), read_file(s2[k].tar));
    EXPECT_EQ(read_file(s1[k].index), read_file(s2[k].index));
  }
}

// ---- tar shards ---------------------------------------------------------------------

TEST(Tar, RoundTripAndLongNames) {
  TarWriter w;
  const std::string long_name = std::string(120, 'd') + "/" + std::string(90, 'f') + ".bin";
  w.add("a.txt", "hello");
  w.add(long_name, std::string(1000, 'x'));
  w.add("empty", "");
  EXPECT_EQ(error_of([&] { w.add(std::string(300, 'n'), "x"); }).code(), ErrorCode::InvalidArgument);
  const auto members = w.members();
  const auto bytes = w.finish();
  EXPECT_EQ(bytes.size() % 512, 0u);
  const auto entries = read_tar(bytes);
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].name, "a.txt");
  EXPECT_EQ(entries[0].data, "hello");
  EXPECT_EQ(entries[1].name, long_name);
  EXPECT_EQ(entries[1].data, std::string(1000, 'x'));
  EXPECT_EQ(bytes.substr(members[0].offset, members[0].size), "hello");

  auto broken = bytes;
  broken[10] ^= 1;
  EXPECT_EQ(error_of([&] { read_tar(broken); }).code(), ErrorCode::IoError);
  EXPECT_EQ(error_of([&] { read_tar(bytes.substr(0, 700)); }).code(), ErrorCode::IoError);
}

TEST(Tar, SystemTarAgrees) {
  if (std::system("tar --version > /dev/null 2>&1") != 0) GTEST_SKIP() << "no tar binary";
  const auto dir = temp_dir("systar");
  TarWriter w;
  w.add("ep/episode.json", "{}");
  w.add(std::string(110, 'p') + "/frame.png", "png");
  write_file_atomic(dir / "x.tar", w.finish());
  const auto cmd = "tar -tf " + (dir / "x.tar").string() + " > " + (dir / "list.txt").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_EQ(read_file(dir / "list.txt"), "ep/episode.json\n" + std::string(110, 'p') + "/frame.png\n");
}

TEST(Shards, IndexPointsAtMembers) {
  const auto dir = temp_dir("shards");
  auto m = Manifest::open(dir / "manifest.jsonl");
  for (int i = 0; i < 7; ++i) m.add(make_episode(dir, "ep" + std::to_string(i), InstructionType::Identity, "grab the mug"));
  m.save();
  const auto shards = write_shards(m, dir / "shards", 3);
  ASSERT_EQ(shards.size(), 3u);
  EXPECT_EQ(shards[2].ids, std::vector<std::string>{"ep6"});
  std::size_t covered = 0;
  for (const auto& s : shards) {
    const auto tar = read_file(s.tar);
    const auto index = nlohmann::json::parse(read_file(s.index));
    EXPECT_EQ(index["shard"], s.tar.filename().string());
    for (const auto& ep : index["episodes"]) {
      ++covered;
      const auto& e = m.get(ep["id"]);
      for (const auto& mem : ep["members"]) {
        const auto data = tar.substr(mem["offset"].get<std::size_t>(), mem["size"].get<std::size_t>());
        const auto name = mem["name"].get<std::string>();
        if (name.ends_with("/episode.json")) EXPECT_EQ(episode::episode_from_json(nlohmann::json::parse(data)), e);
        if (name.ends_with("/audio.wav")) EXPECT_EQ(data, read_file(m.resolve(e.audio_ref)));
      }
    }
    EXPECT_EQ(read_tar(tar).size(), index["episodes"].size() * 3);
  }
  EXPECT_EQ(covered, 7u);
  EXPECT_EQ(check_manifest(dir / "manifest.jsonl").exit_code(), 0);
}

// ---- stats ----------------------------------------------------------------------------

TEST(Stats, OnePerContextualType) {
  const auto dir = temp_dir("stats6");
  auto m = Manifest::open(dir / "manifest.jsonl");
  int i = 0;
  for (auto t : episode::kAllInstructionTypes) {
    if (t == InstructionType::DirectText) continue;
    m.add(make_episode(dir, "e" + std::to_string(i++), t, "pick up the banana"));
  }
  const auto r = compute_stats(m);
  EXPECT_EQ(r.episodes, 6u);
  for (const auto& [t, n] : r.per_type) EXPECT_EQ(n, t == InstructionType::DirectText ? 0u : 1u);
  EXPECT_EQ(r.skills, 1u);
  EXPECT_EQ(r.objects, 1u);
  EXPECT_EQ(r.audio_seconds.counts, (std::vector<std::size_t>{0, 6}));
  EXPECT_EQ(r.action_frames.counts, (std::vector<std::size_t>{0, 6}));
  EXPECT_EQ(r.backgrounds, 1u);
  EXPECT_EQ(r.missing_audio, 0u);
}

// Generator-side tallies are the oracle.
TEST(Stats, MatchesGeneratorTallies) {
  const auto dir = temp_dir("stats100");
  const std::vector<std::string> verbs{"pick up", "put down", "move", "open", "close", "push",
                                      "pull", "grab", "lift", "wipe", "fold", "flip"};
  const std::vector<std::string> nouns{
      "banana", "apple", "mug", "bowl", "plate", "cup", "spoon", "fork", "pot", "pan", "lid", "towel",
      "sponge", "carrot", "lemon", "orange", "ketchup", "milk", "bottle", "jar", "tray", "box",
      "basket", "book", "remote"};
  Rng rng(99);
  auto m = Manifest::open(dir / "manifest.jsonl");
  std::map<InstructionType, std::size_t> want_types;
  std::set<std::string> want_skills, want_objects, want_speakers, want_bg;
  std::size_t want_events = 0;
  Histogram want_audio{1.0, {}}, want_actions{10.0, {}};
  for (int i = 0; i < 100; ++i) {
    const auto type = i < 40 ? InstructionType::Dyadic : i < 70 ? InstructionType::Sentiment
                                                                 : InstructionType::NonVerbal;
    // Cover every verb and noun at least once, then draw at random.
    const auto& verb = i < 12 ? verbs[i] : verbs[rng.below(verbs.size())];
    const auto& noun = i < 25 ? nouns[i] : nouns[rng.below(nouns.size())];
    const auto frames = 1 + rng.below(60);
    const double seconds = 0.2 + rng.uniform() * 4.5;
    auto e = make_episode(dir, "g" + std::to_string(i), type, verb + " the " + noun, frames, seconds);
    e.speakers[0].id = "voice" + std::to_string(rng.below(9));
    e.mix_plan->background_id = "bg" + std::to_string(rng.below(4));
    const auto n_events = rng.below(3);
    for (std::uint64_t k = 0; k < n_events; ++k) e.mix_plan->event_insertions.push_back({0, "door", episode::EventMode::GapInsert});
    e.conversation = "[S1] Hmm. [Sound] [Sound] [Robot] Sure. [ACT]";

    ++want_types[type];
    want_skills.insert(verb);
    want_objects.insert(noun);
    want_speakers.insert(e.speakers[0].id);
    want_bg.insert(e.mix_plan->background_id);
    want_events += n_events;
    want_actions.add(static_cast<double>(frames));
    want_audio.add(static_cast<double>(static_cast<std::size_t>(seconds * 16000)) / 16000.0);
    m.add(std::move(e));
  }
  m.save();
  const auto r = compute_stats(dir / "manifest.jsonl");
  EXPECT_EQ(r.episodes, 100u);
  EXPECT_EQ(r.per_type.at(InstructionType::Dyadic), 40u);
  EXPECT_EQ(r.per_type.at(InstructionType::Sentiment), 30u);
  EXPECT_EQ(r.per_type.at(InstructionType::NonVerbal), 30u);
  EXPECT_EQ(r.skills, 12u);
  EXPECT_EQ(r.objects, 25u);
  EXPECT_EQ(want_skills.size(), 12u);
  EXPECT_EQ(want_objects.size(), 25u);
  EXPECT_EQ(r.speakers, want_speakers.size());
  EXPECT_EQ(r.backgrounds, want_bg.size());
  EXPECT_EQ(r.sound_events, want_events);
  EXPECT_EQ(r.base_trajectories, 100u);
  EXPECT_EQ(r.action_frames.counts, want_actions.counts);
  EXPECT_EQ(r.audio_seconds.counts, want_audio.counts);
  std::size_t sum = 0;
  for (const auto& [t, n] : r.per_type) sum += n;
  EXPECT_EQ(sum, r.episodes);

  const auto j = to_json(r);
  EXPECT_EQ(j["per_type"]["dyadic"], 40);
  EXPECT_EQ(j["per_type"]["direct_text"], 0);
  EXPECT_EQ(j["totals"]["objects"], 25);
}

// ---- sampling ----------------------------------------------------------------------------

namespace {
Manifest population(const fs::path& dir, std::size_t per_type) {
  auto m = Manifest::open(dir / "manifest.jsonl");
  int i = 0;
  for (auto t : episode::kAllInstructionTypes) {
    for (std::size_t k = 0; k < per_type; ++k) {
      m.add(make_episode(dir, "p" + std::to_string(1000 + i++), t, "push the box"));
    }
  }
  return m;
}
}  // namespace

TEST(Sample, WholePopulationAndDeterminism) {
  const auto dir = temp_dir("sample");
  const auto m = population(dir, 3);
  const auto all = sample_for_review(m, m.size(), 7, false);
  ASSERT_EQ(all.items.size(), m.size());
  std::set<std::string> ids;
  std::vector<std::string> order;
  for (const auto& i : all.items) {
    ids.insert(i.episode_id);
    order.push_back(i.episode_id);
  }
  EXPECT_EQ(ids.size(), m.size());
  EXPECT_FALSE(std::is_sorted(order.begin(), order.end()));  // shuffled
  EXPECT_EQ(sample_for_review(m, 5, 7, true), sample_for_review(m, 5, 7, true));
  EXPECT_EQ(sample_for_review(m, 5, 7, false), sample_for_review(m, 5, 7, false));
  EXPECT_NE(sample_for_review(m, 5, 7, false), sample_for_review(m, 5, 8, false));
  EXPECT_EQ(error_of([&] { sample_for_review(m, m.size() + 1, 1, false); }).code(), ErrorCode::SampleTooLarge);
  EXPECT_TRUE(fs::path(all.items[0].audio_path).is_absolute());

  save_review_batch(all, dir / "batch.json");
  EXPECT_EQ(load_review_batch(dir / "batch.json"), all);
}

TEST(Sample, CalibrationItemsGoFirst) {
  const auto dir = temp_dir("calib");
  const auto m = population(dir, 2);
  auto b = sample_for_review(m, 5, 1, false);
  const auto sampled = b.items[3].episode_id;
  const std::string outside = [&] {
    for (const auto& [id, e] : m.episodes()) {
      if (std::none_of(b.items.begin(), b.items.end(), [&](const auto& i) { return i.episode_id == id; })) return id;
    }
    return std::string();
  }();
  add_calibration(b, m, {outside, sampled, outside});
  ASSERT_EQ(b.items.size(), 6u);
  EXPECT_EQ(b.items[0].episode_id, outside);
  EXPECT_EQ(b.items[1].episode_id, sampled);
  EXPECT_TRUE(b.items[0].calibration && b.items[1].calibration);
  for (std::size_t i = 2; i < b.items.size(); ++i) EXPECT_FALSE(b.items[i].calibration);
  EXPECT_EQ(error_of([&] { add_calibration(b, m, {"nope"}); }).code(), ErrorCode::NotFound);
}

TEST(Sample, StratifiedCounts) {
  const auto dir = temp_dir("strat");
  const auto m = population(dir, 12);
  const auto b14 = sample_for_review(m, 14, 3, true);
  std::map<InstructionType, int> c;
  for (const auto& i : b14.items) ++c[i.instruction_type];
  for (auto t : episode::kAllInstructionTypes) EXPECT_EQ(c[t], 2);

  for (std::size_t n = 1; n <= m.size(); n += 5) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto b = sample_for_review(m, n, seed, true);
      ASSERT_EQ(b.items.size(), n);
      std::map<InstructionType, long> counts;
      std::set<std::string> ids;
      for (const auto& i : b.items) {
        ++counts[i.instruction_type];
        ids.insert(i.episode_id);
      }
      ASSERT_EQ(ids.size(), n);
      const long target = std::lround(static_cast<double>(n) / 7.0);
      for (auto t : episode::kAllInstructionTypes) ASSERT_LE(std::labs(counts[t] - target), 1) << n;
    }
  }
}

// ---- check ------------------------------------------------------------------------------------

TEST(Check, ExitCodes) {
  const auto dir = temp_dir("check");
  auto m = Manifest::open(dir / "manifest.jsonl");
  m.add(make_episode(dir, "ok", InstructionType::Dyadic, "pick up the cup"));
  m.save();
  EXPECT_EQ(check_manifest(dir / "manifest.jsonl").exit_code(), 0);

  auto stereo = make_episode(dir, "stereo", InstructionType::Dyadic, "pick up the cup");
  write_tone(dir / stereo.audio_ref, 0.5, 16000, 2);
  auto hirate = make_episode(dir, "hirate", InstructionType::Dyadic, "pick up the cup");
  write_tone(dir / hirate.audio_ref, 0.5, 44100);
  auto noframe = make_episode(dir, "noframe", InstructionType::Dyadic, "pick up the cup");
  fs::remove(dir / noframe.frame_refs[0]);
  m.add(stereo);
  m.add(hirate);
  m.add(noframe);
  m.save();
  const auto r = check_manifest(dir / "manifest.jsonl");
  EXPECT_EQ(r.exit_code(), 1);
  std::multiset<std::string> codes;
  for (const auto& i : r.issues) codes.insert(i.episode_id + ":" + i.code);
  EXPECT_EQ(codes, (std::multiset<std::string>{"hirate:AUDIO_FORMAT", "noframe:FRAME_MISSING",
                                               "stereo:AUDIO_FORMAT"}));

  write_file_atomic(dir / "manifest.jsonl", read_file(dir / "manifest.jsonl") + "{\"id\": \"tr");
  EXPECT_EQ(check_manifest(dir / "manifest.jsonl").exit_code(), 2);
  EXPECT_EQ(check_manifest(dir / "missing.jsonl").exit_code(), 2);
}

TEST(Check, ShardIndexMustCoverManifest) {
  const auto dir = temp_dir("checkshard");
  auto m = Manifest::open(dir / "manifest.jsonl");
  m.add(make_episode(dir, "a", InstructionType::Dyadic, "pick up the cup"));
  m.save();
  write_shards(m, dir / "shards");
  EXPECT_EQ(check_manifest(dir / "manifest.jsonl").exit_code(), 0);
  m.add(make_episode(dir, "b", InstructionType::Dyadic, "pick up the cup"));
  m.save();
  const auto r = check_manifest(dir / "manifest.jsonl");
  ASSERT_EQ(r.issues.size(), 1u);
  EXPECT_EQ(r.issues[0].code, "SHARD_MISMATCH");
}
