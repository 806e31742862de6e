#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "gait/error.h"
#include "gait/harness.h"
#include "gait/synthetic.h"
#include "support/temp_dir.h"

using namespace gait;

namespace {

Dataset synthetic_dataset(int subjects, int sequences, int frames, double noise, std::uint64_t seed = 1) {
  Dataset d;
  for (int n = 0; n < subjects; ++n) {
    auto body = subject_walker(seed, n);
    body.noise_rate = noise;
    DatasetSubject subject{"subject_" + std::to_string(100 + n), {}};
    for (int s = 0; s < sequences; ++s) {
      auto seq = generate_synthetic(sequence_walker(body, seed, n, s), frames);
      seq.subject_id = subject.id;
      seq.sequence_id = "seq_" + std::to_string(s);
      subject.sequences.push_back(std::move(seq));
    }
    d.subjects.push_back(std::move(subject));
  }
  return d;
}

void check_row_arithmetic(const EvaluationRow& row) {
  const auto correct = std::count_if(row.probes.begin(), row.probes.end(), [](const auto& p) { return p.correct(); });
  CHECK(row.total == static_cast<int>(row.probes.size()));
  CHECK(row.correct == correct);
  CHECK(row.ccr == static_cast<double>(correct) / static_cast<double>(row.probes.size()));
}

}  // namespace

TEST_CASE("training counts round and leave a probe") {
  CHECK(train_count(0.5, 6) == 3);
  CHECK(train_count(0.66, 6) == 4);
  CHECK(train_count(0.83, 6) == 5);
  CHECK(train_count(0.99, 6) == 5);
  CHECK(train_count(0.01, 6) == 1);
  CHECK(train_count(0.5, 2) == 1);
  CHECK_THROWS_AS(train_count(0.0, 6), UsageError);
  CHECK_THROWS_AS(train_count(1.0, 6), UsageError);
}

TEST_CASE("split order is a seeded permutation") {
  const auto a = split_order(7, "alice", 6);
  auto sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> iota(6);
  std::iota(iota.begin(), iota.end(), 0);
  CHECK(sorted == iota);
  CHECK(split_order(7, "alice", 6) == a);

  int differ = 0;
  for (int seed = 0; seed < 20; ++seed) differ += split_order(seed, "alice", 6) != split_order(seed, "bob", 6);
  CHECK(differ > 10);
}

TEST_CASE("a probe identical to a gallery walk is recognised") {
  // The twin person keeps a second, different training walk: with a single
  // training walk its mean distance would be exactly 0 and the strict
  // selection rule would pick nothing in any segment.
  auto d = synthetic_dataset(5, 3, 20, 0.02);
  auto& twin = d.subjects[2];
  auto copy = twin.sequences[0];
  copy.sequence_id = "seq_copy";
  twin.sequences = {twin.sequences[0], twin.sequences[1], copy};

  std::uint64_t seed = 0;
  while (split_order(seed, twin.id, 3)[2] == 1) ++seed;  // probe one of the twins
  const auto report = evaluate(d, 0.5, 10, 4, seed);
  const auto& probes = report.rows[0].probes;
  const auto it = std::find_if(probes.begin(), probes.end(), [](const auto& p) { return p.subject_id == "subject_102"; });
  REQUIRE(it != probes.end());
  CHECK(it->sequence_id != "seq_1");
  CHECK(it->correct());
  CHECK(it->best_distance == 0.0);
}

TEST_CASE("sweep layout, determinism and arithmetic") {
  const auto d = synthetic_dataset(5, 6, 20, 0.01);
  const auto report = sweep(d, {0.5, 0.66, 0.83}, {10, 20, 23, 30}, {5}, 11);
  REQUIRE(report.rows.size() == 12);
  const std::vector<double> splits{0.5, 0.66, 0.83};
  const std::vector<int> ks{10, 20, 23, 30};
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(report.rows[i].train_fraction == splits[i / 4]);
    CHECK(report.rows[i].k_segments == ks[i % 4]);
    CHECK(report.rows[i].m_dims == 5);
    CHECK(report.rows[i].total == 5 * (6 - train_count(splits[i / 4], 6)));
    check_row_arithmetic(report.rows[i]);
  }
  CHECK(report.rng_seed == 11);

  const auto again = sweep(d, {0.5, 0.66, 0.83}, {10, 20, 23, 30}, {5}, 11);
  CHECK(format_report_csv(again) == format_report_csv(report));
  CHECK(format_report_table(again) == format_report_table(report));

  const auto single = evaluate(d, 0.66, 23, 5, 11);
  const auto one = sweep(d, {0.66}, {23}, {5}, 11);
  CHECK(format_report_csv(single) == format_report_csv(one));
  CHECK(single.rows[0].ccr == report.rows[6].ccr);
}

TEST_CASE("clean walkers classify at least as well as noisy ones") {
  // Pooled over four fixed datasets; single seeds go either way.
  int clean_correct = 0, noisy_correct = 0, probes = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto clean = evaluate(synthetic_dataset(10, 6, 32, 0.0, seed), 0.5, 23, 3, seed).rows[0];
    const auto noisy = evaluate(synthetic_dataset(10, 6, 32, 0.05, seed), 0.5, 23, 3, seed).rows[0];
    CHECK(clean.total == noisy.total);
    clean_correct += clean.correct;
    noisy_correct += noisy.correct;
    probes += clean.total;
  }
  CHECK(probes >= 30);
  CHECK(clean_correct >= noisy_correct);
}

TEST_CASE("subjects with a single walk are skipped") {
  auto d = synthetic_dataset(4, 3, 16, 0.01);
  d.subjects[1].sequences.resize(1);
  const auto report = evaluate(d, 0.5, 8, 3, 2);
  CHECK(report.skipped_subjects == std::vector<std::string>{"subject_101"});
  CHECK(report.rows[0].total == 3);
  for (const auto& p : report.rows[0].probes) CHECK(p.subject_id != "subject_101");
  CHECK(format_report_table(report).find("skipped 1") != std::string::npos);

  for (auto& s : d.subjects) s.sequences.resize(1);
  CHECK_THROWS_AS(evaluate(d, 0.5, 8, 3, 2), DataError);
}

TEST_CASE("parameter checks") {
  const auto d = synthetic_dataset(3, 2, 8, 0.01);
  CHECK_THROWS_AS(evaluate(d, 0.5, 0, 3, 1), UsageError);
  CHECK_THROWS_AS(evaluate(d, 0.5, 129, 3, 1), UsageError);
  CHECK_THROWS_AS(evaluate(d, 0.5, 8, 11, 1), UsageError);
  CHECK_THROWS_AS(sweep(d, {}, {8}, {3}, 1), UsageError);
}

TEST_CASE("datasets load from disk in sorted order") {
  testing_support::TempDir tmp("gait_harness");
  SyntheticDatasetOptions opt;
  opt.subjects = 3;
  opt.sequences = 2;
  opt.frames = 5;
  write_synthetic_dataset(tmp.path(), opt);
  const auto d = load_dataset(tmp.path());
  REQUIRE(d.subjects.size() == 3);
  CHECK(d.subjects[0].id == "subject_000");
  CHECK(d.subjects[2].id == "subject_002");
  REQUIRE(d.subjects[1].sequences.size() == 2);
  CHECK(d.subjects[1].sequences[1].sequence_id == "seq_01");
  CHECK(d.subjects[1].sequences[1].frames.size() == 5);
  CHECK_THROWS_AS(load_dataset(tmp.path() / "missing"), DataError);
}
