// gaitid: command-line front end for gait-based re-identification.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gait/energy_image.h"
#include "gait/gallery.h"
#include "gait/harness.h"
#include "gait/image_io.h"
#include "gait/silhouette_io.h"
#include "gait/synthetic.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct ImageOptions {
  int width = gait::kDefaultWidth;
  int height = gait::kDefaultHeight;
  double threshold = gait::kDefaultThreshold;
};

void add_image_options(CLI::App* cmd, ImageOptions& opts) {
  cmd->add_option("--width", opts.width, "Frame width after resizing")->check(CLI::PositiveNumber);
  cmd->add_option("--height", opts.height, "Frame height after resizing")->check(CLI::PositiveNumber);
  cmd->add_option("--threshold", opts.threshold, "Binarization threshold as a fraction of full scale");
}

void print_warnings(const gait::EvaluationReport& report) {
  for (const auto& id : report.skipped_subjects) {
    std::cerr << "warning: skipping subject " << id << " (fewer than 2 sequences)\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gait re-identification with active energy images and affine moment invariants"};
  app.require_subcommand(1);

  // synth
  gait::SyntheticDatasetOptions synth_opts;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write a synthetic walker dataset");
  synth->add_option("--subjects", synth_opts.subjects, "Number of subjects")->check(CLI::PositiveNumber);
  synth->add_option("--sequences", synth_opts.sequences, "Sequences per subject")->check(CLI::PositiveNumber);
  synth->add_option("--frames", synth_opts.frames, "Frames per sequence")->check(CLI::Range(2, 100000));
  synth->add_option("--out", synth_out, "Output dataset root")->required();
  synth->add_option("--seed", synth_opts.seed, "Dataset seed");
  synth->add_option("--noise", synth_opts.noise_rate, "Per-pixel flip probability")->check(CLI::Range(0.0, 0.05));
  synth->add_option("--width", synth_opts.width, "Frame width")->check(CLI::PositiveNumber);
  synth->add_option("--height", synth_opts.height, "Frame height")->check(CLI::PositiveNumber);

  // evaluate
  std::string eval_data;
  double eval_split = 0.5;
  int eval_k = gait::kDefaultSegments;
  int eval_m = gait::kDefaultDims;
  std::uint64_t eval_seed = 1;
  bool eval_csv = false;
  bool eval_probes = false;
  ImageOptions eval_img;
  auto* evaluate = app.add_subcommand("evaluate", "Train/test evaluation reporting rank-1 CCR");
  evaluate->add_option("--data", eval_data, "Dataset root")->required();
  evaluate->add_option("--split", eval_split, "Training fraction per subject");
  evaluate->add_option("--segments", eval_k, "Number of horizontal segments K");
  evaluate->add_option("--dims", eval_m, "Whitened dimensions M");
  evaluate->add_option("--seed", eval_seed, "Split seed");
  evaluate->add_flag("--csv", eval_csv, "Emit CSV instead of a table");
  evaluate->add_flag("--probes", eval_probes, "Also list every probe decision");
  add_image_options(evaluate, eval_img);

  // sweep
  std::string sweep_data;
  std::vector<double> sweep_splits{0.5, 0.66, 0.83};
  std::vector<int> sweep_k{10, 20, 23, 30};
  std::vector<int> sweep_m{gait::kDefaultDims};
  std::uint64_t sweep_seed = 1;
  bool sweep_csv = false;
  ImageOptions sweep_img;
  auto* sweep = app.add_subcommand("sweep", "Evaluate over the cross product of splits, K and M");
  sweep->add_option("--data", sweep_data, "Dataset root")->required();
  sweep->add_option("--splits", sweep_splits, "Training fractions")->delimiter(',');
  sweep->add_option("--segments", sweep_k, "Segment counts")->delimiter(',');
  sweep->add_option("--dims", sweep_m, "Whitened dimensions")->delimiter(',');
  sweep->add_option("--seed", sweep_seed, "Split seed");
  sweep->add_flag("--csv", sweep_csv, "Emit CSV instead of a table");
  add_image_options(sweep, sweep_img);

  // enroll
  std::string enroll_data, enroll_out;
  int enroll_k = gait::kDefaultSegments;
  int enroll_m = gait::kDefaultDims;
  ImageOptions enroll_img;
  auto* enroll = app.add_subcommand("enroll", "Enroll every sequence under a dataset root into a gallery file");
  enroll->add_option("--data", enroll_data, "Dataset root")->required();
  enroll->add_option("--out", enroll_out, "Gallery file to write")->required();
  enroll->add_option("--segments", enroll_k, "Number of horizontal segments K");
  enroll->add_option("--dims", enroll_m, "Whitened dimensions M");
  add_image_options(enroll, enroll_img);

  // identify
  std::string identify_gallery, identify_probe;
  int identify_top = 5;
  auto* identify = app.add_subcommand("identify", "Identify a probe sequence against a gallery");
  identify->add_option("--gallery", identify_gallery, "Gallery file")->required();
  identify->add_option("--probe", identify_probe, "Probe sequence directory")->required();
  identify->add_option("--top", identify_top, "Number of ranked matches to print")->check(CLI::PositiveNumber);

  // features
  std::string features_probe;
  int features_k = gait::kDefaultSegments;
  ImageOptions features_img;
  auto* features = app.add_subcommand("features", "Print per-segment affine moment invariants of a sequence");
  features->add_option("--probe", features_probe, "Sequence directory")->required();
  features->add_option("--segments", features_k, "Number of horizontal segments K");
  add_image_options(features, features_img);

  // render-aei
  std::string render_probe, render_out;
  bool render_gei = false;
  ImageOptions render_img;
  auto* render = app.add_subcommand("render-aei", "Write the active energy image of a sequence as 8-bit PGM");
  render->add_option("--probe", render_probe, "Sequence directory")->required();
  render->add_option("--out", render_out, "Output PGM file")->required();
  render->add_flag("--gei", render_gei, "Render the gait energy image instead");
  add_image_options(render, render_img);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*synth) {
      gait::write_synthetic_dataset(synth_out, synth_opts);
      std::cout << "wrote " << synth_opts.subjects << " subjects x " << synth_opts.sequences << " sequences to "
                << synth_out << '\n';
    } else if (*evaluate) {
      const auto dataset = gait::load_dataset(eval_data, eval_img.width, eval_img.height, eval_img.threshold);
      const auto report = gait::evaluate(dataset, eval_split, eval_k, eval_m, eval_seed);
      print_warnings(report);
      std::cout << (eval_csv ? gait::format_report_csv(report) : gait::format_report_table(report));
      if (eval_probes) {
        for (const auto& p : report.rows.front().probes) {
          std::cout << "probe " << p.subject_id << ' ' << p.sequence_id << " -> " << p.predicted_id << ' '
                    << (p.correct() ? "ok" : "miss") << '\n';
        }
      }
    } else if (*sweep) {
      const auto dataset = gait::load_dataset(sweep_data, sweep_img.width, sweep_img.height, sweep_img.threshold);
      const auto report = gait::sweep(dataset, sweep_splits, sweep_k, sweep_m, sweep_seed);
      print_warnings(report);
      std::cout << (sweep_csv ? gait::format_report_csv(report) : gait::format_report_table(report));
    } else if (*enroll) {
      gait::GalleryConfig config;
      config.width = enroll_img.width;
      config.height = enroll_img.height;
      config.k_segments = enroll_k;
      config.m_dims = enroll_m;
      config.threshold_fraction = enroll_img.threshold;
      gait::Gallery gallery(config);
      const auto dataset = gait::load_dataset(enroll_data, config.width, config.height, config.threshold_fraction);
      for (const auto& subject : dataset.subjects) {
        for (const auto& sequence : subject.sequences) gallery.enroll(sequence);
      }
      gallery.finalize();
      gait::save_gallery(gallery, enroll_out);
      std::cout << "enrolled " << gallery.persons().size() << " persons, " << gallery.sequence_count()
                << " sequences -> " << enroll_out << '\n';
    } else if (*identify) {
      const auto gallery = gait::load_gallery(identify_gallery);
      const auto& c = gallery.config();
      const auto probe = gait::load_sequence(identify_probe, c.width, c.height, c.threshold_fraction);
      const auto result = gallery.identify(probe);
      std::cout << "predicted " << gallery.person_id(result.predicted_person) << '\n';
      const auto ranked = gait::rank_matches(result.total_distances);
      for (std::size_t i = 0; i < ranked.size() && i < static_cast<std::size_t>(identify_top); ++i) {
        const auto& r = ranked[i];
        const auto& person = gallery.persons()[r.person];
        std::cout << "rank " << i + 1 << ' ' << person.person_id << ' ' << person.sequences[r.sequence].sequence_id
                  << ' ' << gait::format_real(r.distance) << '\n';
      }
    } else if (*features) {
      const auto sequence =
          gait::load_sequence(features_probe, features_img.width, features_img.height, features_img.threshold);
      const auto feats = gait::extract_features(sequence, features_k);
      for (std::size_t k = 0; k < feats.size(); ++k) {
        std::cout << "ami " << k << ' ' << (feats[k].degenerate ? 1 : 0);
        for (double v : feats[k].ami.values) std::cout << ' ' << gait::format_real(v);
        std::cout << '\n';
      }
    } else if (*render) {
      const auto sequence =
          gait::load_sequence(render_probe, render_img.width, render_img.height, render_img.threshold);
      const gait::RealImage image =
          render_gei ? gait::gait_energy_image(sequence).values : gait::active_energy_image(sequence).values;
      gait::write_pgm(render_out, gait::to_gray8(image));
    }
  } catch (const gait::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gait::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
