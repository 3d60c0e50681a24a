#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "latomo/acceptance.hpp"
#include "latomo/analysis.hpp"
#include "latomo/io.hpp"

namespace {

using namespace latomo;

struct AngleOption {
  std::optional<double> phi_rad;
  std::optional<double> phi_deg;

  void attach(CLI::App* cmd, bool required) {
    auto* a = cmd->add_option("--phi", phi_rad, "wedge half-angle in radians, 0 < phi < pi/2");
    auto* b = cmd->add_option("--phi-deg", phi_deg, "wedge half-angle in degrees");
    a->excludes(b);
    if (required) {
      // one of the two must be present; checked in resolve()
    }
  }

  std::optional<AngularRange> resolve(bool required) const {
    if (phi_rad) return AngularRange{*phi_rad};
    if (phi_deg) return AngularRange{*phi_deg * kPi / 180.0};
    if (required) throw ValidationError("wedge angle required: pass --phi or --phi-deg");
    return std::nullopt;
  }
};

double default_cutoff(int offsets) {
  const double ds = 2.0 * kOffsetHalfRange / (offsets - 1);
  return 0.25 / ds;  // half the offset-grid Nyquist
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for write: " + path);
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"limited-angle tomography toolkit"};
  app.require_subcommand(1);

  // phantom: rasterize a phantom description to a raster file
  auto* cmd_phantom = app.add_subcommand("phantom", "rasterize a phantom to a LATG1 file");
  std::string phantom_path, out_path;
  int n = 512, supersample = 4;
  cmd_phantom->add_option("--phantom", phantom_path, "phantom text file")->required();
  cmd_phantom->add_option("--n", n, "raster side length (default 512)");
  cmd_phantom->add_option("--supersample", supersample, "sub-samples per pixel axis (default 4)");
  cmd_phantom->add_option("--out", out_path, "output raster path")->required();

  // sinogram
  auto* cmd_sino = app.add_subcommand("sinogram", "compute line integrals to a LATS1 file");
  AngleOption sino_angle;
  int angles = 720, offsets = 1024;
  cmd_sino->add_option("--phantom", phantom_path, "phantom text file")->required();
  sino_angle.attach(cmd_sino, false);
  cmd_sino->add_option("--angles", angles, "angle count (default 720)");
  cmd_sino->add_option("--offsets", offsets, "offset count (default 1024)");
  cmd_sino->add_option("--out", out_path, "output sinogram path")->required();

  // recon
  auto* cmd_recon = app.add_subcommand("recon", "reconstruct a phantom");
  AngleOption recon_angle;
  int m = 0, k = 0;
  double cutoff = -1.0, rolloff = 0.25;
  cmd_recon->add_option("--phantom", phantom_path, "phantom text file")->required();
  recon_angle.attach(cmd_recon, false);
  cmd_recon->add_option("--m", m, "filter order: 0 or 1 (default 0)");
  cmd_recon->add_option("--k", k, "apodization vanishing order (default 0)");
  cmd_recon->add_option("--n", n, "raster side length (default 512)");
  cmd_recon->add_option("--angles", angles, "angle count (default 720)");
  cmd_recon->add_option("--offsets", offsets, "offset count (default 1024)");
  cmd_recon->add_option("--cutoff", cutoff,
                        "band limit in cycles/unit (default: half the offset Nyquist)");
  cmd_recon->add_option("--rolloff", rolloff, "cosine taper fraction of the cutoff (default 0.25)");
  cmd_recon->add_option("--out", out_path, "output raster path")->required();

  // predict-streaks
  auto* cmd_streaks = app.add_subcommand("predict-streaks", "tangent streak lines of a phantom");
  AngleOption streak_angle;
  std::string report_path;
  cmd_streaks->add_option("--phantom", phantom_path, "phantom text file")->required();
  streak_angle.attach(cmd_streaks, true);
  cmd_streaks->add_option("--report", report_path, "write JSON here instead of stdout");

  // probe-symbol
  auto* cmd_probe = app.add_subcommand("probe-symbol",
                                       "compare the kernel's partial symbol with its prediction");
  AngleOption probe_angle;
  double t_offset = 1.0, tau_min = 8.0, tau_max = 80.0, localizer_width = 0.0;
  int tau_count = 17;
  probe_angle.attach(cmd_probe, true);
  cmd_probe->add_option("--m", m, "filter order: 0 or 1 (default 0)");
  cmd_probe->add_option("--k", k, "apodization vanishing order (default 0)");
  cmd_probe->add_option("--t", t_offset, "offset along the streak line (default 1.0)");
  cmd_probe->add_option("--tau-min", tau_min, "low frequency in cycles/unit (default 8)");
  cmd_probe->add_option("--tau-max", tau_max, "high frequency in cycles/unit (default 80)");
  cmd_probe->add_option("--tau-count", tau_count, "grid size (default 17)");
  cmd_probe->add_option("--localizer-width", localizer_width,
                        "angular localizer width in radians (default phi/2)");
  cmd_probe->add_option("--out", out_path, "CSV output path (default stdout)");

  // measure
  auto* cmd_measure = app.add_subcommand("measure", "streak locations and strength report");
  AngleOption measure_angle;
  std::string csv_path;
  int samples = 4096;
  cmd_measure->add_option("--phantom", phantom_path, "phantom text file")->required();
  measure_angle.attach(cmd_measure, true);
  cmd_measure->add_option("--m", m, "filter order: 0 or 1 (default 0)");
  cmd_measure->add_option("--k", k, "apodization vanishing order (default 0)");
  cmd_measure->add_option("--cutoff", cutoff, "band limit in cycles/unit (default 128)");
  cmd_measure->add_option("--rolloff", rolloff, "cosine taper fraction (default 0.25)");
  cmd_measure->add_option("--samples", samples, "probe samples (default 4096)");
  cmd_measure->add_option("--report", report_path, "JSON report path")->required();
  cmd_measure->add_option("--csv", csv_path, "companion CSV of profiles and spectra");

  // verify
  auto* cmd_verify = app.add_subcommand("verify", "run the acceptance suite");
  bool quick = false;
  cmd_verify->add_flag("--quick", quick, "reduced-size suite");

  CLI11_PARSE(app, argc, argv);

  if (cmd_phantom->parsed()) {
    const Phantom p = load_phantom(phantom_path);
    write_image(out_path, rasterize(p, n, 1.0, supersample));
    std::cout << "wrote " << out_path << " (" << n << "x" << n << ")\n";
    return 0;
  }

  if (cmd_sino->parsed()) {
    const Phantom p = load_phantom(phantom_path);
    write_sinogram(out_path, radon_phantom(p, sino_angle.resolve(false), angles, offsets));
    std::cout << "wrote " << out_path << " (" << angles << "x" << offsets << ")\n";
    return 0;
  }

  if (cmd_recon->parsed()) {
    const Phantom p = load_phantom(phantom_path);
    const auto range = recon_angle.resolve(false);
    const Sinogram sino = radon_phantom(p, range, angles, offsets);
    ReconSpec spec;
    spec.m = m;
    spec.apod = Apodization{range ? range->phi : kPi / 4.0, range ? k : 0};
    spec.cutoff = cutoff < 0.0 ? default_cutoff(offsets) : cutoff;
    spec.rolloff = rolloff;
    write_image(out_path, reconstruct(sino, spec, n, 1.0));
    std::cout << "wrote " << out_path << " (" << n << "x" << n << ")\n";
    return 0;
  }

  if (cmd_streaks->parsed()) {
    const Phantom p = load_phantom(phantom_path);
    const auto range = streak_angle.resolve(true);
    const auto preds = predict_streaks(p, *range);
    std::ostringstream json;
    json << "[\n";
    for (std::size_t i = 0; i < preds.size(); ++i) {
      const auto& s = preds[i];
      json << "  {\"j\": " << s.j << ", \"y_star\": [" << s.y_star.x << ", " << s.y_star.y
           << "], \"line_dir\": [" << s.line_dir.x << ", " << s.line_dir.y
           << "], \"source_ellipse\": " << s.source_ellipse << "}"
           << (i + 1 < preds.size() ? ",\n" : "\n");
    }
    json << "]\n";
    if (report_path.empty()) {
      std::cout << json.str();
    } else {
      open_out(report_path) << json.str();
      std::cout << "wrote " << report_path << " (" << preds.size() << " predictions)\n";
    }
    return 0;
  }

  if (cmd_probe->parsed()) {
    const auto range = probe_angle.resolve(true);
    ReconSpec spec;
    spec.m = m;
    spec.apod = Apodization{range->phi, k};
    spec.cutoff = tau_max * 2.0;  // unused by the probe, must be positive
    const double width = localizer_width > 0.0 ? localizer_width : range->phi / 2.0;
    std::vector<SymbolProbe> probes;
    for (int j = 1; j <= 2; ++j) {
      auto part = symbol_ratio_scan(make_edge_frame(j, range->phi), {t_offset}, tau_min, tau_max,
                                    tau_count, spec, width);
      probes.insert(probes.end(), part.begin(), part.end());
    }
    if (out_path.empty()) {
      write_probe_csv(std::cout, probes);
    } else {
      auto out = open_out(out_path);
      write_probe_csv(out, probes);
      std::cout << "wrote " << out_path << "\n";
    }
    for (const auto& p : probes) {
      std::cerr << "j=" << p.frame.j << " t=" << p.t << ": mean |A/P - 1| = "
                << p.mean_abs_ratio_err << ", |A| slope " << p.slope << " (expected "
                << p.expected_slope << ")\n";
    }
    return 0;
  }

  if (cmd_measure->parsed()) {
    const Phantom p = load_phantom(phantom_path);
    const auto range = measure_angle.resolve(true);
    ReconSpec spec;
    spec.m = m;
    spec.apod = Apodization{range->phi, k};
    spec.cutoff = cutoff < 0.0 ? 128.0 : cutoff;
    spec.rolloff = rolloff;
    ProbeGeometry geom;
    geom.n_samples = samples;
    const auto report = artifact_report(p, spec, predict_streaks(p, *range), geom);
    auto out = open_out(report_path);
    write_report_json(out, report);
    std::cout << "wrote " << report_path << "\n";
    if (!csv_path.empty()) {
      auto csv = open_out(csv_path);
      write_report_csv(csv, report);
      std::cout << "wrote " << csv_path << "\n";
    }
    return 0;
  }

  if (cmd_verify->parsed()) {
    const auto results = run_acceptance(AcceptanceOptions{quick}, std::cout);
    return acceptance_exit_code(results);
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const latomo::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
