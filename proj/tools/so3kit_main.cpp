// so3kit command-line interface: transforms, spectral convolution and
// correlation, rotation estimation, Clebsch-Gordan and steerable-basis
// tables, and the numerical verification suites.
//
// Exit codes: 0 success, 2 parse/usage error, 3 bandwidth mismatch,
// 4 degenerate input, 5 verification failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "so3kit/equivariant_ops.hpp"
#include "so3kit/errors.hpp"
#include "so3kit/io.hpp"
#include "so3kit/spectral.hpp"
#include "so3kit/verify.hpp"

namespace {

using namespace so3kit;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitBandwidth = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitVerifyFailed = 5;

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return in;
}

int run_sht(const std::string& input, const std::string& out, const std::string& direction,
            int bandwidth) {
  std::ostringstream result;
  if (direction == "forward") {
    auto in = open_input(input);
    const SphereSignal f = read_sphere_signal(in);
    if (bandwidth > 0 && bandwidth != f.bandwidth) {
      throw BandwidthMismatch("header bandwidth " + std::to_string(f.bandwidth) +
                              " != --bandwidth " + std::to_string(bandwidth));
    }
    write_sph_spectrum(result, sht_forward(f));
  } else {
    auto in = open_input(input);
    const SphSpectrum s = read_sph_spectrum(in);
    write_sphere_signal(result, sht_inverse(s, bandwidth > 0 ? bandwidth : s.lmax));
  }
  atomic_write(out, result.str());
  return kExitOk;
}

int run_so3ft(const std::string& input, const std::string& out, const std::string& direction,
              int bandwidth) {
  std::ostringstream result;
  if (direction == "forward") {
    auto in = open_input(input);
    const SO3Signal f = read_so3_signal(in);
    if (bandwidth > 0 && bandwidth != f.bandwidth) {
      throw BandwidthMismatch("header bandwidth " + std::to_string(f.bandwidth) +
                              " != --bandwidth " + std::to_string(bandwidth));
    }
    write_so3_spectrum(result, so3_ft_forward(f));
  } else {
    auto in = open_input(input);
    const SO3Spectrum s = read_so3_spectrum(in);
    write_so3_signal(result, so3_ft_inverse(s, bandwidth > 0 ? bandwidth : s.lmax));
  }
  atomic_write(out, result.str());
  return kExitOk;
}

int run_conv(const std::string& fpath, const std::string& kpath, const std::string& out,
             bool sphere) {
  std::ostringstream result;
  if (sphere) {
    auto fin = open_input(fpath);
    auto kin = open_input(kpath);
    const SphSpectrum f = read_sph_spectrum(fin);
    const SphSpectrum k = read_sph_spectrum(kin);
    write_sph_spectrum(result, spherical_convolve(f, k));
  } else {
    auto fin = open_input(fpath);
    auto kin = open_input(kpath);
    const SO3Spectrum f = read_so3_spectrum(fin);
    const SO3Spectrum k = read_so3_spectrum(kin);
    write_so3_spectrum(result, so3_convolve(f, k));
  }
  atomic_write(out, result.str());
  return kExitOk;
}

int run_correlate(const std::string& signal_path, const std::string& pattern_path,
                  const std::string& out, double tolerance) {
  auto sin_ = open_input(signal_path);
  auto pin = open_input(pattern_path);
  const SphereSignal signal = read_sphere_signal(sin_);
  const SphereSignal pattern = read_sphere_signal(pin);
  if (signal.bandwidth != pattern.bandwidth) {
    throw BandwidthMismatch("signal B=" + std::to_string(signal.bandwidth) + " vs pattern B=" +
                            std::to_string(pattern.bandwidth));
  }
  if (grid_energy(pattern) <= tolerance) {
    std::ostringstream result;
    result << "CORR 1 " << signal.bandwidth << '\n' << "error degenerate pattern\n";
    atomic_write(out, result.str());
    std::cerr << "correlate: degenerate pattern (zero energy)\n";
    return kExitDegenerate;
  }
  const SO3Spectrum corr = spherical_correlate(sht_forward(signal), sht_forward(pattern));
  const CorrelationPeak peak = correlation_peak(corr, signal.bandwidth);
  std::ostringstream result;
  result << "CORR 1 " << signal.bandwidth << '\n';
  result << "peak_euler " << fmt_real(peak.rotation.alpha) << ' ' << fmt_real(peak.rotation.beta)
         << ' ' << fmt_real(peak.rotation.gamma) << '\n';
  result << "peak_value " << fmt_real(peak.value) << '\n';
  atomic_write(out, result.str());
  return kExitOk;
}

int run_cg(int l1, int l2, const std::string& out) {
  const CGTable t = cg_table(l1, l2);
  std::ostringstream result;
  result << "CGTAB 1 " << l1 << ' ' << l2 << '\n';
  for (int r = 0; r < t.C.rows(); ++r) {
    for (int c = 0; c < t.C.cols(); ++c) {
      result << r << ' ' << c << ' ' << fmt_real(t.C(r, c)) << '\n';
    }
  }
  atomic_write(out, result.str());
  return kExitOk;
}

int run_steerable(int li, int lo, int bandwidth, const std::string& out) {
  const SteerableBasis basis = steerable_basis(li, lo);
  const SphereGrid grid = make_sphere_grid(bandwidth);
  std::ostringstream result;
  result << "STEER 1 " << li << ' ' << lo << ' ' << bandwidth << '\n';
  for (int l : basis.degrees) {
    for (int j = 0; j < grid.size(); ++j) {
      for (int k = 0; k < grid.size(); ++k) {
        const Eigen::MatrixXcd block = basis.evaluate(l, grid.node(j, k));
        for (int r = 0; r < block.rows(); ++r) {
          for (int c = 0; c < block.cols(); ++c) {
            result << l << ' ' << j << ' ' << k << ' ' << r << ' ' << c << ' '
                   << fmt_real(block(r, c).real()) << ' ' << fmt_real(block(r, c).imag()) << '\n';
          }
        }
      }
    }
  }
  atomic_write(out, result.str());
  return kExitOk;
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out) {
  VerifyOptions options;
  options.seed = seed;
  const VerificationReport report = verify_suite(suite, options);
  std::ostringstream text;
  print_report(text, report);
  if (out.empty()) {
    std::cout << text.str();
  } else {
    atomic_write(out, text.str());
  }
  return report.overall() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic analysis and equivariance toolkit for S^2 and SO(3)"};
  app.require_subcommand(1);

  std::string input, second, out = "out.txt", direction = "forward", suite = "all";
  int bandwidth = 0, l1 = 0, l2 = 0, li = 0, lo = 0;
  std::uint64_t seed = 0;
  double tolerance = 1e-12;
  bool sphere_mode = false, so3_mode = false;

  auto* sht = app.add_subcommand("sht", "spherical harmonic transform of a signal/spectrum file");
  sht->add_option("input", input)->required();
  sht->add_option("--direction", direction)->check(CLI::IsMember({"forward", "inverse"}));
  sht->add_option("--bandwidth", bandwidth);
  sht->add_option("--out", out);

  auto* so3ft = app.add_subcommand("so3ft", "SO(3) Fourier transform of a signal/spectrum file");
  so3ft->add_option("input", input)->required();
  so3ft->add_option("--direction", direction)->check(CLI::IsMember({"forward", "inverse"}));
  so3ft->add_option("--bandwidth", bandwidth);
  so3ft->add_option("--out", out);

  auto* conv = app.add_subcommand("conv", "spectral convolution of two spectrum files");
  conv->add_option("signal", input)->required();
  conv->add_option("kernel", second)->required();
  conv->add_flag("--sphere", sphere_mode);
  conv->add_flag("--so3", so3_mode);
  conv->add_option("--out", out);

  auto* correlate = app.add_subcommand("correlate", "estimate the rotation aligning a pattern");
  correlate->add_option("signal", input)->required();
  correlate->add_option("pattern", second)->required();
  correlate->add_option("--out", out);
  correlate->add_option("--tolerance", tolerance);

  auto* cg = app.add_subcommand("cg", "write a Clebsch-Gordan coupling table");
  cg->add_option("--l1", l1)->required();
  cg->add_option("--l2", l2)->required();
  cg->add_option("--out", out);

  auto* steer = app.add_subcommand("steerable", "sample a steerable kernel basis on a grid");
  steer->add_option("--li", li)->required();
  steer->add_option("--lo", lo)->required();
  steer->add_option("--bandwidth", bandwidth);
  steer->add_option("--out", out);

  auto* verify = app.add_subcommand("verify", "run the numerical certification suites");
  verify->add_option("--suite", suite);
  verify->add_option("--seed", seed);
  verify->add_option("--out", out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitParse;
  }

  try {
    if (sht->parsed()) return run_sht(input, out, direction, bandwidth);
    if (so3ft->parsed()) return run_so3ft(input, out, direction, bandwidth);
    if (conv->parsed()) {
      if (sphere_mode == so3_mode) {
        std::cerr << "conv: pass exactly one of --sphere or --so3\n";
        return kExitParse;
      }
      return run_conv(input, second, out, sphere_mode);
    }
    if (correlate->parsed()) return run_correlate(input, second, out, tolerance);
    if (cg->parsed()) return run_cg(l1, l2, out);
    if (steer->parsed()) return run_steerable(li, lo, bandwidth > 0 ? bandwidth : 2, out);
    if (verify->parsed()) {
      const auto& names = verify_suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "verify: unknown suite '" << suite << "'; expected one of:";
        for (const auto& n : names) std::cerr << ' ' << n;
        std::cerr << '\n';
        return kExitParse;
      }
      return run_verify(suite, seed, out);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const BandwidthMismatch& e) {
    std::cerr << "bandwidth mismatch: " << e.what() << '\n';
    return kExitBandwidth;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitParse;
}
