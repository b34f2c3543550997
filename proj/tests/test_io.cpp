#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "so3kit/errors.hpp"
#include "so3kit/io.hpp"
#include "oracles.hpp"

using namespace so3kit;

TEST_CASE("spectrum and signal files round trip bit-exactly") {
  std::mt19937_64 gen(61);

  const SphSpectrum s = oracles::random_sph_spectrum(5, gen, false);
  std::ostringstream out;
  write_sph_spectrum(out, s);
  std::istringstream in(out.str());
  const SphSpectrum back = read_sph_spectrum(in);
  REQUIRE(back.lmax == s.lmax);
  for (int l = 0; l < s.lmax; ++l)
    for (int m = -l; m <= l; ++m) CHECK(back.at(l, m) == s.at(l, m));

  const SO3Spectrum t = oracles::random_so3_spectrum(3, gen, false);
  std::ostringstream out2;
  write_so3_spectrum(out2, t);
  std::istringstream in2(out2.str());
  const SO3Spectrum back2 = read_so3_spectrum(in2);
  for (int l = 0; l < 3; ++l) CHECK((back2.block(l) - t.block(l)).cwiseAbs().maxCoeff() == 0.0);

  SphereSignal f = SphereSignal::zero(2);
  std::uniform_real_distribution<double> uni(-1, 1);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) f.samples(j, k) = Complex(uni(gen), uni(gen));
  std::ostringstream out3;
  write_sphere_signal(out3, f);
  std::istringstream in3(out3.str());
  CHECK((read_sphere_signal(in3).samples - f.samples).cwiseAbs().maxCoeff() == 0.0);

  SO3Signal q = SO3Signal::zero(2);
  for (auto& v : q.samples) v = Complex(uni(gen), uni(gen));
  std::ostringstream out4;
  write_so3_signal(out4, q);
  std::istringstream in4(out4.str());
  const SO3Signal back4 = read_so3_signal(in4);
  for (std::size_t i = 0; i < q.samples.size(); ++i) CHECK(back4.samples[i] == q.samples[i]);
}

TEST_CASE("parse errors carry line numbers") {
  {
    std::istringstream in("");
    CHECK_THROWS_AS(read_sphere_signal(in), ParseError);
  }
  {
    std::istringstream in("SSIG 2 4\n");  // wrong version
    CHECK_THROWS_AS(read_sphere_signal(in), ParseError);
  }
  {
    std::istringstream in("SSPEC 1 2\n0 0 1.0 0.0\n1 -1 nonsense 0.0\n");
    try {
      read_sph_spectrum(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line_number == 3);
    }
  }
  {
    // truncated body
    std::istringstream in("SO3SPEC 1 1\n");
    CHECK_THROWS_AS(read_so3_spectrum(in), ParseError);
  }
  {
    // out-of-order index
    std::istringstream in("SSPEC 1 1\n0 1 0.0 0.0\n");
    CHECK_THROWS_AS(read_sph_spectrum(in), ParseError);
  }
}

TEST_CASE("atomic_write replaces the target without partial states") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "so3kit_io_test";
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";

  atomic_write(target.string(), "first\n");
  CHECK(read_file(target.string()) == "first\n");
  atomic_write(target.string(), "second\n");
  CHECK(read_file(target.string()) == "second\n");

  // no temporary litter left behind
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("peek_format") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "so3kit_io_test2";
  fs::create_directories(dir);
  const fs::path target = dir / "spec.txt";
  atomic_write(target.string(), "SSPEC 1 2\n");
  CHECK(peek_format(target.string()) == "SSPEC");
  CHECK(peek_format((dir / "missing.txt").string()).empty());
  fs::remove_all(dir);
}
