#include "so3kit/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "so3kit/errors.hpp"

namespace so3kit {

namespace {

struct LineReader {
  std::istream& in;
  long line_number = 0;

  bool next(std::istringstream& fields) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_number;
      if (raw.find_first_not_of(" \t\r\n") == std::string::npos) continue;  // blank
      fields = std::istringstream(raw);
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_number); }
};

void read_header(LineReader& r, const char* magic, int& param) {
  std::istringstream fields;
  if (!r.next(fields)) throw ParseError("empty input", std::max(r.line_number, 1L));
  std::string tag;
  int version = 0;
  if (!(fields >> tag >> version >> param) || tag != magic || version != 1 || param < 1) {
    r.fail(std::string("expected header '") + magic + " 1 <n>'");
  }
}

void write_real(std::ostream& out, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

void write_complex_line(std::ostream& out, Complex v) {
  write_real(out, v.real());
  out << ' ';
  write_real(out, v.imag());
  out << '\n';
}

}  // namespace

SphereSignal read_sphere_signal(std::istream& in) {
  LineReader r{in};
  int bandwidth = 0;
  read_header(r, "SSIG", bandwidth);
  SphereSignal f = SphereSignal::zero(bandwidth);
  const int n = 2 * bandwidth;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      std::istringstream fields;
      if (!r.next(fields)) throw ParseError("truncated sphere signal", r.line_number + 1);
      int jj, kk;
      double re, im;
      if (!(fields >> jj >> kk >> re >> im) || jj != j || kk != k) {
        r.fail("expected 'j k re im' in row-major order");
      }
      f.samples(j, k) = Complex(re, im);
    }
  }
  return f;
}

SphSpectrum read_sph_spectrum(std::istream& in) {
  LineReader r{in};
  int lmax = 0;
  read_header(r, "SSPEC", lmax);
  SphSpectrum s = SphSpectrum::zero(lmax);
  for (int l = 0; l < lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      std::istringstream fields;
      if (!r.next(fields)) throw ParseError("truncated sphere spectrum", r.line_number + 1);
      int ll, mm;
      double re, im;
      if (!(fields >> ll >> mm >> re >> im) || ll != l || mm != m) {
        r.fail("expected 'l m re im' ascending in (l, m)");
      }
      s.at(l, m) = Complex(re, im);
    }
  }
  return s;
}

SO3Signal read_so3_signal(std::istream& in) {
  LineReader r{in};
  int bandwidth = 0;
  read_header(r, "SO3SIG", bandwidth);
  SO3Signal f = SO3Signal::zero(bandwidth);
  const int n = 2 * bandwidth;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        std::istringstream fields;
        if (!r.next(fields)) throw ParseError("truncated SO(3) signal", r.line_number + 1);
        int jj, kk, ll;
        double re, im;
        if (!(fields >> jj >> kk >> ll >> re >> im) || jj != j || kk != k || ll != l) {
          r.fail("expected 'j k l re im' in row-major order");
        }
        f.at(j, k, l) = Complex(re, im);
      }
    }
  }
  return f;
}

SO3Spectrum read_so3_spectrum(std::istream& in) {
  LineReader r{in};
  int lmax = 0;
  read_header(r, "SO3SPEC", lmax);
  SO3Spectrum s = SO3Spectrum::zero(lmax);
  for (int l = 0; l < lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int n = -l; n <= l; ++n) {
        std::istringstream fields;
        if (!r.next(fields)) throw ParseError("truncated SO(3) spectrum", r.line_number + 1);
        int ll, mm, nn;
        double re, im;
        if (!(fields >> ll >> mm >> nn >> re >> im) || ll != l || mm != m || nn != n) {
          r.fail("expected 'l m n re im' ascending in (l, m, n)");
        }
        s.block(l)(m + l, n + l) = Complex(re, im);
      }
    }
  }
  return s;
}

void write_sphere_signal(std::ostream& out, const SphereSignal& f) {
  out << "SSIG 1 " << f.bandwidth << '\n';
  const int n = 2 * f.bandwidth;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      out << j << ' ' << k << ' ';
      write_complex_line(out, f.samples(j, k));
    }
  }
}

void write_sph_spectrum(std::ostream& out, const SphSpectrum& s) {
  out << "SSPEC 1 " << s.lmax << '\n';
  for (int l = 0; l < s.lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      out << l << ' ' << m << ' ';
      write_complex_line(out, s.at(l, m));
    }
  }
}

void write_so3_signal(std::ostream& out, const SO3Signal& f) {
  out << "SO3SIG 1 " << f.bandwidth << '\n';
  const int n = 2 * f.bandwidth;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        out << j << ' ' << k << ' ' << l << ' ';
        write_complex_line(out, f.at(j, k, l));
      }
    }
  }
}

void write_so3_spectrum(std::ostream& out, const SO3Spectrum& s) {
  out << "SO3SPEC 1 " << s.lmax << '\n';
  for (int l = 0; l < s.lmax; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (int n = -l; n <= l; ++n) {
        out << l << ' ' << m << ' ' << n << ' ';
        write_complex_line(out, s.block(l)(m + l, n + l));
      }
    }
  }
}

std::string peek_format(const std::string& path) {
  std::ifstream in(path);
  std::string tag;
  in >> tag;
  return in ? tag : std::string();
}

void atomic_write(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  const fs::path tmp = dir / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace so3kit
