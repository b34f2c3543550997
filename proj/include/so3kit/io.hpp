#ifndef SO3KIT_IO_HPP
#define SO3KIT_IO_HPP

#include <iosfwd>
#include <string>

#include "so3kit/spectral.hpp"

namespace so3kit {

// Line-oriented UTF-8 formats, reals printed with 17 significant digits:
//   sphere signal   "SSIG 1 <B>"    then 4B^2 lines "j k re im", j outer
//   sphere spectrum "SSPEC 1 <L>"   then lines "l m re im", ascending (l, m)
//   SO(3) signal    "SO3SIG 1 <B>"  then lines "j k l re im", (j,k,l) row-major
//   SO(3) spectrum  "SO3SPEC 1 <L>" then lines "l m n re im", ascending (l, m, n)
// Malformed input raises ParseError carrying the 1-based line number.

SphereSignal read_sphere_signal(std::istream& in);
SphSpectrum read_sph_spectrum(std::istream& in);
SO3Signal read_so3_signal(std::istream& in);
SO3Spectrum read_so3_spectrum(std::istream& in);

void write_sphere_signal(std::ostream& out, const SphereSignal& f);
void write_sph_spectrum(std::ostream& out, const SphSpectrum& s);
void write_so3_signal(std::ostream& out, const SO3Signal& f);
void write_so3_spectrum(std::ostream& out, const SO3Spectrum& s);

/// First whitespace-delimited token of the file, or "" when unreadable.
std::string peek_format(const std::string& path);

/// Write via a temporary file in the same directory plus rename, so a
/// crashed run never leaves a truncated file at `path`.
void atomic_write(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace so3kit

#endif
