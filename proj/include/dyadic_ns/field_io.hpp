#pragma once

#include <filesystem>
#include <iosfwd>

#include "dyadic_ns/spectral_field.hpp"
#include "dyadic_ns/time_series.hpp"

namespace dyadic_ns {

/// Binary field file, all integers and floats little-endian:
///
///   "DNSF" | u8 version = 1 | u8 dim | u8 components | u32 n |
///   components x n^dim complex coefficients as (f64 re, f64 im)
///
/// Coefficients of each component follow the grid's flat mode order
/// (row-major, index i <-> wavenumber i for i <= n/2, i - n otherwise).
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);
void write_field(const std::filesystem::path& path, const SpectralField& f);
SpectralField read_field(const std::filesystem::path& path);

/// Trajectory file:
///
///   "DNST" | u8 version = 1 | u8 dim | u8 components | u32 n | u32 count |
///   u8 has_initial | count x f64 node times |
///   [initial coefficient block] | count coefficient blocks
///
/// Coefficient blocks use the field-file layout without the header.
void write_series(std::ostream& os, const TimeSeriesField& v);
TimeSeriesField read_series(std::istream& is);
void write_series(const std::filesystem::path& path, const TimeSeriesField& v);
TimeSeriesField read_series(const std::filesystem::path& path);

}  // namespace dyadic_ns
