#include "dyadic_ns/field_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace dyadic_ns {
namespace {

constexpr std::uint8_t kVersion = 1;

void put_u8(std::ostream& os, std::uint8_t v) { os.put(static_cast<char>(v)); }

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b.data(), b.size());
}

void put_f64(std::ostream& os, double x) {
  const auto bits = std::bit_cast<std::uint64_t>(x);
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xffu);
  os.write(b.data(), b.size());
}

void read_exact(std::istream& is, char* dst, std::size_t count) {
  is.read(dst, static_cast<std::streamsize>(count));
  if (static_cast<std::size_t>(is.gcount()) != count) throw std::runtime_error("truncated field file");
}

std::uint8_t get_u8(std::istream& is) {
  char c;
  read_exact(is, &c, 1);
  return static_cast<std::uint8_t>(c);
}

std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b;
  read_exact(is, reinterpret_cast<char*>(b.data()), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& is) {
  std::array<unsigned char, 8> b;
  read_exact(is, reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return std::bit_cast<double>(v);
}

void expect_magic(std::istream& is, const char* magic) {
  char m[4];
  read_exact(is, m, 4);
  if (std::memcmp(m, magic, 4) != 0) {
    throw std::runtime_error(std::string("bad magic, expected ") + std::string(magic, 4));
  }
}

void put_coeffs(std::ostream& os, const SpectralField& f) {
  for (const auto& c : f.coeffs()) {
    put_f64(os, c.real());
    put_f64(os, c.imag());
  }
}

void get_coeffs(std::istream& is, SpectralField& f) {
  for (auto& c : f.coeffs()) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    c = complex_t(re, im);
  }
}

struct Layout {
  int dim;
  int components;
  int n;
};

void put_layout(std::ostream& os, const SpectralField& f) {
  put_u8(os, kVersion);
  put_u8(os, static_cast<std::uint8_t>(f.grid().dim()));
  put_u8(os, static_cast<std::uint8_t>(f.components()));
  put_u32(os, static_cast<std::uint32_t>(f.grid().n()));
}

Layout get_layout(std::istream& is) {
  const auto version = get_u8(is);
  if (version != kVersion) throw std::runtime_error("unsupported file version " + std::to_string(version));
  Layout l;
  l.dim = get_u8(is);
  l.components = get_u8(is);
  l.n = static_cast<int>(get_u32(is));
  return l;
}

template <class T, class Fn>
T with_input(const std::filesystem::path& path, Fn fn) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return fn(is);
}

template <class Fn>
void with_output(const std::filesystem::path& path, Fn fn) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  fn(os);
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  os.write("DNSF", 4);
  put_layout(os, f);
  put_coeffs(os, f);
}

SpectralField read_field(std::istream& is) {
  expect_magic(is, "DNSF");
  const Layout l = get_layout(is);
  SpectralField f(make_grid(l.dim, l.n), l.components);
  get_coeffs(is, f);
  return f;
}

void write_field(const std::filesystem::path& path, const SpectralField& f) {
  with_output(path, [&](std::ostream& os) { write_field(os, f); });
}

SpectralField read_field(const std::filesystem::path& path) {
  return with_input<SpectralField>(path, [](std::istream& is) { return read_field(is); });
}

void write_series(std::ostream& os, const TimeSeriesField& v) {
  os.write("DNST", 4);
  put_layout(os, v.at(0));
  put_u32(os, static_cast<std::uint32_t>(v.size()));
  put_u8(os, v.initial() ? 1 : 0);
  for (double t : v.times().nodes()) put_f64(os, t);
  if (v.initial()) put_coeffs(os, *v.initial());
  for (const auto& s : v.snapshots()) put_coeffs(os, s);
}

TimeSeriesField read_series(std::istream& is) {
  expect_magic(is, "DNST");
  const Layout l = get_layout(is);
  const std::uint32_t count = get_u32(is);
  const bool has_initial = get_u8(is) != 0;
  std::vector<double> nodes(count);
  for (auto& t : nodes) t = get_f64(is);
  const Grid grid = make_grid(l.dim, l.n);
  std::optional<SpectralField> initial;
  if (has_initial) {
    initial.emplace(grid, l.components);
    get_coeffs(is, *initial);
  }
  std::vector<SpectralField> snaps(count, SpectralField(grid, l.components));
  for (auto& s : snaps) get_coeffs(is, s);
  return TimeSeriesField(TimeGrid::from_nodes(std::move(nodes)), std::move(snaps), std::move(initial));
}

void write_series(const std::filesystem::path& path, const TimeSeriesField& v) {
  with_output(path, [&](std::ostream& os) { write_series(os, v); });
}

TimeSeriesField read_series(const std::filesystem::path& path) {
  return with_input<TimeSeriesField>(path, [](std::istream& is) { return read_series(is); });
}

}  // namespace dyadic_ns
