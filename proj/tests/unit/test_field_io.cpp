#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "dyadic_ns/field_io.hpp"
#include "dyadic_ns/heat_oseen.hpp"
#include "dyadic_ns/spectral_core.hpp"
#include "support.hpp"

using namespace dyadic_ns;
using test_support::max_diff;

TEST_CASE("field files round trip") {
  const Grid g = make_grid(3, 16);
  const SpectralField f = random_band_field(1, g, 3, 1.0);
  std::stringstream buf;
  write_field(buf, f);
  CHECK(buf.str().substr(0, 4) == "DNSF");
  const SpectralField back = read_field(buf);
  CHECK(back.grid() == g);
  CHECK(back.components() == 3);
  CHECK(max_diff(back, f) == 0.0);
}

TEST_CASE("trajectory files round trip with and without the initial snapshot") {
  const Grid g = make_grid(2, 16);
  const TimeGrid times = TimeGrid::graded(0.5, 5);
  const TimeSeriesField v = heat_trajectory(random_band_field(2, g, 2, 1.0), times);
  const auto path = std::filesystem::temp_directory_path() / "dyadic_ns_io_test.dnst";
  write_series(path, v);
  const TimeSeriesField back = read_series(path);
  std::filesystem::remove(path);
  CHECK(back.times() == times);
  REQUIRE(back.initial().has_value());
  CHECK(max_diff(*back.initial(), *v.initial()) == 0.0);
  for (std::size_t m = 0; m < times.size(); ++m) CHECK(max_diff(back.at(m), v.at(m)) == 0.0);

  const TimeSeriesField bare(times, v.snapshots());
  std::stringstream buf;
  write_series(buf, bare);
  CHECK_FALSE(read_series(buf).initial().has_value());
}

TEST_CASE("corrupt files are rejected") {
  std::stringstream bad("XXXX0000");
  CHECK_THROWS(read_field(bad));
  const Grid g = make_grid(2, 16);
  std::stringstream buf;
  write_field(buf, random_band_field(3, g, 1, 1.0));
  const std::string full = buf.str();
  std::stringstream truncated(full.substr(0, full.size() / 2));
  CHECK_THROWS(read_field(truncated));
  CHECK_THROWS(read_field(std::filesystem::path("/nonexistent/field.dnsf")));
}
