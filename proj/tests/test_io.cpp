#include <cstring>
#include <sstream>

#include "doctest.h"
#include "ptscatter/io.hpp"
#include "support.hpp"

using namespace ptscat;
using namespace ptscat::analysis;
using testing_support::Gen;
using testing_support::make;

TEST_CASE("CSV round trip is exact (property)") {
  Gen gen(55);
  for (int draw = 0; draw < 20; ++draw) {
    const auto s = gen.spec(draw % 2 ? Model::scarf : Model::rect);
    const auto t = sweep(s, gen.energies(37, 0.1, 12.0), Backend::analytic);
    std::stringstream buf;
    io::write_csv(t, buf);
    const auto back = io::read_csv(buf);
    REQUIRE(back.size() == t.rows.size());
    for (size_t i = 0; i < back.size(); ++i) CHECK(std::memcmp(&back[i], &t.rows[i], sizeof back[i]) == 0);
  }
}

TEST_CASE("CSV layout") {
  const double grid[] = {0.5, 1.0};
  const auto t = sweep(make(Model::scarf, 0, 0), grid, Backend::analytic);
  std::stringstream buf;
  io::write_csv(t, buf);
  const std::string text = buf.str();
  CHECK(text.rfind("E,T,R_l,R_r,A_l,A_r\n0.5,", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
}

TEST_CASE("malformed CSV is rejected") {
  std::stringstream wrong_header("E,T\n1,2\n");
  CHECK_THROWS_AS(io::read_csv(wrong_header), Error);
  std::stringstream short_row("E,T,R_l,R_r,A_l,A_r\n1,2,3\n");
  CHECK_THROWS_AS(io::read_csv(short_row), Error);
  std::stringstream junk("E,T,R_l,R_r,A_l,A_r\n1,2,3,4,5,x\n");
  CHECK_THROWS_AS(io::read_csv(junk), Error);
}

TEST_CASE("JSON document carries the sweep and its classification") {
  const auto t = sweep(make(Model::scarf, 4, 2), linear_grid(0.1, 12.0, 20), Backend::analytic);
  const auto rep = detect_anomalies(t);
  const auto doc = io::sweep_document(t, rep, {{"n", 20}});
  CHECK(doc["backend"] == "analytic");
  CHECK(doc["handedness"] == "left_absorptive");
  CHECK(doc["rows"].size() == 20);
  CHECK(doc["grid"].size() == 20);
  CHECK(doc["spec"]["model"] == "scarf");
  CHECK(doc["spec"]["V2"] == 2.0);
  CHECK(doc["config"]["n"] == 20);
  CHECK(doc["anomalies"]["physical_left"] == true);
  CHECK(doc["anomalies"]["intervals"]["R_r"].size() == 1);
  CHECK(doc["rows"][3]["T"].get<double>() == t.rows[3].T);
  CHECK(doc.contains("reciprocity_residual"));
}

TEST_CASE("plot script references the table") {
  std::stringstream buf;
  io::write_plot_script("fig1.csv", "title", buf);
  const std::string text = buf.str();
  CHECK(text.find("'fig1.csv' using 1:2") != std::string::npos);
  CHECK(text.find("using 1:3") != std::string::npos);
  CHECK(text.find("using 1:4") != std::string::npos);
  CHECK(text.find("1.0 with lines dashtype 2") != std::string::npos);
}

TEST_CASE("unwritable path reports an I/O error") {
  try {
    io::write_file("/nonexistent-dir/out.csv", "x");
    FAIL("write succeeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}
