#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "olk/config.hpp"
#include "olk/error.hpp"

using namespace olk;

namespace {

std::string key_of(const std::string& text) {
  try {
    parse_space_config(text);
  } catch (const ParseError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("document grammar") {
  const auto doc = parse_config_document(
      "# top\n"
      "a = 1.5\n"
      "b = \"text\"  # trailing\n"
      "c = [1, [2, 3],\n     4]\n"
      "d = { x = 1, y = { z = \"q\" } }\n");
  REQUIRE(doc.size() == 4);
  CHECK(doc[0].second.number == 1.5);
  CHECK(doc[1].second.text == "text");
  CHECK(doc[2].second.items.size() == 3);
  CHECK(doc[2].second.items[1].items[1].number == 3);
  CHECK(doc[3].second.fields[1].second.fields[0].second.text == "q");
}

TEST_CASE("space configs") {
  const auto cfg = parse_space_config(
      "phi = { family = \"power\", p = 3 }\n"
      "omega = { family = \"exp\", lambda = 2 }\n"
      "gamma = \"inf\"\n"
      "tol_norm = 1e-11\n");
  CHECK(cfg.phi.phi.exponent() == 3);
  CHECK(cfg.phi.psi.exponent() == doctest::Approx(1.5));
  CHECK(std::isinf(cfg.gamma));
  CHECK(cfg.omega.total_mass() == doctest::Approx(1.0));
  CHECK(cfg.tol_norm == 1e-11);

  const auto tab = parse_space_config(
      "phi = { family = \"tabulated\", nodes = [[0, 0], [1, 1], [2, 1], [3, 3]] }\n"
      "omega = { family = \"step\", pieces = [[0.5, 2], [0.5, 1]] }\n"
      "gamma = 1\n"
      "delta2 = { u0 = 2, points = 32 }\n");
  CHECK(tab.phi.phi.nodes().size() == 4);
  CHECK(tab.omega.W(1.0) == doctest::Approx(1.5));
  CHECK(tab.delta2.u0_large == 2);
  CHECK(tab.delta2.grid_points == 32);

  const auto tr = parse_space_config(
      "phi = { family = \"log_linear\" }\n"
      "omega = { family = \"truncated\", alpha = 0.4 }\n"
      "gamma = 1\n");
  CHECK(tr.omega.alpha() == doctest::Approx(0.4));
}

TEST_CASE("errors name the offending key") {
  const std::string phi = "phi = { family = \"power\", p = 2 }\n";
  const std::string omega = "omega = { family = \"constant\" }\n";
  CHECK(key_of(phi + omega) == "gamma");
  CHECK(key_of(omega + "gamma = 1\n") == "phi");
  CHECK(key_of(phi + omega + "gamma = 2\n") == "gamma");
  CHECK(key_of(phi + omega + "gamma = 1\nbogus = 3\n") == "bogus");
  CHECK(key_of("phi = { family = \"power\" }\n" + omega + "gamma = 1\n") == "phi.p");
  CHECK(key_of("phi = { family = \"power\", p = 0.5 }\n" + omega + "gamma = 1\n") == "phi");
  CHECK(key_of("phi = { family = \"nope\" }\n" + omega + "gamma = 1\n") == "phi.family");
  CHECK(key_of(phi + "omega = { family = \"constant\", k = 1 }\ngamma = 1\n") == "omega.k");
  CHECK(key_of(phi + omega + "gamma = 1\ntol_root = \"x\"\n") == "tol_root");
  CHECK(key_of(phi + omega + "gamma = 1\ngamma = 1\n") == "gamma");
  CHECK(key_of(phi + omega + "gamma = 1\ndelta2 = { zzz = 1 }\n") == "delta2.zzz");
  CHECK(key_of("phi = { family = \"power\", p = 2 \n").rfind("phi", 0) == 0);
}

TEST_CASE("files") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "olk_test_config";
  fs::create_directories(dir);
  {
    std::ofstream(dir / "s.toml") << "phi = { family = \"power\", p = 2 }\n"
                                     "omega = { family = \"constant\" }\ngamma = 1\n";
    std::ofstream(dir / "x.steps") << "0 0.5 1\n";
  }
  const auto cfg = load_space_config((dir / "s.toml").string());
  CHECK(cfg.gamma == 1.0);
  CHECK(load_steps((dir / "x.steps").string(), 1.0)(0.25) == 1.0);
  try {
    load_space_config((dir / "missing.toml").string());
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  fs::remove_all(dir);
}
