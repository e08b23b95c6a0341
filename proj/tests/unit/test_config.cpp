#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hemato/config.hpp"
#include "hemato/errors.hpp"

using namespace hemato;

namespace {

std::string error_of(std::string_view text) {
  try {
    parse_config_text(text, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("default configuration carries the reference parameter values") {
  const Config cfg = parse_config_text(default_config_text());
  const auto& p = cfg.params;
  CHECK(p.delta == 0.01);
  CHECK(p.gamma == 0.2);
  CHECK(p.mu == 0.02);
  CHECK(p.k == 2.8);
  const auto& h = dynamic_cast<const HillRates&>(p.r()).params();
  CHECK(h.beta0 == 0.5);
  CHECK(h.G == 0.04);
  CHECK(h.a == 6570);
  CHECK(h.K == 0.0382);
  CHECK(h.r == 7);
  CHECK(cfg.run.grid_step == 0.005);
  CHECK(cfg.run.sim_taus == std::vector<double>{0.5, 1.4, 2.8, 2.9});
}

TEST_CASE("shipped config file matches the built-in default") {
  const auto path = std::filesystem::path(HEMATO_SOURCE_DIR) / "config" / "default.ini";
  const Config a = parse_config(path);
  const Config b = parse_config_text(default_config_text());
  CHECK(a.text == b.text);
}

TEST_CASE("empty file lists every required key") {
  const auto msg = error_of("");
  for (const char* key : {"model.delta", "model.gamma", "model.mu", "model.k", "hill.beta0", "hill.G", "hill.a",
                          "hill.K", "hill.r"})
    CHECK(msg.find(key) != std::string::npos);
}

TEST_CASE("ill-typed value names key and line") {
  std::string text = default_config_text();
  text.replace(text.find("k = 2.8"), 7, "k = fast");
  const auto msg = error_of(text);
  CHECK(msg.find("'k'") != std::string::npos);
  CHECK(msg.find("cfg:6:") != std::string::npos);
}

TEST_CASE("unknown keys and sections are rejected") {
  CHECK(error_of("[model]\nomega = 1\n").find("unknown key 'omega'") != std::string::npos);
  CHECK(error_of("[mackey]\n").find("unknown section") != std::string::npos);
  CHECK(error_of("delta = 1\n").find("outside of any section") != std::string::npos);
  CHECK(error_of("[model]\ndelta = 1\ndelta = 2\n").find("duplicate") != std::string::npos);
}

TEST_CASE("r below one fails model validation") {
  std::string text = default_config_text();
  text.replace(text.find("r = 7"), 5, "r = 0.5");
  const auto msg = error_of(text);
  CHECK(msg.find("r must be") != std::string::npos);
}

TEST_CASE("comments and run options") {
  std::string text = default_config_text() + "max_step = 0.01 ; finer\n";
  const Config cfg = parse_config_text(text);
  CHECK(cfg.run.max_step == 0.01);
}
