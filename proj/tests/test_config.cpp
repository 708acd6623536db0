#include "doctest.h"
#include "tonguelock/config.hpp"

using namespace tonguelock;

TEST_SUITE_BEGIN("config");

TEST_CASE("minimal file gets all defaults") {
  const RunConfig cfg = parse_config("fiber.kind=arnold\n", {});
  CHECK(cfg.fiber_kind == "arnold");
  CHECK(cfg.base_kind == "rotation");
  CHECK(cfg.base_omega == std::vector<double>{0.6180339887498949});
  CHECK(cfg.fiber_tau == 0.0);
  CHECK(cfg.command_n == 4096);
  CHECK(cfg.budget_n_list == std::vector<long>{512, 2048, 8192});
}

TEST_CASE("fiber.kind is required") {
  CHECK_THROWS_AS(parse_config("", {}), ConfigError);
  try {
    parse_config("fiber.tau=0.2\n", {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "fiber.kind");
  }
}

TEST_CASE("flags override file values") {
  const RunConfig cfg =
      parse_config("fiber.kind=arnold\nfiber.tau=0.1\n", {"fiber.tau=0.2"});
  CHECK(cfg.fiber_tau == 0.2);
}

TEST_CASE("unknown keys are hard errors naming key and line") {
  try {
    parse_config("fiber.kind=arnold\nfiber.typo=1\n", {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "fiber.typo");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("unknown key") != std::string::npos);
  }
}

TEST_CASE("malformed numbers name the key and line") {
  try {
    parse_config("fiber.kind=arnold\n\n# comment\nfiber.tau=abc\n", {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "fiber.tau");
    CHECK(e.line() == 4);
  }
}

TEST_CASE("alpha range guard names fiber.alpha") {
  try {
    parse_config("fiber.kind=arnold\nfiber.alpha=1.5\n", {});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "fiber.alpha");
  }
}

TEST_CASE("comments and blank lines are ignored") {
  const RunConfig cfg = parse_config(
      "# a comment\n\nfiber.kind=pfamily  # trailing comment\n  \n", {});
  CHECK(cfg.fiber_kind == "pfamily");
}

TEST_CASE("format round trips exactly") {
  RunConfig cfg = parse_config(
      "fiber.kind=arnold\n"
      "fiber.tau=0.12345678901234567\n"
      "fiber.q=0.5; 1,-0.25\n"
      "base.kind=skewshift\n"
      "base.alpha=0.3\n"
      "budget.eps_list=0.03,0.007\n"
      "command.seed=42\n",
      {});
  const RunConfig again = parse_config(format_config(cfg), {});
  CHECK(again == cfg);
}

TEST_CASE("builders construct the configured objects") {
  const RunConfig cfg = parse_config(
      "fiber.kind=arnold\nfiber.alpha=0.5\nfiber.beta=0.25\n"
      "base.kind=rotation\nbase.omega=0.5,0.25\n",
      {});
  const BaseMap base = cfg.make_base();
  CHECK(base.kind() == BaseMap::Kind::Rotation);
  CHECK(base.dimension() == 2);
  const FiberFamily fam = cfg.make_fiber();
  CHECK(fam.kind() == FiberFamily::Kind::Arnold);
  CHECK(fam.alpha() == 0.5);
  const Budget b = cfg.make_budget();
  CHECK(b.n_list == cfg.budget_n_list);
}

TEST_CASE("output directory must exist and be writable") {
  CHECK_THROWS_AS(
      parse_config("fiber.kind=arnold\ncommand.out=/nonexistent-dir/x/scan\n", {}),
      ConfigError);
  CHECK_NOTHROW(parse_config("fiber.kind=arnold\ncommand.out=/tmp/tl_scan\n", {}));
}

TEST_CASE("triglift config builds a base-forced trig lift") {
  const RunConfig cfg = parse_config(
      "fiber.kind=triglift\nfiber.p=0; 0,0.05\nfiber.beta=0.1\nfiber.tau=0.2\n",
      {});
  const FiberFamily fam = cfg.make_fiber();
  CHECK(fam.kind() == FiberFamily::Kind::TrigLift);
  // displacement at phase where q = cos = 1: tau + beta + 0.05 sin(2 pi w)
  CHECK(fam.lift_eval_phase(0.0, 0.25) ==
        doctest::Approx(0.25 + 0.2 + 0.1 + 0.05).epsilon(1e-12));
}

TEST_SUITE_END();
