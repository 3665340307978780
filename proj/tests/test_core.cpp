#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symgen/core.hpp"

using namespace symgen;

TEST_CASE("stochastic_round: integers pass through") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) CHECK(stochastic_round(3.0, rng) == 3);
  CHECK(stochastic_round(0.0, rng) == 0);
}

TEST_CASE("stochastic_round: expectation equals input") {
  Rng rng(2);
  double sum = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(stochastic_round(2.25, rng));
  double mean = sum / n;
  CHECK(mean > 2.24);
  CHECK(mean < 2.26);
}

TEST_CASE("stochastic_round: support is {floor, floor+1}") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    int64_t v = stochastic_round(0.999, rng);
    CHECK((v == 0 || v == 1));
  }
  CHECK_THROWS_AS(stochastic_round(-0.5, rng), Error);
}

TEST_CASE("extract_answer") {
  CHECK(extract_answer("thinking... <answer>56</answer>") == "56");
  CHECK(extract_answer("<answer>a</answer><answer>b</answer>") == "b");
  CHECK(extract_answer("no tags here") == "no tags here");
  CHECK(extract_answer("  padded  ") == "padded");
  CHECK(extract_answer("<answer> spaced </answer>") == "spaced");
  CHECK(extract_answer("<answer>open only") == "<answer>open only");
  CHECK(extract_answer("<answer>x</answer> then <answer>unclosed") == "x");
}

TEST_CASE("difficulty knob schedules are monotone in level") {
  DifficultyKnob knob;
  knob.linear("count", 3, 1.5).geometric("scale", 2, 1.4, false);
  for (double l = 0; l < 6; l += 0.5) {
    CHECK(knob.raw("count", l + 0.5) >= knob.raw("count", l));
    CHECK(knob.raw("scale", l + 0.5) >= knob.raw("scale", l));
  }
  CHECK(knob.raw("count", 0) == 3.0);
  CHECK(knob.raw("count", 2) == 6.0);
  CHECK_THROWS_AS(knob.raw("nope", 0), Error);

  // Integer resolution is stochastic rounding, never truncation.
  Rng rng(4);
  double sum = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i) sum += static_cast<double>(knob.resolve_int("count", 1, rng));
  CHECK(sum / n > 4.45);
  CHECK(sum / n < 4.55);
}

TEST_CASE("example json round-trip") {
  TaskExample ex;
  ex.task_name = "demo";
  ex.level = 1.5;
  ex.seed = 99;
  ex.prompt = "p";
  ex.answer = "a";
  ex.cot = "step";
  ex.balancing_key = "k";
  ex.payload = Json{{"x", 1}};
  TaskExample back = TaskExample::from_json(ex.to_json());
  CHECK(back.task_name == ex.task_name);
  CHECK(back.level == ex.level);
  CHECK(back.seed == ex.seed);
  CHECK(back.prompt == ex.prompt);
  CHECK(back.answer == ex.answer);
  CHECK(back.cot == ex.cot);
  CHECK(back.balancing_key == ex.balancing_key);
  CHECK(back.payload == ex.payload);
  CHECK(ex.to_json() == TaskExample::from_json(ex.to_json()).to_json());
}

TEST_CASE("budget checkpoint aborts hot loops") {
  Budget b = Budget::after(std::chrono::milliseconds(30));
  auto t0 = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(
      [&] {
        while (true) b.checkpoint();
      }(),
      TimeoutError);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  CHECK(ms >= 25);
  CHECK(ms < 300);
}
