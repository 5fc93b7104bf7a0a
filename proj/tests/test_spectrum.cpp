#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dpp/spectrum.hpp"
#include "fixtures.hpp"

using dpp::ContiguousUnits;
using dpp::SpectrumSet;
using dpp::cu_includes;

TEST_CASE("cu_includes") {
  ContiguousUnits a{0, 2}, b{2, 3};
  CHECK_FALSE(cu_includes(a, b));
  CHECK_FALSE(cu_includes(b, a));  // overlapping but incomparable

  CHECK(cu_includes({0, 3}, {0, 3}));
  CHECK(cu_includes({0, 3}, {1, 2}));
  CHECK_FALSE(cu_includes({1, 2}, {0, 3}));
}

TEST_CASE("intersect on run lists") {
  auto s = [](const char* text) { return SpectrumSet::parse(text); };
  CHECK(intersect(s("0-4"), s("2-6")) == s("2-4"));
  CHECK(intersect(s("0-1,3-5"), s("1-3")) == s("1-1,3-3"));
  CHECK(intersect(s("0-2"), s("4-5")).empty());
}

TEST_CASE("maximal runs are the representation") {
  SpectrumSet s = SpectrumSet::parse("0-1,3-5");
  REQUIRE(maximal_runs(s).size() == 2);
  CHECK(maximal_runs(s)[0] == ContiguousUnits{0, 1});
  CHECK(maximal_runs(s)[1] == ContiguousUnits{3, 5});

  CHECK(maximal_runs(SpectrumSet{}).empty());

  SpectrumSet from_units = SpectrumSet::from_units({0, 1, 3, 4, 5});
  CHECK(from_units == s);
}

TEST_CASE("first_fit") {
  SpectrumSet s = SpectrumSet::parse("0-1,3-5");
  CHECK(s.first_fit(3) == ContiguousUnits{3, 5});
  CHECK(s.first_fit(1) == ContiguousUnits{0, 0});
  CHECK_FALSE(s.first_fit(4).has_value());
  CHECK_FALSE(SpectrumSet{}.first_fit(1).has_value());
}

TEST_CASE("subtract and add") {
  CHECK(subtract(SpectrumSet::parse("0-5"), {2, 3}) == SpectrumSet::parse("0-1,4-5"));
  CHECK(add(SpectrumSet::parse("0-1,4-5"), {2, 3}) == SpectrumSet::parse("0-5"));
  CHECK(subtract(SpectrumSet::parse("0-2"), {0, 2}).empty());

  CHECK_THROWS_AS(subtract(SpectrumSet::parse("0-1"), ContiguousUnits{0, 2}), std::logic_error);
  CHECK_THROWS_AS(add(SpectrumSet::parse("0-3"), ContiguousUnits{3, 4}), std::logic_error);
}

TEST_CASE("pair-list form round trips") {
  SpectrumSet s = SpectrumSet::parse("0-1,3-5,9-9");
  auto pairs = s.runs_as_pairs();
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[1] == std::array<dpp::UnitIndex, 2>{3, 5});
  CHECK(SpectrumSet::from_pairs(pairs) == s);
  CHECK(SpectrumSet::from_pairs({}).empty());
  CHECK_THROWS_AS(SpectrumSet::from_pairs({{4, 2}}), std::invalid_argument);
}

TEST_CASE("text round trip") {
  for (const char* text : {"", "0-0", "0-1,3-5", "2-4,6-6,9-15"}) {
    SpectrumSet s = SpectrumSet::parse(text);
    CHECK(SpectrumSet::parse(s.to_string()) == s);
  }
  CHECK(SpectrumSet::parse("3") == SpectrumSet::parse("3-3"));
  CHECK_THROWS_AS(SpectrumSet::parse("5-2"), std::invalid_argument);
}

TEST_CASE("intersect matches per-unit membership") {
  std::mt19937_64 rng(20240601);
  for (int omega : {7, 16, 64}) {
    for (int i = 0; i < 2000; ++i) {
      SpectrumSet a = fixtures::random_set(rng, omega);
      SpectrumSet b = fixtures::random_set(rng, omega);
      std::uint64_t expect = fixtures::mask_from_set(a) & fixtures::mask_from_set(b);
      CHECK(fixtures::mask_from_set(intersect(a, b)) == expect);
      CHECK(intersect(a, b) == intersect(b, a));
      CHECK(intersect(a, a) == a);
      SpectrumSet c = fixtures::random_set(rng, omega);
      CHECK(intersect(intersect(a, b), c) == intersect(a, intersect(b, c)));
    }
  }
}

TEST_CASE("subtract then add restores the set") {
  std::mt19937_64 rng(42);
  int done = 0;
  while (done < 2000) {
    SpectrumSet s = fixtures::random_set(rng, 32);
    if (s.empty()) continue;
    // pick a random sub-block of a random run
    const auto& runs = s.runs();
    const auto& r = runs[rng() % runs.size()];
    std::uniform_int_distribution<int> in_run(r.lo, r.hi);
    int a = in_run(rng), b = in_run(rng);
    ContiguousUnits cu{std::min(a, b), std::max(a, b)};
    CHECK(add(subtract(s, cu), cu) == s);
    ++done;
  }
}

TEST_CASE("first_fit properties") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    SpectrumSet s = fixtures::random_set(rng, 24);
    int k = static_cast<int>(rng() % 6) + 1;
    auto ff = s.first_fit(k);

    bool any_run_fits = false;
    for (const auto& r : s.runs()) any_run_fits |= r.size() >= k;
    CHECK(ff.has_value() == any_run_fits);

    if (ff) {
      CHECK(ff->size() == k);
      CHECK(s.contains(*ff));
      for (int lo = 0; lo < ff->lo; ++lo)
        CHECK_FALSE(s.contains({lo, lo + k - 1}));
    }
  }
}

TEST_CASE("cu inclusion is a partial order") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 5000; ++i) {
    auto a = fixtures::random_cu(rng, 16);
    auto b = fixtures::random_cu(rng, 16);
    auto c = fixtures::random_cu(rng, 16);
    CHECK(cu_includes(a, a));
    if (cu_includes(a, b) && cu_includes(b, a)) CHECK(a == b);
    if (cu_includes(a, b) && cu_includes(b, c)) CHECK(cu_includes(a, c));
  }
}
