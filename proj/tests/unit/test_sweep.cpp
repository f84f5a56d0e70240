#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "omx/error.hpp"
#include "omx/parallel.hpp"
#include "omx/sweep.hpp"

using namespace omx;

namespace {

SystemParams bistable_point() {
  SystemParams p;
  p.delta_c = 1.2;
  p.delta_d = 1.2;
  p.kappa = 0.1;
  return p;
}

}  // namespace

TEST_CASE("parameter names round-trip") {
  for (const char* name : {"delta_c", "delta_d", "eta", "e_l", "kappa", "chi", "g", "gamma_a"}) {
    CHECK(std::string(to_string(parse_swept_param(name))) == name);
  }
  CHECK_THROWS_AS((void)parse_swept_param("etaa"), InvalidParams);
  CHECK_THROWS_AS((void)parse_detuning_tie("sideways"), InvalidParams);
  CHECK_THROWS_AS((void)parse_direction("left"), InvalidParams);
}

TEST_CASE("linspace hits both ends") {
  const auto v = linspace({-2.0, 2.0}, 801);
  CHECK(v.size() == 801);
  CHECK(v.front() == -2.0);
  CHECK(v.back() == 2.0);
  CHECK(v[400] == doctest::Approx(0.0));
  CHECK_THROWS_AS((void)linspace({0, 1}, 1), InvalidParams);
}

TEST_CASE("parallel_for visits each index once and rethrows") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; }, 7);
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) { if (i == 42) throw NumericalError("x"); }, 4),
                  NumericalError);
}

TEST_CASE("sweep_detuning: weak nonlinearity is single valued") {
  const auto trace = sweep_detuning(SystemParams{}, {-2.0, 2.0}, 801, DetuningTie::equal);
  CHECK(trace.values.size() == 801);
  for (const auto& set : trace.root_sets) {
    CHECK(set.branches.size() == 1);
    CHECK(set.params_snapshot.delta_d == set.params_snapshot.delta_c);
  }
  const auto opposite = sweep_detuning(SystemParams{}, {-2.0, 2.0}, 11, DetuningTie::opposite);
  for (const auto& set : opposite.root_sets) CHECK(set.params_snapshot.delta_d == -set.params_snapshot.delta_c);
}

TEST_CASE("sweep results do not depend on the worker count") {
  ::setenv("OMX_THREADS", "1", 1);
  const auto serial = sweep_detuning(bistable_point(), {-2.0, 2.0}, 201, DetuningTie::equal);
  ::setenv("OMX_THREADS", "8", 1);
  const auto parallel = sweep_detuning(bistable_point(), {-2.0, 2.0}, 201, DetuningTie::equal);
  ::unsetenv("OMX_THREADS");
  REQUIRE(serial.root_sets.size() == parallel.root_sets.size());
  for (std::size_t i = 0; i < serial.root_sets.size(); ++i) {
    REQUIRE(serial.root_sets[i].branches.size() == parallel.root_sets[i].branches.size());
    for (std::size_t k = 0; k < serial.root_sets[i].branches.size(); ++k) {
      CHECK(serial.root_sets[i].branches[k].n == parallel.root_sets[i].branches[k].n);
    }
  }
}

TEST_CASE("sweep_drive: linear cavity has no hysteresis") {
  SystemParams p;
  p.kappa = 0.0;
  p.chi = 0.0;
  const auto trace = sweep_drive(p, {0.0, 3.0}, 301, SweepDirection::both);
  CHECK(trace.up_path == trace.down_path);
  CHECK(trace.jumps.empty());
  CHECK(trace.hysteresis_area() == 0.0);
}

TEST_CASE("sweep_drive: weak nonlinearity is single valued") {
  const auto trace = sweep_drive(SystemParams{}, {0.0, 3.0}, 301, SweepDirection::both);
  CHECK(trace.up_path == trace.down_path);
  CHECK(trace.jumps.empty());
}

TEST_CASE("sweep_drive: hysteresis loop at the bistable point") {
  const auto p = bistable_point();
  const auto trace = sweep_drive(p, {0.0, 3.0}, 601, SweepDirection::both);
  const double step = 3.0 / 600.0;
  REQUIRE(trace.jumps.size() == 2);
  for (const auto& j : trace.jumps) {
    const double lo = trace.values[j.index - 1];
    const double hi = trace.values[j.index];
    if (j.direction == SweepDirection::up) {
      CHECK(j.to_n > j.from_n);
      CHECK(std::abs(0.5 * (lo + hi) - 1.9321702925173876) <= step);
    } else {
      CHECK(j.to_n < j.from_n);
      CHECK(std::abs(0.5 * (lo + hi) - 1.4924727751702140) <= step);
    }
  }
  CHECK(trace.hysteresis_area() > 0.0);
  // Paths coincide where a single stable branch exists.
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    int stable = 0;
    for (const auto& b : trace.root_sets[i].branches) stable += b.stability == Stability::stable;
    if (stable == 1) CHECK(trace.up_path[i] == trace.down_path[i]);
  }
}

TEST_CASE("property: hysteresis area is non-negative on closed sweeps") {
  for (double dc : {0.5, 0.9, 1.2, 1.6, 2.0}) {
    for (double kappa : {0.0, 0.05, 0.1, 0.2}) {
      auto p = bistable_point();
      p.delta_c = dc;
      p.delta_d = dc;
      p.kappa = kappa;
      const auto trace = sweep_drive(p, {0.0, 4.0}, 401, SweepDirection::both);
      CHECK(trace.hysteresis_area() >= 0.0);
    }
  }
}

TEST_CASE("follow_branches works on other parameters") {
  auto p = bistable_point();
  p.e_l = 1.7;
  const auto trace = follow_branches(p, SweptParam::delta_c, {0.5, 2.5}, 401, SweepDirection::up);
  CHECK(trace.up_path.size() == 401);
  CHECK(trace.down_path.empty());
}

TEST_CASE("bistability_map: (kappa, chi) plane depends on beta only") {
  const auto map = bistability_map(bistable_point(), {SweptParam::kappa, {0.0, 0.2}, 21},
                                   {SweptParam::chi, {0.0, 0.4}, 21});
  for (std::size_t iy = 0; iy < 21; ++iy) {
    for (std::size_t ix = 0; ix < 21; ++ix) {
      const double beta = map.y_values[iy] * map.y_values[iy] + map.x_values[ix];
      const auto& c = map.at(ix, iy);
      CHECK(c.predicate == (beta > 0.0));
      CHECK_FALSE(c.disagrees);
      if (beta > 0.0) CHECK(c.knee_root_count == 3);
    }
  }
}

TEST_CASE("bistability_map: QD coupling axis is monostable at moderate detuning") {
  SystemParams p;
  p.kappa = 0.001;
  p.chi = 0.001;
  const auto map = bistability_map(p, {SweptParam::g, {0.0, 1.0}, 41}, {SweptParam::eta, {0.3, 0.5}, 5});
  for (const auto& c : map.cells) {
    CHECK_FALSE(c.predicate);
    CHECK(c.root_count == 1);
  }
}

TEST_CASE("bistability_map: predicate ignores the drive") {
  const auto map = bistability_map(bistable_point(), {SweptParam::e_l, {0.0, 3.0}, 31},
                                   {SweptParam::delta_c, {-2.0, 2.0}, 41});
  for (std::size_t iy = 0; iy < 41; ++iy) {
    for (std::size_t ix = 1; ix < 31; ++ix) {
      CHECK(map.at(ix, iy).predicate == map.at(0, iy).predicate);
      CHECK(map.at(ix, iy).discriminant == map.at(0, iy).discriminant);
    }
  }
  for (const auto& c : map.cells) CHECK_FALSE(c.disagrees);
}
