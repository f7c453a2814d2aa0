#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hazmon/rng.hpp"
#include "hazmon/simulation.hpp"

using namespace hazmon;

namespace {

StudySpec tiny_spec() {
  StudySpec spec;
  spec.family.kind = FamilyGrid::Kind::d_family;
  spec.family.parameters = {-1.0, 0.5};
  spec.methods = {Method::durot_sup, Method::durot_tn};
  spec.n = 15;
  spec.replicates = 8;
  spec.bootstrap.bootstrap_b = 25;
  spec.threads = 1;
  return spec;
}

int count_lines(const std::string& s) {
  int lines = 0;
  for (char c : s)
    if (c == '\n') ++lines;
  return lines;
}

}  // namespace

TEST_CASE("study output is a pure function of the spec") {
  StudySpec spec = tiny_spec();
  const PowerTable a = run_power_study(spec);
  const PowerTable b = run_power_study(spec);
  spec.threads = 3;
  const PowerTable c = run_power_study(spec);
  CHECK(a.to_csv() == b.to_csv());
  CHECK(a.to_csv() == c.to_csv());
  CHECK(a.to_json() == c.to_json());
  REQUIRE(a.cells.size() == 4);  // 2 parameters x 2 methods
}

TEST_CASE("study cells recomputed by hand") {
  // One grid point, one method: the study must equal a manual loop drawing
  // each dataset from stream (seed, gridpoint, replicate, plane 0) and
  // testing it with the same bootstrap coordinates.
  StudySpec spec;
  spec.family.parameters = {-1.0};
  spec.methods = {Method::durot_sup};
  spec.n = 20;
  spec.replicates = 6;
  spec.bootstrap.bootstrap_b = 30;
  spec.threads = 2;

  const PowerTable table = run_power_study(spec);
  REQUIRE(table.cells.size() == 1);

  const DFamily model(-1.0);
  const double hi = model.quantile(spec.interval_q);
  BootstrapConfig cfg = spec.bootstrap;
  cfg.threads = 1;
  int rejects = 0;
  for (std::uint32_t r = 0; r < 6; ++r) {
    RngStream rng(cfg.seed, 0, r, 0);
    const Sample s = model.sample(20, rng);
    const TestOutcome out =
        run_test(s, hi, Method::durot_sup, cfg, StreamCoords{0, r});
    rejects += out.reject ? 1 : 0;
  }
  CHECK(table.cells[0].reject_freq ==
        doctest::Approx(rejects / 6.0).epsilon(1e-12));
  CHECK(table.cells[0].excluded == 0);
  CHECK(table.cells[0].method == "durot_sup");
  CHECK(table.cells[0].parameter == -1.0);
  CHECK(table.cells[0].n == 20);
}

TEST_CASE("empirical interval rule uses each replicate's quantile") {
  StudySpec spec;
  spec.family.parameters = {-1.0};
  spec.methods = {Method::durot_sup};
  spec.n = 20;
  spec.replicates = 6;
  spec.bootstrap.bootstrap_b = 30;
  spec.interval_rule = StudySpec::IntervalRule::empirical_quantile;
  spec.threads = 1;

  const PowerTable table = run_power_study(spec);
  int rejects = 0;
  const DFamily model(-1.0);
  BootstrapConfig cfg = spec.bootstrap;
  cfg.threads = 1;
  for (std::uint32_t r = 0; r < 6; ++r) {
    RngStream rng(cfg.seed, 0, r, 0);
    const Sample s = model.sample(20, rng);
    const double hi = s.empirical_quantile(spec.interval_q);
    rejects +=
        run_test(s, hi, Method::durot_sup, cfg, StreamCoords{0, r}).reject;
  }
  CHECK(table.cells[0].reject_freq ==
        doctest::Approx(rejects / 6.0).epsilon(1e-12));
}

TEST_CASE("csv and plot serialization") {
  const PowerTable table = run_power_study(tiny_spec());
  const std::string csv = table.to_csv();
  CHECK(csv.rfind(
            "method,parameter,n,R,B,alpha,interval_q,reject_freq,mc_se,"
            "excluded\n",
            0) == 0);
  CHECK(count_lines(csv) == 5);  // header + 4 cells

  // Spot-check one row against the cell values.
  std::istringstream in(csv);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  char method[32];
  double parameter, alpha, q, freq, se;
  unsigned long nn;
  int r, b, excluded;
  REQUIRE(std::sscanf(row.c_str(), "%31[^,],%lf,%lu,%d,%d,%lf,%lf,%lf,%lf,%d",
                      method, &parameter, &nn, &r, &b, &alpha, &q, &freq, &se,
                      &excluded) == 10);
  const PowerCell& cell = table.cells[0];
  CHECK(cell.method == method);
  CHECK(cell.parameter == parameter);
  CHECK(cell.n == nn);
  CHECK(cell.replicates == r);
  CHECK(cell.bootstrap_b == b);
  CHECK(std::fabs(cell.reject_freq - freq) <= 5e-5);
  CHECK(std::fabs(cell.mc_se - se) <= 5e-5);
  CHECK(cell.excluded == excluded);

  const std::string plot = table.to_plot_csv();
  CHECK(plot.rfind("method,parameter,power\n", 0) == 0);
  CHECK(count_lines(plot) == 5);
}

TEST_CASE("json serialization") {
  const PowerTable table = run_power_study(tiny_spec());
  const nlohmann::json doc = nlohmann::json::parse(table.to_json());
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("kind") == "power");
  REQUIRE(doc.at("cells").size() == 4);
  const auto& c = doc.at("cells").at(0);
  CHECK(c.at("method") == table.cells[0].method);
  CHECK(c.at("parameter").get<double>() == table.cells[0].parameter);
  CHECK(c.at("n").get<std::size_t>() == table.cells[0].n);
  CHECK(c.at("R").get<int>() == table.cells[0].replicates);
  CHECK(c.at("B").get<int>() == table.cells[0].bootstrap_b);
  CHECK(c.at("reject_freq").get<double>() == table.cells[0].reject_freq);
  CHECK(c.at("excluded").get<int>() == 0);
}

TEST_CASE("null-level study guards its parameter region") {
  StudySpec spec = tiny_spec();
  CHECK_THROWS_AS(run_null_level_study(spec), std::invalid_argument);
  spec.family.parameters = {0.0, 1.0};
  const PowerTable table = run_null_level_study(spec);
  CHECK(table.kind == "size");
  const nlohmann::json doc = nlohmann::json::parse(table.to_json());
  CHECK(doc.at("kind") == "size");

  // The bump family's null region needs beta == 0 as well.
  StudySpec bump = tiny_spec();
  bump.family.kind = FamilyGrid::Kind::bump_family;
  bump.family.parameters = {0.0};
  bump.family.beta = 0.3;
  CHECK_THROWS_AS(run_null_level_study(bump), std::invalid_argument);
}

TEST_CASE("excluded replicates are counted per method") {
  // n = 3 with a low quantile: samples with every point beyond the interval
  // endpoint cannot be tested and must be excluded, not crash.
  StudySpec spec;
  spec.family.parameters = {0.0};
  spec.methods = {Method::durot_sup};
  spec.n = 3;
  spec.replicates = 40;
  spec.bootstrap.bootstrap_b = 10;
  spec.interval_q = 0.4;
  spec.threads = 1;
  const PowerTable table = run_power_study(spec);
  const PowerCell& cell = table.cells[0];
  CHECK(cell.excluded > 0);
  CHECK(cell.excluded < spec.replicates);
  const int used = 40 - cell.excluded;
  CHECK(cell.mc_se ==
        doctest::Approx(std::sqrt(cell.reject_freq *
                                  (1.0 - cell.reject_freq) / used))
            .epsilon(1e-12));
}

TEST_CASE("spec validation") {
  StudySpec spec = tiny_spec();
  spec.methods.clear();
  CHECK_THROWS_AS(run_power_study(spec), std::invalid_argument);
  spec = tiny_spec();
  spec.family.parameters.clear();
  CHECK_THROWS_AS(run_power_study(spec), std::invalid_argument);
  spec = tiny_spec();
  spec.n = 1;
  CHECK_THROWS_AS(run_power_study(spec), std::invalid_argument);
  spec = tiny_spec();
  spec.replicates = 0;
  CHECK_THROWS_AS(run_power_study(spec), std::invalid_argument);
  spec = tiny_spec();
  spec.interval_q = 1.0;
  CHECK_THROWS_AS(run_power_study(spec), std::invalid_argument);
}

TEST_CASE("grid models") {
  FamilyGrid grid;
  grid.kind = FamilyGrid::Kind::d_family;
  const auto dm = make_grid_model(grid, -0.5);
  CHECK(dm->hazard(1.0) == DFamily(-0.5).hazard(1.0));

  grid.kind = FamilyGrid::Kind::bump_family;
  grid.beta = 0.3;
  grid.mu = 1.0;
  grid.sigma = 0.2;
  const auto bm = make_grid_model(grid, 0.0);
  CHECK(bm->hazard(1.0) ==
        doctest::Approx(BumpFamily(0.3, 0.0, 1.0, 0.2).hazard(1.0))
            .epsilon(1e-12));
}

TEST_CASE("coupling experiment orders the statistics pathwise") {
  // Convex cumulative hazard (d = 1): the chordized sample Y = phi(X) has a
  // pointwise larger statistic, so violations must be zero.
  const DFamily model(1.0);
  const Interval iv{0.0, model.quantile(0.95)};
  for (double p : {1.0, 2.0}) {
    const CouplingReport rep =
        run_coupling_experiment(model, iv, 30, 60, p, 777);
    CHECK(rep.replicates == 60);
    CHECK(rep.violations == 0);
    CHECK(rep.min_gap >= -1e-12);
    CHECK(rep.max_gap >= rep.min_gap);
    CHECK(rep.mean_gap >= rep.min_gap);
    CHECK(rep.mean_gap <= rep.max_gap);
    CHECK(rep.max_gap > 0.0);  // the chord genuinely moves mass
  }

  // A linear cumulative hazard is its own chord: the coupling is the
  // identity and every gap vanishes to rounding.
  const ConstantHazard expo(1.0);
  const CouplingReport flat =
      run_coupling_experiment(expo, Interval{0.0, 2.0}, 25, 20, 1.0, 101);
  CHECK(flat.violations == 0);
  CHECK(std::fabs(flat.mean_gap) <= 1e-10);
  CHECK(std::fabs(flat.max_gap) <= 1e-9);

  CHECK_THROWS_AS(
      run_coupling_experiment(model, iv, 1, 10, 1.0, 7), std::invalid_argument);
  CHECK_THROWS_AS(
      run_coupling_experiment(model, iv, 30, 0, 1.0, 7), std::invalid_argument);
}
