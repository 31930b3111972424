#include <sstream>

#include <gtest/gtest.h>

#include "angle_rigidity/io/csv.hpp"
#include "angle_rigidity/io/report.hpp"
#include "angle_rigidity/io/scenario.hpp"

using namespace angle_rigidity;

namespace {

const char* kMinimal = R"({
  "schema_version": 1,
  "graph": {"n": 3, "edges": [[1,2],[1,3],[2,3]]},
  "configuration": {"points": [[0,0],[1,0],[0.3,0.8]]}
})";

std::string with(const std::string& graph, const std::string& rest) {
  return R"({"schema_version": 1, "graph": )" + graph + rest + "}";
}

const std::string kTri = R"({"n": 3, "edges": [[1,2],[1,3],[2,3]]})";
const std::string kPts = R"(, "configuration": {"points": [[0,0],[1,0],[0.3,0.8]]})";

template <class E>
std::string message_of(const std::string& text) {
  try {
    io::parse_scenario(text);
  } catch (const E& e) {
    return e.what();
  }
  return "<no error>";
}

}  // namespace

TEST(Numbers, ShortestRoundTrip) {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, 1.0}) {
    EXPECT_EQ(io::parse_number(io::format_number(x)), x);
  }
  EXPECT_EQ(io::format_number(0.1), "0.1");
  EXPECT_THROW(io::parse_number("1.5x"), ParseError);
  EXPECT_THROW(io::parse_number(""), ParseError);
}

TEST(Csv, RoundTripRecomputesCost) {
  const LamanConstruction fan{{{3, 1, 2}, {4, 1, 3}, {5, 1, 4}}};
  const FormationSpec spec(build_laman(fan), regular_polygon(5));
  IntegratorConfig cfg;
  cfg.t_final = 5.0;
  const SimulationResult r = simulate(spec, perturb(spec.target(), 0.5, 2), cfg);
  std::stringstream traj, cost;
  io::write_trajectory_csv(traj, r);
  io::write_cost_csv(cost, r);
  const io::CsvTable tt = io::read_csv(traj);
  const io::CsvTable ct = io::read_csv(cost);
  EXPECT_EQ(tt.header.size(), 11u);
  EXPECT_EQ(tt.header[1], "p1x");
  EXPECT_EQ(ct.header, io::split_csv_line(io::kCostHeader));
  ASSERT_EQ(tt.rows.size(), ct.rows.size());
  ASSERT_EQ(tt.rows.size(), r.times.size());
  for (std::size_t s = 0; s < tt.rows.size(); ++s) {
    Eigen::VectorXd x(10);
    for (int c = 0; c < 10; ++c) x(c) = tt.rows[s][c + 1];
    EXPECT_EQ(tt.rows[s][0], ct.rows[s][0]);
    EXPECT_NEAR(cost_VF(spec, Configuration(x)), ct.rows[s][1], 1e-9);
    EXPECT_EQ(x, r.positions[s].stacked());
  }
}

TEST(Csv, RejectsRaggedRows) {
  std::stringstream ss("a,b\n1,2\n3\n");
  EXPECT_THROW(io::read_csv(ss), ParseError);
}

TEST(Scenario, Minimal) {
  const io::Scenario sc = io::parse_scenario(kMinimal);
  EXPECT_EQ(sc.graph.edge_count(), 3);
  EXPECT_EQ(sc.configuration.point(3), Vector2(0.3, 0.8));
  EXPECT_EQ(sc.angle_set.source, io::AngleSource::kTriangleFormation);
  EXPECT_FALSE(sc.maneuver.has_value());
  EXPECT_EQ(io::resolve_angle_set(sc).size(), 2u);
  EXPECT_EQ(io::initial_configuration(sc).stacked(), sc.configuration.stacked());
}

TEST(Scenario, Generator) {
  const io::Scenario sc = io::parse_scenario(
      with(R"({"n": 5, "edges": [[1,2],[1,3],[1,4],[1,5],[2,3],[3,4],[4,5]]})",
           R"(, "configuration": {"generator": "regular_polygon", "radius": 2,
                "perturbation": {"amplitude": 0.5, "seed": 3}},
              "maneuver": {"leaders": [3,4], "displacement": [-0.5, 0]},
              "laman": [[3,1,2],[4,1,3],[5,1,4]],
              "integrator": {"t_final": 10})"));
  EXPECT_NEAR(sc.configuration.point(5).x(), 2.0, 1e-15);
  EXPECT_EQ(sc.perturbation->seed, 3u);
  EXPECT_EQ(sc.integrator.t_final, 10.0);
  EXPECT_EQ(sc.integrator.step, 1e-3);
  EXPECT_EQ(io::initial_configuration(sc).stacked(), perturb(sc.configuration, 0.5, 3).stacked());
  io::Scenario copy = sc;
  io::apply_seed_override(copy, 8);
  EXPECT_EQ(copy.perturbation->seed, 8u);
  EXPECT_EQ(io::resolve_angle_set(sc, io::AngleSource::kLamanGlobal).size(), 8u);
  EXPECT_NO_THROW(io::formation_spec(sc));
}

TEST(Scenario, SyntaxAndTypeErrorsAreParseErrors) {
  EXPECT_THROW(io::parse_scenario("{\"schema_version\": 1,"), ParseError);
  EXPECT_THROW(io::parse_scenario("[1,2]"), ParseError);
  EXPECT_NE(message_of<ParseError>(with(R"({"n": "five", "edges": []})", kPts)).find("graph.n"), std::string::npos);
  EXPECT_NE(message_of<ParseError>(with(R"({"n": 3, "edges": [[1,2,3]]})", kPts)).find("graph.edges[0]"),
            std::string::npos);
  EXPECT_THROW(io::parse_scenario(R"({"graph": {"n": 3, "edges": []}})"), ParseError);
}

TEST(Scenario, SemanticErrorsAreValidationErrors) {
  const std::string msg =
      message_of<ValidationError>(with(R"({"n": 5, "edges": [[1,2],[0,7]]})", R"(, "configuration": {"generator": "regular_polygon"})"));
  EXPECT_NE(msg.find("(0,7)"), std::string::npos) << msg;
  EXPECT_THROW(io::parse_scenario(with(kTri, R"(, "configuration": {})")), ValidationError);
  EXPECT_THROW(io::parse_scenario(with(kTri, R"(, "configuration": {"points": [[0,0],[1,0],[0,1]], "generator": "regular_polygon"})")),
               ValidationError);
  EXPECT_THROW(io::parse_scenario(with(kTri, R"(, "configuration": {"points": [[0,0],[1,0]]})")), ValidationError);
  EXPECT_THROW(io::parse_scenario(R"({"schema_version": 2, "graph": {"n": 3, "edges": []}, "configuration": {"points": [[0,0],[1,0],[0,1]]}})"),
               ValidationError);
  EXPECT_THROW(io::parse_scenario(with(kTri, kPts + R"(, "angle_set": {"source": "magic"})")), ValidationError);
  EXPECT_THROW(io::parse_scenario(with(kTri, kPts + R"(, "laman": [[3,1,4]])")), ValidationError);
  EXPECT_THROW(io::parse_scenario(with(R"({"n": 3, "edges": [[1,2],[1,3]]})", kPts + R"(, "maneuver": {"leaders": [2,3], "displacement": [1,0]})")),
               ValidationError);
  EXPECT_THROW(io::parse_scenario(with(kTri, kPts + R"(, "integrator": {"step": -1})")), ValidationError);
}

TEST(Scenario, AngleSetResolutionErrors) {
  const io::Scenario explicit_bad = io::parse_scenario(
      with(R"({"n": 3, "edges": [[1,2],[1,3]]})", kPts + R"(, "angle_set": {"source": "explicit", "triples": [[2,1,3]]})"));
  EXPECT_THROW(io::resolve_angle_set(explicit_bad), ValidationError);
  const io::Scenario no_laman = io::parse_scenario(with(kTri, kPts + R"(, "angle_set": {"source": "laman_minimal"})"));
  EXPECT_THROW(io::resolve_angle_set(no_laman), ValidationError);
  const io::Scenario flexible = io::parse_scenario(
      with(R"({"n": 3, "edges": [[1,2],[2,3]]})", kPts + R"(, "angle_set": {"source": "algorithm1"})"));
  EXPECT_THROW(io::resolve_angle_set(flexible), NotInfinitesimallyAngleRigid);
}

TEST(Report, FlattensNestedKeys) {
  io::Report r;
  r["a"] = 1;
  r["b"]["c"] = true;
  r["b"]["d"] = 0.1;
  r["list"] = {1, 2, 3};
  r["pairs"] = io::Report::array({io::Report::array({1, 2}), io::Report::array({3, 4})});
  r["none"] = nullptr;
  EXPECT_EQ(io::text_report(r), "a = 1\nb.c = true\nb.d = 0.1\nlist = 1 2 3\npairs.0 = 1 2\npairs.1 = 3 4\nnone = none\n");
}
