#pragma once

// The four command verbs. Each returns a process exit code and writes its
// report to `out`; failures go to `err`.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "angle_rigidity/angle_rigidity.hpp"
#include "angle_rigidity/io/csv.hpp"
#include "angle_rigidity/io/report.hpp"
#include "angle_rigidity/io/scenario.hpp"
#include "angle_rigidity/selftest.hpp"

namespace angle_rigidity::cli {

namespace fs = std::filesystem;
using io::Report;

enum ExitCode : int { kOk = 0, kFailure = 1, kValidation = 2, kNumerical = 3, kParse = 4 };

struct Options {
  std::string scenario;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed_override;
  std::optional<io::AngleSource> source;  // indexset only
};

// Maps library errors onto exit codes.
inline int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const BlowUp& e) {
    err << "numerical failure at t=" << io::format_number(e.time()) << ": " << e.what() << '\n';
    return kNumerical;
  } catch (const NotAnEquilibrium& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const Error& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

namespace detail {

inline io::Scenario load(const Options& opt) {
  io::Scenario sc = io::load_scenario(opt.scenario);
  if (opt.seed_override) io::apply_seed_override(sc, *opt.seed_override);
  return sc;
}

inline Report header(const io::Scenario& sc, const std::string& command) {
  Report r;
  r["command"] = command;
  r["scenario"] = sc.name;
  r["n"] = sc.graph.vertex_count();
  r["edges"] = sc.graph.edge_count();
  if (sc.perturbation) r["seed"] = sc.perturbation->seed;
  return r;
}

inline Report triangle_json(const std::optional<std::array<Vertex, 3>>& tri) {
  if (!tri) return nullptr;
  return {(*tri)[0], (*tri)[1], (*tri)[2]};
}

inline void emit(const Report& r, const std::optional<std::string>& dir, const std::string& stem, std::ostream& out) {
  const std::string text = io::text_report(r);
  out << text;
  if (!dir) return;
  fs::create_directories(*dir);
  io::write_file((fs::path(*dir) / (stem + ".txt")).string(), text);
  io::write_file((fs::path(*dir) / (stem + ".json")).string(), r.dump(2) + "\n");
}

inline std::string plot_script(int n) {
  std::ostringstream gp;
  gp << "set datafile separator ','\n"
     << "set key autotitle columnhead\n"
     << "set terminal pngcairo size 900,600\n"
     << "set output 'cost.png'\n"
     << "set logscale y\n"
     << "set xlabel 't'\n"
     << "plot 'cost.csv' using 1:2 with lines, '' using 1:4 with lines\n"
     << "unset logscale y\n"
     << "set output 'trajectory.png'\n"
     << "set size ratio -1\n"
     << "set xlabel 'x'\n"
     << "set ylabel 'y'\n"
     << "plot ";
  for (int i = 1; i <= n; ++i) {
    gp << (i > 1 ? ", " : "") << "'trajectory.csv' using " << 2 * i << ':' << 2 * i + 1 << " with lines";
  }
  gp << '\n';
  return gp.str();
}

}  // namespace detail

inline int cmd_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const io::Scenario sc = detail::load(opt);
        const Graph& g = sc.graph;
        const Configuration& p = sc.configuration;
        Report r = detail::header(sc, "analyze");

        r["distance"] = io::rigidity_json(is_infinitesimally_distance_rigid(g, p));
        r["bearing"] = io::rigidity_json(is_infinitesimally_bearing_rigid(g, p));
        r["angle_full"] = io::rigidity_json(is_infinitesimally_angle_rigid(g, p, full_angle_set(g)));

        const AngleIndexSet t = io::resolve_angle_set(sc);
        Report angle = io::rigidity_json(is_infinitesimally_angle_rigid(g, p, t));
        angle["source"] = std::string(to_string(t.provenance()));
        angle["size"] = t.size();
        r["angle"] = angle;

        const auto nd = is_strongly_nondegenerate(g, p);
        r["strongly_nondegenerate"] = nd.strongly_nondegenerate;
        r["degenerate_triangle"] = detail::triangle_json(nd.witness);

        const FormationSpec spec(g, p, t, sc.maneuver, sc.laman);
        const auto a1 = spec.laman_witness_check();
        Report assumption;
        assumption["checked"] = a1.checked;
        assumption["holds"] = a1.holds();
        if (a1.checked) {
          assumption["edges_subset"] = a1.edges_subset;
          assumption["nondegenerate"] = a1.nondegenerate;
          assumption["degenerate_triangle"] = detail::triangle_json(a1.degenerate_triangle);
        }
        r["laman_assumption"] = assumption;

        detail::emit(r, opt.out, "analysis", out);
        return kOk;
      },
      err);
}

inline int cmd_indexset(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const io::Scenario sc = detail::load(opt);
        const io::AngleSource source = opt.source.value_or(sc.angle_set.source);
        const AngleIndexSet t = io::resolve_angle_set(sc, source);
        const int n = sc.graph.vertex_count();
        Report r = detail::header(sc, "indexset");
        r["source"] = std::string(to_string(t.provenance()));
        r["size"] = t.size();
        switch (source) {
          case io::AngleSource::kLamanMinimal: r["expected_size"] = 2 * n - 4; break;
          case io::AngleSource::kLamanGlobal:
            if (n >= 4) r["expected_size"] = 3 * n - 7;
            break;
          case io::AngleSource::kAlgorithm1:
            if (sc.graph.edge_count() == 2 * n - 3) r["expected_size"] = 3 * n - 6;
            break;
          case io::AngleSource::kTriangleFormation:
            r["expected_size"] = 2 * static_cast<int>(triangles(sc.graph).size());
            break;
          default: break;
        }
        r["angle_rigid"] = is_infinitesimally_angle_rigid(sc.graph, sc.configuration, t).verdict;
        r["triples"] = io::triples_json(t);

        if (opt.out) {
          fs::create_directories(*opt.out);
          std::ostringstream csv;
          csv << "apex,j,k\n";
          for (const auto& tri : t) csv << tri.apex << ',' << tri.j << ',' << tri.k << '\n';
          io::write_file((fs::path(*opt.out) / "triples.csv").string(), csv.str());
        }
        detail::emit(r, opt.out, "indexset", out);
        return kOk;
      },
      err);
}

inline int cmd_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        if (!opt.out) throw ValidationError("simulate needs --out");
        const io::Scenario sc = detail::load(opt);
        const FormationSpec spec = io::formation_spec(sc);
        const Configuration p0 = io::initial_configuration(sc);
        const SimulationResult res = simulate(spec, p0, sc.integrator);

        const fs::path dir(*opt.out);
        fs::create_directories(dir);
        {
          std::ostringstream traj, cost;
          io::write_trajectory_csv(traj, res);
          io::write_cost_csv(cost, res);
          io::write_file((dir / "trajectory.csv").string(), traj.str());
          io::write_file((dir / "cost.csv").string(), cost.str());
          io::write_file((dir / "plot.gp").string(), detail::plot_script(spec.agent_count()));
        }

        Report r = detail::header(sc, "simulate");
        r["angle_source"] = std::string(to_string(spec.angles().provenance()));
        r["angle_set_size"] = spec.angles().size();
        r["step"] = sc.integrator.step;
        r["t_final"] = sc.integrator.t_final;
        r["t_end"] = res.times.back();
        r["samples"] = res.times.size();
        r["converged_early"] = res.converged_early;
        r["V_F_initial"] = res.cost_F.front();
        r["V_F_final"] = res.cost_F.back();
        r["V_initial"] = res.cost_total.front();
        r["V_final"] = res.cost_total.back();
        r["decay_rate"] = res.decay_rate;

        double centroid_drift = 0.0;
        for (const auto& c : res.centroids) centroid_drift = std::max(centroid_drift, (c - res.centroids.front()).norm());
        r["centroid_drift"] = centroid_drift;
        r["scale_initial"] = res.scales.front();
        r["scale_final"] = res.scales.back();

        const Membership& m = res.final_membership;
        Report mem;
        mem["in_EF"] = m.in_EF;
        mem["max_angle_residual"] = m.max_residual;
        mem["in_shape_class"] = m.in_shape_class;
        mem["shape_residual"] = m.fit.residual;
        mem["shape_scale"] = m.fit.scale;
        mem["shape_reflected"] = m.fit.reflected;
        if (m.in_EM) mem["in_EM"] = *m.in_EM;
        r["final"] = mem;
        if (res.final_displacement_error) r["displacement_error"] = *res.final_displacement_error;

        r["files"] = {"trajectory.csv", "cost.csv", "plot.gp", "summary.txt", "summary.json"};
        detail::emit(r, opt.out, "summary", out);
        return kOk;
      },
      err);
}

inline int cmd_selftest(std::ostream& out) {
  int failed = 0;
  const auto suites = selftest::run_all();
  for (const auto& s : suites) {
    out << (s.passed() ? "PASS " : "FAIL ") << s.name << " checks=" << s.checks << " failures=" << s.failures
        << " max_error=" << io::format_number(s.max_error) << '\n';
    failed += s.passed() ? 0 : 1;
  }
  out << "suites=" << suites.size() << " passed=" << suites.size() - failed << " failed=" << failed << '\n';
  return failed == 0 ? kOk : kFailure;
}

using Command = int (*)(const Options&, std::ostream&, std::ostream&);

// Runs one command over several scenarios in parallel. Each scenario writes
// into <out>/<scenario stem>; console output is replayed in input order.
// The exit code is the largest one seen.
inline int run_batch(Command command, const Options& base, const std::vector<std::string>& scenarios,
                     std::ostream& out, std::ostream& err) {
  struct Captured {
    int code = 0;
    std::string out, err;
  };
  std::vector<std::future<Captured>> jobs;
  for (const auto& path : scenarios) {
    Options opt = base;
    opt.scenario = path;
    if (base.out) opt.out = (fs::path(*base.out) / fs::path(path).stem()).string();
    jobs.push_back(std::async(std::launch::async, [command, opt] {
      std::ostringstream o, e;
      Captured c;
      c.code = command(opt, o, e);
      c.out = o.str();
      c.err = e.str();
      return c;
    }));
  }
  int worst = kOk;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Captured c = jobs[k].get();
    out << "# " << scenarios[k] << '\n' << c.out;
    err << c.err;
    worst = std::max(worst, c.code);
  }
  return worst;
}

}  // namespace angle_rigidity::cli
