// cardot: discrete optimal transport with separable costs on R^2, solved
// through the cardinal-flow reformulation. Subcommands ingest measures from
// CSV/JSON files and emit costs, plans, flows and pivot measures.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cardot/cardinal.hpp"
#include "cardot/closedform.hpp"
#include "cardot/costs.hpp"
#include "cardot/instances.hpp"
#include "cardot/io.hpp"
#include "cardot/mcf.hpp"
#include "cardot/oracle.hpp"

namespace {

using namespace cardot;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string cost_spec = "2:2";
  std::string mu_path, nu_path, flow_path;
  std::string output;  // empty = stdout
  std::string format = "csv";
  std::string line_spec;
  std::string dump_network;
  std::uint64_t seed = 0;
  int instances = 200;
  int max_atoms = 8;
};

void write_text(const std::string& path, const std::string& body) {
  if (path.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(path);
  if (!out) throw io::ParseError("cannot open output file '" + path + "'");
  out << body;
}

std::string cost_line(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%#.12g\n", value);
  return buf;
}

nlohmann::json rows_json(std::initializer_list<
                         std::pair<const char*, nlohmann::json>> fields) {
  nlohmann::json j;
  for (const auto& [k, v] : fields) j[k] = v;
  return j;
}

std::string render_flow(const CardinalFlow& f, const std::string& format) {
  if (format == "csv") {
    std::ostringstream ss;
    io::write_flow_csv(f, ss);
    return ss.str();
  }
  nlohmann::json f1 = nlohmann::json::array(), f2 = nlohmann::json::array();
  for (const FlowAtom1& a : f.f1) f1.push_back({a.x1, a.x2, a.y1, a.mass});
  for (const FlowAtom2& a : f.f2) f2.push_back({a.x2, a.y1, a.y2, a.mass});
  return rows_json({{"f1", f1}, {"f2", f2}}).dump(2) + "\n";
}

std::string render_plan(const TransportPlan& p, const std::string& format) {
  if (format == "csv") {
    std::ostringstream ss;
    io::write_plan_csv(p, ss);
    return ss.str();
  }
  nlohmann::json entries = nlohmann::json::array();
  for (const PlanAtom& e : p.entries)
    entries.push_back({e.x1, e.x2, e.y1, e.y2, e.mass});
  return rows_json({{"entries", entries}}).dump(2) + "\n";
}

std::string render_pivot(const PivotMeasure& z, const std::string& format) {
  if (format == "csv") {
    std::ostringstream ss;
    io::write_pivot_csv(z, ss);
    return ss.str();
  }
  nlohmann::json atoms = nlohmann::json::array();
  for (const PivotAtom& a : z.atoms) atoms.push_back({a.y1, a.x2, a.w});
  return rows_json({{"atoms", atoms}}).dump(2) + "\n";
}

void maybe_dump_network(const Options& opt, const DiscreteMeasure2D& mu,
                        const DiscreteMeasure2D& nu, const SeparableCost& c) {
  if (opt.dump_network.empty()) return;
  std::ofstream out(opt.dump_network);
  if (!out)
    throw io::ParseError("cannot open '" + opt.dump_network + "'");
  mcf::dump_network_dot(mcf::build_network(mu, nu, c), out);
}

int run_solver_command(const std::string& cmd, const Options& opt) {
  SeparableCost c = parse_cost_spec(opt.cost_spec);
  DiscreteMeasure2D mu = io::load_measure_2d(opt.mu_path);
  DiscreteMeasure2D nu = io::load_measure_2d(opt.nu_path);
  maybe_dump_network(opt, mu, nu, c);

  if (cmd == "oracle") {
    auto r = oracle::brute_force_wc(mu, nu, c);
    write_text(opt.output, cost_line(r.cost));
    return 0;
  }
  auto r = mcf::optimal_cardinal_flow(mu, nu, c);
  if (cmd == "cost")
    write_text(opt.output, cost_line(r.cost));
  else if (cmd == "flow")
    write_text(opt.output, render_flow(r.flow, opt.format));
  else if (cmd == "pivot")
    write_text(opt.output, render_pivot(r.pivot, opt.format));
  else if (cmd == "plan")
    write_text(opt.output, render_plan(flow_to_plan(r.flow), opt.format));
  return 0;
}

int run_line(const Options& opt) {
  if (opt.line_spec.empty())
    throw UsageError("the line command requires --line a,b,q");
  double a, b, q;
  char extra;
  std::istringstream ls(opt.line_spec);
  char c1, c2;
  if (!(ls >> a >> c1 >> b >> c2 >> q) || c1 != ',' || c2 != ',' ||
      (ls >> extra))
    throw UsageError("--line expects three comma-separated numbers a,b,q");
  LineSpec line(a, b, q);

  SeparableCost cost = parse_cost_spec(opt.cost_spec);
  DiscreteMeasure2D mu = io::load_measure_2d(opt.mu_path);
  DiscreteMeasure2D nu = io::load_measure_2d(opt.nu_path);

  bool canonical_line = line.a == 0.0 && line.b == 1.0 && line.q == 0.0;
  if (canonical_line) {
    auto r = line_flow(mu, nu, cost);
    std::cout << cost_line(r.cost);
    if (!opt.output.empty())
      write_text(opt.output, render_plan(flow_to_plan(r.flow), opt.format));
    return 0;
  }
  bool squared = cost.c1.is_power() && cost.c1.exponent() == 2.0 &&
                 cost.c2.is_power() && cost.c2.exponent() == 2.0;
  if (!squared)
    throw UsageError(
        "general lines require the squared-Euclidean cost --cost 2:2");
  auto r = line_flow_general(mu, line, nu);
  std::cout << cost_line(r.cost);
  if (!opt.output.empty())
    write_text(opt.output, render_plan(r.plan, opt.format));
  return 0;
}

int run_validate(const Options& opt) {
  DiscreteMeasure2D mu = io::load_measure_2d(opt.mu_path);
  DiscreteMeasure2D nu = io::load_measure_2d(opt.nu_path);
  std::ifstream in(opt.flow_path);
  if (!in) throw io::ParseError("cannot open '" + opt.flow_path + "'");
  CardinalFlow flow = io::read_flow_csv(in);

  FlowValidation v = validate_flow(flow, mu, nu);
  auto line = [](const char* name, const ConditionCheck& c) {
    std::ostringstream ss;
    ss << name << ": " << (c.pass ? "PASS" : "FAIL") << " (max deviation "
       << io::format_double(c.max_deviation) << ")\n";
    return ss.str();
  };
  std::string report = line("source-marginal", v.source_marginal) +
                       line("target-marginal", v.target_marginal) +
                       line("glue", v.glue);
  write_text(opt.output, report);
  return v.ok() ? 0 : 3;
}

int run_bench(const Options& opt) {
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("CARDINAL_OT_THREADS"))
    threads = std::max(1, std::atoi(env));
  threads = std::max(1, std::min(threads, opt.instances));

  struct Row {
    double gap1 = 0.0, gap2 = 0.0;
    double solver_ms = 0.0, oracle_ms = 0.0;
  };
  std::vector<Row> rows(opt.instances);
  std::atomic<int> next{0};

  auto worker = [&] {
    for (int i; (i = next.fetch_add(1)) < opt.instances;) {
      InstancePair inst = random_instance(
          opt.seed * 0x9E3779B97F4A7C15ULL + 0xD1B54A32D192ED03ULL +
              static_cast<std::uint64_t>(i),
          opt.max_atoms);
      Row& row = rows[i];
      for (double p : {1.0, 2.0}) {
        SeparableCost c = power_cost(p, p);
        auto t0 = std::chrono::steady_clock::now();
        auto solved = mcf::optimal_cardinal_flow(inst.mu, inst.nu, c);
        auto t1 = std::chrono::steady_clock::now();
        auto oracle_res = oracle::brute_force_wc(inst.mu, inst.nu, c);
        auto t2 = std::chrono::steady_clock::now();
        double gap = std::abs(solved.cost - oracle_res.cost) /
                     (1.0 + std::abs(oracle_res.cost));
        (p == 1.0 ? row.gap1 : row.gap2) = gap;
        row.solver_ms +=
            std::chrono::duration<double, std::milli>(t1 - t0).count();
        row.oracle_ms +=
            std::chrono::duration<double, std::milli>(t2 - t1).count();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < threads; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  double max1 = 0.0, max2 = 0.0, solver_ms = 0.0, oracle_ms = 0.0;
  for (const Row& r : rows) {
    max1 = std::max(max1, r.gap1);
    max2 = std::max(max2, r.gap2);
    solver_ms += r.solver_ms;
    oracle_ms += r.oracle_ms;
  }

  // Gaps are deterministic in the seed and go to stdout; timing is not and
  // goes to stderr.
  std::ostringstream body;
  body << "instances: " << opt.instances << "  max-atoms: " << opt.max_atoms
       << "  seed: " << opt.seed << "\n"
       << "p=1 max-rel-gap: " << io::format_double(max1) << "\n"
       << "p=2 max-rel-gap: " << io::format_double(max2) << "\n"
       << "max relative deviation: " << io::format_double(std::max(max1, max2))
       << "\n";
  write_text(opt.output, body.str());
  std::fprintf(stderr, "timing: solver %.1f ms total, oracle %.1f ms total, %d threads\n",
               solver_ms, oracle_ms, threads);
  return std::max(max1, max2) <= 1e-9 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "cardot: optimal transport for separable costs via cardinal flows"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_nu = true) {
    sub->add_option("--cost,-c", opt.cost_spec,
                    "cost spec p1:p2 (powers >= 1), default 2:2");
    sub->add_option("mu", opt.mu_path, "source measure file (csv or json)")
        ->required();
    if (needs_nu)
      sub->add_option("nu", opt.nu_path, "target measure file (csv or json)")
          ->required();
    sub->add_option("--output,-o", opt.output, "output path (default stdout)");
    sub->add_option("--format", opt.format, "output encoding: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    return sub;
  };

  for (const char* name : {"cost", "plan", "flow", "pivot", "oracle"}) {
    auto* sub = add_common(app.add_subcommand(
        name, std::string("compute and emit the ") + name));
    sub->add_option("--dump-network", opt.dump_network,
                    "write the flow network as graphviz DOT");
  }
  auto* line_cmd = add_common(app.add_subcommand(
      "line", "closed-form solve for mu supported on a line"));
  line_cmd->add_option("--line", opt.line_spec, "line spec a,b,q")->required();

  auto* validate_cmd = add_common(app.add_subcommand(
      "validate", "check a cardinal-flow file against mu and nu"));
  validate_cmd->add_option("flow", opt.flow_path, "flow csv file")->required();

  auto* bench_cmd = app.add_subcommand(
      "bench", "random-instance equivalence suite (solver vs oracle)");
  bench_cmd->add_option("--seed", opt.seed, "rng seed, default 0");
  bench_cmd->add_option("--instances", opt.instances, "instance count");
  bench_cmd->add_option("--max-atoms", opt.max_atoms, "atoms per measure");
  bench_cmd->add_option("--output,-o", opt.output, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "line") return run_line(opt);
    if (cmd == "validate") return run_validate(opt);
    if (cmd == "bench") return run_bench(opt);
    return run_solver_command(cmd, opt);
  } catch (const io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
