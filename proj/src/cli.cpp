#include "kolportrait/cli.hpp"

#include "kolportrait/global.hpp"
#include "kolportrait/svg.hpp"
#include "kolportrait/sweep.hpp"
#include "kolportrait/trace.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace kolportrait {

namespace {

struct ParamArgs {
  std::string b0 = "0", b1 = "0", b2 = "0", b3 = "0", c0 = "0";
  double eps_param = 1e-12;

  ParameterPoint point() const {
    ParameterPoint p;
    p.b0 = Param::parse(b0);
    p.b1 = Param::parse(b1);
    p.b2 = Param::parse(b2);
    p.b3 = Param::parse(b3);
    p.c0 = Param::parse(c0);
    p.eps_param = eps_param;
    return p;
  }
};

void add_param_opts(CLI::App* cmd, ParamArgs& a) {
  cmd->add_option("--b0", a.b0, "coefficient b0 (number or p/q)")->required();
  cmd->add_option("--b1", a.b1, "coefficient b1")->required();
  cmd->add_option("--b2", a.b2, "coefficient b2")->required();
  cmd->add_option("--b3", a.b3, "coefficient b3")->required();
  cmd->add_option("--c0", a.c0, "coefficient c0")->required();
  cmd->add_option("--epsilon-param", a.eps_param, "zero tolerance for float inputs");
}

nlohmann::json classification_json(const ParameterPoint& raw, double eps_conn) {
  nlohmann::json j;
  j["schema"] = "kolportrait/1";

  ParameterPoint p = raw;
  bool normalized = false;
  SymmetryTransform tr;
  if (!validate_classifiable(p).ok) {
    std::tie(p, tr) = normalize(raw);
    normalized = true;
  }
  j["point"] = nlohmann::json::parse(parameter_point_to_json(p));
  if (normalized) {
    j["normalized"] = true;
    j["transform"] = {{"flip_y", tr.flip_y}, {"flip_z", tr.flip_z}, {"reverse_time", tr.reverse_time}};
  }
  const auto hyp = validate_hypothesis(p);
  j["hypothesis_ok"] = hyp.ok;
  if (!hyp.ok) j["hypothesis_violations"] = hyp.violations;

  const CaseId cid = determine_case(p);
  j["case"] = cid.str();
  j["b1_sign"] = cid.b1_sign;
  if (cid.major == 4 && cid.minor == 2) j["c0_minus_b0_sign"] = cid.alpha_sign;

  j["O1"] = label_name(classify_origin_u1(p));
  j["O2"] = label_name(classify_origin_u2(p));

  const PortraitLabel g = assemble_global(p);
  const TopoClass t = topo_class(g);
  j["G"] = g.str();
  j["R"] = t.str();
  j["class"] = classes_table(g);

  auto inv = nlohmann::json::array();
  for (auto& v : t.invariants)
    inv.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
  j["invariants"] = inv;

  auto pts = nlohmann::json::array();
  auto reports = classify_finite(p);
  for (auto& r : reports) pts.push_back(nlohmann::json::parse(singular_point_to_json(r)));
  j["singular_points"] = pts;
  j["ind_F"] = index_sum(reports);

  auto flags = nlohmann::json::array();
  if (cid.major == 1 && (cid.minor == 2 || cid.minor == 3) && cid.b1_sign > 0) {
    const double lhs = p.b2.value * p.b3.value;
    const double rhs = p.b1.value * (cid.minor == 2 ? p.c0.value : p.b0.value);
    if (std::abs(lhs - rhs) <= eps_conn * std::max(1.0, std::abs(lhs) + std::abs(rhs)))
      flags.push_back("near_connection_boundary");
  }
  j["flags"] = flags;
  return j;
}

nlohmann::json tables_json() {
  nlohmann::json j;
  j["schema"] = "kolportrait/1";

  j["cases"] = nlohmann::json::array({
      {{"case", 1}, {"conditions", "b3 != 0, b2 != 0"}, {"points", {"P0", "P1", "P2"}}},
      {{"case", 2}, {"conditions", "b3 != 0, b2 = 0, b0 != 0"}, {"points", {"P0", "P1"}}},
      {{"case", 3}, {"conditions", "b3 = 0, c0 != 0, b2 != 0"}, {"points", {"P0", "P2"}}},
      {{"case", 4}, {"conditions", "b3 = 0, c0 != 0, b2 = 0, b0 != 0"}, {"points", {"P0"}}},
  });

  auto sub = nlohmann::json::array();
  const char* conds[15] = {
      "b0>0, c0<0", "b0>0, 0<c0<b0", "0<b0<c0", "c0=0, b0>0", "b0=0, c0>0",
      "b0>0, c0<0", "b0>0, 0<c0<b0", "0<b0<c0", "c0=0, b0>0",
      "b0>0, c0<0", "0<b0<c0", "b0>0, 0<c0<b0", "b0=0, c0>0",
      "b0>0, c0<0", "b0>0, c0>0"};
  const int subcases[15][2] = {{1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {2, 1}, {2, 2}, {2, 3},
                               {2, 4}, {3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 1}, {4, 2}};
  for (int i = 0; i < 15; i++) {
    CaseId c{subcases[i][0], subcases[i][1], 1, 1};
    auto kinds = nlohmann::json::array();
    for (auto& [id, k] : table_kinds(c)) kinds.push_back({{"point", point_name(id)}, {"kind", kind_name(k)}});
    sub.push_back({{"subcase", c.str()}, {"conditions", conds[i]}, {"classification", kinds}});
  }
  j["finite_subcases"] = sub;

  auto glob = nlohmann::json::array();
  int g_entries = 0;
  for (const auto& row : global_table()) {
    nlohmann::json r;
    r["subcase"] = row.cid.str();
    r["b1_sign"] = row.cid.b1_sign;
    if (row.cid.major == 4 && row.cid.minor == 2) r["c0_minus_b0_sign"] = row.cid.alpha_sign;
    r["O1"] = label_name(row.o1);
    r["O2"] = label_name(row.o2);
    auto gs = nlohmann::json::array();
    for (int g : row.g) {
      gs.push_back("G" + std::to_string(g));
      g_entries++;
    }
    r["G"] = gs;
    glob.push_back(r);
  }
  j["global"] = glob;
  j["global_rows"] = glob.size();
  j["global_g_entries"] = g_entries;

  auto reps = nlohmann::json::array();
  for (int g = 1; g <= 36; g++) {
    const TopoClass t = topo_class({g});
    reps.push_back({{"G", "G" + std::to_string(g)}, {"R", t.str()}, {"class", classes_table({g})}});
  }
  j["representatives"] = reps;
  return j;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"classifier and portrait renderer for the planar cubic Kolmogorov family "
               "dy=y(b0+b1yz+b2y+b3z), dz=z(c0+b1yz+b2y+b3z)"};
  app.require_subcommand(1);

  ParamArgs cls_args, rnd_args;
  double eps_conn = 1e-6;
  std::string out_file = "portrait.svg", format = "json";
  int jobs = 0;

  auto* cls = app.add_subcommand("classify", "classify a parameter point");
  add_param_opts(cls, cls_args);
  cls->add_option("--epsilon-conn", eps_conn, "connection-stratum tolerance");
  cls->add_option("--format", format, "json");

  auto* rnd = app.add_subcommand("render", "trace separatrices and write an SVG portrait");
  add_param_opts(rnd, rnd_args);
  rnd->add_option("--out", out_file, "output file");
  rnd->add_option("--jobs", jobs, "worker pool size (default KOLPORTRAIT_JOBS)");

  auto* swp = app.add_subcommand("sweep", "parameter census over H");
  std::string spec_file;
  long samples = 10000;
  std::uint64_t seed = 1;
  std::vector<double> box;
  bool with_tracing = false;
  swp->add_option("--spec", spec_file, "JSON sweep spec file");
  swp->add_option("--samples", samples, "random sample count");
  swp->add_option("--seed", seed, "RNG seed");
  swp->add_option("--box", box, "sampling box lo hi")->expected(2);
  swp->add_flag("--with-tracing", with_tracing, "cross-check each sample by tracing");
  swp->add_option("--jobs", jobs, "worker pool size");

  auto* tab = app.add_subcommand("tables", "dump the embedded classification tables as JSON");
  (void)tab;

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    int code = app.exit(e, os, os);
    (code == 0 ? out : err) << os.str();
    return code;
  }

  try {
    if (cls->parsed()) {
      out << classification_json(cls_args.point(), eps_conn).dump() << "\n";
      return 0;
    }
    if (rnd->parsed()) {
      ParameterPoint p = rnd_args.point();
      if (!validate_classifiable(p).ok) p = normalize(p).first;
      TraceConfig tcfg;
      tcfg.jobs = jobs;
      SeparatrixSkeleton sk = trace_separatrices(p, tcfg);
      const std::string svg = render_svg(sk);
      std::ofstream f(out_file, std::ios::binary);
      if (!f) {
        err << "cannot open " << out_file << "\n";
        return 1;
      }
      f << svg;
      out << "wrote " << out_file << " (" << sk.edges.size() << " separatrices, "
          << sk.region_orbits.size() << " region orbits)\n";
      return 0;
    }
    if (swp->parsed()) {
      SweepSpec spec;
      if (!spec_file.empty()) {
        std::ifstream f(spec_file);
        if (!f) {
          err << "cannot open " << spec_file << "\n";
          return 1;
        }
        std::stringstream ss;
        ss << f.rdbuf();
        spec = SweepSpec::from_json(ss.str());
      } else {
        spec.random = true;
        spec.n = samples;
        spec.seed = seed;
        if (box.size() == 2) {
          spec.box_lo = box[0];
          spec.box_hi = box[1];
        }
      }
      out << sweep(spec, with_tracing, jobs).to_json() << "\n";
      return 0;
    }
    if (tab->parsed()) {
      out << tables_json().dump() << "\n";
      return 0;
    }
  } catch (const KolError& e) {
    err << "error: " << e.what() << "\n";
    switch (e.code) {
      case ErrorCode::NotNormalizable:
      case ErrorCode::UnclassifiableParameters:
      case ErrorCode::BadInput:
        return 2;
      case ErrorCode::TableMismatch:
      case ErrorCode::SectorMismatch:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace kolportrait
