#include "shiftvar/cli.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "shiftvar/report_io.hpp"

namespace shiftvar {

namespace {

std::vector<u64> parse_u64_list(const std::string& text) {
  std::vector<u64> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  if (out.empty()) fail(ErrorCode::InvalidArgument, "empty numeric list");
  return out;
}

struct Sink {
  std::ostream& stream;
  std::string out_file;

  void write(const std::string& text) {
    if (out_file.empty()) {
      stream << text << "\n";
    } else {
      std::ofstream f(out_file);
      if (!f) fail(ErrorCode::InvalidArgument, "cannot open " + out_file);
      f << text << "\n";
    }
  }
};

struct CellResult {
  std::string family;
  u64 p = 0;
  std::size_t n = 0;
  u64 h = 0;
  NeighborhoodReport report;
  std::optional<u64> predicted_delta;
  std::optional<bool> prediction_match;
  FamilySpec spec{FamilyKind::ParallelHyperplanes,
                  {},
                  VarietyInstance{},
                  {},
                  false};
};

struct FamilyOptions {
  std::string kind;
  u64 d = 1;
  u64 m = 0;
  u64 s = 0;
  u64 ell = 0;
  u64 n = 0;
  std::string poly;
  u64 count = 100;
  u64 seed = 0;
};

FamilySpec build_family(const FamilyOptions& opt, const PrimeField& field) {
  if (opt.kind == "parallel-hyperplanes")
    return parallel_hyperplanes(opt.d, opt.n, field);
  if (opt.kind == "graph") {
    if (opt.poly.empty() || opt.n < 2)
      fail(ErrorCode::InvalidArgument, "graph needs --poly and --n >= 2");
    return graph_variety(parse_poly(opt.poly, opt.n - 1, field));
  }
  if (opt.kind == "determinantal")
    return determinantal_minors(opt.m, opt.n, opt.s, field);
  if (opt.kind == "discriminant") return generic_discriminant(opt.n, field);
  if (opt.kind == "resultant") return generic_resultant(opt.n, opt.m, field);
  fail(ErrorCode::InvalidArgument, "unknown family kind: " + opt.kind);
}

CellResult run_cell(const FamilyOptions& opt, u64 p, u64 h, u64 budget) {
  const PrimeField field(p);
  CellResult cell;
  cell.spec = build_family(opt, field);
  cell.family = family_kind_name(cell.spec.kind);
  cell.p = p;
  cell.n = cell.spec.instance.n;
  cell.h = h;
  const PointSet u = ball(h, cell.spec.instance.n, field, budget);
  cell.report = bound_report(cell.spec.instance, u, cell.spec.shift_free, budget);
  if (cell.spec.kind == FamilyKind::ParallelHyperplanes) {
    const auto pred = hyperplane_prediction(opt.d, opt.n, p, h);
    if (pred.valid) {
      cell.predicted_delta = pred.delta;
      cell.prediction_match = pred.delta == cell.report.delta &&
                              pred.count_x == cell.report.count_x &&
                              pred.count_sumset == cell.report.count_sumset;
    }
  }
  return cell;
}

ordered_json cell_to_json(const CellResult& cell) {
  ordered_json j = family_to_json(cell.spec);
  j["h"] = cell.h;
  j["report"] = report_to_json(cell.report);
  if (cell.predicted_delta) {
    j["predictedDelta"] = *cell.predicted_delta;
    j["predictionMatch"] = *cell.prediction_match;
  }
  return j;
}

int dispatch(std::vector<std::string> args, std::ostream& out,
             std::ostream& err);

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  try {
    return dispatch(std::move(args), out, err);
  } catch (const Error& e) {
    ordered_json j;
    j["error"] = error_code_name(e.code());
    j["message"] = e.what();
    err << j.dump() << "\n";
    return e.code() == ErrorCode::BudgetExceeded ? 2 : 1;
  } catch (const std::exception& e) {
    ordered_json j;
    j["error"] = "Internal";
    j["message"] = e.what();
    err << j.dump() << "\n";
    return 1;
  }
}

namespace {

int dispatch(std::vector<std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"finite-field shift-invariance and discrete-neighborhood tool"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);

  std::string poly_text, polys_file, out_format = "json", out_file, a_list;
  u64 p = 0, h = 1, budget = kDefaultBudget, seed = 0;
  std::size_t nvars = 0;
  bool shift_free = false;
  FamilyOptions fam;
  std::string p_list = "7", h_list = "1", d_list = "1";

  // the radius flag is literally --h, so help must not claim the short -h
  const auto sub = [&](const char* name, const char* desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help");
    return cmd;
  };

  auto* kernel_cmd =
      sub("kernel", "invariant shift directions of a polynomial");
  kernel_cmd->add_option("--p", p, "prime modulus")->required();
  kernel_cmd->add_option("--n", nvars, "variable count")->required();
  kernel_cmd->add_option("--poly", poly_text, "polynomial text")->required();

  auto* normalize_cmd = sub(
      "normalize", "rewrite an invariant polynomial over a cylinder base");
  normalize_cmd->add_option("--p", p, "prime modulus")->required();
  normalize_cmd->add_option("--n", nvars, "variable count")->required();
  normalize_cmd->add_option("--poly", poly_text, "polynomial text")->required();

  auto* delta_cmd = sub(
      "delta", "exhaustive neighborhood counts and deficiency");
  delta_cmd->add_option("--p", p, "prime modulus");
  delta_cmd->add_option("--n", nvars, "variable count");
  delta_cmd->add_option("--poly", poly_text, "polynomial text");
  delta_cmd->add_option("--polys-file", polys_file, "instance JSON file");
  delta_cmd->add_option("--h", h, "neighborhood radius");
  delta_cmd->add_option("--budget", budget, "candidate-point cap");

  auto* bounds_cmd =
      sub("bounds", "evaluate every applicable inequality");
  bounds_cmd->add_option("--polys-file", polys_file, "instance JSON file")
      ->required();
  bounds_cmd->add_option("--h", h, "neighborhood radius");
  bounds_cmd->add_flag("--shift-free", shift_free,
                       "declare the instance essentially shift-free");
  bounds_cmd->add_option("--budget", budget, "candidate-point cap");

  auto* family_cmd =
      sub("family", "construct a built-in family and analyze it");
  family_cmd->add_option("--kind", fam.kind, "family kind")->required();
  family_cmd->add_option("--p", p, "prime modulus")->required();
  family_cmd->add_option("--h", h, "neighborhood radius");
  family_cmd->add_option("--d", fam.d, "degree (parallel-hyperplanes)");
  family_cmd->add_option("--n", fam.n, "dimension / degree parameter");
  family_cmd->add_option("--m", fam.m, "rows / second degree parameter");
  family_cmd->add_option("--s", fam.s, "rank bound (determinantal)");
  family_cmd->add_option("--ell", fam.ell, "outer degree (decomposable-sample)");
  family_cmd->add_option("--poly", fam.poly, "graph polynomial g");
  family_cmd->add_option("--count", fam.count, "sample count");
  family_cmd->add_option("--seed", fam.seed, "sampler seed");
  family_cmd->add_option("--budget", budget, "candidate-point cap");

  auto* reduce_cmd = sub(
      "reduce", "subset-sum reduction to shift-invariance search");
  reduce_cmd->add_option("--a", a_list, "comma-separated nonnegative integers");
  reduce_cmd->add_option("--seed", seed, "prime-search seed (0 = smallest)");

  auto* sweep_cmd =
      sub("sweep", "family analysis over a parameter grid");
  sweep_cmd->add_option("--kind", fam.kind, "family kind")->required();
  sweep_cmd->add_option("--p", p_list, "comma-separated primes")->required();
  sweep_cmd->add_option("--h", h_list, "comma-separated radii");
  sweep_cmd->add_option("--d", d_list, "comma-separated degrees");
  sweep_cmd->add_option("--n", fam.n, "dimension / degree parameter");
  sweep_cmd->add_option("--m", fam.m, "rows / second degree parameter");
  sweep_cmd->add_option("--s", fam.s, "rank bound (determinantal)");
  sweep_cmd->add_option("--poly", fam.poly, "graph polynomial g");
  sweep_cmd->add_option("--budget", budget, "candidate-point cap");

  for (auto* cmd : {kernel_cmd, normalize_cmd, delta_cmd, bounds_cmd,
                    family_cmd, reduce_cmd, sweep_cmd}) {
    cmd->add_option("--out", out_format, "json or csv");
    cmd->add_option("--out-file", out_file, "write the report to a file");
  }

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (out_format != "json" && out_format != "csv")
    fail(ErrorCode::InvalidArgument, "--out must be json or csv");

  Sink sink{out, out_file};

  if (kernel_cmd->parsed()) {
    const PrimeField field(p);
    const MPoly f = parse_poly(poly_text, nvars, field);
    sink.write(kernel_to_json(shift_kernel(f)).dump(2));
    return 0;
  }

  if (normalize_cmd->parsed()) {
    const PrimeField field(p);
    const MPoly f = parse_poly(poly_text, nvars, field);
    sink.write(cylinder_to_json(full_cylinder_reduction(f)).dump(2));
    return 0;
  }

  if (delta_cmd->parsed()) {
    VarietyInstance inst;
    if (!polys_file.empty()) {
      std::ifstream in(polys_file);
      if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + polys_file);
      nlohmann::json j;
      in >> j;
      inst = instance_from_json(j);
    } else {
      if (poly_text.empty() || p == 0 || nvars == 0)
        fail(ErrorCode::InvalidArgument,
             "delta needs --polys-file, or --p --n --poly");
      const PrimeField field(p);
      inst.p = p;
      inst.n = nvars;
      inst.polys.push_back(parse_poly(poly_text, nvars, field));
      inst.metadata = VarietyMetadata{static_cast<u64>(nvars - 1), 1, 0, 0};
      if (auto deg = inst.polys[0].degree(); deg && *deg >= 1)
        inst.metadata.d = *deg;
    }
    const PrimeField field(inst.p);
    const PointSet x = rational_points(inst, budget);
    const PointSet u = ball(h, inst.n, field, budget);
    const NeighborhoodReport rep = compute_delta(x, u, budget);
    if (out_format == "csv") {
      sink.write(report_csv_header() + "\n" +
                 report_csv_row("custom", inst.p, inst.n, h, rep));
    } else {
      sink.write(report_to_json(rep).dump(2));
    }
    return 0;
  }

  if (bounds_cmd->parsed()) {
    std::ifstream in(polys_file);
    if (!in) fail(ErrorCode::InvalidArgument, "cannot open " + polys_file);
    nlohmann::json j;
    in >> j;
    const VarietyInstance inst = instance_from_json(j);
    const PrimeField field(inst.p);
    const PointSet u = ball(h, inst.n, field, budget);
    const NeighborhoodReport rep = bound_report(inst, u, shift_free, budget);
    if (out_format == "csv") {
      sink.write(report_csv_header() + "\n" +
                 report_csv_row("custom", inst.p, inst.n, h, rep));
    } else {
      sink.write(report_to_json(rep).dump(2));
    }
    return 0;
  }

  if (family_cmd->parsed()) {
    const PrimeField field(p);
    if (fam.kind == "decomposable-sample") {
      const PointSet pts =
          decomposable_sample(fam.ell, fam.m, field, fam.count, fam.seed);
      ordered_json j;
      j["kind"] = "decomposable_sample";
      j["parameters"] = {{"ell", fam.ell}, {"m", fam.m}, {"count", fam.count},
                         {"seed", fam.seed}, {"p", p}};
      j["points"] = ordered_json::array();
      for (std::size_t i = 0; i < pts.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (u64 c : pts.point_at(i).coords)
          row.push_back(balanced_mod(c, p));
        j["points"].push_back(row);
      }
      sink.write(j.dump(2));
      return 0;
    }
    const CellResult cell = run_cell(fam, p, h, budget);
    if (out_format == "csv") {
      sink.write(report_csv_header() + "\n" +
                 report_csv_row(cell.family, cell.p, cell.n, cell.h,
                                cell.report));
    } else {
      sink.write(cell_to_json(cell).dump(2));
    }
    return 0;
  }

  if (reduce_cmd->parsed()) {
    ESSInstance inst;
    if (!a_list.empty()) {
      inst.a = parse_u64_list(a_list);
    } else {
      nlohmann::json j;
      std::cin >> j;
      for (const auto& v : j.at("a")) inst.a.push_back(v.get<u64>());
    }
    const ReductionOutcome outcome = solve_ess_via_reduction(inst, seed);
    sink.write(reduction_to_json(outcome).dump(2));
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const std::vector<u64> ps = parse_u64_list(p_list);
    const std::vector<u64> hs = parse_u64_list(h_list);
    std::vector<u64> ds = {fam.d};
    if (fam.kind == "parallel-hyperplanes") ds = parse_u64_list(d_list);

    struct Cell {
      FamilyOptions opt;
      u64 p, h;
    };
    std::vector<Cell> cells;
    for (u64 pv : ps)
      for (u64 hv : hs)
        for (u64 dv : ds) {
          FamilyOptions o = fam;
          o.d = dv;
          cells.push_back(Cell{o, pv, hv});
        }

    // independent cells in a worker pool; rows emitted in input order
    std::vector<std::future<CellResult>> futures;
    futures.reserve(cells.size());
    for (const auto& cell : cells)
      futures.push_back(std::async(std::launch::async, [cell, budget]() {
        return run_cell(cell.opt, cell.p, cell.h, budget);
      }));

    std::ostringstream block;
    block << report_csv_header();
    for (auto& fut : futures) {
      const CellResult cell = fut.get();
      block << "\n"
            << report_csv_row(cell.family, cell.p, cell.n, cell.h, cell.report);
    }
    sink.write(block.str());
    return 0;
  }

  return 0;
}

}  // namespace

}  // namespace shiftvar
