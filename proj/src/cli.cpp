// SPDX-License-Identifier: Apache-2.0
#include "cuntz/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "cuntz/chern_symbolic.hpp"
#include "cuntz/distances.hpp"
#include "cuntz/error.hpp"
#include "cuntz/io.hpp"
#include "cuntz/random_fields.hpp"
#include "cuntz/realization.hpp"
#include "cuntz/sphere_bundles.hpp"
#include "cuntz/suites.hpp"
#include "cuntz/suspension.hpp"

namespace cuntz {

namespace {

struct Output {
  std::string path;
  std::string csv_dir;
};

void emit(const json& report, const Output& o, std::ostream& out) {
  if (o.path.empty()) out << dump(report);
  else write_text_file(o.path, dump(report));
}

void emit_csv(const Output& o, const std::string& name, const std::string& text) {
  if (o.csv_dir.empty()) return;
  std::filesystem::create_directories(o.csv_dir);
  write_text_file((std::filesystem::path(o.csv_dir) / name).string(), text);
}

std::string without_header(const std::string& csv) {
  const auto nl = csv.find('\n');
  return nl == std::string::npos ? std::string() : csv.substr(nl + 1);
}

double step_from_grid(int grid) {
  if (grid < 0) throw InvalidInput("--grid must be positive");
  return grid == 0 ? 0.0 : 1.0 / grid;
}

ScalarField affine(const std::vector<double>& c, const char* flag) {
  if (c.size() != 4) throw InvalidInput(std::string(flag) + " takes four coefficients c0,cx,cy,cz");
  return [c](const MeshPoint& p) { return c[0] + c[1] * p.coords(0) + c[2] * p.coords(1) + c[3] * p.coords(2); };
}

SpacePtr space_by_name(const std::string& kind, int mesh) {
  switch (space_kind_from_string(kind)) {
    case SpaceKind::Point: return make_space(BaseSpace::point());
    case SpaceKind::Interval: return make_space(BaseSpace::interval(mesh));
    case SpaceKind::Circle: return make_space(BaseSpace::circle(mesh));
    case SpaceKind::Sphere: return make_space(BaseSpace::sphere(mesh));
    case SpaceKind::Product: break;
  }
  throw InvalidInput("gen: product spaces are built by `suspend`");
}

int sphere_repro(int mesh, int k, const std::vector<double>& l1, const std::vector<double>& l2, int grid, int t_grid,
                 const Output& o, const std::string& save_a, const std::string& save_b, std::ostream& out) {
  const SpacePtr s = make_space(BaseSpace::sphere(mesh));
  const SpherePair pair = build_sphere_pair(s, affine(l1, "--lambda1"), affine(l2, "--lambda2"), k);
  SphereVerifyOptions vo;
  vo.t_grid = t_grid;
  vo.dw_step = 1.0 / grid;
  const SphereReport rep = verify_sphere_counterexample(pair, vo);
  ReportMeta meta{"sphere-pair", vo.dw_step, kRankTolerance, {{"mesh", mesh}, {"k", k}, {"t_grid", t_grid}}};
  emit(make_report(meta, to_json(rep)), o, out);
  if (!save_a.empty()) write_text_file(save_a, dump(to_json(pair.a)));
  if (!save_b.empty()) write_text_file(save_b, dump(to_json(pair.b)));
  if (!o.csv_dir.empty()) {
    const auto [na, nb] = normalized_pair(pair);
    emit_csv(o, "sphere_verdicts.csv", verdict_csv(verdict_table(FieldComparator(na, nb, vo.dw_step, kRankTolerance), vo.dw_step, 8)));
    emit_csv(o, "sphere_branches.csv", eigen_branch_csv(pair.a, "a") + without_header(eigen_branch_csv(pair.b, "b")));
  }
  return rep.passed() ? kExitOk : kExitAssertion;
}

int villadsen_repro(int stages, double min_l1, double max_ratio, const Output& o, std::ostream& out) {
  const auto ledger = villadsen_stage_ledger(stages, min_l1, max_ratio);
  json st = json::array();
  bool ok = true;
  for (const auto& s : ledger) {
    st.push_back(to_json(s));
    ok = ok && s.verdict == Obstruction::Obstructed && s.exponents_fit && s.exponents_fit_loose && s.simulation_agrees;
  }
  ReportMeta meta{"villadsen", 0, kRankTolerance, {{"stages", stages}}};
  emit(make_report(meta, {{"stages", st}, {"passed", ok}}), o, out);
  if (!o.csv_dir.empty()) {
    std::ostringstream csv;
    csv << "stage,j,k_j,exponent,truncation\n";
    for (const auto& s : ledger)
      for (int j = 0; j < s.stage; ++j)
        csv << s.stage << ',' << j + 1 << ',' << s.k[std::size_t(j)] << ',' << s.euler_exponents[std::size_t(j)] << ','
            << s.ring.orders[std::size_t(j)] << '\n';
    emit_csv(o, "villadsen_ledger.csv", csv.str());
  }
  return ok ? kExitOk : kExitAssertion;
}

int suspension_repro(int mesh, double eps, int grid, const Output& o, std::ostream& out) {
  const SpacePtr s = make_space(BaseSpace::sphere(mesh));
  const SpherePair pair = canonical_sphere_pair(s);
  SuspensionOptions so;
  so.step = 1.0 / grid;
  const SuspensionResult r = suspension_dw(pair.a, pair.b, eps, so);
  const auto tg = uniform_grid(64);
  const DistanceInterval path = dw_morphisms(rank_path(pair.a, tg), rank_path(pair.b, tg));
  const double best = std::max(r.baseline.interval.lo, r.suspended.interval.lo);
  const double required = eps * eps / 2;
  const bool path_trivial = path.lo == 0 && std::abs(path.hi - path.resolution) < 1e-12;
  const bool ok = best >= required && path_trivial;
  json payload = to_json(r);
  payload["unsuspended_path_dw"] = to_json(path);
  payload["required"] = required;
  payload["passed"] = ok;
  ReportMeta meta{"repro suspension", so.step, so.tau, {{"mesh", mesh}, {"eps", eps}}};
  emit(make_report(meta, payload), o, out);
  if (!o.csv_dir.empty()) {
    const auto t = r.product->t_samples();
    emit_csv(o, "suspension_verdicts.csv",
             verdict_csv(verdict_table(SuspensionComparator(pair.a, pair.b, GEpsilon{eps}, t, so.step, so.tau), so.step, 8)));
  }
  return ok ? kExitOk : kExitAssertion;
}

int metric_repro(int count, std::uint64_t seed, int mesh, const Output& o, std::ostream& out) {
  const auto r = metric_suite(count, 12, seed, mesh);
  json f = json::array();
  for (const auto& x : r.failures) f.push_back({{"instance", x.instance}, {"message", x.message}});
  json payload{{"weak_cancellation",
                {{"samples", r.weak_cancellation_samples},
                 {"premise_hits", r.weak_cancellation_premises},
                 {"counterexamples", r.weak_cancellation_counterexamples}}},
               {"separation",
                {{"distinct_pairs", r.distinct_pairs},
                 {"separated_pairs", r.separated_pairs},
                 {"sphere_paths_equal", r.sphere_paths_equal},
                 {"sphere_paths_separated", r.sphere_paths_separated}}},
               {"failures", f},
               {"passed", r.passed()}};
  ReportMeta meta{"repro metric", 1.0 / 64, kRankTolerance, {{"seed", seed}, {"count", count}}};
  emit(make_report(meta, payload), o, out);
  return r.passed() ? kExitOk : kExitAssertion;
}

int existence_repro(int count, std::uint64_t seed, double eps, const Output& o, std::ostream& out) {
  const auto r = existence_suite(count, seed, eps);
  json f = json::array();
  for (const auto& x : r.failures) f.push_back({{"instance", x.instance}, {"message", x.message}});
  json payload{{"instances", r.instances},
               {"worst_dw_hi", r.worst_dw_hi},
               {"worst_du", r.worst_du},
               {"failures", f},
               {"passed", r.passed()}};
  ReportMeta meta{"repro existence", 1.0 / 1024, kRankTolerance, {{"seed", seed}, {"eps", eps}}};
  emit(make_report(meta, payload), o, out);
  return r.passed() ? kExitOk : kExitAssertion;
}

json failures_json(const std::vector<SuiteFailure>& fs) {
  json f = json::array();
  for (const auto& x : fs) f.push_back({{"instance", x.instance}, {"message", x.message}});
  return f;
}

int selftest(int count, std::uint64_t seed, double tau, const Output& o, std::ostream& out, std::ostream& err) {
  const auto sw = sandwich_suite(count, seed, 1.0 / 1024, tau);
  const auto pm = pseudometric_suite(count / 10, seed + 1);
  const auto wc = weak_cancellation_search(count * 10, seed + 2);
  const auto rl = ring_law_suite(count, seed + 3);
  const bool ok = sw.violations == 0 && pm.passed() && wc.passed() && rl.passed();
  json payload{{"seed", seed},
               {"sandwich",
                {{"instances", sw.instances},
                 {"violations", sw.violations},
                 {"isometric_fraction", sw.isometric_fraction()},
                 {"failures", failures_json(sw.failures)}}},
               {"pseudometric", {{"instances", pm.instances}, {"failures", failures_json(pm.failures)}}},
               {"weak_cancellation",
                {{"samples", wc.samples}, {"premise_hits", wc.premise_hits}, {"counterexamples", wc.counterexamples.size()}}},
               {"ring_laws", {{"instances", rl.instances}, {"failures", failures_json(rl.failures)}}},
               {"passed", ok}};
  ReportMeta meta{"selftest", 1.0 / 1024, tau, {{"count", count}}};
  emit(make_report(meta, payload), o, out);
  if (!ok) err << "selftest failed (seed " << seed << ")\n";
  return ok ? kExitOk : kExitAssertion;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cuntz-semigroup distances between matrix fields", "cuntz"};
  app.require_subcommand(1);
  Output o;
  double tau = kRankTolerance;
  int grid = 0;

  std::string fa, fb;
  bool general = false;
  int stride = 8;
  auto* dw = app.add_subcommand("dw", "d_W interval between two field files");
  dw->add_option("a", fa)->required();
  dw->add_option("b", fb)->required();
  dw->add_option("--grid", grid, "levels per unit (step 1/grid)");
  dw->add_option("--tau", tau);
  dw->add_flag("--general", general, "skip the closed form on h2-trivial spaces");
  dw->add_option("--out", o.path);
  dw->add_option("--csv-dir", o.csv_dir);
  dw->add_option("--stride", stride);

  auto* du = app.add_subcommand("du", "d_U from eigenvalue functions (dimension <= 2, trivial H^2)");
  du->add_option("a", fa)->required();
  du->add_option("b", fb)->required();
  du->add_option("--out", o.path);

  auto* sw = app.add_subcommand("sandwich", "check d_W <= d_U <= 4 d_W and d_U <= |a - b|");
  sw->add_option("a", fa)->required();
  sw->add_option("b", fb)->required();
  sw->add_option("--grid", grid);
  sw->add_option("--tau", tau);
  sw->add_option("--out", o.path);

  double eps = 0.2;
  int samples = 32, depth = 6;
  auto* su = app.add_subcommand("suspend", "d_W of a, b tensored with id and with g_eps");
  su->add_option("a", fa)->required();
  su->add_option("b", fb)->required();
  su->add_option("--eps", eps);
  su->add_option("--grid", grid);
  su->add_option("--tau", tau);
  su->add_option("--samples", samples, "uniform t samples");
  su->add_option("--depth", depth, "geometric t samples eps*2^-j");
  su->add_option("--out", o.path);

  int k = 1, mesh = 0, t_grid = 64;
  std::vector<double> l1{0.75, 0, 0, 0.25}, l2{0.25, 0, 0, 0.25};
  std::string save_a, save_b;
  auto* sp = app.add_subcommand("sphere-pair", "build and verify the sphere pair");
  sp->add_option("--k", k);
  sp->add_option("--mesh", mesh);
  sp->add_option("--lambda1", l1, "c0 cx cy cz for c0 + cx*x + cy*y + cz*z")->expected(4)->delimiter(',');
  sp->add_option("--lambda2", l2, "c0 cx cy cz")->expected(4)->delimiter(',');
  sp->add_option("--grid", grid);
  sp->add_option("--t-grid", t_grid);
  sp->add_option("--out", o.path);
  sp->add_option("--csv-dir", o.csv_dir);
  sp->add_option("--save-a", save_a);
  sp->add_option("--save-b", save_b);

  int stages = 4;
  double min_l1 = 0.5, max_ratio = 0.5;
  auto* vi = app.add_subcommand("villadsen", "per-stage Chern obstruction ledger");
  vi->add_option("--stages", stages);
  vi->add_option("--min-lambda1", min_l1);
  vi->add_option("--max-ratio", max_ratio);
  vi->add_option("--out", o.path);
  vi->add_option("--csv-dir", o.csv_dir);

  std::string alpha, space_kind;
  int n = 0;
  auto* re = app.add_subcommand("realize", "positive contraction realizing a rank path");
  re->add_option("--alpha", alpha)->required();
  re->add_option("--eps", eps);
  re->add_option("--space", space_kind, "expected space kind of the path file");
  re->add_option("--n", n, "matrix size")->required();
  re->add_option("--out", o.path);

  std::string example;
  std::uint64_t seed = 1;
  int count = 0;
  auto* rp = app.add_subcommand("repro", "reproduce a worked example");
  rp->add_option("example", example)->required()->check(
      CLI::IsMember({"sphere", "villadsen", "suspension", "metric", "existence"}));
  rp->add_option("--mesh", mesh);
  auto* rp_eps = rp->add_option("--eps", eps);
  rp->add_option("--stages", stages);
  rp->add_option("--k", k);
  rp->add_option("--grid", grid);
  rp->add_option("--seed", seed);
  auto* rp_count = rp->add_option("--count", count);
  rp->add_option("--out", o.path);
  rp->add_option("--csv-dir", o.csv_dir);

  auto* st = app.add_subcommand("selftest", "randomized invariant suites");
  st->add_option("--seed", seed);
  auto* st_count = st->add_option("--count", count);
  st->add_option("--tau", tau);
  st->add_option("--out", o.path);

  std::string gen_space = "interval";
  RandomFieldOptions ro;
  std::string conjugate;
  auto* ge = app.add_subcommand("gen", "write a random smooth field");
  ge->add_option("--space", gen_space);
  ge->add_option("--mesh", mesh);
  ge->add_option("--n", ro.n);
  ge->add_option("--rank", ro.rank);
  ge->add_option("--degree", ro.degree);
  ge->add_option("--norm", ro.norm);
  ge->add_flag("--vanishing", ro.vanishing);
  ge->add_option("--seed", seed);
  ge->add_option("--conjugate", conjugate, "instead conjugate this field by a random smooth unitary");
  ge->add_option("--out", o.path);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  if (dw->parsed()) {
    const MatrixField a = field_from_json(read_json_file(fa)), b = field_from_json(read_json_file(fb));
    DwOptions opt{step_from_grid(grid), tau, general};
    const double h = opt.step > 0 ? opt.step : default_step(a.space());
    const DwResult r = dw_elements(a, b, opt);
    emit(make_report({"dw", h, tau, {}}, to_json(r)), o, out);
    if (!o.csv_dir.empty() && a.space().kind() != SpaceKind::Product)
      emit_csv(o, "dw_verdicts.csv", verdict_csv(verdict_table(FieldComparator(a, b, h, tau), h, stride)));
    return kExitOk;
  }
  if (du->parsed()) {
    const MatrixField a = field_from_json(read_json_file(fa)), b = field_from_json(read_json_file(fb));
    const DistanceInterval d = du_thomsen(a, b);
    json payload = to_json(d);
    payload["norm"] = sup_distance(a, b);
    emit(make_report({"du", 0, kRankTolerance, {}}, payload), o, out);
    return kExitOk;
  }
  if (sw->parsed()) {
    const MatrixField a = field_from_json(read_json_file(fa)), b = field_from_json(read_json_file(fb));
    DwOptions opt{step_from_grid(grid), tau, false};
    const SandwichReport r = verify_sandwich(a, b, opt);
    emit(make_report({"sandwich", r.resolution, tau, {}}, to_json(r)), o, out);
    return r.passed() ? kExitOk : kExitAssertion;
  }
  if (su->parsed()) {
    const MatrixField a = field_from_json(read_json_file(fa)), b = field_from_json(read_json_file(fb));
    SuspensionOptions so;
    if (grid > 0) so.step = 1.0 / grid;
    so.tau = tau;
    so.uniform_samples = samples;
    so.geometric_depth = depth;
    const SuspensionResult r = suspension_dw(a, b, eps, so);
    emit(make_report({"suspend", so.step, tau, {{"eps", eps}}}, to_json(r)), o, out);
    return kExitOk;
  }
  if (sp->parsed())
    return sphere_repro(mesh ? mesh : 642, k, l1, l2, grid ? grid : 256, t_grid, o, save_a, save_b, out);
  if (vi->parsed()) return villadsen_repro(stages, min_l1, max_ratio, o, out);
  if (re->parsed()) {
    auto [space, path] = path_from_json(read_json_file(alpha));
    if (!space_kind.empty() && space_kind_from_string(space_kind) != space->kind())
      throw InvalidInput("--space " + space_kind + " does not match the path file (" + to_string(space->kind()) + ")");
    const Realization r = realize_morphism(space, path, eps, n);
    json j = to_json(r.a);
    j["meta"] = make_report({"realize", path_step(path), kRankTolerance, {{"eps", eps}}},
                            {{"dyadic_level", r.dyadic_level}, {"path_dw", to_json(r.path_distance)}});
    emit(j, o, out);
    return kExitOk;
  }
  if (rp->parsed()) {
    if (example == "sphere")
      return sphere_repro(mesh ? mesh : 642, k, l1, l2, grid ? grid : 256, t_grid, o, "", "", out);
    if (example == "villadsen") return villadsen_repro(stages, 0.5, 0.5, o, out);
    if (example == "suspension") return suspension_repro(mesh ? mesh : 642, eps, grid ? grid : 256, o, out);
    if (example == "metric") return metric_repro(rp_count->count() ? count : 10000, seed, mesh ? mesh : 162, o, out);
    return existence_repro(rp_count->count() ? count : 100, seed, rp_eps->count() ? eps : 1.0 / 64, o, out);
  }
  if (st->parsed()) return selftest(st_count->count() ? count : 200, seed, tau, o, out, err);
  if (ge->parsed()) {
    if (!conjugate.empty()) {
      const MatrixField a = field_from_json(read_json_file(conjugate));
      const auto u = random_unitary_field(a.space(), a.n(), seed);
      emit(to_json(conjugate_by_unitary_field(a, u)), o, out);
      return kExitOk;
    }
    const int default_mesh = gen_space == "sphere" ? 162 : 64;
    const SpacePtr s = space_by_name(gen_space, mesh ? mesh : default_mesh);
    std::mt19937_64 rng(seed);
    emit(to_json(random_field(s, rng, ro)), o, out);
    return kExitOk;
  }
  return kExitInput;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const SchemaError& e) {
    err << "input error at " << e.pointer << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidInput: return kExitInput;
      case ErrorKind::PreconditionFailed:
      case ErrorKind::NotSubequivalent: return kExitAssertion;
      case ErrorKind::UnsupportedSpace: return kExitUnsupported;
      case ErrorKind::MeshTooCoarse: return kExitMesh;
    }
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace cuntz
