#include "qhd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "qhd/asymptotic.hpp"
#include "qhd/catalog.hpp"
#include "qhd/dynamics.hpp"
#include "qhd/hilbert.hpp"
#include "qhd/io.hpp"
#include "qhd/orbit.hpp"
#include "qhd/prop76.hpp"

namespace qhd {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::kInvalidInput, what); }

void need_args(const RunConfig& c, std::size_t n, const char* usage) {
  if (c.args.size() != n) invalid(std::string("usage: ") + usage);
}

Vec homog(const Vec& x) {
  Vec h(x.size() + 1);
  h << x, 1.0;
  return h;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json point_json(const ProjPoint& p) {
  Json j;
  j["homogeneous"] = vec_json(p.coords());
  if (!p.at_infinity()) j["affine"] = vec_json(p.affine());
  return j;
}

struct Output {
  std::string text;
  int status = kExitOk;
};

Output cmd_dist(const RunConfig& c) {
  need_args(c, 3, "dist <domain> <p1> <p2>");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const Vec p1 = point_from_json(read_json_arg(c.args[1]), d.dim());
  const Vec p2 = point_from_json(read_json_arg(c.args[2]), d.dim());
  Json j;
  j["distance"] = num(hilbert_distance(d, p1, p2));
  j["p1"] = vec_json(p1);
  j["p2"] = vec_json(p2);
  return {dump(j)};
}

Output cmd_classify(const RunConfig& c) {
  need_args(c, 2, "classify <domain> <matrix>");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const ProjMap g = map_from_json(read_json_arg(c.args[1]), d.dim());
  const IsometryClass cls = classify_isometry(d, g);
  Json j;
  j["kind"] = to_string(cls.kind);
  j["lambda_max"] = num(cls.lambda_max);
  j["lambda_min"] = num(cls.lambda_min);
  j["translation_length"] = num(cls.translation_length());
  j["fixed_interior_point"] = cls.fixed_interior_point ? vec_json(*cls.fixed_interior_point) : Json();
  j["summary"] = std::string(to_string(cls.kind)) + ", translation length " +
                 fmt9(cls.translation_length());
  return {dump(j)};
}

Output cmd_limits(const RunConfig& c) {
  need_args(c, 2, "limits <domain> <gens> [--budget N]");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const GeneratorSet gens = generators_from_json(read_json_arg(c.args[1]), d.dim());
  const Vec x0 = c.x0.empty() ? d.basepoint() : point_from_json(read_json_arg(c.x0), d.dim());
  const LimitSetEstimate est = limit_set_estimate(d, gens, x0, c.budget > 0 ? c.budget : 2000, c.epsilon);
  Json clusters = Json::array();
  for (const LimitCluster& cl : est.clusters) {
    Json k = point_json(cl.representative);
    k["chart"] = vec_json(cl.chart);
    k["multiplicity"] = cl.multiplicity;
    k["word"] = gens.word_label(cl.word);
    Json witness = Json::array();
    for (std::size_t i = 0; i < cl.witness.size(); ++i) {
      witness.push_back({{"word", gens.word_label(cl.witness[i])},
                         {"distance", num(cl.witness_distances[i])}});
    }
    k["witness"] = witness;
    clusters.push_back(k);
  }
  Json j;
  j["budget"] = est.budget;
  j["epsilon"] = num(est.epsilon);
  j["violations"] = est.violations;
  j["clusters"] = clusters;
  return {dump(j), est.violations > 0 ? kExitCheckFailed : kExitOk};
}

Output cmd_cone(const RunConfig& c) {
  need_args(c, 1, "cone <domain>");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const AsymptoticCone ac = asymptotic_cone(d);
  Json j;
  j["ambient_dim"] = ac.ambient_dim;
  j["intrinsic_dim"] = ac.intrinsic_dim;
  j["is_cone"] = ac.intrinsic_dim == d.dim();
  j["span"] = mat_json(ac.span);
  j["central"] = ac.central.size() > 0 ? vec_json(ac.central) : Json();
  j["members"] = static_cast<int>(ac.members.size());
  if (ac.intrinsic_dim > 0) {
    const Leaf leaf = leaf_and_cone_point(d, ac, d.basepoint());
    j["leaf"] = {{"cone_point", vec_json(leaf.cone_point)},
                 {"offset", vec_json(leaf.offset)},
                 {"certified", leaf.certified}};
  }
  return {dump(j)};
}

// Leaves through x and through x pushed toward p in the horosphere chart.
std::vector<HorosphereLeaf> nested_leaves(const ConvexDomain& d, const HorosphereSpec& spec,
                                          const Vec& x, int count, int samples) {
  const ProjMap chart = normalize(spec.chart);
  const Mat back = spec.chart.inverse();
  const Vec y = apply_affine_chart(chart, x);
  std::vector<HorosphereLeaf> leaves;
  for (int k = 0; k < count; ++k) {
    const Vec yk = y + (std::pow(2.0, k) - 1.0) * spec.v;
    const Vec xh = back * homog(yk);
    if (std::abs(xh(xh.size() - 1)) < 1e-12) continue;
    const Vec xk = xh.head(xh.size() - 1) / xh(xh.size() - 1);
    if (!d.contains(xk)) continue;
    leaves.push_back(horosphere_through(d, spec, xk, samples));
  }
  return leaves;
}

std::string horosphere_svg(const ConvexDomain& d, const HorosphereSpec& spec,
                           const std::vector<HorosphereLeaf>& leaves) {
  const Mat back = spec.chart.inverse();
  const ConvexDomain bounded = bounded_realization(d);
  std::vector<Vec> outline;
  for (int k = 0; k < 720; ++k) {
    const double a = 2.0 * M_PI * k / 720.0;
    const Vec u = (Vec(2) << std::cos(a), std::sin(a)).finished();
    const RayHit hit = boundary_ray(bounded, bounded.basepoint(), u);
    if (!hit.at_infinity) outline.push_back(hit.point);
  }
  std::vector<std::vector<Vec>> curves;
  for (const HorosphereLeaf& leaf : leaves) {
    std::vector<Vec> curve;
    for (std::size_t i = 1; i < leaf.chart_points.size(); ++i) {
      curve.push_back(to_bounded_chart(d, ProjPoint(back * homog(leaf.chart_points[i]))));
    }
    curves.push_back(curve);
  }
  double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
  for (const Vec& p : outline) {
    lo_x = std::min(lo_x, p(0));
    hi_x = std::max(hi_x, p(0));
    lo_y = std::min(lo_y, p(1));
    hi_y = std::max(hi_y, p(1));
  }
  const double size = 480.0, pad = 10.0;
  const double scale = size / std::max(hi_x - lo_x, hi_y - lo_y);
  auto px = [&](const Vec& p) {
    return fmt9(pad + (p(0) - lo_x) * scale) + "," + fmt9(pad + (hi_y - p(1)) * scale);
  };
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt9(size + 2 * pad)
    << "\" height=\"" << fmt9(size + 2 * pad) << "\">\n";
  s << "<polygon fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (const Vec& p : outline) s << px(p) << " ";
  s << "\"/>\n";
  for (std::size_t i = 0; i < curves.size(); ++i) {
    s << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1\" points=\"";
    for (const Vec& p : curves[i]) s << px(p) << " ";
    s << "\"/>\n";
  }
  const std::string mark = px(to_bounded_chart(d, spec.p));
  const auto comma = mark.find(',');
  s << "<circle cx=\"" << mark.substr(0, comma) << "\" cy=\"" << mark.substr(comma + 1)
    << "\" r=\"3\" fill=\"firebrick\"/>\n";
  s << "</svg>\n";
  return s.str();
}

Output cmd_horosphere(const RunConfig& c) {
  need_args(c, 4, "horosphere <domain> <H> <p> <x> [--svg]");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const int n = d.dim();
  const Json hj = read_json_arg(c.args[1]);
  const Json pj = read_json_arg(c.args[2]);
  Vec h = Vec::Zero(n + 1), p;
  {
    const Mat hm = matrix_from_json(Json::array({hj}));
    if (hm.cols() != n + 1) invalid("H needs n+1 coordinates");
    h = hm.row(0).transpose();
    const Mat pm = matrix_from_json(Json::array({pj}));
    if (pm.cols() == n) p = homog(pm.row(0).transpose());
    else if (pm.cols() == n + 1) p = pm.row(0).transpose();
    else invalid("p needs n or n+1 coordinates");
  }
  const Vec x = point_from_json(read_json_arg(c.args[3]), n);
  const HorosphereSpec spec = make_horosphere_spec(d, Hyperplane(h), ProjPoint(p));
  const std::vector<HorosphereLeaf> leaves = nested_leaves(d, spec, x, c.leaves, c.samples);
  if (c.svg && n == 2) return {horosphere_svg(d, spec, leaves)};
  std::ostringstream s;
  if (c.svg) s << "# SVG needs a 2-dimensional domain; CSV in the original affine chart instead\n";
  else s << "# points in the original affine chart\n";
  s << "leaf,s";
  for (int i = 1; i <= n; ++i) s << ",x" << i;
  s << "\n";
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    for (const Vec& q : leaves[k].points) {
      s << k << "," << fmt9(leaves[k].s);
      for (int i = 0; i < n; ++i) s << "," << fmt9(q(i));
      s << "\n";
    }
  }
  return {s.str()};
}

Output cmd_orbit(const RunConfig& c) {
  need_args(c, 3, "orbit <domain> <gens> <x0> --len L");
  const ConvexDomain d = domain_from_json(read_json_arg(c.args[0]));
  const int n = d.dim();
  const GeneratorSet gens = generators_from_json(read_json_arg(c.args[1]), n);
  const Vec x0 = point_from_json(read_json_arg(c.args[2]), n);
  if (c.len < 0) invalid("--len must be nonnegative");
  const OrbitReport rep = orbit(d, gens, x0, c.len);
  std::ostringstream s;
  s << "word,length,at_infinity";
  for (int i = 1; i <= n; ++i) s << ",x" << i;
  s << "\n";
  for (const OrbitPoint& pt : rep.points) {
    s << gens.word_label(pt.word) << "," << pt.word.size() << "," << (pt.outside_chart ? 1 : 0);
    const Vec& h = pt.point.coords();
    for (int i = 0; i < n; ++i) {
      s << ",";
      if (!pt.outside_chart) s << fmt9(h(i) / h(n));
    }
    s << "\n";
  }
  return {s.str(), rep.violations > 0 ? kExitCheckFailed : kExitOk};
}

Json flags_json(const CatalogFlags& f) {
  return {{"homogeneous", f.homogeneous}, {"cone", f.cone}, {"strictly_convex", f.strictly_convex},
          {"decomposable", f.decomposable}, {"placeholder", f.placeholder}};
}

Json report_json(const EntryReport& r) {
  Json j;
  j["id"] = r.id;
  j["passed"] = r.passed();
  j["invariance"] = r.invariance;
  j["convexity"] = r.convexity;
  j["proper_convexity"] = r.proper_convexity;
  j["ac_match"] = r.ac_match;
  j["limit_witness_verified"] = r.limit_witness_verified;
  j["cone_point_fixed"] = r.cone_point_fixed;
  j["dilation_invariant"] = r.dilation_invariant;
  j["reduced"] = r.reduced;
  j["ac_dim"] = r.ac_dim;
  j["ac_agreement"] = num(r.ac_agreement);
  j["witness_distance"] = num(r.witness_distance);
  j["witness_iterations"] = r.witness_iterations;
  j["failures"] = r.failures;
  return j;
}

Output cmd_catalog(const RunConfig& c) {
  if (c.args.empty()) invalid("usage: catalog list|check <id>|classify <domain>");
  const std::string& action = c.args[0];
  if (action == "list") {
    need_args(c, 1, "catalog list");
    Json list = Json::array();
    for (const std::string& id : catalog_ids()) {
      const CatalogEntry e = catalog_get(id);
      list.push_back({{"id", e.id}, {"description", e.description}, {"dim", e.dim},
                      {"flags", flags_json(e.flags)}, {"generators", e.generators.size()}});
    }
    return {dump(list)};
  }
  if (action == "check") {
    need_args(c, 2, "catalog check <id|all>");
    std::vector<CatalogEntry> entries;
    const std::string id = normalize_catalog_id(c.args[1]);
    if (id == "all") {
      entries = catalog_list();
    } else if (!c.base.empty()) {
      entries.push_back(catalog_placeholder(id, domain_from_json(read_json_arg(c.base))));
    } else {
      entries.push_back(catalog_get(id));
    }
    Json reports = Json::array();
    bool ok = true;
    for (const CatalogEntry& e : entries) {
      Rng rng(c.seed);
      const EntryReport r = check_entry(e, c.budget > 0 ? c.budget : 1000, rng);
      Json j = report_json(r);
      if (c.syndetic && !e.flags.placeholder) {
        Rng srng(c.seed);
        const SyndeticReport s = syndetic_probe(e, 5.0, 40, 100, srng);
        j["syndetic"] = {{"samples", s.samples}, {"covered", s.covered},
                         {"coverage", num(s.coverage)}, {"longest_word", s.longest_word}};
        if (s.coverage < 1.0) ok = false;
      }
      ok = ok && r.passed();
      reports.push_back(j);
    }
    return {dump(id == "all" ? reports : reports[0]), ok ? kExitOk : kExitCheckFailed};
  }
  if (action == "classify") {
    need_args(c, 2, "catalog classify <domain>");
    const ConvexDomain d = domain_from_json(read_json_arg(c.args[1]));
    Rng rng(c.seed);
    const ClassificationEvidence ev = classify_against_catalog(d, rng);
    Json j;
    j["dim"] = ev.dim;
    j["ac_dim"] = ev.ac_dim;
    j["cone"] = ev.cone;
    j["strictly_convex"] = ev.strictly_convex;
    j["face_census"] = ev.face_census;
    j["quadric_residual"] = ev.quadric_residual ? num(*ev.quadric_residual) : Json();
    j["candidates"] = ev.candidates;
    return {dump(j)};
  }
  invalid("unknown catalog action '" + action + "'");
}

Output cmd_verify(const RunConfig& c) {
  need_args(c, 1, "verify prop76 [--trials N]");
  if (c.args[0] != "prop76") invalid("unknown verification '" + c.args[0] + "'");
  if (c.trials < 1) invalid("--trials must be positive");
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double closed_worst = 0.0;
  int closed_cases = 0;
  for (int trial = 0; trial < c.trials; ++trial) {
    Prop76Params p;
    p.alpha1 = 0.5 + 1.5 * unit(rng);
    p.alpha2 = 0.5 + 1.5 * unit(rng);
    p.beta1 = 2.0 * unit(rng) - 1.0;
    p.beta2 = 2.0 * unit(rng) - 1.0;
    p.beta3 = 2.0 * unit(rng) - 1.0;
    p.d = 2.0 * (1.0 - unit(rng));
    for (int n = 2; n <= 6; ++n) {
      p.n = n;
      closed_worst = std::max(closed_worst, verify_prop76_fn_closed_form(p).max_rel_error);
      ++closed_cases;
    }
  }
  double off = 0.0, shape = 0.0, ident = 0.0, lin = 0.0, group = 0.0;
  bool iso_ok = true;
  for (int trial = 0; trial < c.trials; ++trial) {
    Prop76Params p;
    p.delta = p.theta = 0.2 + 0.7 * unit(rng);
    p.beta1 = 2.0 * unit(rng) - 1.0;
    p.beta2 = 2.0 * unit(rng) - 1.0;
    p.t = 4.0 * unit(rng) - 2.0;
    p.n = trial % 7;
    const IsotropyReport r = verify_prop76_isotropy(p, c.seed + static_cast<std::uint64_t>(trial));
    off = std::max(off, r.off_diagonal);
    shape = std::max(shape, r.shape_error);
    ident = std::max(ident, r.identity_error);
    lin = std::max(lin, r.linearity_error);
    group = std::max(group, r.group_law_error);
    iso_ok = iso_ok && r.passed;
  }
  const bool closed_ok = closed_worst < 1e-10;
  Json j;
  j["closed_form"] = {{"cases", closed_cases}, {"max_rel_error", num(closed_worst)},
                      {"passed", closed_ok}};
  j["isotropy"] = {{"trials", c.trials},      {"off_diagonal", num(off)},
                   {"shape_error", num(shape)}, {"identity_error", num(ident)},
                   {"linearity_error", num(lin)}, {"group_law_error", num(group)},
                   {"passed", iso_ok}};
  return {dump(j), closed_ok && iso_ok ? kExitOk : kExitCheckFailed};
}

bool is_input_error(ErrorKind k) {
  switch (k) {
    case ErrorKind::kInvalidInput:
    case ErrorKind::kUnknownId:
    case ErrorKind::kNotInterior:
    case ErrorKind::kNotBoundary:
    case ErrorKind::kNotPreserved:
    case ErrorKind::kNotFixed:
    case ErrorKind::kSingularMap:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Output result;
  try {
    const std::string& cmd = config.command;
    if (cmd == "dist") result = cmd_dist(config);
    else if (cmd == "classify") result = cmd_classify(config);
    else if (cmd == "limits") result = cmd_limits(config);
    else if (cmd == "cone") result = cmd_cone(config);
    else if (cmd == "horosphere") result = cmd_horosphere(config);
    else if (cmd == "orbit") result = cmd_orbit(config);
    else if (cmd == "catalog") result = cmd_catalog(config);
    else if (cmd == "verify") result = cmd_verify(config);
    else invalid("unknown command '" + cmd + "'");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kExitInvalidInput : kExitCheckFailed;
  }
  if (config.output.empty()) {
    out << result.text;
  } else {
    std::ofstream f(config.output, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << config.output << "'\n";
      return kExitInvalidInput;
    }
    f << result.text;
  }
  return result.status;
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Hilbert geometry of quasi-homogeneous convex domains"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "seed for all sampling")->capture_default_str();
  app.add_option("-o,--output", cfg.output, "output file (stdout when absent)");

  struct Spec {
    const char* name;
    const char* help;
    std::vector<const char*> positionals;
  };
  const std::vector<Spec> specs = {
      {"dist", "Hilbert distance between two interior points", {"domain", "p1", "p2"}},
      {"classify", "elliptic / parabolic / hyperbolic classification", {"domain", "matrix"}},
      {"limits", "limit set estimate with witness words", {"domain", "gens"}},
      {"cone", "asymptotic cone", {"domain"}},
      {"horosphere", "nested horospheres (SVG in 2D, CSV otherwise)", {"domain", "H", "p", "x"}},
      {"orbit", "orbit points as CSV", {"domain", "gens", "x0"}},
      {"catalog", "catalog list | check <id|all> | classify <domain>", {"action", "target"}},
      {"verify", "algebraic identity checks (prop76)", {"what"}},
  };
  std::vector<std::vector<std::string>> pos(specs.size());
  std::vector<std::vector<CLI::Option*>> slots(specs.size());
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    CLI::App* sub = app.add_subcommand(specs[i].name, specs[i].help);
    subs.push_back(sub);
    // One scalar per slot: vector positionals make CLI11 split inline JSON.
    pos[i].resize(specs[i].positionals.size());
    for (std::size_t k = 0; k < pos[i].size(); ++k)
      slots[i].push_back(sub->add_option(specs[i].positionals[k], pos[i][k]));
  }
  subs[2]->add_option("--budget", cfg.budget, "orbit nodes explored")->capture_default_str();
  subs[2]->add_option("--x0", cfg.x0, "start point (basepoint by default)");
  subs[2]->add_option("--epsilon", cfg.epsilon, "boundary proximity")->capture_default_str();
  subs[4]->add_flag("--svg", cfg.svg, "emit SVG (2D domains)");
  subs[4]->add_option("--leaves", cfg.leaves, "number of nested leaves")->capture_default_str();
  subs[4]->add_option("--samples", cfg.samples, "points per leaf")->capture_default_str();
  subs[5]->add_option("--len", cfg.len, "maximal word length")->capture_default_str();
  subs[6]->add_option("--budget", cfg.budget, "samples per check")->capture_default_str();
  subs[6]->add_option("--base", cfg.base, "base body for placeholder entries");
  subs[6]->add_flag("--syndetic", cfg.syndetic, "also run the syndetic probe");
  subs[7]->add_option("--trials", cfg.trials, "random parameter draws")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    if (subs[i]->parsed()) {
      cfg.command = specs[i].name;
      for (std::size_t k = 0; k < pos[i].size(); ++k)
        if (slots[i][k]->count() > 0) cfg.args.push_back(pos[i][k]);
    }
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace qhd
