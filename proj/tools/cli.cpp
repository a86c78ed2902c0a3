#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "qrange/error.hpp"
#include "qrange/graph.hpp"
#include "qrange/matrix_io.hpp"
#include "qrange/predicates.hpp"
#include "qrange/range.hpp"
#include "qrange/verify.hpp"

namespace qrange::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string path;
  std::size_t samples = 100000;
  std::uint64_t seed = 42;
  std::size_t grid = 512;
  double tol = 1e-10;
  std::size_t support_angles = 1024;
  std::string svg;
  std::string json_path;
  std::string manifest;
  std::string suite;
  double radius_scale = 1.0;
};

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

json one_based(std::span<const std::size_t> v) {
  json out = json::array();
  for (std::size_t k : v) out.push_back(k + 1);
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
  if (!f) throw InputError("failed writing " + path);
}

/// Text of the input file (hashed for the manifest) and the parsed matrix.
struct Input {
  std::string text;
  QMatrix matrix;
};

Input load(const std::string& path) {
  Input in;
  in.text = read_text_file(path);
  try {
    in.matrix = parse_matrix_json(in.text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  return in;
}

json classification_json(const Classification3& c) {
  return {{"cycle_free", c.cycle_free},
          {"triple_product", quaternion_to_json(c.triple_product)},
          {"circular", c.circular},
          {"convex", c.convex},
          {"realifiable", c.realifiable},
          {"permutation", one_based(c.permutation)}};
}

bool all_real(const QMatrix& a) {
  return std::all_of(a.entries().begin(), a.entries().end(), [](const Quaternion& q) { return q.pure_norm() == 0.0; });
}

// ---------------------------------------------------------------------------

json analyze(const QMatrix& a, const Options& o) {
  const AdjGraph full = build_graph(a);
  const AdjGraph off = build_off_diagonal_graph(a);
  const bool nilpotent = is_nilpotent(a, o.tol);
  json comps = json::array();
  for (const auto& c : off.components) comps.push_back(one_based(c));

  json r{{"n", a.size()},
         {"nilpotent", nilpotent},
         {"nilpotent_via_chi", is_nilpotent_via_chi(a, o.tol)},
         {"upper_triangular", a.upper_triangular()},
         {"strictly_upper_triangular", a.strictly_upper_triangular()},
         {"real_diagonal", a.real_diagonal()},
         {"connected", is_connected(off)},
         {"cycle_free", is_cycle_free(off)},
         {"cycle_free_including_loops", is_cycle_free(full)},
         {"loops", one_based(full.loops)},
         {"tree", is_tree(off)},
         {"edge_count", off.edge_count},
         {"components", std::move(comps)},
         {"permutation", one_based(component_permutation(off))}};

  if (nilpotent) {
    try {
      const Permutation p = is_tree(full) ? tree_triangularizing_permutation(a, full, o.tol) : triangularizing_permutation(a);
      r["triangularizing_permutation"] = one_based(p);
    } catch (const PreconditionError& e) {
      r["triangularizing_permutation_error"] = e.what();
    }
    if (is_cycle_free(full)) {
      const DiskUnion u = cyclefree_disk(a, o.tol);
      r["disk"] = {{"center", 0.0}, {"radius", u.radii[0]}};
    }
    if (a.size() == 3) {
      try {
        r["classification"] = classification_json(classify3(a, o.tol));
      } catch (const PreconditionError& e) {
        r["classification_error"] = e.what();
      }
    }
  }
  return r;
}

json classify(const QMatrix& a, const Options& o) {
  json r = classification_json(classify3(a, o.tol));
  const Classification3 c = classify3(a, o.tol);
  if (c.realifiable) {
    const Realification re = realifying_unitary(permute(a, c.permutation), o.tol);
    r["realified"] = matrix_to_json(re.r);
    r["unitary"] = matrix_to_json(re.u);
  }
  const QMatrix t = permute(a, c.permutation);
  if (!t.is_zero_entry(0, 1) && !t.is_zero_entry(0, 2) && !t.is_zero_entry(1, 2)) {
    const DirectionClass d = max_direction_class(a, o.tol);
    r["max_direction_class"] = {{"representative", quaternion_to_json(d.representative)}, {"modulus", d.modulus}};
  }
  return r;
}

// ---------------------------------------------------------------------------
// bild

struct Overlays {
  std::optional<DiskUnion> disks;
  std::vector<Point2> envelope;
  std::optional<SupportBoundary> support;
};

Overlays overlays_for(const QMatrix& a, const Options& o) {
  Overlays ov;
  if (is_nilpotent(a, o.tol) && is_cycle_free(build_graph(a))) {
    ov.disks = cyclefree_disk(a, o.tol);
  } else if (a.real_diagonal()) {
    const DiagonalSplit split = split_diagonal(a);
    if (is_tree(build_graph(split.n))) {
      QuadMaxOptions qo;
      qo.tol = o.tol;
      ov.disks = disk_union(split.d, split.n, o.grid, qo);
    }
  }
  if (ov.disks) ov.envelope = envelope(*ov.disks);
  if (all_real(a)) ov.support = support_boundary(as_complex(a), std::max<std::size_t>(8, o.support_angles));
  return ov;
}

std::string svg_document(const BildCloud& cloud, const Overlays& ov) {
  double xlo = 0.0, xhi = 0.0, ylo = 0.0, yhi = 0.0;
  const auto extend = [&](double x, double y) {
    xlo = std::min(xlo, x);
    xhi = std::max(xhi, x);
    ylo = std::min(ylo, y);
    yhi = std::max(yhi, y);
  };
  for (const auto& p : cloud.points) extend(p.re, p.im);
  for (const auto& p : ov.envelope) extend(p.x, p.y);
  if (ov.support)
    for (const auto& p : ov.support->points) extend(p.x, p.y);
  const double pad = 0.05 * std::max({xhi - xlo, yhi - ylo, 1e-3});
  xlo -= pad;
  xhi += pad;
  ylo -= pad;
  yhi += pad;
  const double w = xhi - xlo, h = yhi - ylo;
  const double stroke = 0.004 * std::max(w, h);

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"" + num(std::max(100.0, 800.0 * h / w)) +
       "\" viewBox=\"" + num(xlo) + " " + num(-yhi) + " " + num(w) + " " + num(h) + "\">\n";
  s += "<line x1=\"" + num(xlo) + "\" y1=\"0\" x2=\"" + num(xhi) + "\" y2=\"0\" stroke=\"#999\" stroke-width=\"" +
       num(stroke / 4) + "\"/>\n";
  s += "<path fill=\"none\" stroke=\"#1f77b4\" stroke-opacity=\"0.35\" stroke-linecap=\"round\" stroke-width=\"" +
       num(stroke) + "\" d=\"";
  for (const auto& p : cloud.points) s += "M" + num(p.re) + " " + num(-p.im) + "h0";
  s += "\"/>\n";
  if (!ov.envelope.empty()) {
    s += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"" + num(stroke / 2) + "\" points=\"";
    for (const auto& p : ov.envelope) s += num(p.x) + "," + num(-p.y) + " ";
    s += "\"/>\n";
  }
  if (ov.support) {
    s += "<polygon fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"" + num(stroke / 2) + "\" points=\"";
    for (const auto& p : ov.support->points) s += num(p.x) + "," + num(-p.y) + " ";
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

json points_json(std::span<const Point2> pts) {
  json out = json::array();
  for (const auto& p : pts) out.push_back({p.x, p.y});
  return out;
}

int bild(const QMatrix& a, const Options& o, std::ostream& out) {
  if (o.samples == 0) throw InputError("--samples must be positive");
  const BildCloud cloud =
      o.support_angles == 0 ? sample_bild(a, o.samples, o.seed) : dense_bild(a, o.samples, o.seed, o.support_angles);
  const Overlays ov = overlays_for(a, o);

  std::string csv = "re,im\n";
  csv.reserve(cloud.points.size() * 48);
  for (const auto& p : cloud.points) csv += num(p.re) + "," + num(p.im) + "\n";
  out << csv;

  if (!o.svg.empty()) write_file(o.svg, svg_document(cloud, ov));
  if (!o.json_path.empty()) {
    double max_mod = 0.0;
    for (const auto& p : cloud.points) max_mod = std::max(max_mod, p.modulus());
    json summary{{"points", cloud.points.size()},
                 {"uniform_samples", o.samples},
                 {"support_points", cloud.points.size() - o.samples},
                 {"seed", o.seed},
                 {"source_hash", hex64(cloud.source_hash)},
                 {"max_modulus", max_mod}};
    if (ov.disks) {
      const Interval ext = real_extent(*ov.disks);
      summary["disk_union"] = {{"d_low", ov.disks->d_low},
                               {"d_high", ov.disks->d_high},
                               {"centers", ov.disks->centers},
                               {"radii", ov.disks->radii},
                               {"real_extent", {ext.lo, ext.hi}}};
      summary["envelope"] = points_json(ov.envelope);
    }
    if (ov.support) {
      summary["support_boundary"] = {{"support", ov.support->support}, {"points", points_json(ov.support->points)}};
    }
    write_file(o.json_path, summary.dump(2) + "\n");
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------

json manifest(const std::string& command, const Options& o, const std::string& input_text, double seconds) {
  json m{{"command", command},
         {"seed", o.seed},
         {"samples", o.samples},
         {"grid", o.grid},
         {"tol", o.tol},
         {"support_angles", o.support_angles},
         {"tool_version", QRANGE_VERSION},
         {"wall_time_s", seconds}};
  if (!o.path.empty()) {
    m["input"] = o.path;
    m["input_hash"] = hex64(fnv1a(input_text));
  }
  if (!o.suite.empty()) m["suite"] = o.suite;
  if (o.radius_scale != 1.0) m["radius_scale"] = o.radius_scale;
  return m;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--samples", o.samples, "Uniform samples of the unit sphere")->capture_default_str();
  sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  sub->add_option("--grid", o.grid, "Disk-union grid size")->capture_default_str();
  sub->add_option("--tol", o.tol, "Tolerance for nilpotency and reality tests")->capture_default_str();
  sub->add_option("--support-angles", o.support_angles, "Boundary directions added to sampled clouds (0: none)")
      ->capture_default_str();
  sub->add_option("--svg", o.svg, "Write an SVG rendering to this path");
  sub->add_option("--json", o.json_path, "Write the JSON report to this path");
  sub->add_option("--manifest", o.manifest, "Write the run manifest here instead of stderr");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quaternionic numerical ranges of nilpotent and diagonal-plus-nilpotent matrices", "qrange"};
  app.set_version_flag("--version", std::string(QRANGE_VERSION));
  app.require_subcommand(1);
  Options o;

  auto* an = app.add_subcommand("analyze", "Graph structure, nilpotency and 3 x 3 classification");
  an->add_option("path", o.path, "Matrix file")->required();
  add_common(an, o);
  auto* bi = app.add_subcommand("bild", "Sampled upper Bild as CSV, with disk-union and support overlays");
  bi->add_option("path", o.path, "Matrix file")->required();
  add_common(bi, o);
  auto* cl = app.add_subcommand("classify", "Circularity and convexity of a 3 x 3 nilpotent matrix");
  cl->add_option("path", o.path, "Matrix file")->required();
  add_common(cl, o);
  auto* ve = app.add_subcommand("verify", "Cross-check closed forms against sampling oracles");
  ve->add_option("path", o.path, "Matrix file (omit to run a suite)");
  ve->add_option("--suite", o.suite, "paper-examples or random")->check(CLI::IsMember({"paper-examples", "random"}));
  ve->add_option("--radius-scale", o.radius_scale, "Scale closed-form radii (negative control)")->capture_default_str();
  add_common(ve, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  std::string input_text;
  int code = kExitOk;
  try {
    QMatrix a;
    if (!o.path.empty()) {
      Input in = load(o.path);
      input_text = std::move(in.text);
      a = std::move(in.matrix);
    }
    json report;
    if (an->parsed()) {
      command = "analyze";
      report = analyze(a, o);
    } else if (cl->parsed()) {
      command = "classify";
      report = classify(a, o);
    } else if (bi->parsed()) {
      command = "bild";
      code = bild(a, o, out);
    } else {
      command = "verify";
      if (!o.path.empty() && !o.suite.empty()) throw InputError("verify takes either a matrix file or --suite, not both");
      if (o.samples == 0) throw InputError("--samples must be positive");
      VerifyOptions vo;
      vo.samples = o.samples;
      vo.seed = o.seed;
      vo.grid = o.grid;
      vo.tol = o.tol;
      vo.support_angles = o.support_angles;
      vo.radius_scale = o.radius_scale;
      VerifyReport rep;
      if (!o.path.empty()) {
        rep = verify_matrix(a, vo);
      } else {
        if (o.suite.empty()) o.suite = "paper-examples";
        rep = o.suite == "random" ? verify_random(vo) : verify_worked_examples(vo);
      }
      report = to_json(rep);
      if (!rep.all_passed()) code = kExitVerification;
    }
    if (command != "bild") {
      const std::string text = report.dump(2) + "\n";
      out << text;
      if (!o.json_path.empty()) write_file(o.json_path, text);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::internal ? kExitInternal : kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternal;
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json m = manifest(command, o, input_text, seconds);
  try {
    if (o.manifest.empty()) {
      err << "manifest: " << m.dump() << "\n";
    } else {
      write_file(o.manifest, m.dump(2) + "\n");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return code;
}

}  // namespace qrange::cli
