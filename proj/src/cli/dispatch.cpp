/*
 * Copyright 2026 The explab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "explab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "explab/cubes.hpp"
#include "explab/curvature.hpp"
#include "explab/errors.hpp"
#include "explab/extract.hpp"
#include "explab/fit.hpp"
#include "explab/measure.hpp"
#include "explab/parallel.hpp"
#include "explab/parser.hpp"
#include "explab/report.hpp"
#include "explab/runner.hpp"
#include "explab/symbolic.hpp"

namespace explab::cli {

namespace {

using ojson = nlohmann::ordered_json;
using grid::GridSet1D;
using grid::GridSet2D;

struct Common {
  std::string format = "text";
  int precision = 6;
  unsigned threads = 0;
  std::string out_path;
};

// Ordered fields plus an optional per-scale table.
struct Result {
  ojson fields = ojson::object();
  std::vector<std::string> columns;
  std::vector<std::vector<ojson>> rows;
  std::string raw;  // preformatted text output, used verbatim for --format text
};

ojson num(double v, int digits) {
  if (!std::isfinite(v)) return nullptr;
  const double r = harness::round_significant(v, digits);
  if (r == std::floor(r) && std::fabs(r) < 9007199254740992.0) return static_cast<std::int64_t>(r);
  return r;
}

std::string text_of(const ojson& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "nan";
  return v.dump();
}

void render(const Result& r, const Common& c, std::ostream& out) {
  if (c.format == "json") {
    ojson j = r.fields;
    if (!r.columns.empty()) {
      ojson rows = ojson::array();
      for (const auto& row : r.rows) {
        ojson o = ojson::object();
        for (std::size_t n = 0; n < r.columns.size(); ++n) o[r.columns[n]] = row[n];
        rows.push_back(o);
      }
      j["rows"] = rows;
    }
    out << j.dump(2) << '\n';
    return;
  }
  if (c.format == "csv") {
    if (!r.columns.empty()) {
      for (std::size_t n = 0; n < r.columns.size(); ++n) out << (n ? "," : "") << r.columns[n];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t n = 0; n < row.size(); ++n) out << (n ? "," : "") << text_of(row[n]);
        out << '\n';
      }
    } else {
      out << "key,value\n";
      for (auto it = r.fields.begin(); it != r.fields.end(); ++it) out << it.key() << ',' << text_of(*it) << '\n';
    }
    return;
  }
  if (!r.raw.empty()) {
    out << r.raw;
    return;
  }
  for (auto it = r.fields.begin(); it != r.fields.end(); ++it) out << it.key() << ": " << text_of(*it) << '\n';
  if (!r.columns.empty()) {
    for (std::size_t n = 0; n < r.columns.size(); ++n) out << (n ? "\t" : "") << r.columns[n];
    out << '\n';
    for (const auto& row : r.rows) {
      for (std::size_t n = 0; n < row.size(); ++n) out << (n ? "\t" : "") << text_of(row[n]);
      out << '\n';
    }
  }
}

struct SetOpts {
  std::string gen = "ap";
  std::string alpha = "1/2";
  std::string eta = "0";
  std::string pattern = "0,1";
  unsigned base = 4;
  std::uint64_t seed = 1;
  std::string k = "12";
  std::string in;

  harness::Scenario as_scenario() const {
    std::ostringstream text;
    text << "schema=1\nname=cli\nkind=product\npoly=x\ngen=" << gen << "\nalpha=" << alpha << "\neta=" << eta
         << "\npattern=" << pattern << "\nbase=" << base << "\nseed=" << seed << "\nscales=" << k << '\n';
    return harness::parse_scenario_text(text.str());
  }
};

void add_set_options(CLI::App* sub, SetOpts& o) {
  sub->add_option("--gen", o.gen, "set generator")->check(CLI::IsMember({"ap", "cantor", "random"}));
  sub->add_option("--alpha", o.alpha, "dimension parameter (ap, random)");
  sub->add_option("--eta", o.eta, "spacing exponent excess (ap)");
  sub->add_option("--pattern", o.pattern, "digit pattern, e.g. 0,1 (cantor)");
  sub->add_option("--base", o.base, "digit base, a power of two (cantor)");
  sub->add_option("--seed", o.seed, "seed (random)");
  sub->add_option("--k", o.k, "scale or ladder: 12, 10-14, 16-28:2, 8,9,10");
  sub->add_option("--in", o.in, "read the set from a gridset1d file instead");
}

std::vector<std::pair<int, GridSet1D>> make_sets(const SetOpts& o) {
  std::vector<std::pair<int, GridSet1D>> out;
  if (!o.in.empty()) {
    std::ifstream f(o.in);
    if (!f) throw DomainError("cannot open '" + o.in + "'");
    GridSet1D s = grid::read_gridset1d(f);
    out.emplace_back(s.scale().k(), s);
    return out;
  }
  const harness::Scenario sc = o.as_scenario();
  for (int k : sc.scales) out.emplace_back(k, harness::scenario_set(sc, k));
  return out;
}

GridSet2D read_2d(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "'");
  return grid::read_gridset2d(f);
}

void add_fit(Result& r, const std::string& name, const std::vector<int>& ks, const std::vector<double>& vals,
             int digits) {
  if (ks.size() < 3) return;
  const grid::ExponentFit f = grid::fit_counts(ks, vals);
  r.fields[name] = num(f.slope, digits);
  r.fields[name + "_residual"] = num(f.residual, digits);
}

std::pair<double, double> parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw DomainError("point must be x,y");
  return {harness::parse_real(s.substr(0, comma)), harness::parse_real(s.substr(comma + 1))};
}

std::shared_ptr<const geom::Region> parse_region(const std::string& s) {
  if (s == "empty") return geom::Region::empty();
  if (s == "full") return geom::Region::full_square();
  if (s.rfind("puncture:", 0) == 0) {
    std::vector<std::pair<double, double>> pts;
    std::istringstream is(s.substr(9));
    std::string item;
    while (std::getline(is, item, ';')) pts.push_back(parse_point(item));
    return geom::Region::punctured(std::move(pts));
  }
  if (s.rfind("poly:", 0) == 0) return geom::Region::polynomial_complement(poly::parse_poly2(s.substr(5)));
  throw DomainError("region must be empty, full, puncture:x,y[;x,y...] or poly:<expr>");
}

Result decomposition_result(const geom::CubeDecomposition& d, const Common& c) {
  Result r;
  std::ostringstream text;
  geom::write_decomposition(text, d);
  r.raw = text.str();
  r.fields["cubes"] = d.cubes.size();
  r.fields["leftover_cells"] = d.leftover.size();
  ojson cubes = ojson::array();
  r.columns = {"k", "i", "j", "flag", "bands"};
  for (const geom::Cube& q : d.cubes) {
    ojson bands = ojson::array();
    std::string joined;
    for (const Rational& v : q.bands) {
      bands.push_back(explab::to_string(v));
      joined += (joined.empty() ? "" : ";") + explab::to_string(v);
    }
    if (c.format == "json") {
      cubes.push_back({{"k", q.level}, {"i", q.i}, {"j", q.j}, {"flag", geom::to_string(q.flag)}, {"bands", bands}});
    } else {
      r.rows.push_back({q.level, q.i, q.j, geom::to_string(q.flag), joined});
    }
  }
  if (c.format == "json") {
    r.columns.clear();
    r.fields["cube_list"] = cubes;
  }
  return r;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"explab: discretized expansion experiments"};
  app.name(argv.empty() ? "explab" : argv[0]);
  app.require_subcommand(1, 1);
  app.fallthrough();
  Common common;
  app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision", common.precision, "significant digits for floating output")
      ->check(CLI::Range(1, 17));
  app.add_option("--threads", common.threads, "worker thread cap (0 = hardware)")->envname("EXPLAB_THREADS");
  app.add_option("--out", common.out_path, "write output to this file instead of stdout");

  std::function<Result()> action;
  auto digits = [&] { return common.precision; };

  // classify / mp / hf
  std::string expr;
  auto* classify = app.add_subcommand("classify", "special form versus expander");
  classify->add_option("poly", expr, "polynomial in x, y")->required();
  classify->callback([&] {
    action = [&] {
      const poly::Poly2 p = poly::parse_poly2(expr);
      const poly::Classification c = poly::classify_special_form(p);
      Result r;
      r.fields["polynomial"] = poly::to_string(p);
      r.fields["verdict"] = poly::to_string(c.verdict);
      r.fields["reason"] = poly::to_string(c.reason);
      if (c.witness) {
        r.fields["witness_degree"] = c.witness->degree();
        r.fields["witness"] = poly::to_string(*c.witness);
      }
      return r;
    };
  });
  auto* mp = app.add_subcommand("mp", "the K_P numerator M_P");
  mp->add_option("poly", expr, "polynomial in x, y")->required();
  mp->callback([&] {
    action = [&] {
      const poly::Poly2 p = poly::parse_poly2(expr);
      const poly::Poly2 m = poly::mp_numerator(p);
      Result r;
      r.fields["polynomial"] = poly::to_string(p);
      r.fields["mp"] = poly::to_string(m);
      r.fields["degree"] = m.degree();
      return r;
    };
  });
  auto* hf = app.add_subcommand("hf", "H_F for F = P(x, y) - P(xp, yp)");
  hf->add_option("poly", expr, "polynomial in x, y")->required();
  hf->callback([&] {
    action = [&] {
      const poly::Poly2 p = poly::parse_poly2(expr);
      Result r;
      r.fields["polynomial"] = poly::to_string(p);
      r.fields["hf"] = poly::to_string(poly::hf_poly(p));
      return r;
    };
  });

  // curvature
  std::string maps, point, method = "auto";
  auto* curv = app.add_subcommand("curvature", "Blaschke curvature of a 3-web at a point");
  curv->add_option("--maps", maps, "three maps: pin:x,y / linear:theta / poly:<expr>, ';'-separated")->required();
  curv->add_option("--at", point, "point x,y")->required();
  curv->add_option("--method", method, "auto or newton")->check(CLI::IsMember({"auto", "newton"}));
  curv->callback([&] {
    action = [&] {
      const auto f = harness::parse_map_list(maps);
      if (f.size() != 3) throw DomainError("curvature needs exactly three maps");
      const auto [x, y] = parse_point(point);
      const double v = method == "newton" ? geom::blaschke_curvature_newton(f[0], f[1], f[2], x, y)
                                          : geom::blaschke_curvature(f[0], f[1], f[2], x, y);
      Result r;
      r.fields["x"] = num(x, digits());
      r.fields["y"] = num(y, digits());
      r.fields["curvature"] = num(v, digits());
      return r;
    };
  });

  // cover / nonconc / image / energy
  SetOpts cover_set;
  int kp = 0;
  auto* cover = app.add_subcommand("cover", "delta-covering numbers of a 1D set");
  add_set_options(cover, cover_set);
  cover->add_option("--kp", kp, "coarse scale k' (default: k)");
  cover->callback([&] {
    action = [&] {
      Result r;
      r.columns = {"k", "kp", "cells", "cover"};
      std::vector<int> ks;
      std::vector<double> counts;
      for (const auto& [k, s] : make_sets(cover_set)) {
        const int level = kp > 0 ? kp : k;
        const auto n = grid::covering_number(s, level);
        r.rows.push_back({k, level, s.size(), n});
        ks.push_back(k);
        counts.push_back(double(n));
      }
      if (kp == 0) add_fit(r, "box_dimension", ks, counts, digits());
      return r;
    };
  });

  SetOpts nc_set;
  std::string kappa;
  auto* nonconc = app.add_subcommand("nonconc", "non-concentration exponent eta over dyadic intervals");
  add_set_options(nonconc, nc_set);
  nonconc->add_option("--kappa", kappa, "kappa in (0, 1] (default: alpha)");
  nonconc->callback([&] {
    action = [&] {
      Result r;
      r.columns = {"k", "cells", "eta", "raw", "floored", "level", "index", "count"};
      const double alpha = harness::parse_real(nc_set.alpha);
      const double kap = kappa.empty() ? alpha : harness::parse_real(kappa);
      for (const auto& [k, s] : make_sets(nc_set)) {
        const grid::NonConcentration nc = grid::nonconcentration_exponent(s, kap, alpha);
        r.rows.push_back({k, s.size(), num(nc.eta, digits()), num(nc.raw, digits()), nc.floored, nc.level, nc.index,
                          nc.count});
      }
      return r;
    };
  });

  SetOpts image_set_opts;
  std::string image_poly;
  auto* image = app.add_subcommand("image", "image set P(A, A) at scale delta");
  image->add_option("--poly", image_poly, "polynomial in x, y")->required();
  add_set_options(image, image_set_opts);
  image->callback([&] {
    action = [&] {
      const poly::Poly2 p = poly::parse_poly2(image_poly);
      Result r;
      r.fields["polynomial"] = poly::to_string(p);
      r.columns = {"k", "cells", "image", "offset", "extra_bits"};
      std::vector<int> ks;
      std::vector<double> counts;
      for (const auto& [k, s] : make_sets(image_set_opts)) {
        const grid::ImageSet im = grid::image_set(p, s, s);
        r.rows.push_back({k, s.size(), im.cells.size(), explab::to_string(im.offset), im.extra_bits});
        ks.push_back(k);
        counts.push_back(double(im.cells.size()));
      }
      add_fit(r, "image_exponent", ks, counts, digits());
      return r;
    };
  });

  SetOpts energy_set;
  std::string energy_poly, hf_min;
  auto* energy = app.add_subcommand("energy", "energy quadruple count on A x A");
  energy->add_option("--poly", energy_poly, "polynomial in x, y")->required();
  energy->add_option("--hf-min", hf_min, "drop quadruples with |H_F| certified below this value");
  add_set_options(energy, energy_set);
  energy->callback([&] {
    action = [&] {
      const poly::Poly2 p = poly::parse_poly2(energy_poly);
      std::optional<Rational> threshold;
      if (!hf_min.empty()) threshold = rational_from_double(harness::parse_real(hf_min));
      Result r;
      r.fields["polynomial"] = poly::to_string(p);
      r.columns = {"k", "cells", "energy", "log2_energy_per_k", "log2_cells_per_k"};
      std::vector<int> ks;
      std::vector<double> counts;
      for (const auto& [k, s] : make_sets(energy_set)) {
        const std::uint64_t e = grid::energy_count(p, s, s, threshold);
        r.rows.push_back({k, s.size(), e, num(std::log2(double(e)) / k, digits()),
                          num(std::log2(double(s.size())) / k, digits())});
        ks.push_back(k);
        counts.push_back(double(e));
      }
      add_fit(r, "energy_exponent", ks, counts, digits());
      return r;
    };
  });

  // whitney / bands / extract
  std::string region = "full";
  int kmax = 8;
  auto* whitney = app.add_subcommand("whitney", "dyadic Whitney decomposition of a region in [0,1]^2");
  whitney->add_option("--region", region, "empty, full, puncture:x,y[;x,y], poly:<expr>");
  whitney->add_option("--kmax", kmax, "maximum depth");
  whitney->callback([&] {
    action = [&] { return decomposition_result(geom::whitney_decompose(*parse_region(region), grid::Scale(kmax)), common); };
  });

  std::string band_poly, band_fs, band_in, band_w = "1/5";
  int band_k = 8;
  auto* bands = app.add_subcommand("bands", "band partition where each |f_j| is pinned within a factor 4");
  bands->add_option("--poly", band_poly, "track P_x, P_y, P_xy, M_P of this polynomial");
  bands->add_option("--fs", band_fs, "explicit map list instead (pin:/linear:/poly:, ';'-separated)");
  bands->add_option("--w", band_w, "threshold exponent: bands start at delta^w");
  bands->add_option("--k", band_k, "scale of the full grid");
  bands->add_option("--in", band_in, "gridset2d file for A (default: full grid at --k)");
  bands->callback([&] {
    action = [&] {
      std::vector<geom::SmoothMap2> fs;
      if (!band_fs.empty()) {
        fs = harness::parse_map_list(band_fs);
      } else if (!band_poly.empty()) {
        const poly::Poly2 p = poly::parse_poly2(band_poly);
        for (const poly::Poly2& f : {p.partial(poly::kX), p.partial(poly::kY),
                                      p.partial(poly::kX).partial(poly::kY), poly::mp_numerator(p)})
          fs.push_back(geom::SmoothMap2::polynomial(f));
      } else {
        throw DomainError("bands needs --poly or --fs");
      }
      const GridSet2D a = band_in.empty() ? GridSet2D::full(grid::Scale(band_k)) : read_2d(band_in);
      const geom::CubeDecomposition d = geom::band_partition(fs, harness::parse_real(band_w), a);
      Result r = decomposition_result(d, common);
      const ojson frac = num(double(d.leftover.size()) / double(a.size()), digits());
      r.fields["leftover_fraction"] = frac;
      r.raw = "# leftover_fraction " + text_of(frac) + "\n" + r.raw;
      return r;
    };
  });

  std::string extract_in, extract_map = "poly:x + y";
  auto* extract = app.add_subcommand("extract", "popularity extraction of a product A x B from X");
  extract->add_option("--in", extract_in, "gridset2d file for X")->required();
  extract->add_option("--map", extract_map, "map whose image of X ∩ (A x B) is reported");
  extract->callback([&] {
    action = [&] {
      const GridSet2D x = read_2d(extract_in);
      const auto maps_list = harness::parse_map_list(extract_map);
      if (maps_list.size() != 1) throw DomainError("extract needs exactly one map");
      const geom::ExtractResult e = geom::extract_product(x, maps_list[0]);
      Result r;
      r.fields["x_cells"] = e.report.x_cells;
      r.fields["a_cells"] = e.a.size();
      r.fields["b_cells"] = e.b.size();
      r.fields["intersection"] = e.report.intersection;
      r.fields["column_threshold"] = num(e.report.column_threshold, digits());
      r.fields["row_threshold"] = num(e.report.row_threshold, digits());
      r.fields["rounds"] = e.report.rounds;
      r.fields["alpha"] = num(e.report.alpha, digits());
      r.fields["eta_a"] = num(e.report.eta_a.eta, digits());
      r.fields["eta_b"] = num(e.report.eta_b.eta, digits());
      r.fields["image_cells"] = e.report.image_cells;
      return r;
    };
  });

  // scenarios
  std::string scenario_ref, plot_column;
  bool timing = false, strict = false;
  auto* scenario = app.add_subcommand("scenario", "run a builtin scenario or a scenario file");
  scenario->add_option("name", scenario_ref, "builtin name or path to a schema=1 file")->required();
  scenario->add_flag("--timing", timing, "include wall-clock seconds (reports are then not byte-stable)");
  scenario->add_option("--plot", plot_column, "emit two-column plot data for this scale column");
  scenario->add_flag("--strict", strict, "exit 1 when an expectation fails");
  bool scenario_failed = false;
  scenario->callback([&] {
    action = [&] {
      harness::Scenario s;
      std::ifstream f(scenario_ref);
      if (f) {
        s = harness::parse_scenario(f);
      } else {
        s = harness::builtin_scenario(scenario_ref);
      }
      const harness::Report rep = harness::run_scenario(s, timing);
      scenario_failed = !rep.passed;
      Result r;
      std::ostringstream os;
      if (!plot_column.empty()) {
        harness::write_plot(os, rep, plot_column, common.precision);
      } else if (common.format == "json") {
        harness::write_json(os, rep, common.precision);
      } else if (common.format == "csv") {
        harness::write_csv(os, rep, common.precision);
      } else {
        harness::write_text(os, rep, common.precision);
      }
      r.raw = os.str();
      return r;
    };
  });

  std::string show;
  auto* list = app.add_subcommand("list-scenarios", "list builtin scenarios");
  list->add_option("--show", show, "print the scenario file of this builtin");
  list->callback([&] {
    action = [&] {
      Result r;
      if (!show.empty()) {
        r.raw = harness::builtin_scenario_text(show);
        return r;
      }
      std::ostringstream os;
      r.columns = {"name", "kind", "description"};
      for (const harness::Scenario& s : harness::builtin_scenarios()) {
        r.rows.push_back({s.name, s.kind, s.description});
        os << s.name << '\n';
      }
      if (common.format == "text") r.raw = os.str();
      return r;
    };
  });

  std::vector<std::string> args(argv.size() > 1 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    set_thread_limit(common.threads);
    const Result r = action();
    const bool raw_passthrough = !r.raw.empty() && (scenario->parsed() || (list->parsed() && !show.empty()));
    std::ostringstream buffer;
    if (raw_passthrough) {
      buffer << r.raw;
    } else {
      render(r, common, buffer);
    }
    if (common.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(common.out_path);
      if (!f) throw DomainError("cannot write '" + common.out_path + "'");
      f << buffer.str();
    }
    if (strict && scenario_failed) {
      err << "error: scenario expectations failed\n";
      return kDomainError;
    }
    return kOk;
  } catch (const poly::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const harness::ScenarioError& e) {
    err << "scenario error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace explab::cli
