#pragma once

/**
 * @file cli.hpp
 * @brief The `sysarith` command-line front end.
 *
 * Exit codes: 0 success, 1 input error, 2 no candidate found.
 * Global options (--format, --cache, --no-cache, --workers) may appear
 * before or after the subcommand.
 */

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "constructions.hpp"
#include "geodesics.hpp"
#include "search.hpp"
#include "serialize.hpp"
#include "volume.hpp"

namespace sysarith::cli {

enum class Format { table, csv, json };

/// Rows of strings rendered as an aligned table or as CSV with the same
/// header. Cells are written verbatim, so "{2,31}" stays unquoted.
class Table {
public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& out, Format format) const {
    if (format == Format::csv) {
      write_csv_row(out, header_);
      for (const auto& r : rows_) write_csv_row(out, r);
      return;
    }
    std::vector<std::size_t> width(header_.size(), 0);
    auto measure = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i > 0) out << " | ";
        out << r[i];
        if (i + 1 < r.size()) out << std::string(width[i] - display_width(r[i]), ' ');
      }
      out << '\n';
    };
    line(header_);
    std::size_t total = 0;
    for (auto w : width) total += w;
    out << std::string(total + 3 * (width.size() - 1), '-') << '\n';
    for (const auto& r : rows_) line(r);
  }

private:
  static void write_csv_row(std::ostream& out, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << '\n';
  }

  // UTF-8 code points, so the header's "ℓ" counts as one column.
  static std::size_t display_width(const std::string& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

inline std::string fmt6(double v) { return format_fixed(v, 6); }

inline std::string braces(const std::vector<std::uint64_t>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

inline std::string ideal_list(const std::vector<GaussianPrimeIdeal>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + "}";
}

inline std::vector<std::uint64_t> norms_of(const std::vector<GaussianPrimeIdeal>& v) {
  std::vector<std::uint64_t> out;
  for (const auto& p : v) out.push_back(p.norm);
  return out;
}

/// Concrete ideals for a norm multiset, taking the first ideals of each norm
/// in canonical order. Throws input_error if a norm is not realizable.
inline std::vector<GaussianPrimeIdeal> ideals_for_norms(const std::vector<std::uint64_t>& norms) {
  std::map<std::uint64_t, std::size_t> count;
  for (auto n : norms) ++count[n];
  std::vector<GaussianPrimeIdeal> out;
  for (const auto& [n, m] : count) {
    const auto ideals = gaussian_primes_of_norm(n);
    if (ideals.empty()) throw input_error("no prime ideal of Z[i] has norm " + std::to_string(n));
    if (m > ideals.size()) throw input_error("norm " + std::to_string(n) + " occurs too often");
    out.insert(out.end(), ideals.begin(), ideals.begin() + static_cast<std::ptrdiff_t>(m));
  }
  return out;
}

struct Options {
  std::string format = "table";
  std::string cache;
  bool no_cache = false;
  unsigned workers = 1;

  double systole = 0;
  bool torsion_free = false;
  bool exact = false;
  std::string dyadic_rule = "discriminant";
  std::uint64_t norm_bound = 200;
  std::uint64_t budget = 5'000'000;
  std::string ram;
  std::string ram_norms;
  std::size_t count = 5;
  std::int64_t field = 0;
  double cap = 10;
  std::string mode = "paper";
  double x = 0;
  double c1 = 1;
  double c2 = 1;
  std::string base = "q";
};

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::table;
  if (s == "csv") return Format::csv;
  return Format::json;
}

inline void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

inline void cmd_search2d(const Options& o, Format f, std::ostream& out) {
  const auto rule = o.dyadic_rule == "d-mod-8" ? DyadicRule::d_mod_8 : DyadicRule::discriminant;
  const auto r = minimal_algebra_2d(o.systole, o.torsion_free, o.workers, rule);
  if (f == Format::json) {
    auto j = to_json(r);
    j["dyadic_rule"] = to_string(rule);
    j["torsion_free"] = o.torsion_free;
    emit_json(out, j);
    return;
  }
  Table t({"Lower Bound for Systole Length ℓ", "Ram(B)", "Optimal Area Factor"});
  for (const auto& b : r.optimal_sets) t.add({fmt_g(r.systole_bound), braces(b.ram()), std::to_string(r.optimal_factor)});
  t.render(out, f);
}

inline void cmd_search3d(const Options& o, Format f, std::ostream& out) {
  const auto r = valid_algebra_3d(o.systole, o.norm_bound, o.budget, o.workers);
  if (f == Format::json) {
    emit_json(out, to_json(r));
    return;
  }
  Table t({"Lower Bound for Systole Length ℓ", "Ram(B)", "Volume"});
  for (const auto& b : r.sets) t.add({fmt_g(r.systole_bound), braces(b.norms()), format_fixed(r.volume, 2)});
  t.render(out, f);
}

inline void cmd_verify3d(const Options& o, Format f, std::ostream& out) {
  const auto report = verify_exclusion_3d(parse_uint_list(o.ram_norms), o.systole, o.workers);
  if (f == Format::json) {
    json rows = json::array();
    for (const auto& a : report.assignments) {
      rows.push_back({{"ram", to_json(a.algebra).at("ram")},
                      {"passes", a.passes},
                      {"unobstructed_count", a.unobstructed_count},
                      {"first_unobstructed", a.unobstructed ? to_json(*a.unobstructed) : json(nullptr)}});
    }
    emit_json(out, {{"l", o.systole}, {"valid", report.valid}, {"field_count", report.field_count}, {"assignments", rows}});
    return;
  }
  Table t({"Assignment", "Ram(B)", "Result", "Unobstructed Fields", "First Unobstructed"});
  std::size_t i = 0;
  for (const auto& a : report.assignments) {
    t.add({std::to_string(++i), ideal_list(a.algebra.ram()), a.passes ? "valid" : "invalid",
           std::to_string(a.unobstructed_count), a.unobstructed ? to_string(*a.unobstructed) : "-"});
  }
  t.render(out, f);
  if (f == Format::table) {
    out << "fields checked: " << report.field_count << "; " << (report.valid ? "valid" : "invalid") << '\n';
  }
}

inline void cmd_family(const Options& o, Format f, std::ostream& out) {
  const QuaternionAlgebraQ b(parse_uint_list(o.ram));
  const QuadFieldQ field = o.field != 0 ? QuadFieldQ(o.field) : systole_field_q(b, o.cap);
  const auto family = same_systole_family_q(b, field, o.count);
  std::optional<double> c_obs;
  if (family.size() >= 2) c_obs = growth_check(family);
  if (f == Format::json) {
    json entries = json::array();
    for (const auto& e : family) entries.push_back(to_json(e));
    emit_json(out, {{"base", to_json(b)},
                    {"field", to_json(field)},
                    {"entries", entries},
                    {"c_obs", c_obs ? json(*c_obs) : json(nullptr)}});
    return;
  }
  Table t({"i", "Ram(B_i)", "p0", "p_i", "Area Factor", "L embeds"});
  for (const auto& e : family) {
    t.add({std::to_string(e.index), braces(e.algebra.ram()), std::to_string(e.p0), std::to_string(e.pi),
           std::to_string(e.factor), "yes"});
  }
  if (f == Format::table) out << "systole field: Q(sqrt " << field.d() << "), Reg = " << fmt6(field.regulator()) << '\n';
  t.render(out, f);
  if (f == Format::table && c_obs) out << "c_obs = " << fmt6(*c_obs) << '\n';
}

inline void cmd_cover2d(const Options& o, Format f, std::ostream& out) {
  const auto r = cover_algebra_2d(o.systole, o.torsion_free, o.exact);
  const auto factor = area_factor(r.algebra);
  if (f == Format::json) {
    json cert = json::array();
    for (std::size_t i = 0; i < r.fields.size(); ++i) cert.push_back({{"d", r.fields[i].d()}, {"p", r.certificate[i]}});
    emit_json(out, {{"x", o.systole},
                    {"algebra", to_json(r.algebra)},
                    {"factor", factor},
                    {"field_count", r.fields.size()},
                    {"certificate", cert},
                    {"fix_primes", r.fix_primes},
                    {"exact", r.exact}});
    return;
  }
  Table t({"x", "Ram(B)", "Area Factor", "Fields"});
  t.add({fmt_g(o.systole), braces(r.algebra.ram()), std::to_string(factor), std::to_string(r.fields.size())});
  t.render(out, f);
}

inline void cmd_cover3d(const Options& o, Format f, std::ostream& out) {
  const auto r = cover_algebra_3d(o.systole, o.torsion_free, o.workers);
  const double vol = volume_qi(r.algebra);
  if (f == Format::json) {
    json cert = json::array();
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      cert.push_back({{"field", to_json(r.fields[i])}, {"ideal", to_json(r.certificate[i])}});
    }
    json fixes = json::array();
    for (const auto& p : r.fix_ideals) fixes.push_back(to_json(p));
    emit_json(out, {{"x", o.systole},
                    {"algebra", to_json(r.algebra)},
                    {"volume", vol},
                    {"field_count", r.fields.size()},
                    {"certificate", cert},
                    {"fix_ideals", fixes}});
    return;
  }
  Table t({"x", "Ram(B)", "Volume", "Fields"});
  t.add({fmt_g(o.systole), braces(r.algebra.norms()), format_fixed(vol, 2), std::to_string(r.fields.size())});
  t.render(out, f);
}

inline void cmd_systole2d(const Options& o, Format f, std::ostream& out) {
  const QuaternionAlgebraQ b(parse_uint_list(o.ram));
  const auto mode = o.mode == "trace" ? LengthMode::trace : LengthMode::paper;
  const auto s = exact_systole_q(b, mode, o.cap);
  if (f == Format::json) {
    json j = {{"ram", b.ram()}, {"mode", to_string(mode)}, {"cap", o.cap}};
    if (s) {
      j["systole"] = s->length;
      j["field"] = to_json(s->field);
      j["trace"] = s->trace ? json(*s->trace) : json(nullptr);
    } else {
      j["systole"] = nullptr;
    }
    emit_json(out, j);
    return;
  }
  Table t({"Ram(B)", "Mode", "Systole", "Field d", "Trace"});
  if (s) {
    t.add({braces(b.ram()), to_string(mode), fmt6(s->length), std::to_string(s->field.d()),
           s->trace ? std::to_string(*s->trace) : "-"});
  } else {
    t.add({braces(b.ram()), to_string(mode), "none below cap", "-", "-"});
  }
  t.render(out, f);
}

inline void cmd_bounds(const Options& o, Format f, std::ostream& out) {
  const double x = o.x;
  const double threshold = theorem_threshold_2d(x, o.c1, o.c2);
  const double log_area = theorem_area_log_bound_2d(x, o.c1, o.c2);
  const double field_bound = std::exp(2.0 + 2.0 * x);
  const double qi_bound = silverman_disc_bound_qi(x);
  if (f == Format::json) {
    emit_json(out, {{"x", x},
                    {"c1", o.c1},
                    {"c2", o.c2},
                    {"field_disc_bound", field_bound},
                    {"prime_threshold", threshold},
                    {"log_area_majorant", log_area},
                    {"qi_absolute_disc_bound", qi_bound}});
    return;
  }
  Table t({"Quantity", "Value"});
  t.add({"field discriminant bound e^(2+2x)", fmt6(field_bound)});
  t.add({"prime threshold 2 c1 e^((2+2x) c2)", fmt6(threshold)});
  t.add({"log area majorant", fmt6(log_area)});
  t.add({"Q(i) absolute discriminant bound 16 e^(2(2+x))", fmt6(qi_bound)});
  t.render(out, f);
}

inline void cmd_volume(const Options& o, Format f, std::ostream& out) {
  if (o.base == "q") {
    if (o.ram.empty()) throw input_error("volume --base q needs --ram");
    const QuaternionAlgebraQ b(parse_uint_list(o.ram));
    const double v = coarea_q(b);
    if (f == Format::json) {
      emit_json(out, {{"base", "Q"}, {"ram", b.ram()}, {"factor", area_factor(b)}, {"volume", v}});
      return;
    }
    Table t({"Ram(B)", "Area Factor", "Coarea"});
    t.add({braces(b.ram()), std::to_string(area_factor(b)), format_fixed(v, 2)});
    t.render(out, f);
    return;
  }
  if (o.ram_norms.empty()) throw input_error("volume --base qi needs --ram-norms");
  const auto norms = parse_uint_list(o.ram_norms);
  const QuaternionAlgebraQi b(ideals_for_norms(norms));
  require_admissible(b);
  const double v = volume_qi(b);
  if (f == Format::json) {
    emit_json(out, {{"base", "Q(i)"}, {"ram_norms", b.norms()}, {"factor", area_factor(b)}, {"volume", v}});
    return;
  }
  Table t({"Ram(B)", "Volume"});
  t.add({braces(b.norms()), format_fixed(v, 2)});
  t.render(out, f);
}

/// Runs the CLI; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Systoles of arithmetic hyperbolic surfaces and 3-manifolds", "sysarith"};
  app.require_subcommand(1);
  Options o;

  auto add_globals = [&](CLI::App* a) {
    a->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "csv", "json"}));
    a->add_option("--cache", o.cache, "Regulator cache file (overrides SYSARITH_CACHE)");
    a->add_flag("--no-cache", o.no_cache, "Disable the in-process regulator cache");
    a->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1U, 1024U));
  };
  add_globals(&app);

  auto positive = CLI::Range(1e-12, 1e6);
  auto nonnegative = CLI::Range(0.0, 1e6);

  auto* search2d = app.add_subcommand("search2d", "Least-coarea algebra over Q with systole >= l");
  search2d->add_option("--systole", o.systole, "Systole lower bound l")->required()->check(positive);
  search2d->add_flag("--torsion-free", o.torsion_free, "Require a torsion-free group");
  search2d->add_option("--dyadic-rule", o.dyadic_rule, "Splitting rule at 2")
      ->check(CLI::IsMember({"discriminant", "d-mod-8"}));

  auto* search3d = app.add_subcommand("search3d", "Valid (best-effort) algebra over Q(i) with systole >= l");
  search3d->add_option("--systole", o.systole, "Systole lower bound l")->required()->check(positive);
  search3d->add_option("--norm-bound", o.norm_bound, "Largest ideal norm in the pool")->check(CLI::Range(2ULL, 1000000ULL));
  search3d->add_option("--budget", o.budget, "Frontier expansions allowed")->check(CLI::Range(1ULL, 1ULL << 40));

  auto* verify3d = app.add_subcommand("verify3d", "Check a Q(i) norm multiset under every conjugate assignment");
  verify3d->add_option("--ram-norms", o.ram_norms, "Ideal norms, comma separated")->required();
  verify3d->add_option("--systole", o.systole, "Systole lower bound l")->required()->check(positive);

  auto* family = app.add_subcommand("family", "Same-systole family over Q");
  family->add_option("--ram", o.ram, "Ramified primes of the base algebra")->required();
  family->add_option("--count", o.count, "Number of entries")->check(CLI::Range(0, 10000));
  family->add_option("--field", o.field, "Systole field d (default: computed)");
  family->add_option("--cap", o.cap, "Length cap for the systole scan")->check(positive);

  auto* cover2d = app.add_subcommand("cover2d", "Greedy set-cover algebra over Q");
  cover2d->add_option("--systole", o.systole, "x >= 0")->required()->check(nonnegative);
  cover2d->add_flag("--torsion-free", o.torsion_free, "Add torsion conditions");
  cover2d->add_flag("--exact", o.exact, "Exhaustive least-factor cover (x <= 1.5)");

  auto* cover3d = app.add_subcommand("cover3d", "Greedy set-cover algebra over Q(i)");
  cover3d->add_option("--systole", o.systole, "x >= 0")->required()->check(nonnegative);
  cover3d->add_flag("--torsion-free", o.torsion_free, "Add torsion conditions");

  auto* systole2d = app.add_subcommand("systole2d", "Exact systole of an algebra over Q");
  systole2d->add_option("--ram", o.ram, "Ramified primes")->required();
  systole2d->add_option("--mode", o.mode, "Length convention")->check(CLI::IsMember({"paper", "trace"}));
  systole2d->add_option("--cap", o.cap, "Length cap")->check(positive);

  auto* bounds = app.add_subcommand("bounds", "Bound evaluators");
  bounds->add_option("--x", o.x, "x >= 0")->required()->check(nonnegative);
  bounds->add_option("--c1", o.c1, "Constant c1 >= 1")->check(CLI::Range(1.0, 1e6));
  bounds->add_option("--c2", o.c2, "Constant c2 >= 1")->check(CLI::Range(1.0, 1e6));

  auto* volume = app.add_subcommand("volume", "Coarea (Q) or covolume (Q(i))");
  volume->add_option("--base", o.base, "Base field")->check(CLI::IsMember({"q", "qi"}));
  volume->add_option("--ram", o.ram, "Ramified primes (base q)");
  volume->add_option("--ram-norms", o.ram_norms, "Ramified ideal norms (base qi)");

  for (auto* sub : app.get_subcommands({})) add_globals(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  auto& cache = RegulatorCache::global();
  cache.set_enabled(!o.no_cache);
  std::string cache_path = o.cache;
  if (cache_path.empty()) {
    if (const char* env = std::getenv("SYSARITH_CACHE")) cache_path = env;
  }
  if (!cache_path.empty() && !o.no_cache) cache.load(cache_path, err);

  const Format f = parse_format(o.format);
  try {
    if (search2d->parsed()) cmd_search2d(o, f, out);
    else if (search3d->parsed()) cmd_search3d(o, f, out);
    else if (verify3d->parsed()) cmd_verify3d(o, f, out);
    else if (family->parsed()) cmd_family(o, f, out);
    else if (cover2d->parsed()) cmd_cover2d(o, f, out);
    else if (cover3d->parsed()) cmd_cover3d(o, f, out);
    else if (systole2d->parsed()) cmd_systole2d(o, f, out);
    else if (bounds->parsed()) cmd_bounds(o, f, out);
    else if (volume->parsed()) cmd_volume(o, f, out);
  } catch (const no_candidate_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (!cache_path.empty() && !o.no_cache && !cache.save(cache_path)) {
    err << "warning: could not write regulator cache '" << cache_path << "'\n";
  }
  return 0;
}

} // namespace sysarith::cli
