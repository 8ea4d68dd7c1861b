#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dfh/corpus.hpp"
#include "dfh/io.hpp"
#include "dfh/selfcheck.hpp"

namespace {

using namespace dfh;

struct SeriesArgs {
  std::string series;
  std::string file;
};

void add_series_flags(CLI::App* cmd, SeriesArgs& args) {
  cmd->add_option("--series", args.series, "corpus series name (optionally corpus:NAME)");
  cmd->add_option("--file", args.file, "series definition JSON file");
}

SeriesDefinition resolve_series(const SeriesArgs& args) {
  if (args.series.empty() == args.file.empty())
    throw SchemaError("give exactly one of --series or --file");
  if (!args.file.empty()) return series_from_json_file(args.file);
  std::string name = args.series;
  if (name.rfind("corpus:", 0) == 0) name = name.substr(7);
  return corpus_series(name);
}

void check_format(const std::string& fmt) {
  if (fmt != "csv" && fmt != "json")
    throw SchemaError("--format must be csv or json, got \"" + fmt + "\"");
}

int run(int argc, char** argv) {
  CLI::App app{"exact D-finite coefficient growth toolkit"};
  app.require_subcommand(1);

  // corpus
  auto* c_corpus = app.add_subcommand("corpus", "list the built-in example series");
  std::string corpus_fmt = "csv";
  c_corpus->add_option("--format", corpus_fmt, "csv or json");
  c_corpus->callback([&] {
    check_format(corpus_fmt);
    if (corpus_fmt == "csv") {
      std::cout << "name,expected_class,expected_branch\n";
      for (const auto& e : corpus())
        std::cout << e.name << ',' << growth_tag_name(e.expected_class) << ','
                  << e.expected_branch << '\n';
    } else {
      bool first = true;
      std::cout << "[\n";
      for (const auto& e : corpus()) {
        if (!first) std::cout << ",\n";
        first = false;
        std::cout << "  {\"name\": \"" << e.name << "\", \"expected_class\": \""
                  << growth_tag_name(e.expected_class)
                  << "\", \"expected_branch\": " << e.expected_branch << "}";
      }
      std::cout << "\n]\n";
    }
  });

  // coeffs
  auto* c_coeffs = app.add_subcommand("coeffs", "exact coefficients a_0..a_N");
  SeriesArgs coeffs_args;
  long coeffs_n = 0;
  std::string coeffs_fmt = "csv";
  add_series_flags(c_coeffs, coeffs_args);
  c_coeffs->add_option("--n", coeffs_n, "last index")->required();
  c_coeffs->add_option("--format", coeffs_fmt, "csv or json");
  c_coeffs->callback([&] {
    check_format(coeffs_fmt);
    auto def = resolve_series(coeffs_args);
    auto a = def.series->coefficients(coeffs_n);
    if (coeffs_fmt == "csv")
      write_coeffs_csv(std::cout, a);
    else
      write_coeffs_json(std::cout, def.series->name(), a);
  });

  // profile
  auto* c_profile = app.add_subcommand("profile", "height/denominator/lcm profile");
  SeriesArgs profile_args;
  long profile_n = 0;
  std::string profile_fmt = "csv";
  std::string profile_exclude;
  std::string profile_kappa;
  int profile_prec = 30;
  add_series_flags(c_profile, profile_args);
  c_profile->add_option("--n", profile_n, "horizon")->required();
  c_profile->add_option("--exclude", profile_exclude, "exclusion file, one index per line");
  c_profile->add_option("--kappa", profile_kappa, "report density of {n : den(a_n) >= kappa n}");
  c_profile->add_option("--precision", profile_prec, "significant digits (default 30)");
  c_profile->add_option("--format", profile_fmt, "csv or json");
  c_profile->callback([&] {
    check_format(profile_fmt);
    auto def = resolve_series(profile_args);
    std::optional<IndexSet> exclude;
    if (!profile_exclude.empty()) exclude = exclusion_from_file(profile_exclude, profile_n);
    auto prof = growth_profile(*def.series, profile_n, exclude);
    auto a = def.series->coefficients(profile_n);
    std::optional<KappaCheck> kc;
    if (!profile_kappa.empty())
      kc = kappa_density_check(prof, parse_rational_arg(profile_kappa, "--kappa"));
    if (profile_fmt == "csv") {
      write_profile_csv(std::cout, a, prof, profile_prec);
      if (kc)
        std::cout << "# kappa " << profile_kappa << " density "
                  << kc->density.top_half_max.get_str() << " pass " << (kc->pass ? 1 : 0)
                  << '\n';
    } else {
      write_profile_json(std::cout, def.series->name(), a, prof, profile_prec);
      if (kc)
        std::cout << "{\"kappa\": \"" << profile_kappa << "\", \"density\": \""
                  << kc->density.top_half_max.get_str()
                  << "\", \"pass\": " << (kc->pass ? "true" : "false") << "}\n";
    }
  });

  // classify
  auto* c_classify = app.add_subcommand("classify", "growth class report (JSON)");
  SeriesArgs classify_args;
  long classify_n = 0;
  int classify_prec = 30;
  ClassifyConfig cfg;
  std::string density_floor;
  long gevrey_bound = 1;
  add_series_flags(c_classify, classify_args);
  c_classify->add_option("--n", classify_n, "horizon")->required();
  c_classify->add_option("--band-lo", cfg.band_lo, "ratio band lower edge (default 0.1)");
  c_classify->add_option("--band-hi", cfg.band_hi, "ratio band upper edge (default 10)");
  c_classify->add_option("--density-floor", density_floor, "conforming density floor (default 1/10)");
  c_classify->add_option("--median-floor", cfg.median_floor, "median ratio floor (default 0.2)");
  c_classify->add_option("--gevrey-bound", gevrey_bound, "denominator bound for the Gevrey search");
  c_classify->add_option("--precision", classify_prec, "significant digits (default 30)");
  c_classify->callback([&] {
    auto def = resolve_series(classify_args);
    if (!density_floor.empty())
      cfg.density_floor = parse_rational_arg(density_floor, "--density-floor");
    std::cout << classify_report_json(*def.series, classify_n, cfg, gevrey_bound,
                                      classify_prec);
  });

  // hankel
  auto* c_hankel = app.add_subcommand("hankel", "Hankel determinant scan or rational guess");
  SeriesArgs hankel_args;
  long hankel_n = 0;
  long hankel_window = 0;
  int hankel_prec = 30;
  std::string hankel_fmt = "csv";
  add_series_flags(c_hankel, hankel_args);
  c_hankel->add_option("--n", hankel_n, "scan Delta_0..Delta_n")->required();
  c_hankel->add_option("--guess,--window", hankel_window,
                       "zero-run window; reconstruct and validate a rational function");
  c_hankel->add_option("--precision", hankel_prec, "significant digits (default 30)");
  c_hankel->add_option("--format", hankel_fmt, "csv or json (scan only)");
  c_hankel->callback([&] {
    check_format(hankel_fmt);
    auto def = resolve_series(hankel_args);
    if (hankel_window > 0) {
      auto guess = kronecker_guess(*def.series, hankel_n, hankel_window);
      std::cout << guess_report_json(def.series->name(), hankel_n, hankel_window, guess);
      return;
    }
    auto scan = hankel_scan(*def.series, hankel_n);
    if (hankel_fmt == "csv")
      write_hankel_csv(std::cout, scan, hankel_prec);
    else
      write_hankel_json(std::cout, def.series->name(), scan, hankel_prec);
  });

  // siegel
  auto* c_siegel = app.add_subcommand("siegel", "vanishing polynomial in the binomial basis");
  std::string siegel_indices;
  long siegel_n = 0;
  c_siegel->add_option("indices", siegel_indices, "comma-separated vanishing indices")
      ->required();
  c_siegel->add_option("n", siegel_n, "parameter n (> 4 * #indices)")->required();
  c_siegel->callback([&] {
    auto idx = parse_index_list(siegel_indices, "indices");
    std::cout << siegel_vanishing_poly(idx, siegel_n).str() << '\n';
  });

  // twist
  auto* c_twist = app.add_subcommand("twist", "coefficients of the twist P(n) * a_n");
  SeriesArgs twist_args;
  std::string twist_c;
  long twist_n = 0;
  std::string twist_fmt = "csv";
  add_series_flags(c_twist, twist_args);
  c_twist->add_option("--c", twist_c, "binomial-basis coefficients c0,c1,...")->required();
  c_twist->add_option("--n", twist_n, "last index")->required();
  c_twist->add_option("--format", twist_fmt, "csv or json");
  c_twist->callback([&] {
    check_format(twist_fmt);
    auto def = resolve_series(twist_args);
    BinomialPoly P = BinomialPoly::parse(twist_c);
    auto t = twist_series(def.series, P);
    auto a = t->coefficients(twist_n);
    if (twist_fmt == "csv")
      write_coeffs_csv(std::cout, a);
    else
      write_coeffs_json(std::cout, t->name(), a);
  });

  // polya
  auto* c_polya = app.add_subcommand("polya", "exact determinants against the disk bound");
  SeriesArgs polya_args;
  std::string polya_r;
  std::string polya_majorant;
  long polya_n = 0;
  long polya_grid = 128;
  int polya_prec = 30;
  std::string polya_fmt = "csv";
  add_series_flags(c_polya, polya_args);
  c_polya->add_option("--r", polya_r, "circle radius, 1 < r < majorant radius")->required();
  c_polya->add_option("--majorant", polya_majorant, "A,rho with |a_n| <= A rho^-n")
      ->required();
  c_polya->add_option("--n", polya_n, "last determinant index")->required();
  c_polya->add_option("--grid", polya_grid, "circle grid points (default 128)");
  c_polya->add_option("--precision", polya_prec, "significant digits (default 30)");
  c_polya->add_option("--format", polya_fmt, "csv or json");
  c_polya->callback([&] {
    check_format(polya_fmt);
    auto def = resolve_series(polya_args);
    size_t comma = polya_majorant.find(',');
    if (comma == std::string::npos)
      throw SchemaError("--majorant: expected \"A,rho\", got \"" + polya_majorant + "\"");
    Real A = parse_real_arg(polya_majorant.substr(0, comma), "--majorant A");
    Real rho = parse_real_arg(polya_majorant.substr(comma + 1), "--majorant rho");
    Real r = parse_real_arg(polya_r, "--r");
    auto rows = polya_table(*def.series, r, A, rho, polya_n, polya_grid);
    if (polya_fmt == "csv")
      write_polya_csv(std::cout, rows, polya_prec);
    else
      write_polya_json(std::cout, def.series->name(), rows, polya_prec);
  });

  // counterexample
  auto* c_counter = app.add_subcommand("counterexample", "dyadic sieve diagnostics");
  long counter_n = 0;
  std::string counter_alpha = "log";
  std::string counter_beta;
  int counter_prec = 30;
  std::string counter_fmt = "csv";
  c_counter->add_option("--n", counter_n, "horizon")->required();
  c_counter->add_option("--alpha", counter_alpha, "log, loglog, pow01, pow025");
  c_counter->add_option("--beta", counter_beta, "compare log lcm against n log(beta)");
  c_counter->add_option("--precision", counter_prec, "significant digits (default 30)");
  c_counter->add_option("--format", counter_fmt, "csv or json");
  c_counter->callback([&] {
    check_format(counter_fmt);
    AlphaKind kind = alpha_by_name(counter_alpha);
    std::optional<Rational> beta;
    if (!counter_beta.empty()) {
      beta = parse_rational_arg(counter_beta, "--beta");
      if (*beta <= 1) throw SchemaError("--beta: must be > 1");
    }
    auto res = counterexample_set(counter_n, kind);
    if (counter_fmt == "csv")
      write_counterexample_csv(std::cout, res, beta, counter_prec);
    else
      write_counterexample_json(std::cout, alpha_name(kind), res, beta, counter_prec);
  });

  // selftest
  auto* c_selftest = app.add_subcommand("selftest", "seeded randomized property checks");
  unsigned long selftest_seed = 12345;
  long selftest_count = 100;
  c_selftest->add_option("--seed", selftest_seed, "RNG seed (default 12345)");
  c_selftest->add_option("--count", selftest_count, "instances per property (default 100)");
  c_selftest->callback([&] {
    auto res = selfcheck_random_properties(selftest_seed, selftest_count);
    std::cout << "instances " << res.instances << " failures " << res.failures
              << " skipped " << res.skipped << '\n';
    for (const auto& note : res.notes) std::cout << "fail: " << note << '\n';
    if (!res.pass()) throw PreconditionFailed("selftest failed");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dfh::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
