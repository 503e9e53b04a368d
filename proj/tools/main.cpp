#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rateregion/catalog.hpp"
#include "rateregion/channel.hpp"
#include "rateregion/covariance.hpp"
#include "rateregion/errors.hpp"
#include "rateregion/explorer.hpp"
#include "rateregion/io.hpp"
#include "rateregion/verify.hpp"

namespace {

using namespace rateregion;

struct Options {
  std::string model = "cms2";
  // Powers are taken in dB; noises and cross gains are linear.
  double p1 = 10.0, p2 = 10.0, p3 = 10.0;
  double q1 = 1.0, q2 = 1.0, q3 = 1.0;
  double a12 = 0.55, a13 = 0.55, a21 = 0.55;
  double a23 = 0.55, a31 = 0.55, a32 = 0.55;
  std::uint64_t draws = 200000;
  std::uint64_t seed = 1;
  std::string out = ".";
  int threads = 1;
  std::string cov;
  std::string config;
  std::uint64_t draw = 0;
};

struct FieldBinding {
  std::string key;
  std::function<void(Options&, const std::string&)> from_string;
  std::function<void(Options&, const Options&)> copy;
};

struct SubParse {
  CLI::App* sub = nullptr;
  // Option handle per bound field, to tell CLI-set fields from defaults.
  std::vector<std::pair<CLI::Option*, const FieldBinding*>> bound;
};

const std::vector<FieldBinding>& field_bindings() {
  static const std::vector<FieldBinding> fields = [] {
    std::vector<FieldBinding> f;
    auto dbl = [&f](const std::string& key, double Options::*member) {
      f.push_back({key,
                   [key, member](Options& o, const std::string& v) {
                     o.*member = parse_double(v, key);
                   },
                   [member](Options& dst, const Options& src) {
                     dst.*member = src.*member;
                   }});
    };
    auto u64 = [&f](const std::string& key, std::uint64_t Options::*member) {
      f.push_back({key,
                   [key, member](Options& o, const std::string& v) {
                     o.*member = parse_uint(v, key);
                   },
                   [member](Options& dst, const Options& src) {
                     dst.*member = src.*member;
                   }});
    };
    auto str = [&f](const std::string& key, std::string Options::*member) {
      f.push_back({key,
                   [member](Options& o, const std::string& v) { o.*member = v; },
                   [member](Options& dst, const Options& src) {
                     dst.*member = src.*member;
                   }});
    };
    str("model", &Options::model);
    dbl("p1", &Options::p1);
    dbl("p2", &Options::p2);
    dbl("p3", &Options::p3);
    dbl("q1", &Options::q1);
    dbl("q2", &Options::q2);
    dbl("q3", &Options::q3);
    dbl("a12", &Options::a12);
    dbl("a13", &Options::a13);
    dbl("a21", &Options::a21);
    dbl("a23", &Options::a23);
    dbl("a31", &Options::a31);
    dbl("a32", &Options::a32);
    u64("draws", &Options::draws);
    u64("seed", &Options::seed);
    str("out", &Options::out);
    f.push_back({"threads",
                 [](Options& o, const std::string& v) {
                   o.threads = static_cast<int>(parse_uint(v, "threads"));
                 },
                 [](Options& dst, const Options& src) {
                   dst.threads = src.threads;
                 }});
    str("cov", &Options::cov);
    u64("draw", &Options::draw);
    return f;
  }();
  return fields;
}

const FieldBinding* find_field(const std::string& key) {
  for (const auto& f : field_bindings())
    if (f.key == key) return &f;
  return nullptr;
}

enum FieldGroups : unsigned {
  kChannel = 1,  // model and channel numbers
  kRun = 2,      // draws/seed/out/threads
  kCov = 4,      // external covariance path
  kDrawIdx = 8,  // single draw index
};

void attach_options(CLI::App* sub, Options& cli, SubParse& sp, unsigned groups) {
  sp.sub = sub;
  auto bind = [&](const std::string& key, CLI::Option* opt) {
    sp.bound.emplace_back(opt, find_field(key));
  };

  if (groups & kChannel) {
    bind("model", sub->add_option("--model", cli.model,
                                  "Model: cms1, cms2, pms1 or pms2"));
    bind("p1", sub->add_option("--p1", cli.p1, "Primary transmit power (dB)"));
    bind("p2", sub->add_option("--p2", cli.p2, "User-2 transmit power (dB)"));
    bind("p3", sub->add_option("--p3", cli.p3, "User-3 transmit power (dB)"));
    bind("q1", sub->add_option("--q1", cli.q1, "Receiver-1 noise variance"));
    bind("q2", sub->add_option("--q2", cli.q2, "Receiver-2 noise variance"));
    bind("q3", sub->add_option("--q3", cli.q3, "Receiver-3 noise variance"));
    bind("a12", sub->add_option("--a12", cli.a12, "Cross gain into Y1 from X2"));
    bind("a13", sub->add_option("--a13", cli.a13, "Cross gain into Y1 from X3"));
    bind("a21", sub->add_option("--a21", cli.a21, "Cross gain into Y2 from X1"));
    bind("a23", sub->add_option("--a23", cli.a23, "Cross gain into Y2 from X3"));
    bind("a31", sub->add_option("--a31", cli.a31, "Cross gain into Y3 from X1"));
    bind("a32", sub->add_option("--a32", cli.a32, "Cross gain into Y3 from X2"));
  }
  if (groups & kRun) {
    bind("draws", sub->add_option("--draws", cli.draws,
                                  "Monte-Carlo parameter draws"));
    bind("out", sub->add_option("--out", cli.out, "Output directory"));
    bind("threads",
         sub->add_option("--threads", cli.threads, "Worker thread count"));
  }
  bind("seed", sub->add_option("--seed", cli.seed, "Random seed"));
  if (groups & kCov) {
    bind("cov", sub->add_option("--cov", cli.cov,
                                "External covariance CSV (cms1/pms1 models)"));
  }
  if (groups & kDrawIdx) {
    bind("draw",
         sub->add_option("--draw", cli.draw, "Draw index within the seed"));
  }
  sub->add_option("--config", cli.config,
                  "key=value config file; explicit flags win");
}

Options merge_options(const Options& cli, const SubParse& sp) {
  Options merged;  // defaults
  if (!cli.config.empty()) {
    for (const auto& [key, value] : read_config_file(cli.config)) {
      const FieldBinding* field = find_field(key);
      if (!field)
        throw Error(ErrorKind::Config, "unknown config key: " + key);
      field->from_string(merged, value);
    }
    merged.config = cli.config;
  }
  for (const auto& [opt, field] : sp.bound)
    if (opt->count() > 0 && field) field->copy(merged, cli);
  return merged;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

GaussianChannelSpec build_spec(const Options& o) {
  GaussianChannelSpec spec;
  spec.variant = parse_model_name(o.model);
  spec.p1 = db_to_linear(o.p1);
  spec.p2 = db_to_linear(o.p2);
  spec.p3 = db_to_linear(o.p3);
  spec.q1 = o.q1;
  spec.q2 = o.q2;
  spec.q3 = o.q3;
  spec.a12 = o.a12;
  spec.a13 = o.a13;
  spec.a21 = o.a21;
  spec.a23 = o.a23;
  spec.a31 = o.a31;
  spec.a32 = o.a32;
  validate_spec(spec);
  return spec;
}

void fill_metrics(RegionEstimate& est) {
  est.max_r1 = est.max_r2 = est.max_r3 = est.max_sum = 0.0;
  for (const auto& p : est.pareto) {
    est.max_r1 = std::max(est.max_r1, p.x());
    est.max_r2 = std::max(est.max_r2, p.y());
    est.max_r3 = std::max(est.max_r3, p.z());
    est.max_sum = std::max(est.max_sum, p.sum());
  }
}

RegionEstimate region_from_covariance(const GaussianChannelSpec& spec,
                                      const Options& o) {
  if (o.cov.empty())
    throw Error(ErrorKind::Config,
                "model " + o.model + " evaluates an external covariance; "
                "pass one with --cov");
  const NamedCovariance nc = read_covariance_csv(o.cov);
  const BoundCatalog catalog = catalog_for(spec.variant);

  RegionEstimate est;
  est.variant = spec.variant;
  est.draws_total = 1;
  est.seed = o.seed;

  std::vector<Eigen::Vector3d> pts;
  pts.emplace_back(Eigen::Vector3d::Zero());
  auto poly = instantiate(catalog, nc.matrix, nc.names);
  if (!poly) {
    est.draws_vacuous = 1;
  } else {
    const RatePolytope projected =
        project_to_totals(*poly, catalog.recombination);
    const auto vertices = enumerate_vertices(projected.sys);
    if (vertices.empty()) est.draws_vacuous = 1;
    for (const auto& v : vertices) {
      Eigen::Vector3d p = Eigen::Vector3d::Zero();
      for (int i = 0; i < v.size() && i < 3; ++i) p[i] = std::max(0.0, v[i]);
      pts.push_back(p);
    }
  }
  est.pareto = exact_maxima3(std::move(pts));
  fill_metrics(est);
  return est;
}

void write_region_outputs(const RegionEstimate& est, const std::string& out) {
  namespace fs = std::filesystem;
  fs::create_directories(out);
  const fs::path dir(out);

  auto open = [&](const char* name) {
    std::ofstream os(dir / name, std::ios::binary);
    if (!os)
      throw Error(ErrorKind::Config,
                  std::string("cannot write output file: ") + name);
    return os;
  };

  {
    auto os = open("pareto.csv");
    write_pareto_csv(os, est.pareto);
  }
  {
    auto os = open("metrics.txt");
    write_metrics(os, est);
  }
  {
    auto os = open("slice_R1_0.csv");
    try {
      const auto slice = slice2d(est, 0, 0.0);
      write_slice_csv(os, {"R2", "R3"}, slice);
    } catch (const EmptySlice&) {
      write_slice_csv(os, {"R2", "R3"}, {});
    }
  }
}

int cmd_region(const Options& o) {
  const GaussianChannelSpec spec = build_spec(o);
  RegionEstimate est;
  if (spec.variant.decoding == Decoding::Variant2) {
    ExploreOptions eo;
    eo.threads = o.threads;
    est = explore(spec, o.draws, o.seed, eo);
  } else {
    est = region_from_covariance(spec, o);
  }
  write_region_outputs(est, o.out);
  std::cout << "pareto points: " << est.pareto.size()
            << "\nmax_sum: " << format_double(est.max_sum) << '\n';
  return 0;
}

int cmd_catalog(const Options& o) {
  const BoundCatalog catalog = catalog_for(parse_model_name(o.model));
  for (const auto& line : describe_catalog(catalog)) std::cout << line << '\n';
  return 0;
}

int cmd_verify(const Options& o) {
  GaussianChannelSpec base = build_spec(o);
  base.variant = kCms2;  // the suites pick their own sharing laws
  const auto results = run_verification(base, o.seed, o.threads);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << "suite " << r.name << ": " << (r.pass ? "PASS" : "FAIL")
              << " (" << r.detail << ")\n";
    all_pass = all_pass && r.pass;
  }
  if (!all_pass) {
    std::cerr << "verification failed\n";
    return 2;
  }
  return 0;
}

int cmd_dump_sigma(const Options& o) {
  const GaussianChannelSpec spec = build_spec(o);
  CounterRng rng(o.seed, o.draw);
  const SplittingParams params = sample_params(spec, rng);
  const CovarianceModel model = build_covariance(spec, params);
  write_covariance_csv(std::cout, theta_names(), model.sigma);
  return 0;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return 1;
    case ErrorKind::Verification:
      return 2;
    case ErrorKind::Numeric:
      return 3;
  }
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Achievable total-rate regions of three-user cognitive interference "
      "channels"};
  app.require_subcommand(1);

  Options cli;
  SubParse region_parse, catalog_parse, verify_parse, dump_parse;
  attach_options(app.add_subcommand("region",
                                    "Estimate the region and write "
                                    "pareto.csv, metrics.txt, slice_R1_0.csv"),
                 cli, region_parse, kChannel | kRun | kCov);
  attach_options(
      app.add_subcommand("catalog", "Print the model's bound catalog"), cli,
      catalog_parse, kChannel);
  attach_options(
      app.add_subcommand("verify", "Run the verification suites"), cli,
      verify_parse, kChannel | kRun);
  attach_options(app.add_subcommand(
                     "dump-sigma",
                     "Print the covariance of one parameter draw as CSV"),
                 cli, dump_parse, kChannel | kDrawIdx);

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e);
    } catch (const CLI::ParseError& e) {
      std::cerr << e.what() << '\n';
      return 1;
    }

    const SubParse* active = nullptr;
    for (const SubParse* sp :
         {&region_parse, &catalog_parse, &verify_parse, &dump_parse})
      if (sp->sub->parsed()) active = sp;
    if (!active) {
      std::cerr << "no subcommand selected\n";
      return 1;
    }
    const Options merged = merge_options(cli, *active);

    if (active == &region_parse) return cmd_region(merged);
    if (active == &catalog_parse) return cmd_catalog(merged);
    if (active == &verify_parse) return cmd_verify(merged);
    return cmd_dump_sigma(merged);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 3;
  }
}
