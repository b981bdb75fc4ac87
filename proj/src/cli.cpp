#include "packbound/cli.hpp"

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "packbound/bounds.hpp"
#include "packbound/oracle.hpp"

namespace packbound::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Instance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

// "f1 f2; g1 g2" -> one scale per ';'-separated group.
std::vector<ConservativeScale> parse_scale_list(const std::string& text,
                                                std::size_t dim) {
  std::vector<ConservativeScale> out;
  std::istringstream groups(text);
  for (std::string group; std::getline(groups, group, ';');) {
    std::istringstream ws(group);
    std::vector<Dff> dffs;
    for (std::string tok; ws >> tok;) dffs.push_back(Dff::parse(tok));
    if (dffs.empty()) continue;
    if (dffs.size() != dim) {
      throw std::invalid_argument("scale '" + group + "' has " +
                                  std::to_string(dffs.size()) +
                                  " functions, expected " + std::to_string(dim));
    }
    out.push_back(ConservativeScale::from_dffs(std::move(dffs)));
  }
  if (out.empty()) throw std::invalid_argument("no scales in '" + text + "'");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << text;
}

Rational container_volume(const Instance& inst) { return volume(inst.container); }

struct BoundArgs {
  std::string file;
  std::string problem = "obpp";
  bool l2d = false;
  bool l3d = false;
  std::string scales;
  std::int64_t extra_ustep = 0;
  std::string cert;
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.file);
  const NormalizedInstance n = normalize(inst);
  const CompositeOptions opts{a.extra_ustep};

  std::vector<ConservativeScale> scales;
  if (!a.scales.empty()) scales = parse_scale_list(a.scales, n.dim);

  BoundReport report;
  if (a.problem == "obpp") {
    if (a.l2d) {
      report = bound_L2d(n, opts);
    } else if (a.l3d) {
      report = bound_L3d(n, opts);
    } else {
      if (scales.empty()) scales = default_battery(n);
      if (a.extra_ustep >= 2) {
        for (auto& s : uniform_ustep_scales(n.dim, 2, a.extra_ustep)) {
          scales.push_back(std::move(s));
        }
      }
      report = bound_obpp(n, scales);
    }
  } else if (a.problem == "spp") {
    if (a.l2d || a.l3d) {
      throw std::invalid_argument("--l2d/--l3d apply to obpp only");
    }
    if (scales.empty()) scales = spp_battery(n);
    report = bound_spp(n, scales);
  } else {
    if (a.l2d || a.l3d) {
      throw std::invalid_argument("--l2d/--l3d apply to obpp only");
    }
    if (scales.empty()) scales = default_battery(n);
    report = bound_okp(n, scales);
  }
  const std::string cert = write_certificate(report);
  out << cert;
  if (!a.cert.empty()) write_text(a.cert, cert);
  return kExitOk;
}

struct CheckArgs {
  std::string file;
  std::string scales;
  std::string cert;
};

int report_verdict(const Instance& inst,
                   const ConservativeScale& s, const VolumeVerdict& v,
                   const std::string& cert_path, std::ostream& out) {
  const Rational cap = container_volume(inst);
  const Rational raw = v.volume * cap;
  out << "volume " << v.volume << " (raw " << raw << " of " << cap << ")\n";
  if (!v.infeasible) {
    out << "verdict pass\n";
    out << "witness " << s.provenance() << "\n";
    return kExitOk;
  }
  out << "verdict infeasible (raw " << raw << " > " << cap << ")\n";
  BoundReport r{BoundKind::kOppInfeasibility, v.volume, s, {}, 0};
  const std::string cert = write_certificate(r);
  out << cert;
  if (!cert_path.empty()) write_text(cert_path, cert);
  return kExitInfeasible;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.file);
  const NormalizedInstance n = normalize(inst);
  const std::vector<ConservativeScale> scales =
      a.scales.empty() ? default_battery(n) : parse_scale_list(a.scales, n.dim);
  out << "scales " << scales.size() << "\n";
  // First infeasibility proof wins; otherwise report the largest volume.
  std::size_t best = 0;
  VolumeVerdict best_v;
  for (std::size_t k = 0; k < scales.size(); ++k) {
    const VolumeVerdict v = volume_criterion(n, scales[k]);
    if (k == 0 || v.volume > best_v.volume) {
      best = k;
      best_v = v;
    }
    if (v.infeasible) break;
  }
  return report_verdict(inst, scales[best], best_v, a.cert, out);
}

struct StretchArgs {
  std::string file;
  std::string box;
  std::size_t dim = 1;
  std::string base;
  std::string cert;
};

int cmd_stretch(const StretchArgs& a, std::ostream& out) {
  const Instance inst = load_instance(a.file);
  const NormalizedInstance n = normalize(inst);
  if (a.dim < 1 || a.dim > n.dim) {
    throw std::invalid_argument("--dim must lie in 1.." + std::to_string(n.dim));
  }
  const ConservativeScale base = a.base.empty()
                                     ? ConservativeScale::identity(n.dim)
                                     : parse_scale_list(a.base, n.dim).front();
  const StretchResult r = stretch(n, base, inst.edges, a.box, a.dim - 1);
  out << "lambda " << r.lambda << (r.lambda_exact ? "" : " (upper bound)")
      << "\n";
  out << "scale " << r.scale.provenance() << "\n";
  for (const Box& b : n.boxes) {
    out << "size " << b.id;
    for (const Rational& x : r.scale.table().at(b.id)) out << " " << x;
    out << "\n";
  }
  return report_verdict(inst, r.scale, volume_criterion(n, r.scale),
                        a.cert, out);
}

int cmd_verify_dff(const std::string& spec, int max_den, std::ostream& out) {
  const Dff f = Dff::parse(spec);
  const oracle::DffVerdict v = oracle::check_dff(f, max_den);
  if (v.holds) {
    out << "holds " << f.str() << " (" << v.multisets_checked
        << " multisets, max denominator " << max_den << ")\n";
    return kExitOk;
  }
  out << "counterexample";
  for (const Rational& x : v.counterexample) out << " " << x;
  out << " (image sum " << v.image_sum << ")\n";
  return kExitError;
}

int cmd_verify_cert(const std::string& inst_file, const std::string& cert_file,
                    std::ostream& out) {
  const Instance inst = load_instance(inst_file);
  const CertificateCheck c = verify_certificate(read_file(cert_file), inst);
  out << (c.ok ? "ok " : "rejected ") << c.message << "\n";
  return c.ok ? kExitOk : kExitError;
}

struct GenArgs {
  std::size_t dim = 2;
  std::size_t n = 5;
  std::uint64_t seed = 1;
  std::int64_t max_den = 10;
  bool values = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  if (a.dim < 1) throw std::invalid_argument("--dim must be positive");
  if (a.max_den < 1) throw std::invalid_argument("--max-den must be positive");
  std::mt19937_64 rng(a.seed);
  auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  Instance inst;
  inst.dim = a.dim;
  inst.container.assign(a.dim, Rational(1));
  inst.edges = EdgePresets::empty(a.dim);
  for (std::size_t k = 0; k < a.n; ++k) {
    Box b{std::to_string(k + 1), {}, std::nullopt};
    for (std::size_t i = 0; i < a.dim; ++i) {
      const std::int64_t den = pick(1, a.max_den);
      b.size.push_back(Rational(pick(1, den), den));
    }
    if (a.values) b.value = Rational(pick(1, 20));
    inst.boxes.push_back(std::move(b));
  }
  out << "# gen --dim " << a.dim << " --n " << a.n << " --seed " << a.seed
      << " --max-den " << a.max_den << "\n";
  out << serialize_instance(inst);
  return kExitOk;
}

int cmd_oracle(const std::string& what, const std::string& file,
               std::size_t limit, std::ostream& out) {
  const Instance inst = load_instance(file);
  const NormalizedInstance n = normalize(inst);
  if (what == "packable") {
    const auto p = oracle::find_packing(n, limit);
    if (!p) {
      out << "packable no\n";
      return kExitInfeasible;
    }
    out << "packable yes\n";
    for (std::size_t b = 0; b < n.size(); ++b) {
      out << "at " << n.boxes[b].id;
      for (std::size_t i = 0; i < n.dim; ++i) {
        out << " " << (*p)[b][i] * inst.container[i];
      }
      out << "\n";
    }
  } else if (what == "bins") {
    out << "bins " << oracle::exact_bin_count(n, limit) << "\n";
  } else if (what == "okp") {
    out << "okp-value " << oracle::exact_okp_value(n, limit) << "\n";
  } else {
    const Rational h = oracle::exact_strip_height(n, limit);
    out << "strip-height " << h << " (raw " << h * inst.container.back()
        << ")\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Lower bounds and infeasibility proofs for orthogonal packing",
               "packbound"};
  app.require_subcommand(1);

  BoundArgs bound;
  auto* sub_bound = app.add_subcommand("bound", "compute a bound certificate");
  sub_bound->add_option("instance", bound.file)->required();
  sub_bound->add_option("--problem", bound.problem)
      ->check(CLI::IsMember({"spp", "obpp", "okp"}));
  auto* o_l2d = sub_bound->add_flag("--l2d", bound.l2d, "composite 2D bound");
  auto* o_l3d = sub_bound->add_flag("--l3d", bound.l3d, "composite 3D bound");
  auto* o_scales = sub_bound->add_option(
      "--scales", bound.scales, "scale list, e.g. \"u(2) u(2); phi(1/3) id\"");
  o_l2d->excludes(o_l3d)->excludes(o_scales);
  o_l3d->excludes(o_scales);
  sub_bound->add_option("--extra-ustep", bound.extra_ustep,
                        "add (u(k))^d for k = 2..K")
      ->check(CLI::NonNegativeNumber);
  sub_bound->add_option("--cert", bound.cert, "also write the certificate here");

  CheckArgs check;
  auto* sub_check = app.add_subcommand("check", "volume criterion over a scale battery");
  sub_check->add_option("instance", check.file)->required();
  sub_check->add_option("--scales", check.scales);
  sub_check->add_option("--cert", check.cert);

  StretchArgs st;
  auto* sub_stretch = app.add_subcommand("stretch", "stretch one box and re-check");
  sub_stretch->add_option("instance", st.file)->required();
  sub_stretch->add_option("--box", st.box)->required();
  sub_stretch->add_option("--dim", st.dim, "1-based dimension")->required();
  sub_stretch->add_option("--base", st.base, "base DFF tuple, default identity");
  sub_stretch->add_option("--cert", st.cert);

  std::string dff_spec;
  int max_den = 12;
  auto* sub_vdff = app.add_subcommand("verify-dff", "exhaustive dual feasibility check");
  sub_vdff->add_option("spec", dff_spec)->required();
  sub_vdff->add_option("--max-den", max_den)->check(CLI::Range(2, 40));

  std::string cert_inst, cert_file;
  auto* sub_vcert = app.add_subcommand("verify-cert", "re-evaluate a certificate");
  sub_vcert->add_option("instance", cert_inst)->required();
  sub_vcert->add_option("certificate", cert_file)->required();

  GenArgs gen;
  auto* sub_gen = app.add_subcommand("gen", "emit a random instance");
  sub_gen->add_option("--dim", gen.dim)->required();
  sub_gen->add_option("--n", gen.n)->required();
  sub_gen->add_option("--seed", gen.seed)->required();
  sub_gen->add_option("--max-den", gen.max_den);
  sub_gen->add_flag("--values", gen.values, "attach integer values");

  std::string oracle_what, oracle_file;
  std::size_t oracle_limit = oracle::kDefaultPackingLimit;
  auto* sub_oracle = app.add_subcommand("oracle", "run a brute-force oracle");
  sub_oracle->add_option("what", oracle_what)
      ->required()
      ->check(CLI::IsMember({"packable", "bins", "okp", "strip"}));
  sub_oracle->add_option("instance", oracle_file)->required();
  sub_oracle->add_option("--limit", oracle_limit, "box count guard");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*sub_bound) return cmd_bound(bound, out);
    if (*sub_check) return cmd_check(check, out);
    if (*sub_stretch) return cmd_stretch(st, out);
    if (*sub_vdff) return cmd_verify_dff(dff_spec, max_den, out);
    if (*sub_vcert) return cmd_verify_cert(cert_inst, cert_file, out);
    if (*sub_gen) return cmd_gen(gen, out);
    if (*sub_oracle) return cmd_oracle(oracle_what, oracle_file, oracle_limit, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace packbound::cli
