#include "dwmod/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "dwmod/certifier.hpp"
#include "dwmod/error.hpp"
#include "dwmod/inequality.hpp"
#include "dwmod/serialize.hpp"

namespace dwmod {

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
  auto parse_u64 = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
      throw Error(Errc::Parse, "bad seed '" + s + "' in range '" + text + "'");
    }
    return static_cast<std::uint64_t>(std::stoull(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::uint64_t a = parse_u64(text);
    return {a, a + 1};
  }
  return {parse_u64(text.substr(0, dots)), parse_u64(text.substr(dots + 2))};
}

void RunConfig::validate() const {
  if (seed_end <= seed_begin) throw Error(Errc::Parse, "seed range is empty");
  for (const auto& in : inputs) {
    if (!output.empty() && in == output) throw Error(Errc::Parse, "input and output paths coincide: " + in);
  }
  if (!certificate.empty() && certificate == output) throw Error(Errc::Parse, "certificate and output paths coincide");
  if (jobs == 0) throw Error(Errc::Parse, "--jobs must be positive");
  try {
    tol.validate();
  } catch (const Error& e) {
    throw Error(Errc::Parse, e.what());
  }
}

namespace {

// Failures while reading user input map to exit code 64.
struct InputFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw InputFailure(path + ": " + e.what());
  }
}

std::vector<Instance> load_instances(const std::vector<std::string>& paths) {
  std::vector<Instance> out;
  for (const auto& path : paths) {
    const Json doc = read_json(path);
    try {
      if (doc.is_array()) {
        for (const Json& j : doc) out.push_back(instance_from_json(j));
      } else {
        out.push_back(instance_from_json(doc));
      }
    } catch (const Error& e) {
      throw InputFailure(path + ": " + e.what());
    }
  }
  return out;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {}
  void write(const std::string& text) {
    if (path_.empty()) {
      fallback_ << text;
      fallback_.flush();
      return;
    }
    std::ofstream f(path_, std::ios::binary | std::ios::trunc);
    if (!f) throw InputFailure("cannot write " + path_);
    f << text;
    if (!f) throw InputFailure("write failed for " + path_);
  }

 private:
  std::string path_;
  std::ostream& fallback_;
};

// Runs fn(0..count-1) on `jobs` threads; results land by index, so output
// order never depends on scheduling. The first exception by index is rethrown.
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t count, unsigned jobs, F fn) {
  std::vector<std::optional<R>> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < count; k = next++) {
      try {
        results[k] = fn(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

ForgeSpec spec_for(const RunConfig& c, std::uint64_t seed) {
  ForgeSpec spec{seed, c.d, c.m, c.n, c.family, c.kind, c.eps};
  try {
    spec.validate();
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
  return spec;
}

// Instances either come from --in files (ids are positions) or are forged
// from the seed range (ids are seeds).
struct Workload {
  std::size_t size() const { return loaded ? loaded->size() : static_cast<std::size_t>(end - begin); }
  std::uint64_t id(std::size_t k) const { return loaded ? k : begin + k; }
  Instance get(std::size_t k) const { return loaded ? (*loaded)[k] : forge(spec_for(*config, begin + k)); }

  const RunConfig* config;
  std::optional<std::vector<Instance>> loaded;
  std::uint64_t begin, end;
};

Workload workload(const RunConfig& c) {
  Workload w{&c, std::nullopt, c.seed_begin, c.seed_end};
  if (!c.inputs.empty()) w.loaded = load_instances(c.inputs);
  else spec_for(c, c.seed_begin);
  return w;
}

struct CheckRow {
  std::string line;
  bool violation;
};

const char* kCheckHeader =
    "seed,lhs,upper,upper_argmin,lower,lower_argmax,slack_upper,slack_lower,pr_lhs,pr_upper,pr_lower,"
    "kato_ok,two_point_ok,violation\n";

CheckRow check_one(const Instance& inst, std::uint64_t id, const ToleranceConfig& tol) {
  bool violation = false;
  BoundReport r{};
  try {
    r = check_theorem(inst, tol);
  } catch (const Error& e) {
    if (e.code() != Errc::BoundViolation) throw;
    violation = true;
    const InstanceNorms norms = compute_norms(inst, tol);
    const auto up = upper_candidates(norms), lo = lower_candidates(norms);
    const auto ui = std::min_element(up.begin(), up.end()) - up.begin();
    const auto li = std::max_element(lo.begin(), lo.end()) - lo.begin();
    r = {norms.lhs, up[ui], static_cast<std::size_t>(ui), lo[li], static_cast<std::size_t>(li),
         up[ui] - norms.lhs, norms.lhs - lo[li]};
  }

  BoundReport pr{};
  try {
    pr = pecaric_rajic_bounds(inst.xs, tol);
  } catch (const Error& e) {
    if (e.code() != Errc::BoundViolation) throw;
    violation = true;
  }
  if (inst.family == Construction::ReciprocalNormFamily) {
    const bool agree = std::abs(pr.lhs - r.lhs) <= tol.tol_eq && std::abs(pr.upper - r.upper) <= tol.tol_eq &&
                       std::abs(pr.lower - r.lower) <= tol.tol_eq;
    violation = violation || !agree;
  }

  const KatoReport kato = kato_bounds(inst.xs, tol);
  const bool kato_ok = kato.refined_upper_holds && kato.reverse_holds && kato.pr_sharper;

  const TwoPointReport tp = classical_two_point(inst.xs[0], inst.xs[1], tol);
  const bool two_point_ok = tp.dunkl_williams.holds && tp.maligranda.holds && tp.mercer.holds &&
                            tp.maligranda.rhs <= tp.dunkl_williams.rhs + tol.tol_eq &&
                            std::abs(tp.engine.lhs - tp.dunkl_williams.lhs) <= tol.tol_eq &&
                            std::abs(tp.engine.upper - tp.maligranda.rhs) <= tol.tol_eq &&
                            tp.mercer.rhs <= tp.engine.lower + tol.tol_eq;
  violation = violation || !kato_ok || !two_point_ok;

  std::string line = std::to_string(id);
  for (double v : {r.lhs, r.upper}) line += "," + format_double(v);
  line += "," + std::to_string(r.upper_argmin) + "," + format_double(r.lower) + "," + std::to_string(r.lower_argmax);
  for (double v : {r.slack_upper, r.slack_lower, pr.lhs, pr.upper, pr.lower}) line += "," + format_double(v);
  line += std::string(",") + (kato_ok ? "1" : "0") + "," + (two_point_ok ? "1" : "0") + "," + (violation ? "1" : "0");
  return {line + "\n", violation};
}

int cmd_check(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Workload w = workload(c);
  const auto rows = parallel_map<CheckRow>(w.size(), c.jobs, [&](std::size_t k) {
    return check_one(w.get(k), w.id(k), c.tol);
  });
  std::string csv = kCheckHeader;
  std::size_t violations = 0;
  for (const auto& row : rows) {
    csv += row.line;
    violations += row.violation ? 1 : 0;
  }
  Sink(c.output, out).write(csv);
  err << "check: " << rows.size() << " instances, " << violations << " violations\n";
  return violations == 0 ? exit_code::ok : exit_code::failed;
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const Workload w = workload(c);
  const auto results = parallel_map<EqualityAssessment>(w.size(), c.jobs, [&](std::size_t k) {
    try {
      return assess_equality(w.get(k), c.tol);
    } catch (const Error& e) {
      if (e.code() == Errc::PreconditionViolated || e.code() == Errc::InvalidInstance) throw InputFailure(e.what());
      throw;
    }
  });
  Json doc = Json::array();
  bool mismatch = false, inconclusive = false;
  for (std::size_t k = 0; k < results.size(); ++k) {
    const auto& a = results[k];
    doc.push_back(a.certificate ? to_json(*a.certificate) : Json(nullptr));
    mismatch = mismatch || a.verdict == EqualityVerdict::Mismatch;
    inconclusive = inconclusive || a.verdict == EqualityVerdict::Inconclusive;
    err << "certify " << w.id(k) << ": " << to_string(a.verdict) << " gap=" << format_double(a.gap)
        << " certificate=" << (a.certificate ? "yes" : "no above residual " + format_double(a.best_residual)) << "\n";
  }
  Sink(c.output, out).write(dump_canonical(results.size() == 1 ? doc[0] : doc));
  if (mismatch) return exit_code::failed;
  return inconclusive ? exit_code::inconclusive : exit_code::ok;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.inputs.size() != 1 || c.certificate.empty()) throw InputFailure("verify needs one --in instance and --cert");
  const std::vector<Instance> instances = load_instances(c.inputs);
  if (instances.size() != 1) throw InputFailure("verify needs exactly one instance");
  const Json doc = read_json(c.certificate);
  Json result{{"valid", false}, {"residuals", Json::array()}};
  if (!doc.is_null()) {
    try {
      const Certificate cert = certificate_from_json(doc);
      const VerifyResult v = verify_certificate(instances[0], cert, c.tol);
      result = Json{{"valid", v.valid}, {"residuals", v.residuals}};
    } catch (const Error& e) {
      if (e.code() == Errc::Parse) throw InputFailure(c.certificate + ": " + e.what());
      if (e.code() != Errc::InvalidState && e.code() != Errc::DimensionMismatch) throw;
      err << "verify: " << e.what() << "\n";
    }
  }
  Sink(c.output, out).write(dump_canonical(result));
  return result["valid"].get<bool>() ? exit_code::ok : exit_code::failed;
}

int cmd_forge(const RunConfig& c, std::ostream& out, std::ostream&) {
  spec_for(c, c.seed_begin);
  const auto docs = parallel_map<Json>(static_cast<std::size_t>(c.seed_end - c.seed_begin), c.jobs,
                                       [&](std::size_t k) { return to_json(forge(spec_for(c, c.seed_begin + k))); });
  Sink(c.output, out).write(dump_canonical(docs.size() == 1 ? docs[0] : Json(docs)));
  return exit_code::ok;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

int cmd_report(const RunConfig& c, std::ostream& out, std::ostream&) {
  if (c.inputs.empty()) throw InputFailure("report needs at least one --in CSV");
  std::vector<double> su, sl;
  std::size_t violations = 0;
  for (const auto& path : c.inputs) {
    std::istringstream in(read_file(path));
    std::string line;
    if (!std::getline(in, line)) throw InputFailure(path + ": empty CSV");
    std::vector<std::string> header;
    std::istringstream hs(line);
    for (std::string cell; std::getline(hs, cell, ',');) header.push_back(cell);
    auto col = [&](const char* name) {
      const auto it = std::find(header.begin(), header.end(), name);
      if (it == header.end()) throw InputFailure(path + ": missing column " + name);
      return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t cu = col("slack_upper"), cl = col("slack_lower"), cv = col("violation");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::istringstream ls(line);
      for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
      if (cells.size() != header.size()) throw InputFailure(path + ": ragged row");
      try {
        su.push_back(std::stod(cells[cu]));
        sl.push_back(std::stod(cells[cl]));
      } catch (const std::exception&) {
        throw InputFailure(path + ": non-numeric slack");
      }
      violations += cells[cv] == "1" ? 1 : 0;
    }
  }
  auto stats = [](const std::vector<double>& v) {
    return Json{{"min", v.empty() ? 0.0 : *std::min_element(v.begin(), v.end())}, {"median", median(v)}};
  };
  const Json summary{{"rows", su.size()}, {"violations", violations}, {"slack_upper", stats(su)}, {"slack_lower", stats(sl)}};
  Sink(c.output, out).write(dump_canonical(summary));
  return exit_code::ok;
}

int cmd_shiftcheck(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<ShiftOperator> ops;
  try {
    ops = make_shift_family(c.shift_n, c.shift_truncation);
  } catch (const Error& e) {
    throw InputFailure(e.what());
  }
  const ShiftCheckReport report = exhaustive_index_check(ops, c.shift_truncation);
  Sink(c.output, out).write(dump_canonical(to_json(report)));
  err << "shiftcheck n=" << c.shift_n << " N=" << c.shift_truncation << ": " << report.checks << " checks, "
      << report.violations.size() << " violations\n";
  return report.violations.empty() ? exit_code::ok : exit_code::failed;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    config.validate();
    switch (config.command) {
      case Command::Check: return cmd_check(config, out, err);
      case Command::Certify: return cmd_certify(config, out, err);
      case Command::Verify: return cmd_verify(config, out, err);
      case Command::Forge: return cmd_forge(config, out, err);
      case Command::Report: return cmd_report(config, out, err);
      case Command::Shiftcheck: return cmd_shiftcheck(config, out, err);
    }
    return exit_code::internal_error;
  } catch (const InputFailure& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::input_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::Parse ? exit_code::input_error : exit_code::internal_error;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code::internal_error;
  }
}

int cli_main(int argc, char** argv) {
  CLI::App app{"Generalized Dunkl-Williams inequality laboratory"};
  app.require_subcommand(1);

  RunConfig config;
  std::string seeds, family = "scalar", kind = "random";
  if (const char* env = std::getenv("DWMOD_SEED")) seeds = env;

  struct Sub {
    const char* name;
    const char* help;
    Command command;
  };
  const Sub subs[] = {
      {"check", "evaluate both bounds and every specialization; write CSV", Command::Check},
      {"certify", "search equality certificates; write certificate JSON", Command::Certify},
      {"verify", "re-check a certificate against an instance", Command::Verify},
      {"forge", "write seeded instances as JSON", Command::Forge},
      {"report", "aggregate check CSVs", Command::Report},
      {"shiftcheck", "exact verification of the truncated shift identities", Command::Shiftcheck},
  };
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&config, cmd = s.command] { config.command = cmd; });
    sub->add_option("--seeds", seeds, "seed range A..B (half-open) or a single seed; default $DWMOD_SEED or 0");
    sub->add_option("--d", config.d, "algebra dimension");
    sub->add_option("--m", config.m, "module rows");
    sub->add_option("--n", config.n, "number of elements (shiftcheck: number of isometries)");
    sub->add_option("--N", config.shift_truncation, "shiftcheck truncation N");
    sub->add_option("--family", family, "diagpair | scalar | recipnorm | scaledunitary");
    sub->add_option("--kind", kind, "random | equality | nearequality | sumzero");
    sub->add_option("--eps", config.eps, "nearequality perturbation size");
    sub->add_option("--tol-eq", config.tol.tol_eq, "equality tolerance");
    sub->add_option("--tol-feas", config.tol.tol_feas, "feasibility tolerance");
    sub->add_option("--jobs", config.jobs, "worker threads");
    sub->add_option("--in", config.inputs, "input file(s)");
    sub->add_option("--cert", config.certificate, "certificate file (verify)");
    sub->add_option("--out", config.output, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
    if (!seeds.empty()) std::tie(config.seed_begin, config.seed_end) = parse_seed_range(seeds);
    config.family = construction_from_string(family);
    config.kind = forge_kind_from_string(kind);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? exit_code::ok : exit_code::input_error;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::input_error;
  }
  config.shift_n = config.n;
  if (config.command == Command::Shiftcheck && app.get_subcommand("shiftcheck")->count("--n") == 0) config.shift_n = 2;
  return run(config, std::cout, std::cerr);
}

}  // namespace dwmod
