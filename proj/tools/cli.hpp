#pragma once

// Command-line front end. run() is separate from main() so tests can drive it
// in-process.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncgasket/ncgasket.hpp"

namespace ncgasket::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

// "a:b:step" (inclusive) or a comma separated list.
inline std::vector<double> parse_s_grid(const std::string& spec) {
  std::vector<double> out;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw DomainError("bad number '" + s + "' in s-grid");
    }
    if (used != s.size()) throw DomainError("bad number '" + s + "' in s-grid");
    return v;
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string p;
    while (std::getline(ss, p, ':')) parts.push_back(p);
    if (parts.size() != 3) throw DomainError("s-grid range must be start:stop:step");
    const double a = num(parts[0]), b = num(parts[1]), h = num(parts[2]);
    if (!(h > 0) || b < a) throw DomainError("s-grid range needs start <= stop and step > 0");
    const auto count = static_cast<int>(std::floor((b - a) / h + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) out.push_back(a + i * h);
  } else {
    std::stringstream ss(spec);
    std::string p;
    while (std::getline(ss, p, ',')) out.push_back(num(p));
  }
  if (out.empty()) throw DomainError("empty s-grid");
  return out;
}

inline double parse_extension(const std::string& s) {
  if (s == "harmonic") return kHarmonicT;
  if (s == "affine") return kAffineT;
  try {
    std::size_t used = 0;
    const double t = std::stod(s, &used);
    if (used == s.size()) {
      require_extension_parameter(t);
      return t;
    }
  } catch (const std::invalid_argument&) {
  }
  throw DomainError("extension must be 'harmonic', 'affine' or a number in [0.5, 1)");
}

class Output {
 public:
  Output(std::ostream& out) : out_(out) {}
  void emit(const std::optional<std::string>& path, const std::string& text) {
    if (path && *path != "-")
      write_file(*path, text);
    else
      out_ << text;
  }

 private:
  std::ostream& out_;
};

inline Json complex_value(Complex z) {
  if (z.imag() == 0.0) return z.real();
  return Json::array({z.real(), z.imag()});
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Approximation algebras of the quantum Sierpinski gasket", "ncgasket"};
  app.require_subcommand(1);
  Output sink(out);

  std::optional<std::string> output;
  std::optional<std::uint64_t> seed;

  // gen
  auto* gen = app.add_subcommand("gen", "Construct an element and write it as JSON");
  std::vector<int> gen_alpha, gen_beta;
  std::optional<int> gen_identity, gen_zero, gen_random;
  bool gen_hermitian = false;
  auto* g_alpha = gen->add_option("--alpha", gen_alpha, "alpha(n, j)")->expected(2);
  auto* g_beta = gen->add_option("--beta", gen_beta, "identity block times beta of generation g: n g j")->expected(3);
  auto* g_id = gen->add_option("--identity", gen_identity, "identity of A_n");
  auto* g_zero = gen->add_option("--zero", gen_zero, "zero of A_n");
  auto* g_rand = gen->add_option("--random", gen_random, "random element of A_n");
  gen->add_flag("--hermitian", gen_hermitian, "random element is self-adjoint");
  gen->add_option("--seed", seed, "random seed (default 42, or NCGASKET_SEED)");
  gen->add_option("-o,--output", output, "output file (default stdout)");
  for (auto* o : {g_alpha, g_beta, g_id, g_zero, g_rand})
    for (auto* other : {g_alpha, g_beta, g_id, g_zero, g_rand})
      if (o != other) o->excludes(other);

  // op
  auto* op = app.add_subcommand("op", "Apply an algebra operation");
  std::string op_name, op_a;
  std::optional<std::string> op_b;
  op->add_option("--op", op_name, "operation")
      ->required()
      ->check(CLI::IsMember({"mul", "add", "sub", "adjoint", "cond-exp", "norm", "osc", "trace", "tau", "dense"}));
  op->add_option("--a", op_a, "first operand")->required();
  op->add_option("--b", op_b, "second operand");
  op->add_option("-o,--output", output, "output file (default stdout)");

  // energy
  auto* en = app.add_subcommand("energy", "Dirichlet energy report");
  std::string en_element;
  bool en_self = false;
  en->add_option("--element", en_element, "element JSON")->required();
  en->add_flag("--self-similarity", en_self, "also compare with the sum over first-factor slices");
  en->add_option("-o,--output", output, "output file (default stdout)");

  // extend
  auto* ex = app.add_subcommand("extend", "Symmetric extension to a higher level");
  std::string ex_element, ex_mode = "harmonic";
  std::optional<int> ex_to;
  ex->add_option("--element", ex_element, "element JSON")->required();
  ex->add_option("--extend", ex_mode, "harmonic, affine or t in [0.5, 1)");
  ex->add_option("--to", ex_to, "target level (default level + 1)");
  ex->add_option("-o,--output", output, "output file (default stdout)");

  // restrict
  auto* rs = app.add_subcommand("restrict", "Restriction to a lower level");
  std::string rs_element;
  int rs_to = 0;
  rs->add_option("--element", rs_element, "element JSON")->required();
  rs->add_option("--to", rs_to, "target level")->required();
  rs->add_option("-o,--output", output, "output file (default stdout)");

  // zeta
  auto* zt = app.add_subcommand("zeta", "Truncated zeta function and residue");
  std::string zt_element, zt_mode = "trace", zt_extend = "harmonic", zt_grid;
  std::optional<int> zt_cutoff;
  zt->add_option("--element", zt_element, "element JSON")->required();
  zt->add_option("--mode", zt_mode, "trace or energy")->check(CLI::IsMember({"trace", "energy"}));
  zt->add_option("--extend", zt_extend, "harmonic, affine or t in [0.5, 1)");
  zt->add_option("--s-grid", zt_grid, "start:stop:step or comma list")->required();
  zt->add_option("--cutoff", zt_cutoff, "largest level in the partial sums (default max(level, 5))");
  zt->add_option("-o,--output", output, "CSV output file (default stdout)");

  // lip
  auto* lp = app.add_subcommand("lip", "Lip-norm along an extension chain");
  std::string lp_element, lp_extend = "affine";
  std::optional<int> lp_cutoff;
  lp->add_option("--element", lp_element, "element JSON")->required();
  lp->add_option("--extend", lp_extend, "harmonic, affine or t in [0.5, 1)");
  lp->add_option("--cutoff", lp_cutoff, "largest level (default level + 3)");
  lp->add_option("-o,--output", output, "output file (default stdout)");

  // verify
  auto* vf = app.add_subcommand("verify", "Run verification suites");
  std::string vf_suite = "all";
  std::optional<int> vf_levels, vf_samples;
  std::vector<std::string> names{"all"};
  for (const auto& s : suites()) names.push_back(s.first);
  vf->add_option("--suite", vf_suite, "suite name or 'all'")->check(CLI::IsMember(names));
  vf->add_option("--levels", vf_levels, "largest level exercised");
  vf->add_option("--samples", vf_samples, "random samples per level");
  vf->add_option("--seed", seed, "random seed (default 42, or NCGASKET_SEED)");
  vf->add_option("-o,--output", output, "report file (default stdout)");

  // export
  auto* xp = app.add_subcommand("export", "Vertex or edge tables as CSV");
  std::optional<int> xp_vertices, xp_edges;
  auto* x_v = xp->add_option("--vertices", xp_vertices, "vertices of V_n: label,x,y,age");
  auto* x_e = xp->add_option("--edges", xp_edges, "ordered edges of level n");
  x_v->excludes(x_e);
  x_e->excludes(x_v);
  xp->add_option("-o,--output", output, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      GasketElement e;
      if (!gen_alpha.empty()) {
        e = alpha(gen_alpha[0], gen_alpha[1]);
      } else if (!gen_beta.empty()) {
        const int n = gen_beta[0], g = gen_beta[1];
        if (g < 1 || g > n) throw DomainError("generation must be in 1..n");
        e = beta_block(n, g, gen_beta[2], identity_matrix(pow3(n - g)));
      } else if (gen_identity) {
        e = identity_element(*gen_identity);
      } else if (gen_zero) {
        e = zero_element(*gen_zero);
      } else if (gen_random) {
        if (*gen_random < 0 || *gen_random > 8) throw DomainError("random level must be in 0..8");
        Rng rng(resolve_seed(seed));
        e = gen_hermitian ? random_hermitian_element(rng, *gen_random) : random_element(rng, *gen_random);
      } else {
        throw DomainError("gen needs one of --alpha, --beta, --identity, --zero, --random");
      }
      sink.emit(output, dump_json(element_to_json(e)));
      return kOk;
    }

    if (op->parsed()) {
      const auto a = load_element(op_a);
      auto second = [&] {
        if (!op_b) throw DomainError("--op " + op_name + " needs --b");
        return load_element(*op_b);
      };
      Json result;
      if (op_name == "mul") {
        result = element_to_json(a * second());
      } else if (op_name == "add") {
        result = element_to_json(a + second());
      } else if (op_name == "sub") {
        result = element_to_json(a - second());
      } else if (op_name == "adjoint") {
        result = element_to_json(a.adjoint());
      } else if (op_name == "cond-exp") {
        result = element_to_json(cond_expectation(a));
      } else if (op_name == "dense") {
        const ComplexMatrix d = to_dense(a);
        Json rows = Json::array();
        for (Index r = 0; r < d.rows(); ++r) {
          Json row = Json::array();
          for (Index c = 0; c < d.cols(); ++c) row.push_back(complex_to_json(d(r, c)));
          rows.push_back(std::move(row));
        }
        result = Json{{"op", op_name}, {"dim", d.rows()}, {"matrix", std::move(rows)}};
      } else {
        Json value;
        if (op_name == "norm") value = norm(a);
        if (op_name == "osc") value = osc(a);
        if (op_name == "trace") value = complex_value(trace(a));
        if (op_name == "tau") value = complex_value(trace_tau(a));
        result = Json{{"op", op_name}, {"level", a.level()}, {"value", value}};
      }
      sink.emit(output, dump_json(result));
      return kOk;
    }

    if (en->parsed()) {
      const auto a = load_element(en_element);
      Json j = energy_report_to_json(energy(to_v0form(a)));
      if (en_self) {
        const auto ss = check_selfsimilarity(a);
        j["self_similarity"] = Json{{"lhs", ss.lhs}, {"rhs", ss.rhs}};
      }
      sink.emit(output, dump_json(j));
      return kOk;
    }

    if (ex->parsed()) {
      const auto a = load_element(ex_element);
      const double t = parse_extension(ex_mode);
      sink.emit(output, dump_json(element_to_json(extend_to(a, t, ex_to.value_or(a.level() + 1)))));
      return kOk;
    }

    if (rs->parsed()) {
      sink.emit(output, dump_json(element_to_json(restrict_to(load_element(rs_element), rs_to))));
      return kOk;
    }

    if (zt->parsed()) {
      const auto a = load_element(zt_element);
      const double t = parse_extension(zt_extend);
      const int cutoff = zt_cutoff.value_or(std::max(a.level(), 5));
      if (cutoff > 7) throw DomainError("cutoff above 7 is outside the supported dense range");
      const auto chain = make_extension_chain(a, t, std::max(cutoff, a.level()));
      const auto grid = parse_s_grid(zt_grid);
      const bool trace_mode = zt_mode == "trace";
      const auto profile = trace_mode ? zeta_trace(chain, grid, cutoff) : energy_zeta(chain, grid, cutoff);
      const std::string csv = zeta_profile_to_csv(profile);
      if (output && *output != "-") {
        write_file(*output, csv);
        const double d = trace_mode ? metric_dimension() : energy_dimension();
        Json j{{"mode", zt_mode}, {"pole", d}, {"cutoff", cutoff}, {"tail_model", profile.tail ? "geometric" : "none"}};
        if (profile.tail) {
          j["tail_ratio"] = profile.tail->ratio;
          j["residue"] = complex_value(residue_analytic(*profile.tail, d));
          const auto num = residue_numeric(profile, d);
          j["residue_extrapolated"] = complex_value(num.value);
          j["extrapolation_error"] = num.error_estimate;
        }
        out << dump_json(j);
      } else {
        out << csv;
      }
      return kOk;
    }

    if (lp->parsed()) {
      const auto a = load_element(lp_element);
      const double t = parse_extension(lp_extend);
      const int cutoff = lp_cutoff.value_or(a.level() + 3);
      if (cutoff > 7) throw DomainError("cutoff above 7 is outside the supported dense range");
      const auto chain = make_extension_chain(a, t, std::max(cutoff, a.level()));
      const auto lip = lip_norm(chain, cutoff);
      sink.emit(output, dump_json(Json{{"value", lip.value},
                                       {"stationary", lip.stationary},
                                       {"argmax_level", lip.argmax_level},
                                       {"cutoff", cutoff}}));
      return kOk;
    }

    if (vf->parsed()) {
      SuiteOptions opt;
      opt.levels = vf_levels.value_or(-1);
      opt.samples = vf_samples.value_or(-1);
      opt.seed = resolve_seed(seed);
      std::vector<VerificationReport> reports;
      if (vf_suite == "all") {
        for (const auto& s : suites()) reports.push_back(run_suite(s.first, opt));
      } else {
        reports.push_back(run_suite(vf_suite, opt));
      }
      bool ok = true;
      for (const auto& r : reports) ok = ok && r.passed();
      Json j;
      if (reports.size() == 1) {
        j = report_to_json(reports.front());
      } else {
        j = Json{{"status", ok ? "pass" : "fail"}, {"reports", Json::array()}};
        for (const auto& r : reports) j["reports"].push_back(report_to_json(r));
      }
      sink.emit(output, dump_json(j));
      return ok ? kOk : kVerificationFailed;
    }

    if (xp->parsed()) {
      if (xp_vertices) {
        if (*xp_vertices < 0 || *xp_vertices > 10) throw DomainError("vertex level must be in 0..10");
        sink.emit(output, vertices_to_csv(*xp_vertices));
      } else if (xp_edges) {
        if (*xp_edges < 0 || *xp_edges > 10) throw DomainError("edge level must be in 0..10");
        std::string csv = "from,to,x1,y1,x2,y2\n";
        for (const auto& [a, b] : enumerate_edges(*xp_edges)) {
          const Point2 p = point_of_address(a), q = point_of_address(b);
          csv += label_from_address(a).str() + "," + label_from_address(b).str() + "," + format_double(p.x) + "," +
                 format_double(p.y) + "," + format_double(q.x) + "," + format_double(q.y) + "\n";
        }
        sink.emit(output, csv);
      } else {
        throw DomainError("export needs --vertices or --edges");
      }
      return kOk;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace ncgasket::cli
