#include "solitonlab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/manifold_file.hpp"
#include "solitonlab/pipeline.hpp"

namespace solitonlab {

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// A file path, or a zoo entry name when no such file exists.
ManifoldSpec resolve_manifold(const std::string& what) {
  if (std::filesystem::exists(what)) return load_manifold(what);
  try {
    return zoo_entry(what).spec;
  } catch (const Error&) {
    throw Error("'" + what + "' is neither a readable manifold file nor a zoo entry");
  }
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error("invalid seed '" + text + "'");
  return v;
}

int emit(const Report& r, const std::string& format, std::ostream& out, std::ostream& err) {
  out << (format == "json" ? r.to_json_text() : r.to_text());
  if (const Check* f = r.first_failure()) {
    err << "FAIL: " << f->group << " / " << f->name << " (residual " << f->residual << ", tolerance " << f->tolerance
        << ")\n";
    return kExitFail;
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification engine for curvature, almost contact and Riemann soliton identities", "solitonlab"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "text";
  std::string seed_text = std::to_string(kDefaultSeed);
  RunOptions opts;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", seed_text, "Sample seed (SOLITONLAB_SEED overrides)");
  app.add_option("--samples", opts.samples, "Number of sample points")->check(CLI::Range(1, 100000));

  std::string file;
  std::optional<double> lambda;

  auto* check = app.add_subcommand("check", "Run a check suite on a manifold");
  check->require_subcommand(1);
  auto* structure = check->add_subcommand("structure", "Almost contact, Kenmotsu, (kappa,mu)' and eta-Einstein suites");
  structure->add_option("file", file, "Manifold file or zoo name")->required();
  auto* soliton = check->add_subcommand("soliton", "Riemann soliton residual, lambda fit and divergence relations");
  soliton->add_option("file", file, "Manifold file or zoo name")->required();

  const auto add_potential = [&](CLI::App* sub) {
    auto* l = sub->add_option("--lambda", lambda, "Soliton constant to test");
    auto* f = sub->add_flag("--fit", opts.fit, "Fit lambda by least squares");
    l->excludes(f);
    auto* v = sub->add_option("--potential", opts.potential, "Vector field name or inline components");
    auto* u = sub->add_option("--potential-fn", opts.potential_fn, "Scalar field name or inline expression");
    v->excludes(u);
  };
  add_potential(soliton);

  auto* audit = app.add_subcommand("audit", "Evaluate the hypotheses and conclusions of a theorem");
  audit->add_option("file", file, "Manifold file or zoo name")->required();
  audit->add_option("--theorem", opts.theorem, "Theorem id")->required()->check(CLI::IsMember(theorem_ids()));
  add_potential(audit);

  auto* zoo = app.add_subcommand("zoo", "Reference manifolds");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "List zoo entries");
  std::string zoo_name;
  auto* zoo_run = zoo->add_subcommand("run", "Run every check and expected value of an entry");
  zoo_run->add_option("name", zoo_name, "Entry name")->required();
  auto* zoo_export = zoo->add_subcommand("export", "Write entries in the manifold file format");
  std::string export_dir;
  zoo_export->add_option("name", zoo_name, "Entry name (all entries when omitted)");
  zoo_export->add_option("--dir", export_dir, "Write <name>.manifold files into this directory");

  auto* report = app.add_subcommand("report", "Run every applicable check on a manifold");
  report->add_option("file", file, "Manifold file or zoo name")->required();
  add_potential(report);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (const char* env = std::getenv("SOLITONLAB_SEED"); env && *env) seed_text = env;
    opts.seed = parse_seed(seed_text);
    opts.lambda = lambda;

    if (*structure) return emit(run_structure(resolve_manifold(file), opts), format, out, err);
    if (*soliton) return emit(run_soliton(resolve_manifold(file), opts), format, out, err);
    if (*audit) return emit(run_audit(resolve_manifold(file), opts), format, out, err);
    if (*report) return emit(run_report(resolve_manifold(file), opts), format, out, err);
    if (*zoo_list) {
      for (const auto& name : zoo_names()) out << name << "  " << zoo_entry(name).description << "\n";
      return 0;
    }
    if (*zoo_run) return emit(run_zoo(zoo_entry(zoo_name), opts), format, out, err);
    if (*zoo_export) {
      const std::vector<std::string> names = zoo_name.empty() ? zoo_names() : std::vector<std::string>{zoo_name};
      for (const auto& name : names) {
        const ZooEntry e = zoo_entry(name);
        const std::string text = "# " + e.description + "\n\n" + write_manifold(e.spec);
        if (export_dir.empty()) {
          out << text << (names.size() > 1 ? "\n" : "");
          continue;
        }
        std::filesystem::create_directories(export_dir);
        const auto path = std::filesystem::path(export_dir) / (name + ".manifold");
        std::ofstream f(path);
        if (!(f << text)) throw Error("cannot write '" + path.string() + "'");
        out << path.string() << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace solitonlab
