#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "galileq/suites.hpp"

using namespace galileq;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2 };

struct RunConfig {
  std::uint64_t seed = 1;
  std::string mass = "1";
  std::string format = "json";
  std::string out = "catalog";
  int order = 2;
  std::string l1, l2, l3, nu, mu, lambda;
};

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    auto h = line.find('#');
    if (h != std::string::npos) line.erase(h);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

// Values from the config file fill options not given on the command line.
void apply_config(CLI::App& app, const std::map<std::string, std::string>& kv) {
  std::vector<CLI::App*> apps{&app};
  for (auto* sub : app.get_subcommands({})) apps.push_back(sub);
  for (const auto& [key, value] : kv) {
    for (auto* a : apps) {
      CLI::Option* opt = nullptr;
      try {
        opt = a->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
        continue;
      }
      if (opt->count() == 0) {
        opt->clear();
        opt->add_result(value);
        opt->run_callback();
      }
    }
  }
}

Poly parse_value(const std::string& s, const std::string& fallback_symbol) {
  return s.empty() ? Poly::var(fallback_symbol) : parse_poly(s);
}

Rational parse_mass(const std::string& s) {
  Poly p = parse_poly(s);
  if (!p.symbols().empty() || !p.const_value().is_real()) throw std::invalid_argument("mass must be a rational number");
  return p.const_value().re;
}

void emit(const RunConfig& cfg, const json& j, const std::string& summary) {
  if (cfg.format == "pretty") {
    std::cout << summary << "\n" << j.dump(2) << "\n";
  } else {
    std::cout << j.dump() << "\n";
  }
}

void write_json(const fs::path& p, const json& j) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

int cmd_catalog(const RunConfig& cfg, const std::string& only_s) {
  std::optional<QIndex> only;
  if (!only_s.empty()) {
    only = parse_qindex(only_s);
    if (!only) throw CLI::ValidationError("--only", "expected (n,k,l)");
  }
  fs::path dir(cfg.out);
  json reps = catalog_reps_json(only);
  json systems = catalog_systems_json(only, cfg.seed);
  write_json(dir / "reps.json", reps);
  write_json(dir / "betasystems.json", systems);
  json golden = json::array();
  for (const auto& bs : catalog_golden_systems(only)) {
    write_json(dir / "golden" / (bs.id + ".json"), beta_json(bs));
    golden.push_back(bs.id);
  }
  std::size_t n_sys = 0;
  for (const auto& c : systems["cells"]) n_sys += c["branches"].size();
  json j{{"schema", kSchemaVersion}, {"out", dir.string()},        {"reps", reps["reps"].size()},
         {"cells", systems["cells"].size()}, {"systems", n_sys}, {"golden", golden}};
  emit(cfg, j,
       "catalog: " + std::to_string(reps["reps"].size()) + " reps, " + std::to_string(n_sys) + " systems written to " +
           dir.string());
  return kOk;
}

// Adds value to entry (m, i, j) of the named system before the invariance check.
struct Perturbation {
  std::string system;
  int m = 0;
  std::size_t i = 0, j = 0;
  Poly value;
};

Perturbation parse_perturbation(const std::string& s) {
  // ID:m,i,j,value
  auto colon = s.find(':');
  std::vector<std::string> parts;
  std::stringstream ss(colon == std::string::npos ? "" : s.substr(colon + 1));
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(tok);
  if (parts.size() != 4) throw CLI::ValidationError("--perturb", "expected ID:m,i,j,value");
  return {s.substr(0, colon), std::stoi(parts[0]), std::stoul(parts[1]), std::stoul(parts[2]), parse_poly(parts[3])};
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& perturb) {
  SuiteResult r;
  if (!perturb.empty()) {
    if (suite != "invariance") throw CLI::ValidationError("--perturb", "only valid for the invariance suite");
    Perturbation p = parse_perturbation(perturb);
    r.name = "invariance";
    bool found = false;
    json rows = json::array();
    for (auto bs : catalog::canonical()) {
      if (bs.id != p.system) continue;
      found = true;
      if (p.m < 0 || p.m > 4 || p.i >= bs.dim() || p.j >= bs.dim())
        throw CLI::ValidationError("--perturb", "entry out of range");
      bs.beta[p.m](p.i, p.j) += p.value;
      auto c = verify_invariance(bs);
      for (const auto& f : c.failures()) r.check(false, bs.id + ": " + f);
      rows.push_back({{"system", bs.id}, {"check", check_json(c)}});
    }
    if (!found) throw CLI::ValidationError("--perturb", "unknown system " + p.system);
    r.detail["systems"] = rows;
  } else {
    r = run_verify_suite(suite);
  }
  std::string summary = "verify " + r.name + ": " + (r.ok ? "PASS" : "FAIL");
  for (const auto& f : r.failures) summary += "\n  residual: " + f;
  emit(cfg, suite_json(r), summary);
  return r.ok ? kOk : kFailed;
}

int cmd_classify(const RunConfig& cfg, const std::string& id) {
  Rational mass = parse_mass(cfg.mass);
  json j;
  std::string verdict;
  if (id == "M1" || id == "M2" || id == "M3" || id == "M4" || id == "LL") {
    BetaSystem bs = id == "M1"   ? catalog::m1()
                    : id == "M2" ? catalog::m2()
                    : id == "M3" ? catalog::m3()
                    : id == "M4" ? catalog::m4(parse_value(cfg.nu.empty() ? "1" : cfg.nu, "nu"))
                                 : catalog::levy_leblond();
    auto c = classify(bs, mass);
    j = classification_json(c);
    verdict = verdict_str(c.verdict);
  } else if (id == "ProcaFixed" || id == "ProcaTwo" || id == "RS") {
    CovariantSystem sys = id == "ProcaFixed" ? proca_first_order({ProcaMode::FixedSpin, parse_poly(cfg.lambda.empty() ? "1" : cfg.lambda)})
                          : id == "ProcaTwo" ? proca_first_order({ProcaMode::TwoSpin, parse_poly(cfg.nu.empty() ? "1" : cfg.nu)})
                                             : rs_system(parse_poly(cfg.lambda.empty() ? "1" : cfg.lambda));
    auto c = classify_covariant(sys, mass);
    j = covariant_classification_json(c);
    verdict = verdict_str(c.rest.verdict);
  } else {
    throw CLI::ValidationError("system", "unknown system id " + id);
  }
  std::string summary = "classify " + id + ": " + verdict + ", eps =";
  for (const auto& b : j["branches"]) summary += " " + b["epsilon"].get<std::string>();
  emit(cfg, j, summary);
  return kOk;
}

int cmd_reduce(const RunConfig& cfg, const std::string& id) {
  NCConfig nc = cfg.order == 1 ? NCConfig::first_order_in_e() : NCConfig::second_order_in_e();
  NCAlgebra alg(nc);
  json j;
  std::string summary;
  if (id == "LL") {
    auto r = reduce_levy_leblond(alg, parse_value(cfg.nu.empty() ? "0" : cfg.nu, "nu"),
                                 parse_value(cfg.mu.empty() ? "0" : cfg.mu, "mu"), parse_value(cfg.l1, "lambda1"),
                                 parse_value(cfg.l2, "lambda2"));
    j = pauli_reduction_json(r);
    summary = "reduce LL: g = " + r.g_spin_half.str();
  } else if (id == "DKP") {
    auto r = reduce_dkp(alg, parse_value(cfg.nu, "nu"), parse_value(cfg.l1, "lambda1"), parse_value(cfg.l2, "lambda2"));
    j = dkp_reduction_json(r);
    summary = "reduce DKP: g = " + r.g.str();
  } else if (id == "Proca") {
    Rational nu = cfg.nu.empty() ? Rational(0) : parse_mass(cfg.nu);
    Poly lambda = parse_value(cfg.lambda.empty() ? (sgn(nu) ? "0" : "1") : cfg.lambda, "lambda");
    auto r = proca_gauge_reduce(alg, parse_value(cfg.mu, "mu"), nu, lambda);
    j = proca_reduction_json(r);
    summary = "reduce Proca: g = " + r.g.str();
  } else {
    throw CLI::ValidationError("system", "unknown system id " + id);
  }
  emit(cfg, j, summary);
  return kOk;
}

int cmd_contract(const RunConfig& cfg, const std::string& scaling) {
  auto s = scaling == "printed" ? MomentumScaling::AsPrinted : MomentumScaling::Consistent;
  auto r = contraction_pipeline(s);
  std::string summary = std::string("contract: ") + (r.match.ok ? "Galilean system recovered" : "no match") +
                        ", witness to M2: " + (r.m2.witness ? "found" : "none");
  emit(cfg, contraction_json(r), summary);
  return r.match.ok && r.m2.witness ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galilei-invariant first-order wave equations"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path;
  if (const char* env = std::getenv("GALILEQ_CONFIG")) config_path = env;
  app.add_option("--config", config_path, "key=value configuration file (also GALILEQ_CONFIG)");
  app.add_option("--seed", cfg.seed, "sampling seed");
  app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "pretty"}));

  std::string only, suite, system_id, perturb, scaling = "consistent";
  auto* catalog_cmd = app.add_subcommand("catalog", "write reps.json, betasystems.json and golden files");
  catalog_cmd->add_option("--out", cfg.out, "output directory");
  catalog_cmd->add_option("--only", only, "restrict to one representation, e.g. (2,2,1)");

  auto* verify_cmd = app.add_subcommand("verify", "run an identity suite");
  verify_cmd->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(verify_suite_names()));
  verify_cmd->add_option("--perturb", perturb, "ID:m,i,j,value added to beta_m(i,j) before checking");

  auto* classify_cmd = app.add_subcommand("classify", "classify a system (M1-M4, LL, ProcaFixed, ProcaTwo, RS)");
  classify_cmd->add_option("system", system_id, "system id")->required();
  classify_cmd->add_option("--m,--mass", cfg.mass, "mass");
  classify_cmd->add_option("--nu", cfg.nu, "nu");
  classify_cmd->add_option("--lambda", cfg.lambda, "lambda");

  auto* reduce_cmd = app.add_subcommand("reduce", "gauge reduction (LL, DKP, Proca)");
  reduce_cmd->add_option("system", system_id, "system id")->required();
  reduce_cmd->add_option("--l1", cfg.l1, "lambda1 (symbolic if omitted)");
  reduce_cmd->add_option("--l2", cfg.l2, "lambda2 (symbolic if omitted)");
  reduce_cmd->add_option("--nu", cfg.nu, "nu");
  reduce_cmd->add_option("--mu", cfg.mu, "mu");
  reduce_cmd->add_option("--lambda", cfg.lambda, "lambda");
  reduce_cmd->add_option("--order", cfg.order, "truncation order in e")->check(CLI::Range(1, 2));

  auto* contract_cmd = app.add_subcommand("contract", "contract the relativistic Proca system");
  contract_cmd->add_option("--scaling", scaling, "momentum scaling")->check(CLI::IsMember({"consistent", "printed"}));

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) apply_config(app, read_config(config_path));
    if (cfg.format != "json" && cfg.format != "pretty") throw CLI::ValidationError("--format", "json or pretty");
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*catalog_cmd) return cmd_catalog(cfg, only);
    if (*verify_cmd) return cmd_verify(cfg, suite, perturb);
    if (*classify_cmd) return cmd_classify(cfg, system_id);
    if (*reduce_cmd) return cmd_reduce(cfg, system_id);
    if (*contract_cmd) return cmd_contract(cfg, scaling);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kUsage;
}
