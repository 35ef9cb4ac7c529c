// symdyn: ranks, fiber censuses and witness searches for substitution shifts.
//
// Exit status: 0 on success, 1 if verify finds an inconsistent cell or a
// certificate fails to replay, 2 on unknown systems or bad arguments.

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "symdyn/catalog.hpp"
#include "symdyn/certificate.hpp"
#include "symdyn/oracles.hpp"
#include "symdyn/ranks.hpp"
#include "symdyn/verify.hpp"

using namespace symdyn;

namespace {

struct RunConfig {
  std::string system;
  std::vector<std::string> params;
  std::string catalog_path;
  std::string budget_text;
  bool json_out = false;
  std::string certificate_out;

  SearchBudget budget;
  RankOptions ranks;
  int m_max = 5;
};

struct UsageError : Error {
  using Error::Error;
};

void apply_budget(RunConfig& cfg) {
  std::stringstream ss(cfg.budget_text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("budget entry '" + item + "' is not key=value");
    const auto key = item.substr(0, eq);
    long v = 0;
    try {
      std::size_t used = 0;
      v = std::stol(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("budget value for '" + key + "' is not an integer");
    }
    if (v <= 0) throw UsageError("budget value for '" + key + "' must be positive");
    if (key == "L") cfg.budget.L = v;
    else if (key == "N") cfg.budget.N = v;
    else if (key == "K") cfg.budget.K = static_cast<int>(v);
    else if (key == "B") cfg.budget.B = v;
    else if (key == "m") cfg.budget.m = static_cast<int>(v);
    else if (key == "depth") cfg.ranks.depth_max = static_cast<int>(v);
    else if (key == "radius") cfg.ranks.radius_max = v;
    else if (key == "m_max") cfg.m_max = static_cast<int>(v);
    else throw UsageError("unknown budget key '" + key + "'");
  }
}

const Catalog& catalog(const RunConfig& cfg) {
  static std::optional<Catalog> loaded;
  if (cfg.catalog_path.empty()) return Catalog::builtin();
  if (!loaded) loaded = Catalog::load(cfg.catalog_path);
  return *loaded;
}

// A catalog name, or inline rules such as "0->01,1->10".
System select_system(const RunConfig& cfg) {
  if (cfg.system.find("->") != std::string::npos) {
    std::string rules;
    for (const auto& r : split(cfg.system, ',')) rules += r + "\n";
    return substitution_system(cfg.system, Substitution::parse(rules));
  }
  std::map<std::string, std::string> params;
  for (const auto& p : cfg.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("parameter '" + p + "' is not key=value");
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return catalog(cfg).get(cfg.system, params);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void save_certificate(const RunConfig& cfg, const Verdict& v) {
  if (cfg.certificate_out.empty()) return;
  if (v.certificate.is_null()) {
    std::cerr << "no certificate: outcome is " << to_string(v.outcome) << "\n";
    return;
  }
  std::ofstream f(cfg.certificate_out);
  f << v.certificate.dump(2) << "\n";
  if (!f) throw Error("cannot write " + cfg.certificate_out);
}

std::string rank_cell(const Estimate& e) {
  return (e.value ? std::to_string(*e.value) : std::string("inf")) + " (" +
         std::string(to_string(e.kind)) + ", " + e.method + ")";
}

void print_verdict(const Verdict& v) {
  std::cout << to_string(v.outcome) << " " << v.label;
  if (v.value) std::cout << " " << *v.value;
  std::cout << "\n";
  if (!v.reason.empty()) std::cout << "  " << v.reason << "\n";
  for (const auto& n : v.notes) std::cout << "  " << n << "\n";
}

int cmd_catalog(const RunConfig& cfg) {
  const auto& cat = catalog(cfg);
  if (cfg.json_out) {
    json out = json::array();
    for (const auto& e : cat.entries()) {
      json g = json::object();
      for (const auto& gv : e.goldens) {
        g[gv.rank] = {{"value", gv.value}, {"provenance", std::string(to_string(gv.provenance))}};
      }
      out.push_back({{"name", e.name}, {"about", e.about}, {"constructive", e.constructive()},
                     {"params", e.params}, {"golden", g}});
    }
    emit({{"schema_version", kCertificateSchema}, {"catalog", out}});
    return 0;
  }
  for (const auto& e : cat.entries()) {
    std::cout << std::left << std::setw(24) << e.name << e.about;
    if (!e.constructive()) std::cout << " [documentation only]";
    std::cout << "\n";
  }
  return 0;
}

int cmd_ranks(const RunConfig& cfg) {
  auto sys = select_system(cfg);
  auto r = rank_report(sys, cfg.ranks);
  if (cfg.json_out) {
    emit({{"schema_version", kCertificateSchema}, {"ranks", to_json(r)}});
    return 0;
  }
  std::cout << sys.name << "\n";
  std::cout << "  r_c = " << rank_cell(r.r_c) << "\n";
  std::cout << "  r_m = " << rank_cell(r.r_m) << "\n";
  std::cout << "  r_M = " << rank_cell(r.r_M) << "\n";
  std::cout << "  evidence: depth " << cfg.ranks.depth_max << ", radius " << cfg.ranks.radius_max;
  if (r.r_c.evidence.contains("column_number")) {
    std::cout << ", column number " << r.r_c.evidence["column_number"];
  }
  std::cout << "\n";
  return 0;
}

int cmd_profile(const RunConfig& cfg) {
  auto sys = select_system(cfg);
  auto p = predict_profile(rank_report(sys, cfg.ranks), cfg.m_max);
  if (cfg.json_out) {
    emit({{"schema_version", kCertificateSchema}, {"profile", to_json(p)}});
    return 0;
  }
  std::cout << sys.name << (p.provisional ? "  (provisional: lower-bound ranks)" : "") << "\n";
  std::cout << std::boolalpha;
  std::cout << "  m  m-equicontinuous  m-sensitive  compactly-sensitive  cover-equicontinuous\n";
  for (const auto& row : p.rows) {
    std::cout << "  " << std::left << std::setw(3) << row.m << std::setw(18) << row.equicontinuous
              << std::setw(13) << row.sensitive << std::setw(21) << row.compactly_sensitive
              << row.cover_equicontinuous << "\n";
  }
  return 0;
}

int report_search(const RunConfig& cfg, const SensitivityReport& rep) {
  save_certificate(cfg, rep.verdict);
  if (cfg.json_out) {
    json cyl = json::array();
    for (const auto& c : rep.cylinders) {
      cyl.push_back({{"cylinder", to_string(c.cylinder)}, {"witnessed", c.witnessed}, {"witness", c.witness}});
    }
    emit({{"schema_version", kCertificateSchema}, {"verdict", to_json(rep.verdict)},
               {"cylinders", cyl}});
    return 0;
  }
  print_verdict(rep.verdict);
  std::size_t hit = 0;
  for (const auto& c : rep.cylinders) hit += c.witnessed;
  std::cout << "  cylinders witnessed: " << hit << "/" << rep.cylinders.size() << "\n";
  return 0;
}

int cmd_sensitivity(const RunConfig& cfg) {
  return report_search(cfg, m_sensitivity_test(select_system(cfg), cfg.budget));
}

int cmd_block(const RunConfig& cfg) {
  return report_search(cfg, block_m_sensitivity_test(select_system(cfg), cfg.budget));
}

SeedSpec pick_seed(const System& sys, std::size_t index, long shift) {
  if (!sys.substitution) throw UsageError("point tests need a substitution system");
  auto seeds = seed_pairs(*sys.substitution, *sys.language);
  if (index >= seeds.size()) {
    throw UsageError("seed index out of range (" + std::to_string(seeds.size()) + " seeds)");
  }
  return {seeds[index], shift};
}

int report_point(const RunConfig& cfg, const Verdict& v) {
  save_certificate(cfg, v);
  if (cfg.json_out) {
    emit({{"schema_version", kCertificateSchema}, {"verdict", to_json(v)}});
  } else {
    print_verdict(v);
  }
  return 0;
}

int cmd_fiber(const RunConfig& cfg, int depth, long residue, long radius) {
  auto sys = select_system(cfg);
  if (!sys.substitution) throw UsageError("fiber censuses need a substitution system");
  OdometerResidue r(static_cast<long>(sys.substitution->length()), depth, residue);
  auto f = fiber_census(*sys.substitution, r, radius);
  if (cfg.json_out) {
    emit({{"schema_version", kCertificateSchema}, {"fiber", to_json(f)}});
    return 0;
  }
  std::cout << "residue " << residue << " mod " << r.q << "^" << depth << ", radius " << radius
            << ": " << f.count() << " window(s), resolved at depth " << f.resolved_depth
            << (f.stabilized ? "" : " (not stabilized)") << "\n";
  for (const auto& w : f.representatives) std::cout << "  " << to_string(w.symbols()) << "\n";
  return 0;
}

int cmd_language(const RunConfig& cfg, std::size_t n) {
  auto sys = select_system(cfg);
  const auto& words = sys.language->words(n);
  if (cfg.json_out) {
    json ws = json::array();
    for (const auto& w : words) ws.push_back(to_string(w));
    emit({{"schema_version", kCertificateSchema}, {"n", n}, {"complexity", words.size()}, {"words", ws}});
    return 0;
  }
  std::cout << "p(" << n << ") = " << words.size() << "\n";
  for (const auto& w : words) std::cout << "  " << to_string(w) << "\n";
  return 0;
}

int verify_one(const RunConfig& cfg, const System& sys, json& out) {
  VerifyOptions opt;
  opt.budget = cfg.budget;
  opt.ranks = cfg.ranks;
  opt.m_max = cfg.m_max;
  auto rep = verify_system(sys, opt);
  if (cfg.json_out) {
    out.push_back(to_json(rep));
  } else {
    std::cout << sys.name << "  r_c=" << rank_cell(rep.ranks.r_c) << "  r_M=" << rank_cell(rep.ranks.r_M)
              << "\n";
    for (const auto& c : rep.cells) {
      std::cout << "  m=" << c.m << "  " << std::left << std::setw(12) << c.test << std::setw(11)
                << to_string(c.verdict.outcome) << std::setw(22) << c.verdict.label
                << "predicted=" << (c.predicted ? "yes" : "no ") << "  " << to_string(c.status)
                << "\n";
    }
  }
  return rep.ok() ? 0 : 1;
}

int cmd_verify(const RunConfig& cfg) {
  json out = json::array();
  int status = 0;
  if (cfg.system == "all") {
    for (const auto& e : catalog(cfg).entries()) {
      if (!e.constructive()) continue;
      status = std::max(status, verify_one(cfg, catalog(cfg).get(e.name), out));
    }
  } else {
    status = verify_one(cfg, select_system(cfg), out);
  }
  if (cfg.json_out) emit({{"schema_version", kCertificateSchema}, {"reports", out}});
  return status;
}

int cmd_replay(const RunConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open " + path);
  json cert;
  try {
    cert = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("certificate is not JSON: ") + e.what());
  }
  auto r = replay(cert);
  if (cfg.json_out) {
    emit({{"schema_version", kCertificateSchema}, {"ok", r.ok}, {"detail", r.detail}});
  } else {
    std::cout << (r.ok ? "OK " : "FAILED ") << r.detail << "\n";
  }
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ranks, fiber censuses and witness searches for substitution shifts"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_flag("--json", cfg.json_out, "Print JSON instead of a table");
  app.add_option("--catalog", cfg.catalog_path, "Catalog file (default: built-in copy)");
  app.add_option("--budget", cfg.budget_text, "Budget overrides key=value,... (L N K B m depth radius m_max)");

  auto add_system = [&](CLI::App* sub) {
    sub->add_option("system", cfg.system, "Catalog name or inline rules like 0->01,1->10")->required();
    sub->add_option("--param", cfg.params, "Family parameter key=value");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("-m", cfg.budget.m, "Tuple size");
    sub->add_option("-K", cfg.budget.K, "Scale exponent, eps = 2^-K");
    sub->add_option("-N", cfg.budget.N, "Horizon");
    sub->add_option("--certificate", cfg.certificate_out, "Write the certificate to this file");
  };

  auto* catalog_cmd = app.add_subcommand("catalog", "List catalog systems");

  auto* ranks_cmd = app.add_subcommand("ranks", "Coincidence, minimal and maximal rank");
  add_system(ranks_cmd);
  ranks_cmd->add_option("--depth", cfg.ranks.depth_max, "Residue depth");
  ranks_cmd->add_option("--radius", cfg.ranks.radius_max, "Census radius");

  auto* profile_cmd = app.add_subcommand("profile", "Predicted multivariate profile");
  add_system(profile_cmd);
  profile_cmd->add_option("--m-max", cfg.m_max, "Largest m");

  auto* sens_cmd = app.add_subcommand("sensitivity", "m-sensitivity witness search");
  add_system(sens_cmd);
  add_search(sens_cmd);
  sens_cmd->add_option("-L", cfg.budget.L, "Cylinder radius");

  auto* block_cmd = app.add_subcommand("block", "Block m-sensitivity witness search");
  add_system(block_cmd);
  add_search(block_cmd);
  block_cmd->add_option("-L", cfg.budget.L, "Cylinder radius");
  block_cmd->add_option("-B", cfg.budget.B, "Block half-length");

  std::size_t seed_index = 0;
  long shift = 0;
  auto* cover_cmd = app.add_subcommand("cover", "Cover m-equicontinuity test at a fixed point");
  add_system(cover_cmd);
  add_search(cover_cmd);
  cover_cmd->add_option("-B", cfg.budget.B, "Largest block half-length");
  cover_cmd->add_option("--seed", seed_index, "Index of the seed pair");
  cover_cmd->add_option("--shift", shift, "Shift of the fixed point");

  auto* point_cmd = app.add_subcommand("point", "m-equicontinuity point test at a fixed point");
  add_system(point_cmd);
  add_search(point_cmd);
  point_cmd->add_option("--seed", seed_index, "Index of the seed pair");
  point_cmd->add_option("--shift", shift, "Shift of the fixed point");

  int depth = 1;
  long residue = 0, radius = 8;
  auto* fiber_cmd = app.add_subcommand("fiber", "Fiber census above an odometer residue");
  add_system(fiber_cmd);
  fiber_cmd->add_option("--depth", depth, "Residue depth")->required();
  fiber_cmd->add_option("--residue", residue, "Residue value")->required();
  fiber_cmd->add_option("-L,--radius", radius, "Window radius");

  std::size_t n = 1;
  auto* lang_cmd = app.add_subcommand("language", "Words of length n");
  add_system(lang_cmd);
  lang_cmd->add_option("n", n, "Word length")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Check oracle verdicts against predicted ranks");
  verify_cmd->add_option("system", cfg.system, "Catalog name, inline rules, or 'all'")->required();
  verify_cmd->add_option("--param", cfg.params, "Family parameter key=value");
  verify_cmd->add_option("--m-max", cfg.m_max, "Largest m");

  std::string cert_path;
  auto* replay_cmd = app.add_subcommand("replay", "Re-check a certificate without searching");
  replay_cmd->add_option("certificate", cert_path, "Certificate JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    // --budget entries override the per-command options.
    apply_budget(cfg);
    cfg.budget.validate();
    if (catalog_cmd->parsed()) return cmd_catalog(cfg);
    if (ranks_cmd->parsed()) return cmd_ranks(cfg);
    if (profile_cmd->parsed()) return cmd_profile(cfg);
    if (sens_cmd->parsed()) return cmd_sensitivity(cfg);
    if (block_cmd->parsed()) return cmd_block(cfg);
    if (cover_cmd->parsed()) {
      auto sys = select_system(cfg);
      return report_point(cfg, cover_m_equicontinuity_test(sys, pick_seed(sys, seed_index, shift), cfg.budget));
    }
    if (point_cmd->parsed()) {
      auto sys = select_system(cfg);
      return report_point(cfg, m_equicontinuity_point_test(sys, pick_seed(sys, seed_index, shift), cfg.budget));
    }
    if (fiber_cmd->parsed()) return cmd_fiber(cfg, depth, residue, radius);
    if (lang_cmd->parsed()) return cmd_language(cfg, n);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    if (replay_cmd->parsed()) return cmd_replay(cfg, cert_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
