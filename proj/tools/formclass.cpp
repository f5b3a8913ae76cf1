// formclass: command-line front end for level-N form class groups.
//
// Exit codes: 0 success, 1 usage or input error, 2 a checked identity
// failed, 3 an ideal-side oracle bound was too small.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "formclass/cache.hpp"
#include "formclass/report.hpp"
#include "formclass/sweep.hpp"

using namespace formclass;

namespace {

constexpr int kUsageError = 1;
constexpr int kViolation = 2;
constexpr int kBoundTooSmall = 3;

void diagnostic(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << '\n';
}

struct CaseOptions {
  std::string disc;
  Modulus level = 1;
  std::string group;
  std::string check;
  bool no_cache = false;
};

void add_case_options(CLI::App* cmd, CaseOptions& o, bool needs_group) {
  cmd->add_option("--disc", o.disc, "negative discriminant D = 0, 1 mod 4")->required();
  cmd->add_option("--level", o.level, "level N >= 1")->required();
  auto* g = cmd->add_option("--group", o.group, "group spec, e.g. gamma1:4 or gamma0:2@4");
  if (needs_group) g->required();
  cmd->add_flag("--no-cache", o.no_cache, "bypass the result cache");
}

Int parse_disc(const std::string& text) {
  Int D;
  if (D.set_str(text, 10) != 0) throw InvalidDiscriminant("discriminant '" + text + "' is not an integer");
  check_discriminant(D);
  return D;
}

CongruenceGroup group_for(const CaseOptions& o) {
  if (o.level < 1 || o.level > kMaxEnumerationLevel) {
    throw std::invalid_argument("level must lie in [1, " + std::to_string(kMaxEnumerationLevel) + "]");
  }
  const std::string spec = o.group.empty() ? "gamma1:" + std::to_string(o.level) : o.group;
  CongruenceGroup g = parse_group(spec);
  if (g.level() != o.level) {
    throw GroupSpecError("group spec '" + spec + "' has level " + std::to_string(g.level()) +
                         " but --level is " + std::to_string(o.level));
  }
  return g;
}

// Serves the report from the cache when possible; prints it and returns the exit code.
int emit_cached(const std::string& op, const Json& params, bool no_cache, const std::function<Report()>& compute) {
  const ResultCache cache(ResultCache::default_dir());
  const std::string key = cache.key(op, params);
  Json result;
  std::optional<Json> hit;
  if (!no_cache) hit = cache.load(key, [](const std::string& w) { std::cerr << "warning: " << w << '\n'; });
  if (hit) {
    result = std::move(*hit);
  } else {
    Report r = compute();
    result = {{"report", r.body}, {"violation", r.violation}};
    if (!no_cache) {
      try {
        cache.store(key, op, result);
      } catch (const std::exception& e) {
        std::cerr << "warning: " << e.what() << '\n';
      }
    }
  }
  std::cout << result["report"].dump(2) << '\n';
  return result.value("violation", false) ? kViolation : 0;
}

int write_outputs(const std::filesystem::path& dir, const std::string& stem, const Json& json,
                  const std::string& markdown) {
  std::filesystem::create_directories(dir);
  std::ofstream(dir / (stem + ".json")) << json.dump(2) << '\n';
  if (!markdown.empty()) std::ofstream(dir / (stem + ".md")) << markdown;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Level-N form class groups of imaginary quadratic discriminants"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CaseOptions forms_o, class_o, acts_o, induces_o, adelic_o;
  auto* forms = app.add_subcommand("forms", "reduced forms and residue triples of Q(D, N)");
  add_case_options(forms, forms_o, false);
  auto* classgroup = app.add_subcommand("classgroup", "classes of Q(D, N) under a group, with the group law");
  add_case_options(classgroup, class_o, false);
  auto* acts = app.add_subcommand("acts", "does the group preserve Q(D, N)");
  add_case_options(acts, acts_o, true);
  auto* induces = app.add_subcommand("induces", "does the group induce a form class group");
  add_case_options(induces, induces_o, true);
  auto* adelic = app.add_subcommand("adelic", "the mod-N shadow of W and its checks");
  add_case_options(adelic, adelic_o, true);
  adelic->add_option("--check", adelic_o.check, "lemma51, thm52 or all")
      ->check(CLI::IsMember({"lemma51", "thm52", "all"}));

  std::string config_name = "default";
  unsigned jobs = 0;
  std::string output;
  auto* sweep_cmd = app.add_subcommand("sweep", "acts/induces findings over a grid");
  auto* verify = app.add_subcommand("verify-all", "replay every check over a grid");
  for (auto* cmd : {sweep_cmd, verify}) {
    cmd->add_option("--config", config_name, "`default` or a key = value file");
    cmd->add_option("--jobs", jobs, "worker threads (overrides the config)");
    cmd->add_option("--output", output, "report directory (overrides the config)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    auto params = [](const CaseOptions& o, const CongruenceGroup* g) {
      Json p = {{"disc", parse_disc(o.disc).get_str()}, {"level", o.level}};
      if (g) p["group"] = g->label();
      if (!o.check.empty()) p["check"] = o.check;
      return p;
    };
    if (*forms) {
      const Int D = parse_disc(forms_o.disc);
      group_for(forms_o);
      return emit_cached("forms", params(forms_o, nullptr), forms_o.no_cache,
                         [&] { return forms_report(D, forms_o.level); });
    }
    if (*classgroup) {
      const Int D = parse_disc(class_o.disc);
      const CongruenceGroup g = group_for(class_o);
      return emit_cached("classgroup", params(class_o, &g), class_o.no_cache,
                         [&] { return classgroup_report(D, g); });
    }
    if (*acts) {
      const Int D = parse_disc(acts_o.disc);
      const CongruenceGroup g = group_for(acts_o);
      return emit_cached("acts", params(acts_o, &g), acts_o.no_cache, [&] { return acts_report(D, g); });
    }
    if (*induces) {
      const Int D = parse_disc(induces_o.disc);
      const CongruenceGroup g = group_for(induces_o);
      return emit_cached("induces", params(induces_o, &g), induces_o.no_cache,
                         [&] { return induces_report(D, g); });
    }
    if (*adelic) {
      const Int D = parse_disc(adelic_o.disc);
      const CongruenceGroup g = group_for(adelic_o);
      const AdelicChecks checks = parse_adelic_checks(adelic_o.check);
      return emit_cached("adelic", params(adelic_o, &g), adelic_o.no_cache,
                         [&] { return adelic_report(D, g, checks); });
    }

    SweepConfig config = SweepConfig::load(config_name);
    if (jobs > 0) config.jobs = jobs;
    if (!output.empty()) config.output = output;
    if (*sweep_cmd) {
      const Json findings = sweep(config);
      write_outputs(config.output, "sweep", findings, "");
      std::cout << findings["summary"].dump() << '\n';
      return 0;
    }
    const VerificationReport report = verify_all(config);
    write_outputs(config.output, "report", report.to_json(), report.markdown());
    std::cout << report.to_json()["summary"].dump() << '\n';
    return report.exit_code();
  } catch (const NotClosed& e) {
    diagnostic("oracle-bound-insufficient", e.what());
    return kBoundTooSmall;
  } catch (const GroupSpecError& e) {
    diagnostic("group-spec", e.what());
    return kUsageError;
  } catch (const InvalidDiscriminant& e) {
    diagnostic("invalid-discriminant", e.what());
    return kUsageError;
  } catch (const ConfigError& e) {
    diagnostic("config", e.what());
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    diagnostic("invalid-argument", e.what());
    return kUsageError;
  } catch (const std::logic_error& e) {
    diagnostic("internal", e.what());
    return kViolation;
  }
}
