// selffib: command-line front end for the self-Fibonacci divisor library.
//
// Exit codes: 0 success, 1 computation error, 2 usage error. Timing goes to
// stderr so stdout is byte-identical for identical inputs.

#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "selffib/census.hpp"
#include "selffib/classify.hpp"
#include "selffib/entry_point.hpp"
#include "selffib/errors.hpp"
#include "selffib/serialize.hpp"

namespace {

using namespace selffib;

enum class Format { kText, kJson, kCsv };

struct CliConfig {
  Format format = Format::kText;
  unsigned jobs = 0; // 0 = all hardware threads
  std::string cache_path;
  unsigned depth = 8;
  u64 arg = 0;   // positional n / p / k
  u64 limit = 0; // --limit
  std::string method = "entrypoint";
};

struct Ctx {
  const CliConfig& cfg;
  ZeCache* cache;
  CensusOptions census_opts() const {
    CensusOptions o;
    o.jobs = cfg.jobs;
    o.cache = cache;
    return o;
  }
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void print_list_line(const char* label, const std::vector<u64>& values) {
  std::cout << label;
  for (u64 v : values) std::cout << ' ' << v;
  std::cout << '\n';
}

int run_z(const Ctx& ctx) {
  EntryPointRecord rec = z_of(ctx.cfg.arg, ctx.cache);
  if (ctx.cfg.format == Format::kJson)
    std::cout << to_json(rec) << '\n';
  else
    std::cout << rec.z << '\n';
  return 0;
}

int run_e(const Ctx& ctx) {
  WallExponent we = wall_exponent(ctx.cfg.arg, ctx.cache);
  if (ctx.cfg.format == Format::kJson)
    std::cout << to_json(we) << '\n';
  else
    std::cout << we.e << '\n';
  return 0;
}

int run_c(const Ctx& ctx) {
  u64 c = c_of_k(ctx.cfg.arg, ctx.cache);
  if (ctx.cfg.format == Format::kJson) {
    ZChain chain = iterate_z(ctx.cfg.arg, 200, ctx.cache);
    std::cout << "{\"k\":\"" << ctx.cfg.arg << "\",\"c\":\"" << c
              << "\",\"chain\":" << to_json(chain) << "}\n";
  } else {
    std::cout << c << '\n';
  }
  return 0;
}

int run_verdict(const Ctx& ctx) {
  DivisorClass dc = class_verdict(ctx.cfg.arg, ctx.cache);
  if (ctx.cfg.format == Format::kJson)
    std::cout << to_json(dc) << '\n';
  else
    std::cout << to_text(dc) << '\n';
  return 0;
}

int run_class(const Ctx& ctx) {
  std::vector<u64> members = enumerate_class(ctx.cfg.arg, ctx.cfg.limit, ctx.cache);
  switch (ctx.cfg.format) {
    case Format::kJson:
      std::cout << to_json_class_members(ctx.cfg.arg, ctx.cfg.limit, members) << '\n';
      break;
    case Format::kCsv:
      std::cout << to_csv_members(members);
      break;
    case Format::kText:
      for (u64 n : members) std::cout << n << '\n';
      break;
  }
  return 0;
}

CensusMethod parse_method(const std::string& name) {
  if (name == "direct") return CensusMethod::kDirect;
  if (name == "entrypoint") return CensusMethod::kEntryPoint;
  if (name == "classification") return CensusMethod::kClassification;
  throw CLI::ValidationError("unknown census method: " + name);
}

int run_census(const Ctx& ctx) {
  CensusReport rep = enumerate_selfdivisors(ctx.cfg.limit,
                                            parse_method(ctx.cfg.method),
                                            ctx.census_opts());
  std::fprintf(stderr, "# elapsed %.3fs\n", rep.elapsed.count());
  switch (ctx.cfg.format) {
    case Format::kJson:
      std::cout << to_json(rep) << '\n';
      break;
    case Format::kCsv:
      std::cout << to_csv(rep);
      break;
    case Format::kText:
      std::cout << "x " << rep.x << '\n'
                << "method " << ctx.cfg.method << '\n'
                << "count " << rep.count << '\n';
      if (rep.method == CensusMethod::kClassification)
        print_list_line("patched", rep.patched);
      break;
  }
  return 0;
}

int run_count(const Ctx& ctx) {
  u64 a = count_selfdivisors(ctx.cfg.limit, ctx.census_opts());
  if (ctx.cfg.format == Format::kJson)
    std::cout << "{\"x\":\"" << ctx.cfg.limit << "\",\"count\":" << a << "}\n";
  else
    std::cout << a << '\n';
  return 0;
}

int run_reconcile(const Ctx& ctx) {
  ReconciliationReport rep =
      reconcile(ctx.cfg.arg, ctx.cfg.limit, ctx.cfg.jobs, ctx.cache);
  if (ctx.cfg.format == Format::kJson) {
    std::cout << to_json(rep) << '\n';
  } else {
    std::cout << "k " << rep.k << '\n' << "x " << rep.x << '\n'
              << "enumerated " << rep.enumerated.size() << '\n'
              << "brute " << rep.brute.size() << '\n';
    print_list_line("missing", rep.missing);
    print_list_line("extra", rep.extra);
  }
  return 0;
}

int run_bounds(const Ctx& ctx) {
  BoundReport rep = bound_report(ctx.cfg.limit, ctx.census_opts());
  if (ctx.cfg.format == Format::kJson) {
    std::cout << to_json(rep) << '\n';
  } else {
    std::cout << "x " << rep.x << '\n' << "a " << rep.a_of_x << '\n'
              << "log_a " << fmt6(rep.log_a) << '\n'
              << "lower_aux " << fmt6(rep.lower_aux) << '\n'
              << "upper_main " << fmt6(rep.upper_main) << '\n'
              << "heuristic " << fmt6(rep.heuristic) << '\n';
  }
  return 0;
}

int run_scan_c(const Ctx& ctx) {
  std::vector<CGrowthViolation> violations =
      c_growth_scan(ctx.cfg.limit, ctx.census_opts());
  if (ctx.cfg.format == Format::kJson) {
    std::cout << to_json(violations, ctx.cfg.limit) << '\n';
  } else if (violations.empty()) {
    std::cout << "no violations\n";
  } else {
    for (const auto& v : violations)
      std::cout << "n " << v.n << " log_c " << fmt6(v.log_c) << " bound_p "
                << fmt6(v.bound_largest_prime) << " bound_sq "
                << fmt6(v.bound_log_sq) << '\n';
  }
  return violations.empty() ? 0 : 1;
}

int run_tree(const Ctx& ctx) {
  PrattFibTree tree = pratt_fib_tree(ctx.cfg.arg, ctx.cfg.depth, ctx.cache);
  if (ctx.cfg.format == Format::kJson)
    std::cout << to_json(tree) << '\n';
  else
    std::cout << to_text(tree);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fibonacci entry points and self-Fibonacci divisors"};
  app.require_subcommand(1);

  CliConfig cfg;
  app.add_option("-f,--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"text", Format::kText},
                                        {"json", Format::kJson},
                                        {"csv", Format::kCsv}}))
      ->default_str("text");
  app.add_option("-j,--jobs", cfg.jobs, "Worker threads (default: all cores)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cache", cfg.cache_path,
                 "CSV cache of (p, z(p), e(p)) rows, loaded and rewritten "
                 "atomically")
      ->envname("SELFFIB_CACHE");

  auto positive = CLI::Range(u64(1), UINT64_MAX);

  auto* cmd_z = app.add_subcommand("z", "Entry point z(n)");
  cmd_z->add_option("n", cfg.arg, "argument")->required()->check(positive);

  auto* cmd_e = app.add_subcommand("e", "Wall exponent e(p) for prime p");
  cmd_e->add_option("p", cfg.arg, "prime")->required()->check(positive);

  auto* cmd_c = app.add_subcommand("c", "Least class element c(k)");
  cmd_c->add_option("k", cfg.arg, "class index")->required()->check(positive);

  auto* cmd_verdict = app.add_subcommand("verdict", "Class emptiness and rules");
  cmd_verdict->add_option("k", cfg.arg, "class index")->required()->check(positive);

  auto* cmd_class = app.add_subcommand("class", "Members of class k up to a limit");
  cmd_class->add_option("k", cfg.arg, "class index")->required()->check(positive);
  cmd_class->add_option("--limit", cfg.limit, "upper bound x")
      ->required()
      ->check(positive);

  auto* cmd_census = app.add_subcommand("census", "Enumerate self-Fibonacci divisors");
  cmd_census->add_option("--limit", cfg.limit, "upper bound x")
      ->required()
      ->check(positive);
  cmd_census->add_option("--method", cfg.method, "direct | entrypoint | classification")
      ->check(CLI::IsMember({"direct", "entrypoint", "classification"}));

  auto* cmd_count = app.add_subcommand("count", "A(x), the census count");
  cmd_count->add_option("--limit", cfg.limit, "upper bound x")
      ->required()
      ->check(positive);

  auto* cmd_reconcile =
      app.add_subcommand("reconcile", "Rule enumeration vs brute force for class k");
  cmd_reconcile->add_option("k", cfg.arg, "class index")->required()->check(positive);
  cmd_reconcile->add_option("--limit", cfg.limit, "upper bound x")
      ->required()
      ->check(positive);

  auto* cmd_bounds = app.add_subcommand("bounds", "Bound formula diagnostics at x");
  cmd_bounds->add_option("--limit", cfg.limit, "x (>= 16)")->required()->check(positive);

  auto* cmd_scan = app.add_subcommand("scan-c", "Scan the c(n) growth inequalities");
  cmd_scan->add_option("--limit", cfg.limit, "upper bound x")
      ->required()
      ->check(positive);

  auto* cmd_tree = app.add_subcommand("tree", "Pratt tree over entry-point factors");
  cmd_tree->add_option("p", cfg.arg, "prime")->required()->check(positive);
  cmd_tree->add_option("--depth", cfg.depth, "maximum recursion depth");

  try {
    app.parse(argc, argv);
    if (cfg.format == Format::kCsv && !cmd_census->parsed() && !cmd_class->parsed())
      throw CLI::ValidationError(
          "--format csv is only available for census and class");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::unique_ptr<ZeCache> cache;
  try {
    if (!cfg.cache_path.empty()) cache = std::make_unique<ZeCache>(cfg.cache_path);

    Ctx ctx{cfg, cache.get()};
    int rc = 0;
    if (cmd_z->parsed()) rc = run_z(ctx);
    else if (cmd_e->parsed()) rc = run_e(ctx);
    else if (cmd_c->parsed()) rc = run_c(ctx);
    else if (cmd_verdict->parsed()) rc = run_verdict(ctx);
    else if (cmd_class->parsed()) rc = run_class(ctx);
    else if (cmd_census->parsed()) rc = run_census(ctx);
    else if (cmd_count->parsed()) rc = run_count(ctx);
    else if (cmd_reconcile->parsed()) rc = run_reconcile(ctx);
    else if (cmd_bounds->parsed()) rc = run_bounds(ctx);
    else if (cmd_scan->parsed()) rc = run_scan_c(ctx);
    else if (cmd_tree->parsed()) rc = run_tree(ctx);

    if (cache) cache->flush();
    return rc;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
