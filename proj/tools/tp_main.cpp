#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpo/bench.hpp"
#include "tpo/cgtp.hpp"
#include "tpo/expressivity.hpp"
#include "tpo/gtp.hpp"
#include "tpo/irreps.hpp"
#include "tpo/mtp.hpp"
#include "tpo/verify.hpp"
#include "tpo/wigner.hpp"

namespace {

std::string fmt_g(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

// "4..16" (inclusive), "4,6,8" or a mix of both.
std::vector<int> parse_l_list(const std::string& text) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    const std::string tok = text.substr(pos, comma - pos);
    const size_t dots = tok.find("..");
    try {
      if (dots != std::string::npos) {
        const int a = std::stoi(tok.substr(0, dots));
        const int b = std::stoi(tok.substr(dots + 2));
        if (a > b) throw std::invalid_argument("empty range");
        for (int l = a; l <= b; ++l) out.push_back(l);
      } else {
        out.push_back(std::stoi(tok));
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("--L", "cannot parse '" + tok + "' (want N, a..b or a list)");
    }
    pos = comma + 1;
  }
  if (out.empty()) throw CLI::ValidationError("--L", "no band limits given");
  return out;
}

tpo::Kind parse_kind(const std::string& name) {
  if (name == "cgtp") return tpo::Kind::cgtp;
  if (name == "gtp") return tpo::Kind::gtp;
  if (name == "mtp") return tpo::Kind::mtp;
  throw CLI::ValidationError("--kind", "unknown kind '" + name + "'");
}

tpo::BenchImpl parse_impl(const std::string& name) {
  if (name == "naive") return tpo::BenchImpl::naive;
  if (name == "sparse") return tpo::BenchImpl::sparse;
  if (name == "grid") return tpo::BenchImpl::grid;
  if (name == "fourier") return tpo::BenchImpl::fourier;
  throw CLI::ValidationError("--impl", "unknown implementation '" + name + "'");
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t comma = std::min(text.find(',', pos), text.size());
    out.push_back(text.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

void print_vector(std::ostream& os, const char* name, const tpo::IrrepVector& v, int digits) {
  const auto& entries = v.irreps.entries();
  for (int e = 0; e < v.irreps.num_entries(); ++e) {
    const int l = entries[e].l;
    for (int c = 0; c < entries[e].mul; ++c) {
      const int off = v.irreps.offset(e, c);
      for (int m = -l; m <= l; ++m)
        os << name << ',' << e << ',' << l << ',' << m << ','
           << fmt_g(v.data[off + m + l], digits) << '\n';
    }
  }
}

int cmd_cg_table(std::ostream& os, int l1, int l2, int l3, bool gaunt, int digits) {
  const tpo::CGTable& table = gaunt ? tpo::gaunt_real(l1, l2, l3) : tpo::cg_real(l1, l2, l3);
  os << "m1,m2,m3,value\n";
  for (const tpo::CGEntry& e : table.entries)
    os << e.m1 << ',' << e.m2 << ',' << e.m3 << ',' << fmt_g(e.value, digits) << '\n';
  return 0;
}

int cmd_run(std::ostream& os, const std::string& kind_name, const std::string& impl_name, int L,
            std::uint64_t seed, int digits) {
  const tpo::Kind kind = parse_kind(kind_name);
  const tpo::BenchImpl impl = parse_impl(impl_name);
  if (!tpo::impl_applies(kind, impl))
    throw CLI::ValidationError("--impl", "'" + impl_name + "' does not apply to " + kind_name);

  std::mt19937_64 rng(seed);
  const tpo::Irreps in = tpo::Irreps::single_copies(L);
  const tpo::IrrepVector x = tpo::IrrepVector::random(in, rng);
  const tpo::IrrepVector y = tpo::IrrepVector::random(in, rng);

  tpo::IrrepVector out;
  switch (kind) {
    case tpo::Kind::cgtp:
      out = tpo::cgtp_mimo(x, y,
                           impl == tpo::BenchImpl::naive ? tpo::CgtpImpl::naive
                                                         : tpo::CgtpImpl::sparse);
      break;
    case tpo::Kind::gtp:
      out = impl == tpo::BenchImpl::grid ? tpo::gtp_grid(x, y, 2 * L)
                                         : tpo::gtp_fourier(x, y, 2 * L);
      break;
    case tpo::Kind::mtp:
      out = tpo::mtp(x, y, 2 * L,
                     impl == tpo::BenchImpl::naive ? tpo::MtpImpl::naive : tpo::MtpImpl::sparse);
      break;
  }

  os << "vector,entry,l,m,value\n";
  print_vector(os, "x", x, digits);
  print_vector(os, "y", y, digits);
  print_vector(os, "out", out, digits);
  return 0;
}

int cmd_expressivity(std::ostream& os, const std::string& kind_name, int L, std::uint64_t seed,
                     int digits) {
  const tpo::Kind kind = parse_kind(kind_name);
  os << "field,l1,l2,l3,value\n";
  os << "count,,,," << tpo::expressivity_count(kind, L) << '\n';
  const tpo::RankResult rank = tpo::expressivity_rank(kind, L, 3, seed);
  os << "rank,,,," << rank.rank << '\n';
  os << "rank_stable,,,," << (rank.stable ? 1 : 0) << '\n';
  for (int l1 = 0; l1 <= L; ++l1)
    for (int l2 = 0; l2 <= L; ++l2)
      for (int l3 = std::abs(l1 - l2); l3 <= l1 + l2; ++l3)
        os << "interactable," << l1 << ',' << l2 << ',' << l3 << ','
           << (tpo::interactable(kind, l1, l2, l3) ? 1 : 0) << '\n';
  (void)digits;
  return 0;
}

int cmd_bench(std::ostream& os, const std::string& kinds_csv, const std::string& impls_csv,
              const std::string& mode_name, const std::string& l_text, int batch, int warmup,
              int repeats, std::uint64_t seed) {
  tpo::SweepConfig cfg;
  for (const std::string& k : split_csv(kinds_csv)) cfg.kinds.push_back(parse_kind(k));
  if (impls_csv == "all") {
    cfg.impls = {tpo::BenchImpl::naive, tpo::BenchImpl::sparse, tpo::BenchImpl::grid,
                 tpo::BenchImpl::fourier};
  } else {
    for (const std::string& i : split_csv(impls_csv)) cfg.impls.push_back(parse_impl(i));
  }
  if (mode_name == "siso")
    cfg.mode = tpo::BenchMode::siso;
  else if (mode_name == "simo")
    cfg.mode = tpo::BenchMode::simo;
  else if (mode_name == "mimo")
    cfg.mode = tpo::BenchMode::mimo;
  else
    throw CLI::ValidationError("--mode", "unknown mode '" + mode_name + "'");
  cfg.Ls = parse_l_list(l_text);
  cfg.batch = batch;
  cfg.warmup = warmup;
  cfg.repeats = repeats;
  cfg.seed = seed;

  tpo::write_csv(os, tpo::sweep(cfg));
  return 0;
}

int cmd_verify(std::ostream& os, const std::string& suite, int L, std::uint64_t seed,
               int digits) {
  bool valid = false;
  for (const std::string& s : tpo::verify_suites()) valid = valid || s == suite;
  if (!valid) throw CLI::ValidationError("--suite", "unknown suite '" + suite + "'");

  const std::vector<tpo::CheckResult> results = tpo::run_verify(suite, L, seed);
  bool all_pass = true;
  os << "suite,check,L,max_err,threshold,status\n";
  for (const tpo::CheckResult& r : results) {
    os << r.suite << ',' << r.check << ',' << r.L << ',' << fmt_g(r.max_err, digits) << ','
       << fmt_g(r.threshold, digits) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"so3tpo: SO(3)-equivariant tensor-product operations"};
  app.require_subcommand(0, 1);

  std::uint64_t seed = 20240901;
  std::string out_path;
  int digits = 17;
  app.add_option("--seed", seed, "RNG seed for all randomized subcommands");
  app.add_option("--out", out_path, "write output to this file instead of stdout");
  app.add_option("--precision-digits", digits, "significant digits for printed values")
      ->check(CLI::Range(1, 17));

  // cg-table
  int l1 = 0, l2 = 0, l3 = 0;
  bool gaunt = false;
  CLI::App* cg = app.add_subcommand("cg-table", "print a sparse coupling table as CSV");
  cg->fallthrough();
  cg->add_option("--l1", l1, "first input degree")->required()->check(CLI::NonNegativeNumber);
  cg->add_option("--l2", l2, "second input degree")->required()->check(CLI::NonNegativeNumber);
  cg->add_option("--l3", l3, "output degree")->required()->check(CLI::NonNegativeNumber);
  cg->add_flag("--gaunt", gaunt, "Gaunt coefficients instead of Clebsch-Gordan");

  // run
  std::string run_kind = "cgtp", run_impl = "sparse";
  int run_L = 4;
  CLI::App* run = app.add_subcommand("run", "evaluate one product on random inputs");
  run->fallthrough();
  run->add_option("--kind", run_kind, "cgtp, gtp or mtp");
  run->add_option("--impl", run_impl, "naive, sparse, grid or fourier");
  run->add_option("--L", run_L, "input band limit")->check(CLI::NonNegativeNumber);

  // expressivity
  std::string expr_kind = "cgtp";
  int expr_L = 2;
  CLI::App* expr = app.add_subcommand("expressivity", "count, rank and interactability report");
  expr->fallthrough();
  expr->add_option("--kind", expr_kind, "cgtp, gtp or mtp");
  expr->add_option("--L", expr_L, "band limit")->check(CLI::NonNegativeNumber);

  // bench
  std::string bench_kinds = "cgtp,gtp,mtp", bench_impls = "all", bench_mode = "mimo";
  std::string bench_L = "4,6,8,12,16";
  int bench_batch = 1, bench_warmup = 2, bench_repeats = 7;
  CLI::App* bench = app.add_subcommand("bench", "op-count and wall-clock sweep, CSV output");
  bench->fallthrough();
  bench->add_option("--kinds", bench_kinds, "comma list of product kinds");
  bench->add_option("--impls", bench_impls, "'all' or a comma list of implementations");
  bench->add_option("--mode", bench_mode, "siso, simo or mimo");
  bench->add_option("--L", bench_L, "band limits: N, a..b or a comma list");
  bench->add_option("--batch", bench_batch, "applications per timed run")
      ->check(CLI::PositiveNumber);
  bench->add_option("--warmup", bench_warmup, "untimed runs before timing")
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeats", bench_repeats, "timed runs (median reported)")
      ->check(CLI::Range(5, 1000000));

  // verify
  std::string verify_suite = "equivariance";
  int verify_L = 3;
  CLI::App* verify = app.add_subcommand("verify", "run a named invariant suite");
  verify->fallthrough();
  verify->add_option("--suite", verify_suite,
                     "equivariance, oracle-equality, selection-rules, roundtrip, "
                     "expressivity or scaling");
  verify->add_option("--L", verify_L, "band limit")->check(CLI::NonNegativeNumber);

  if (argc <= 1) {
    std::cerr << app.help();
    return 1;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 1;
  }

  try {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
      os = &file;
    }

    if (app.got_subcommand(cg)) return cmd_cg_table(*os, l1, l2, l3, gaunt, digits);
    if (app.got_subcommand(run)) return cmd_run(*os, run_kind, run_impl, run_L, seed, digits);
    if (app.got_subcommand(expr)) return cmd_expressivity(*os, expr_kind, expr_L, seed, digits);
    if (app.got_subcommand(bench))
      return cmd_bench(*os, bench_kinds, bench_impls, bench_mode, bench_L, bench_batch,
                       bench_warmup, bench_repeats, seed);
    if (app.got_subcommand(verify)) return cmd_verify(*os, verify_suite, verify_L, seed, digits);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "tp: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tp: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
