// divcert: certify divisibility statements for binomial and q-binomial
// coefficients, and search for counterexamples.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "divcert/cli/commands.hpp"
#include "divcert/errors.hpp"

using namespace divcert;
using namespace divcert::cli;

int main(int argc, char** argv) {
  CLI::App app{"divcert: divisibility certificates for binomial and q-binomial coefficients"};
  app.set_version_flag("--version", engine_version());
  app.require_subcommand(1);
  app.fallthrough();

  bool table = false;
  bool timing = false;
  std::optional<unsigned> par;
  std::optional<std::uint64_t> budget_degree;
  std::optional<std::uint64_t> budget_prime;
  std::optional<std::uint64_t> factor_ceiling;
  std::optional<std::string> checkpoint;
  std::size_t chunk = 64;
  app.add_flag("--table", table, "Render records as a text table");
  app.add_flag("--timing", timing, "Add wall-clock seconds to the summary record");
  app.add_option("--par", par, "Worker threads (env DIVCERT_PAR)");
  app.add_option("--budget-degree", budget_degree,
                 "Largest polynomial degree to expand (env DIVCERT_BUDGET_DEGREE)");
  app.add_option("--budget-prime", budget_prime, "Largest sieve bound (env DIVCERT_BUDGET_PRIME)");
  app.add_option("--factor-ceiling", factor_ceiling, "Largest integer to factor");
  app.add_option("--checkpoint", checkpoint, "Resumable checkpoint file for grid runs");
  app.add_option("--chunk", chunk, "Grid points per checkpoint write")->check(CLI::PositiveNumber);

  FabArgs fab;
  std::uint64_t fab_a = 0;
  std::uint64_t fab_b = 0;
  auto* fab_cmd = app.add_subcommand("fab", "Least n with (bn+1) not dividing binom(an+bn, an)");
  auto* fab_a_opt = fab_cmd->add_option("a", fab_a)->check(CLI::PositiveNumber);
  auto* fab_b_opt = fab_cmd->add_option("b", fab_b)->check(CLI::PositiveNumber);
  fab_cmd->add_option("--a-min", fab.a_min);
  fab_cmd->add_option("--a-max", fab.a_max);
  fab_cmd->add_option("--b-min", fab.b_min);
  fab_cmd->add_option("--b-max", fab.b_max);
  fab_cmd->add_option("--n-cap", fab.n_cap, "Largest n scanned");
  fab_cmd->add_option("--cache", fab.cache, "Result cache file");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a known theorem over a grid");
  verify_cmd->add_option("id", verify.id, "thm0 thm3 thm4 thm_kn andrews anbn decomposition")
      ->required();
  verify_cmd->add_option("--a-max", verify.a_max);
  verify_cmd->add_option("--b-max", verify.b_max);
  verify_cmd->add_option("--n-min", verify.n_min);
  verify_cmd->add_option("--n-max", verify.n_max);
  verify_cmd->add_flag("--expand", verify.expand, "Expand coefficients and check positivity");

  ConjArgs conj;
  auto* conj_cmd = app.add_subcommand("conj", "Explore a conjecture");
  conj_cmd->add_option("id", conj.id, "conj2witness oddp oddp2 c330n88n")->required();
  conj_cmd->add_option("--a-max", conj.a_max);
  conj_cmd->add_option("--b-max", conj.b_max);
  conj_cmd->add_option("--p-cap", conj.p_cap, "Largest prime tried for a witness");
  conj_cmd->add_option("--p", conj.p, "Odd prime for oddp");
  conj_cmd->add_option("--m", conj.m);
  conj_cmd->add_option("--n", conj.n);
  conj_cmd->add_option("--n-max", conj.n_max);

  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  auto* primes_cmd =
      app.add_subcommand("primes", "For each x, a prime = 2 (mod 3) with x < p < 20x/19");
  primes_cmd->add_option("--lo", lo)->required();
  primes_cmd->add_option("--hi", hi)->required();

  std::uint64_t qm = 0;
  std::uint64_t qk = 0;
  bool exponents = false;
  auto* qbinom_cmd = app.add_subcommand("qbinom", "Gaussian polynomial [m, k]_q");
  qbinom_cmd->add_option("m", qm)->required();
  qbinom_cmd->add_option("k", qk)->required();
  qbinom_cmd->add_flag("--exponents", exponents, "Print the cyclotomic exponent vector instead");

  std::uint64_t theta_x = 0;
  auto* theta_cmd = app.add_subcommand("theta", "Sum of log p over primes p <= x, p = 2 (mod 3)");
  theta_cmd->add_option("x", theta_x)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::usage;
  }

  try {
    RunOptions opts;
    opts.limits = limits_from_env();
    if (par) opts.limits.parallelism = *par;
    if (budget_degree) opts.limits.degree = *budget_degree;
    if (budget_prime) opts.limits.sieve_limit = *budget_prime;
    if (factor_ceiling) opts.limits.factor_ceiling = *factor_ceiling;
    set_default_limits(opts.limits);
    opts.checkpoint = checkpoint;
    opts.chunk = chunk;

    const auto t0 = std::chrono::steady_clock::now();
    CommandResult result;
    if (*fab_cmd) {
      if (*fab_a_opt) fab.a = fab_a;
      if (*fab_b_opt) fab.b = fab_b;
      result = cmd_fab(fab, opts);
    } else if (*verify_cmd) {
      result = cmd_verify(verify, opts);
    } else if (*conj_cmd) {
      result = cmd_conj(conj, opts);
    } else if (*primes_cmd) {
      result = cmd_primes(lo, hi, opts);
    } else if (*qbinom_cmd) {
      result = cmd_qbinom(qm, qk, exponents, opts);
    } else {
      result = cmd_theta(theta_x, opts);
    }
    if (timing) {
      result.report.timing =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << (table ? to_table(result.report) : to_jsonl(result.report));
    return result.exit_code;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::usage;
  } catch (const ExhaustedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::inconclusive;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::partial;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 70;
  }
}
