#include "divcert/cli/commands.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "divcert/cli/checkpoint.hpp"
#include "divcert/cli/fab_cache.hpp"
#include "divcert/divisibility.hpp"
#include "divcert/errors.hpp"
#include "divcert/qdivisibility.hpp"
#include "divcert/qpoly.hpp"

#ifndef DIVCERT_VERSION
#define DIVCERT_VERSION "dev"
#endif

namespace divcert::cli {

namespace {

using Params = std::map<std::string, std::string>;

std::string str(std::uint64_t v) { return std::to_string(v); }

Params budget_params(const Limits& limits) {
  return {{"budget_degree", str(limits.degree)},
          {"budget_prime", str(limits.sieve_limit)},
          {"factor_ceiling", str(limits.factor_ceiling)}};
}

CommandResult start(std::string command, Params params, const RunOptions& opts) {
  CommandResult r;
  r.report.command = std::move(command);
  params.merge(budget_params(opts.limits));
  r.report.parameters = std::move(params);
  r.report.engine_version = engine_version();
  return r;
}

// Runs the grid, through a checkpoint when one was requested.
void fill(CommandResult& r, std::size_t count, const std::function<json(std::size_t)>& point,
          const RunOptions& opts) {
  std::unique_ptr<Checkpoint> cp;
  if (opts.checkpoint) {
    cp = std::make_unique<Checkpoint>(*opts.checkpoint, r.report.engine_version,
                                      r.report.command, r.report.parameters);
    r.warnings.insert(r.warnings.end(), cp->warnings().begin(), cp->warnings().end());
  }
  r.report.records = run_grid(count, point, opts.limits.parallelism, cp.get(), opts.chunk);
}

// Budget overruns become a record instead of aborting the whole grid.
json guarded(const std::function<json()>& body, json key) {
  try {
    return body();
  } catch (const ResourceError& e) {
    key["error"] = e.what();
    return key;
  }
}

std::size_t count_errors(const std::vector<json>& records) {
  std::size_t n = 0;
  for (const auto& r : records) n += r.contains("error") ? 1 : 0;
  return n;
}

// Exit code and summary for grids of records carrying a boolean `field`.
void settle(CommandResult& r, const std::string& field) {
  std::size_t passed = 0;
  std::size_t failed = 0;
  for (const auto& rec : r.report.records) {
    if (rec.contains("error")) continue;
    (rec.value(field, false) ? passed : failed) += 1;
  }
  const std::size_t errors = count_errors(r.report.records);
  r.report.summary["passed"] = passed;
  r.report.summary["failed"] = failed;
  r.report.summary["budget_exceeded"] = errors;
  if (failed > 0) {
    r.exit_code = exit_code::failed;
  } else if (errors > 0) {
    r.exit_code = exit_code::partial;
  }
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs(std::uint64_t a_lo, std::uint64_t a_hi,
                                                           std::uint64_t b_lo,
                                                           std::uint64_t b_hi) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t a = a_lo; a <= a_hi; ++a) {
    for (std::uint64_t b = b_lo; b <= b_hi; ++b) out.emplace_back(a, b);
  }
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// A family verdict that was asked to expand but was not, for budget.
bool expansion_skipped(const QFamilyVerdict& v, bool expand) {
  return expand && v.polynomial && !v.nonneg.has_value();
}

}  // namespace

std::string engine_version() { return DIVCERT_VERSION; }

CommandResult cmd_fab(const FabArgs& args, const RunOptions& opts) {
  require(args.n_cap >= 1, "fab: --n-cap must be >= 1");
  Params params{{"n_cap", str(args.n_cap)}};
  std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
  if (args.a || args.b) {
    require(args.a && args.b, "fab: give both a and b");
    require(*args.a >= 1 && *args.b >= 1, "fab: a and b must be positive");
    grid.emplace_back(*args.a, *args.b);
    params["a"] = str(*args.a);
    params["b"] = str(*args.b);
  } else {
    require(args.a_max >= args.a_min && args.b_max >= args.b_min && args.a_min >= 1 &&
                args.b_min >= 1,
            "fab: give a and b, or a non-empty grid with --a-max and --b-max");
    grid = pairs(args.a_min, args.a_max, args.b_min, args.b_max);
    params["a_min"] = str(args.a_min);
    params["a_max"] = str(args.a_max);
    params["b_min"] = str(args.b_min);
    params["b_max"] = str(args.b_max);
  }
  CommandResult r = start("fab", params, opts);

  std::unique_ptr<FabCache> cache;
  std::mutex cache_mutex;
  if (args.cache) {
    cache = std::make_unique<FabCache>(*args.cache, r.report.engine_version);
    r.warnings.insert(r.warnings.end(), cache->warnings().begin(), cache->warnings().end());
  }

  fill(r, grid.size(), [&](std::size_t i) {
    const auto [a, b] = grid[i];
    return guarded(
        [&, a = a, b = b] {
          if (cache) {
            std::lock_guard lock(cache_mutex);
            if (auto hit = cache->lookup(a, b, args.n_cap)) return *hit;
          }
          json rec = to_json(f_ab(a, b, args.n_cap, opts.limits));
          if (cache) {
            std::lock_guard lock(cache_mutex);
            cache->store(rec);
          }
          return rec;
        },
        {{"a", a}, {"b", b}});
  }, opts);
  if (cache) cache->compact();

  std::map<std::string, std::size_t> counts;
  for (const auto& rec : r.report.records) {
    counts[rec.contains("error") ? "budget_exceeded" : rec.at("verdict").get<std::string>()]++;
  }
  r.report.summary["verdicts"] = counts;
  if (counts.count("inconclusive") != 0) {
    r.exit_code = exit_code::inconclusive;
  } else if (counts.count("budget_exceeded") != 0) {
    r.exit_code = exit_code::partial;
  }
  return r;
}

CommandResult cmd_verify(const VerifyArgs& args, const RunOptions& opts) {
  const Limits& lim = opts.limits;
  const std::string& id = args.id;
  Params params{{"id", id}};
  auto set = [&params](const std::string& k, std::uint64_t v) { params[k] = str(v); };

  if (id == "thm0" || id == "decomposition") {
    const std::uint64_t a_max = args.a_max.value_or(20);
    const std::uint64_t b_max = args.b_max.value_or(20);
    const std::uint64_t n_max = args.n_max.value_or(id == "thm0" ? 50 : 20);
    require(a_max >= 1 && b_max >= 1 && n_max >= 1, "verify: ranges must be >= 1");
    set("a_max", a_max);
    set("b_max", b_max);
    set("n_max", n_max);
    CommandResult r = start("verify", params, opts);
    const auto grid = pairs(1, a_max, 1, b_max);
    const bool thm0 = id == "thm0";
    fill(r, grid.size(), [&](std::size_t i) {
      const auto [a, b] = grid[i];
      return guarded(
          [&, a = a, b = b] {
            json rec = {{"a", a}, {"b", b}, {"n_max", n_max}};
            json first = nullptr;
            for (std::uint64_t n = 1; n <= n_max; ++n) {
              if (!thm0 && a * n < 2) continue;
              const bool ok = thm0 ? verify_thm0(a, b, n, lim) : verify_decomposition(a, b, n, lim);
              if (!ok) {
                first = n;
                break;
              }
            }
            rec["holds"] = first.is_null();
            rec["first_failure"] = first;
            return rec;
          },
          {{"a", a}, {"b", b}});
    }, opts);
    settle(r, "holds");
    return r;
  }

  if (id == "thm3" || id == "thm4") {
    const std::uint64_t n_min = args.n_min.value_or(1);
    const std::uint64_t n_max = args.n_max.value_or(id == "thm3" ? 200 : 4);
    require(n_min >= 1 && n_max >= n_min, "verify: need 1 <= n_min <= n_max");
    set("n_min", n_min);
    set("n_max", n_max);
    if (id == "thm4") params["expand"] = args.expand ? "true" : "false";
    CommandResult r = start("verify", params, opts);
    std::size_t skipped = 0;
    std::mutex skipped_mutex;
    fill(r, n_max - n_min + 1, [&](std::size_t i) {
      const std::uint64_t n = n_min + i;
      return guarded(
          [&] {
            if (id == "thm3") {
              json rec = to_json(verify_thm3(n, lim));
              rec["holds"] = rec.at("all_hold");
              return rec;
            }
            json families = json::array();
            bool holds = true;
            for (const auto& v : verify_thm4(n, args.expand, lim)) {
              families.push_back(to_json(v));
              holds = holds && v.meets_claim();
              if (expansion_skipped(v, args.expand)) {
                std::lock_guard lock(skipped_mutex);
                ++skipped;
              }
            }
            return json{{"n", n}, {"holds", holds}, {"families", std::move(families)}};
          },
          {{"n", n}});
    }, opts);
    settle(r, "holds");
    if (id == "thm4") {
      r.report.summary["expansions_skipped"] = skipped;
      if (skipped > 0 && r.exit_code == exit_code::ok) r.exit_code = exit_code::partial;
    }
    return r;
  }

  if (id == "thm_kn" || id == "andrews" || id == "anbn") {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> grid;
    if (id == "thm_kn") {
      const std::uint64_t n_min = args.n_min.value_or(1);
      const std::uint64_t n_max = args.n_max.value_or(40);
      require(n_min >= 1 && n_max >= n_min, "verify: need 1 <= n_min <= n_max");
      set("n_min", n_min);
      set("n_max", n_max);
      for (std::uint64_t n = n_min; n <= n_max; ++n) {
        for (std::uint64_t k = 0; k <= n; ++k) grid.emplace_back(n, k, 0);
      }
    } else if (id == "andrews") {
      const std::uint64_t a_max = args.a_max.value_or(60);
      const std::uint64_t b_max = args.b_max.value_or(60);
      require(a_max >= 1 && b_max >= 1, "verify: ranges must be >= 1");
      set("a_max", a_max);
      set("b_max", b_max);
      for (const auto& [a, b] : pairs(1, a_max, 1, b_max)) grid.emplace_back(a, b, 0);
    } else {
      const std::uint64_t a_max = args.a_max.value_or(8);
      const std::uint64_t b_max = args.b_max.value_or(8);
      const std::uint64_t n_max = args.n_max.value_or(8);
      require(a_max >= 1 && b_max >= 1 && n_max >= 1, "verify: ranges must be >= 1");
      set("a_max", a_max);
      set("b_max", b_max);
      set("n_max", n_max);
      for (const auto& [a, b] : pairs(1, a_max, 1, b_max)) {
        for (std::uint64_t n = 1; n <= n_max; ++n) grid.emplace_back(a, b, n);
      }
    }
    params["expand"] = args.expand ? "true" : "false";
    CommandResult r = start("verify", params, opts);
    std::size_t skipped = 0;
    std::mutex skipped_mutex;
    fill(r, grid.size(), [&](std::size_t i) {
      const auto [x, y, z] = grid[i];
      return guarded(
          [&, x = x, y = y, z = z] {
            QFamilyVerdict v;
            if (id == "thm_kn") {
              v = verify_thm_kn(x, y, args.expand, lim);
            } else if (id == "andrews") {
              v = lemma_andrews_check(x, y, args.expand, lim);
            } else {
              v = verify_thm_anbn(x, y, z, args.expand, lim);
            }
            if (expansion_skipped(v, args.expand)) {
              std::lock_guard lock(skipped_mutex);
              ++skipped;
            }
            json rec = to_json(v);
            rec["holds"] = v.meets_claim();
            return rec;
          },
          {{"point", json::array({x, y, z})}});
    }, opts);
    settle(r, "holds");
    r.report.summary["expansions_skipped"] = skipped;
    if (skipped > 0 && r.exit_code == exit_code::ok) r.exit_code = exit_code::partial;
    return r;
  }

  throw DomainError("verify: unknown theorem id '" + id +
                    "' (expected thm0, thm3, thm4, thm_kn, andrews, anbn, decomposition)");
}

CommandResult cmd_conj(const ConjArgs& args, const RunOptions& opts) {
  const Limits& lim = opts.limits;
  const std::string& id = args.id;
  Params params{{"id", id}};

  if (id == "conj2witness") {
    require(args.a_max >= 1 && args.b_max >= 1, "conj: ranges must be >= 1");
    params["a_max"] = str(args.a_max);
    params["b_max"] = str(args.b_max);
    params["p_cap"] = str(args.p_cap);
    CommandResult r = start("conj", params, opts);
    const auto grid = pairs(1, args.a_max, 1, args.b_max);
    fill(r, grid.size(), [&](std::size_t i) {
      const auto [a, b] = grid[i];
      return guarded(
          [&, a = a, b = b] {
            try {
              const Conj2Witness w = conj2_witness(a, b, args.p_cap, lim);
              json rec = to_json(w);
              rec["found"] = true;
              rec["revalidated"] = revalidate(w, lim);
              return rec;
            } catch (const ExhaustedError&) {
              return json{{"a", a}, {"b", b}, {"found", false}};
            }
          },
          {{"a", a}, {"b", b}});
    }, opts);
    std::size_t missing = 0;
    std::size_t unconfirmed = 0;
    for (const auto& rec : r.report.records) {
      if (rec.contains("error") || !rec.at("found").get<bool>()) {
        ++missing;
      } else if (!rec.at("revalidated").get<bool>()) {
        ++unconfirmed;
      }
    }
    r.report.summary["without_witness"] = missing;
    r.report.summary["revalidation_failures"] = unconfirmed;
    if (unconfirmed > 0) {
      r.exit_code = exit_code::failed;
    } else if (missing > 0) {
      r.exit_code = exit_code::inconclusive;
    }
    return r;
  }

  if (id == "oddp") {
    require(args.a_max >= 2 && args.b_max >= 1, "conj oddp: need --a-max >= 2");
    params["p"] = str(args.p);
    params["a_max"] = str(args.a_max);
    params["b_max"] = str(args.b_max);
    params["n_max"] = str(args.n_max);
    CommandResult r = start("conj", params, opts);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
    for (const auto& [a, b] : pairs(2, args.a_max, 1, args.b_max)) {
      if (a > b) grid.emplace_back(a, b);
    }
    fill(r, grid.size(), [&](std::size_t i) {
      const auto [a, b] = grid[i];
      return guarded(
          [&, a = a, b = b] {
            const auto n = conj_oddp_search(args.p, a, b, args.n_max, lim);
            json rec = {{"p", args.p}, {"a", a}, {"b", b}};
            rec["failing_n"] = n ? json(*n) : json(nullptr);
            return rec;
          },
          {{"a", a}, {"b", b}});
    }, opts);
    json survivors = json::array();
    for (const auto& rec : r.report.records) {
      if (!rec.contains("error") && rec.at("failing_n").is_null()) {
        survivors.push_back(json::array({rec.at("a"), rec.at("b")}));
      }
    }
    r.report.summary["survivors"] = survivors;
    if (!survivors.empty()) {
      r.exit_code = exit_code::inconclusive;
    } else if (count_errors(r.report.records) > 0) {
      r.exit_code = exit_code::partial;
    }
    return r;
  }

  if (id == "oddp2") {
    require(args.m >= 1 && args.a_max >= 1 && args.b_max >= 1, "conj oddp2: ranges must be >= 1");
    params["m"] = str(args.m);
    params["a_max"] = str(args.a_max);
    params["b_max"] = str(args.b_max);
    params["n_max"] = str(args.n_max);
    CommandResult r = start("conj", params, opts);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> grid;
    for (const auto& [a, b] : pairs(1, args.a_max, 1, args.b_max)) {
      if (a * args.m > b) grid.emplace_back(a, b);
    }
    fill(r, grid.size(), [&](std::size_t i) {
      const auto [a, b] = grid[i];
      return guarded(
          [&, a = a, b = b] {
            return json{{"m", args.m},
                        {"a", a},
                        {"b", b},
                        {"survives", oddp2_survives(args.m, a, b, args.n_max, lim)}};
          },
          {{"a", a}, {"b", b}});
    }, opts);
    json survivors = json::array();
    for (const auto& rec : r.report.records) {
      if (rec.value("survives", false)) {
        survivors.push_back(json::array({rec.at("a"), rec.at("b")}));
      }
    }
    r.report.summary["survivors"] = survivors;
    if (count_errors(r.report.records) > 0) r.exit_code = exit_code::partial;
    return r;
  }

  if (id == "c330n88n") {
    const std::uint64_t n_lo = args.n.value_or(1);
    const std::uint64_t n_hi = args.n.value_or(args.n_max);
    require(n_lo >= 1 && n_hi >= n_lo, "conj c330n88n: need n >= 1");
    params["n_min"] = str(n_lo);
    params["n_max"] = str(n_hi);
    CommandResult r = start("conj", params, opts);
    fill(r, n_hi - n_lo + 1, [&](std::size_t i) {
      const std::uint64_t n = n_lo + i;
      return guarded([&] { return to_json(conj_330n88n_check(n, lim)); }, {{"n", n}});
    }, opts);
    settle(r, "pattern_holds");
    return r;
  }

  throw DomainError("conj: unknown conjecture id '" + id +
                    "' (expected conj2witness, oddp, oddp2, c330n88n)");
}

CommandResult cmd_primes(std::uint64_t x_lo, std::uint64_t x_hi, const RunOptions& opts) {
  require(x_lo >= 2 && x_lo <= x_hi, "primes: need 2 <= --lo <= --hi");
  CommandResult r = start("primes", {{"lo", str(x_lo)}, {"hi", str(x_hi)}}, opts);
  const PrimeWindowReport report = lemma_p2_verify(x_lo, x_hi, opts.limits);
  for (const auto& e : report.entries) r.report.records.push_back(to_json(e));
  r.report.summary["failures"] = report.failures;
  if (!report.failures.empty()) r.exit_code = exit_code::failed;
  return r;
}

CommandResult cmd_qbinom(std::uint64_t m, std::uint64_t k, bool exponents,
                         const RunOptions& opts) {
  require(k <= m, "qbinom: need k <= m");
  CommandResult r = start("qbinom",
                          {{"m", str(m)}, {"k", str(k)}, {"exponents", exponents ? "true" : "false"}},
                          opts);
  json rec = {{"m", m}, {"k", k}};
  if (exponents) {
    rec["factorization"] = to_json(qbinom_factorization(m, k));
  } else {
    rec["polynomial"] = to_json(qbinom_poly(m, k, opts.limits));
  }
  r.report.records.push_back(std::move(rec));
  return r;
}

CommandResult cmd_theta(std::uint64_t x, const RunOptions& opts) {
  require(x >= 1, "theta: x must be >= 1");
  CommandResult r = start("theta", {{"x", str(x)}}, opts);
  r.report.records.push_back(to_json(chebyshev_theta_3_2(x, opts.limits)));
  return r;
}

}  // namespace divcert::cli
