#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apfree/constructions.hpp"
#include "apfree/counting.hpp"
#include "apfree/data_io.hpp"
#include "apfree/growth.hpp"
#include "apfree/permutation.hpp"
#include "apfree/theta.hpp"

namespace apfree::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSynopsis =
    "usage: apfree <command> [options]\n"
    "  count <n> [--oracle] [--jobs N] [--split-depth D] [--node-budget B] [--cache PATH]\n"
    "  check <perm-csv>\n"
    "  double <a-csv> <b-csv> [--order even-first|odd-first] [--odd]\n"
    "  verify [--max N] [--cache PATH] [--bfile PATH]\n"
    "  separate [--low m,t] [--high m,t] [--digits D] [--cache PATH] [--bfile PATH] [--out CERT]\n"
    "  analyze [--m M] [--digits D] [--cache PATH] [--bfile PATH]\n"
    "  emit-figure [--max N] [--digits D] [--out PATH] [--cache PATH] [--bfile PATH]\n"
    "  ingest <bfile> [--cache PATH]\n"
    "cache: --cache, else $APFREE_CACHE, else ./theta_cache.txt (read when present)\n";

namespace detail {

struct TableSource {
  std::string cache;
  std::string bfile;
};

inline std::filesystem::path resolve_cache(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("APFREE_CACHE"); env && *env) return env;
  return "theta_cache.txt";
}

inline bool cache_explicit(const std::string& flag) {
  const char* env = std::getenv("APFREE_CACHE");
  return !flag.empty() || (env && *env);
}

// builtin, then the cache if present, then the b-file (which must agree with both).
inline ThetaTable load_sources(const TableSource& src) {
  ThetaTable table = ThetaTable::builtin();
  table.merge(load_table_file(resolve_cache(src.cache)));
  if (!src.bfile.empty()) table.merge(ingest_bfile_file(src.bfile, table));
  return table;
}

inline std::pair<int, int> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw apfree::Error(ErrorKind::parse_error, "expected m,t but got '" + text + "'");
  }
  const auto m = parse_decimal(text.substr(0, comma));
  const auto t = parse_decimal(text.substr(comma + 1));
  if (m < 1 || m > 1'000'000 || t > 20) {
    throw apfree::Error(ErrorKind::parse_error, "m,t out of range: '" + text + "'");
  }
  return {static_cast<int>(m), static_cast<int>(t)};
}

inline std::string witness_text(const Permutation& p, const APWitness& w) {
  return "(" + std::to_string(w.i) + "," + std::to_string(w.j) + "," + std::to_string(w.k) +
         "): " + std::to_string(p.at(w.i)) + " " + std::to_string(p.at(w.j)) + " " +
         std::to_string(p.at(w.k));
}

struct Tally {
  int passed = 0;
  int failed = 0;
  int skipped = 0;
};

inline void print_tally(std::ostream& out, const char* name, const Tally& t) {
  out << name << ": " << t.passed << " passed, " << t.failed << " failed, " << t.skipped
      << " skipped\n";
}

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::construction_violation:
    case ErrorKind::conflict_error:
      return kExitCheckFailed;
    default:
      return kExitUsage;
  }
}

}  // namespace detail

/// Runs one command. `args` excludes the program name.
/// Exit status: 0 ok, 1 a mathematical check failed, 2 usage or I/O error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting and growth-rate certificates for 3AP-free permutations", "apfree"};
  app.require_subcommand(1, 1);
  app.set_help_flag("-h,--help");

  detail::TableSource src;
  const auto add_sources = [&](CLI::App* sub, bool with_bfile) {
    sub->add_option("--cache", src.cache, "theta cache file (b-file format)");
    if (with_bfile) sub->add_option("--bfile", src.bfile, "b-file to ingest for this run");
  };

  int n = 0;
  bool oracle = false;
  int jobs = 1;
  int split_depth = 2;
  std::optional<std::uint64_t> node_budget;
  auto* count = app.add_subcommand("count", "count 3AP-free permutations of [n]");
  count->add_option("n", n, "size")->required()->check(CLI::Range(1, 64));
  count->add_flag("--oracle", oracle, "enumerate all n! permutations instead");
  count->add_option("--jobs", jobs, "worker threads")->check(CLI::Range(1, 1024));
  count->add_option("--split-depth", split_depth, "prefix length for work partitioning")
      ->check(CLI::Range(0, 64));
  count->add_option("--node-budget", node_budget, "abort after this many search nodes");
  add_sources(count, false);

  std::string perm_text;
  auto* check = app.add_subcommand("check", "find a 3AP in a permutation");
  check->add_option("perm", perm_text, "comma-separated one-line notation")->required();

  std::string a_text, b_text, order_text = "even-first";
  bool odd = false;
  auto* dbl = app.add_subcommand("double", "combine two 3AP-free permutations");
  dbl->add_option("a", a_text, "even block source")->required();
  dbl->add_option("b", b_text, "odd block source")->required();
  dbl->add_option("--order", order_text, "block order")
      ->check(CLI::IsMember({"even-first", "odd-first"}));
  dbl->add_flag("--odd", odd, "|b| = |a| + 1, producing a permutation of [2|a|+1]");

  int max_n = 0;
  auto* verify = app.add_subcommand("verify", "check every applicable inequality on the table");
  verify->add_option("--max", max_n, "largest n to check (default: largest available)")
      ->check(CLI::Range(1, 1'000'000));
  add_sources(verify, true);

  std::string low_text = "1,6", high_text = "75,0", out_path;
  unsigned digits = kDefaultDisplayDigits;
  auto* sep = app.add_subcommand("separate", "certify L_low > L_high by exact integers");
  sep->add_option("--low", low_text, "m,t of the lower bracket");
  sep->add_option("--high", high_text, "m,t of the upper bracket");
  sep->add_option("--digits", digits, "decimal places for display")->check(CLI::Range(0, 100));
  sep->add_option("--out", out_path, "also write the certificate here");
  add_sources(sep, true);

  int m = 1;
  auto* analyze = app.add_subcommand("analyze", "subsequence points b_t(m) and L_m brackets");
  analyze->add_option("--m", m, "subsequence index")->check(CLI::Range(1, 1'000'000));
  analyze->add_option("--digits", digits, "decimal places")->check(CLI::Range(0, 100));
  add_sources(analyze, true);

  int fig_max = 200;
  unsigned fig_digits = kDefaultFigureDigits;
  auto* emit = app.add_subcommand("emit-figure", "write 'n theta(n)^(1/n)' lines");
  emit->add_option("--max", fig_max, "largest n")->check(CLI::Range(1, 1'000'000));
  emit->add_option("--digits", fig_digits, "decimal places")->check(CLI::Range(0, 100));
  emit->add_option("--out", out_path, "output file (default: stdout)");
  add_sources(emit, true);

  std::string bfile_path;
  auto* ingest = app.add_subcommand("ingest", "merge a b-file into the cache");
  ingest->add_option("bfile", bfile_path, "b-file path")->required();
  add_sources(ingest, false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << kSynopsis;
    return kExitUsage;
  }

  try {
    if (*count) {
      BigInt value;
      if (oracle) {
        value = count_oracle(n);
      } else if (detail::cache_explicit(src.cache)) {
        auto table = detail::load_sources(src);
        ThetaOptions opt{jobs, std::min(split_depth, n), node_budget, detail::resolve_cache(src.cache)};
        value = theta(n, table, ThetaPolicy::compute_if_missing, opt);
      } else {
        value = count_pruned({n, jobs, std::min(split_depth, n), node_budget});
      }
      out << to_decimal(value) << '\n';
      return kExitOk;
    }

    if (*check) {
      const auto p = parse_csv(perm_text);
      if (auto w = find_3ap(p)) {
        out << "3AP at " << detail::witness_text(p, *w) << '\n';
        return kExitCheckFailed;
      }
      out << "FREE\n";
      return kExitOk;
    }

    if (*dbl) {
      const auto a = parse_csv(a_text);
      const auto b = parse_csv(b_text);
      const auto order =
          order_text == "odd-first" ? DoublingOrder::odd_block_first : DoublingOrder::even_block_first;
      out << format_csv(odd ? double_perm_odd(a, b, order) : double_perm(a, b, order)) << '\n';
      return kExitOk;
    }

    if (*verify) {
      const auto table = detail::load_sources(src);
      const int top = max_n > 0 ? max_n : table.max_n();
      detail::Tally sandwich, split_upper, global, oddd, mono;
      bool any_failed = false;
      const auto has = [&](int k) { return table.contains(k); };

      for (int k = 1; 2 * k <= top; ++k) {
        if (!has(k) || !has(2 * k)) { ++sandwich.skipped; continue; }
        const auto r = check_sandwich(k, table);
        if (r.passed) { ++sandwich.passed; continue; }
        ++sandwich.failed;
        out << "FAIL sandwich k=" << k << ": " << to_decimal(r.lower) << " <= " << to_decimal(r.middle)
            << " <= " << to_decimal(r.upper) << '\n';
      }
      for (int k = 3; k <= top; ++k) {
        if (!has(k) || !has((k + 1) / 2) || !has(k / 2)) { ++split_upper.skipped; continue; }
        const auto r = check_split_upper(k, table);
        if (r.passed) { ++split_upper.passed; continue; }
        ++split_upper.failed;
        out << "FAIL split-upper n=" << k << ": " << to_decimal(r.value) << " <= " << to_decimal(r.bound) << '\n';
      }
      for (int k = 1; k <= top; ++k) {
        if (!has(k)) { ++global.skipped; continue; }
        const auto r = check_global_bounds(k, table);
        if (r.passed) { ++global.passed; continue; }
        ++global.failed;
        out << "FAIL global n=" << k << ": " << to_decimal(r.lower) << " <= " << to_decimal(r.value)
            << " <= " << to_decimal(r.upper) << '\n';
      }
      for (int k = 1; 2 * k + 1 <= top; ++k) {
        if (!has(k) || !has(k + 1) || !has(2 * k + 1)) { ++oddd.skipped; continue; }
        const BigInt product = table.at(k + 1) * table.at(k);
        if (table.at(2 * k + 1) >= product) { ++oddd.passed; continue; }
        ++oddd.failed;
        out << "FAIL odd-doubling n=" << k << ": " << to_decimal(table.at(2 * k + 1)) << " >= "
            << to_decimal(product) << '\n';
      }
      for (int mm = 1; 2 * mm <= top; mm += 2) {
        const auto r = monotone_report(mm, table);
        int steps = 0;
        for (const auto& s : r.steps) {
          if (2 * s.sandwich.k > top) continue;
          ++steps;
          if (s.strictly_increasing && s.sandwich.passed) continue;
          out << "FAIL monotone m=" << mm << " t=" << s.t << '\n';
          ++mono.failed;
        }
        if (steps == 0) ++mono.skipped; else if (r.passed()) ++mono.passed;
      }
      int increasing = 0, decreasing = 0;
      for (int k = 1; k < top; ++k) {
        if (!has(k) || !has(k + 1)) continue;
        (table.at(k) <= table.at(k + 1) ? increasing : decreasing) += 1;
      }

      detail::print_tally(out, "sandwich", sandwich);
      detail::print_tally(out, "split-upper", split_upper);
      detail::print_tally(out, "global-bounds", global);
      detail::print_tally(out, "odd-doubling", oddd);
      detail::print_tally(out, "monotone", mono);
      out << "info: theta(n) <= theta(n+1) on " << increasing << " of " << increasing + decreasing
          << " consecutive available pairs\n";
      any_failed = sandwich.failed + split_upper.failed + global.failed + oddd.failed + mono.failed > 0;
      out << (any_failed ? "RESULT FAIL\n" : "RESULT PASS\n");
      return any_failed ? kExitCheckFailed : kExitOk;
    }

    if (*sep) {
      const auto table = detail::load_sources(src);
      const auto [ml, tl] = detail::parse_point(low_text);
      const auto [mh, th] = detail::parse_point(high_text);
      const auto cert = separate(ml, tl, mh, th, table);
      std::ostringstream doc;
      write_certificate(cert, doc, digits);
      out << doc.str();
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!(f << doc.str()) || !f.flush()) {
          err << "error: cannot write " << out_path << '\n';
          return kExitUsage;
        }
      }
      return cert.separated ? kExitOk : kExitCheckFailed;
    }

    if (*analyze) {
      const auto table = detail::load_sources(src);
      bool any = false;
      for (int t = 0; (static_cast<long long>(m) << t) <= table.max_n(); ++t) {
        const int idx = m << t;
        if (!table.contains(idx)) continue;
        any = true;
        const auto p = b_value(m, t, table, digits);
        const auto g = bound_L(m, t, table);
        out << "t=" << t << " n=" << idx << " b=" << p.value.text() << " L_" << m << " in ["
            << g.lower_decimal(digits).text() << ", " << g.upper_decimal(digits).text() << "] ("
            << to_string(table.provenance(idx)) << ")\n";
      }
      if (!any) {
        err << "error: no theta(" << m << "*2^t) available\n";
        return kExitUsage;
      }
      const auto r = monotone_report(m, table);
      if (r.insufficient_data) {
        out << "monotone: insufficient data\n";
        return kExitOk;
      }
      for (const auto& s : r.steps) {
        out << "step t=" << s.t << "->" << s.t + 1 << ": "
            << (s.strictly_increasing ? "increasing" : "NOT increasing") << ", "
            << to_decimal(s.sandwich.lower) << " <= " << to_decimal(s.sandwich.middle) << " <= "
            << to_decimal(s.sandwich.upper) << (s.sandwich.passed ? "" : " FAIL") << '\n';
      }
      out << "monotone: " << (r.passed() ? "pass" : "FAIL") << '\n';
      return r.passed() ? kExitOk : kExitCheckFailed;
    }

    if (*emit) {
      const auto table = detail::load_sources(src);
      if (out_path.empty()) {
        emit_figure_data(table, fig_max, out, fig_digits);
      } else {
        std::ostringstream data;
        emit_figure_data(table, fig_max, data, fig_digits);
        std::ofstream f(out_path, std::ios::binary | std::ios::trunc);
        if (!(f << data.str()) || !f.flush()) {
          err << "error: cannot write " << out_path << '\n';
          return kExitUsage;
        }
        out << "wrote " << fig_max << " lines to " << out_path << '\n';
      }
      return kExitOk;
    }

    if (*ingest) {
      const auto path = detail::resolve_cache(src.cache);
      auto table = ThetaTable::builtin();
      table.merge(load_table_file(path));
      const auto delta = ingest_bfile_file(bfile_path, table);
      table.merge(delta);
      save_table_file(table, path);
      out << "ingested " << delta.size() << " entries";
      if (!delta.empty()) {
        out << " (n=" << delta.entries().begin()->first << ".." << delta.max_n() << ")";
      }
      out << " into " << path.string() << '\n';
      return kExitOk;
    }
  } catch (const apfree::Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << kSynopsis;
  return kExitUsage;
}

}  // namespace apfree::cli
