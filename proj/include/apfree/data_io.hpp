#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "apfree/bigint.hpp"
#include "apfree/decimal_root.hpp"
#include "apfree/error.hpp"
#include "apfree/growth.hpp"
#include "apfree/theta_table.hpp"

namespace apfree {

struct BFileEntry {
  int n = 0;
  BigInt value;
};

namespace detail {

inline Error line_error(ErrorKind kind, std::size_t line, const std::string& what) {
  return Error(kind, "line " + std::to_string(line) + ": " + what);
}

inline int parse_index(std::string_view token, std::size_t line) {
  BigInt v;
  try {
    v = parse_decimal(token);
  } catch (const Error& e) {
    throw line_error(ErrorKind::parse_error, line, e.what());
  }
  if (v < 1 || v > 1'000'000) {
    throw line_error(ErrorKind::parse_error, line, "index out of range: " + std::string(token));
  }
  return static_cast<int>(v);
}

// Splits "n value" lines, skipping blanks and '#' comments. Exactly two tokens,
// n strictly ascending.
template <typename Fn>
void for_each_pair_line(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t lineno = 0;
  int last = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a >> b) || (fields >> extra)) {
      throw line_error(ErrorKind::parse_error, lineno, "expected two tokens, got '" + line + "'");
    }
    const int n = parse_index(a, lineno);
    if (n <= last) {
      throw line_error(ErrorKind::parse_error, lineno,
                       "n=" + std::to_string(n) + " does not follow n=" + std::to_string(last));
    }
    last = n;
    fn(n, b, lineno);
  }
}

}  // namespace detail

inline std::vector<BFileEntry> parse_bfile(std::istream& in) {
  std::vector<BFileEntry> out;
  detail::for_each_pair_line(in, [&](int n, const std::string& value, std::size_t lineno) {
    try {
      out.push_back({n, parse_decimal(value)});
    } catch (const Error& e) {
      throw detail::line_error(ErrorKind::parse_error, lineno, e.what());
    }
  });
  return out;
}

/// Parses a b-file into a delta tagged `ingested`. Values must agree with
/// `existing` and satisfy 2^(n-1) <= theta(n) <= floor((n+1)/2)! ceil((n+1)/2)!.
inline ThetaTable ingest_bfile(std::istream& in, const ThetaTable& existing) {
  ThetaTable delta;
  for (auto& [n, value] : parse_bfile(in)) {
    if (const auto* e = existing.find(n); e && e->value != value) {
      throw Error(ErrorKind::conflict_error,
                  "theta(" + std::to_string(n) + "): ingested " + to_decimal(value) + " vs " +
                      std::string(to_string(e->provenance)) + " " + to_decimal(e->value));
    }
    if (auto g = global_bounds(n, value); !g.passed) {
      throw Error(ErrorKind::conflict_error,
                  "theta(" + std::to_string(n) + ") = " + to_decimal(value) +
                      " violates 2^(n-1) <= theta(n) <= floor((n+1)/2)! ceil((n+1)/2)!");
    }
    delta.insert(n, value, Provenance::ingested);
  }
  return delta;
}

inline ThetaTable ingest_bfile_file(const std::filesystem::path& path, const ThetaTable& existing) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open b-file " + path.string());
  return ingest_bfile(in, existing);
}

// ---------------------------------------------------------------------------
// Cache: b-file-compatible value file plus a "n tag" provenance sidecar.

inline void save_table(const ThetaTable& table, std::ostream& values, std::ostream& provenance) {
  for (const auto& [n, e] : table.entries()) {
    values << n << ' ' << to_decimal(e.value) << '\n';
    provenance << n << ' ' << to_string(e.provenance) << '\n';
  }
}

/// Entries without a sidecar line are tagged `computed`. Every value must agree
/// with the builtin constants.
inline ThetaTable load_table(std::istream& values, std::istream* provenance = nullptr) {
  std::map<int, Provenance> tags;
  if (provenance) {
    detail::for_each_pair_line(*provenance, [&](int n, const std::string& tag, std::size_t lineno) {
      try {
        tags[n] = parse_provenance(tag);
      } catch (const Error& e) {
        throw detail::line_error(ErrorKind::parse_error, lineno, e.what());
      }
    });
  }
  const auto builtin = ThetaTable::builtin();
  ThetaTable table;
  for (auto& [n, value] : parse_bfile(values)) {
    if (const auto* b = builtin.find(n); b && b->value != value) {
      throw Error(ErrorKind::conflict_error, "cached theta(" + std::to_string(n) + ") = " +
                                                 to_decimal(value) + " disagrees with builtin " +
                                                 to_decimal(b->value));
    }
    auto it = tags.find(n);
    table.insert(n, value, it == tags.end() ? Provenance::computed : it->second);
  }
  return table;
}

inline std::filesystem::path provenance_path(const std::filesystem::path& cache) {
  auto p = cache;
  p += ".prov";
  return p;
}

inline void save_table_file(const ThetaTable& table, const std::filesystem::path& path) {
  std::ofstream values(path, std::ios::binary | std::ios::trunc);
  std::ofstream prov(provenance_path(path), std::ios::binary | std::ios::trunc);
  if (!values || !prov) throw std::runtime_error("cannot write cache " + path.string());
  save_table(table, values, prov);
  if (!values.flush() || !prov.flush()) throw std::runtime_error("write failed for " + path.string());
}

/// Missing file: empty table.
inline ThetaTable load_table_file(const std::filesystem::path& path) {
  std::ifstream values(path);
  if (!values) return {};
  std::ifstream prov(provenance_path(path));
  return load_table(values, prov ? &prov : nullptr);
}

// ---------------------------------------------------------------------------
// Figure data: "n root" per line, root = theta(n)^(1/n) rounded to `digits` places.

inline constexpr unsigned kDefaultFigureDigits = 6;

inline void emit_figure_data(const ThetaTable& table, int n_max, std::ostream& out,
                             unsigned digits = kDefaultFigureDigits) {
  for (int n = 1; n <= n_max; ++n) {
    if (!table.contains(n)) {
      throw Error(ErrorKind::value_unavailable,
                  "theta(" + std::to_string(n) + ") missing; figure needs 1.." + std::to_string(n_max));
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    out << n << ' '
        << root_decimal(table.at(n), static_cast<unsigned>(n), digits, Rounding::nearest).text()
        << '\n';
  }
}

inline std::vector<std::pair<int, DecimalRoot>> parse_figure_data(std::istream& in) {
  std::vector<std::pair<int, DecimalRoot>> out;
  detail::for_each_pair_line(in, [&](int n, const std::string& value, std::size_t lineno) {
    try {
      out.emplace_back(n, parse_fixed(value));
    } catch (const Error& e) {
      throw detail::line_error(ErrorKind::parse_error, lineno, e.what());
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Separation certificates: "key value" lines. Everything needed to re-check the
// verdict with a big-integer comparator alone is written in full.

inline void write_certificate(const SeparationCertificate& c, std::ostream& out,
                              unsigned digits = kDefaultDisplayDigits) {
  const auto& lo = c.lower_bound;
  const auto& hi = c.upper_bound;
  out << "# claim: L_" << c.m_low << " > L_" << c.m_high
      << " if low.radicand^high.root > high.radicand^low.root\n"
      << "low.m " << lo.m << '\n'
      << "low.t " << lo.t << '\n'
      << "low.root " << lo.root << '\n'
      << "low.provenance " << to_string(c.low_provenance) << '\n'
      << "low.radicand " << to_decimal(lo.lower_radicand) << '\n'
      << "low.decimal " << lo.lower_decimal(digits).text() << '\n'
      << "high.m " << hi.m << '\n'
      << "high.t " << hi.t << '\n'
      << "high.root " << hi.root << '\n'
      << "high.provenance " << to_string(c.high_provenance) << '\n'
      << "high.radicand " << to_decimal(hi.upper_radicand) << '\n'
      << "high.decimal " << hi.upper_decimal(digits).text() << '\n'
      << "lhs " << to_decimal(c.lhs) << '\n'
      << "rhs " << to_decimal(c.rhs) << '\n'
      << "separated " << (c.separated ? "true" : "false") << '\n';
}

struct CertificateCheck {
  bool well_formed = false;  // lhs/rhs recompute exactly and the verdict matches them
  bool separated = false;
  std::string detail;
};

/// Re-derives lhs and rhs from the radicands and roots in the document.
inline CertificateCheck verify_certificate(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) return {false, false, "malformed line: " + line};
    kv[line.substr(0, sp)] = line.substr(sp + 1);
  }
  for (const char* key : {"low.root", "low.radicand", "high.root", "high.radicand", "lhs", "rhs",
                          "separated"}) {
    if (!kv.contains(key)) return {false, false, std::string("missing key ") + key};
  }
  try {
    const BigInt a_root = parse_decimal(kv["low.root"]);
    const BigInt b_root = parse_decimal(kv["high.root"]);
    if (a_root < 1 || b_root < 1 || a_root > 1'000'000 || b_root > 1'000'000) {
      return {false, false, "root out of range"};
    }
    const BigInt lhs = pow(parse_decimal(kv["low.radicand"]), static_cast<unsigned>(b_root));
    const BigInt rhs = pow(parse_decimal(kv["high.radicand"]), static_cast<unsigned>(a_root));
    if (lhs != parse_decimal(kv["lhs"])) return {false, false, "lhs does not recompute"};
    if (rhs != parse_decimal(kv["rhs"])) return {false, false, "rhs does not recompute"};
    const bool claimed = kv["separated"] == "true";
    if (!claimed && kv["separated"] != "false") return {false, false, "bad verdict token"};
    if (claimed != (lhs > rhs)) return {false, claimed, "verdict disagrees with lhs > rhs"};
    return {true, claimed, claimed ? "lhs > rhs" : "lhs <= rhs"};
  } catch (const Error& e) {
    return {false, false, e.what()};
  }
}

}  // namespace apfree
