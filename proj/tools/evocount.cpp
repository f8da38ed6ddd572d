#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evocount/burnside.hpp"
#include "evocount/closed_form.hpp"
#include "evocount/count_report.hpp"
#include "evocount/errors.hpp"
#include "evocount/evolution.hpp"
#include "evocount/field.hpp"
#include "evocount/group_action.hpp"
#include "evocount/matrix.hpp"
#include "evocount/report_io.hpp"

namespace {

using namespace evocount;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitInternal = 4;

struct FieldArgs {
  std::uint64_t q = 0;
  std::uint64_t p = 0;
  int m = 0;
};

Field resolve_field(const FieldArgs& a) {
  if (a.q) {
    std::uint64_t p = 0;
    int m = 0;
    if (!factor_prime_power(a.q, &p, &m))
      throw invalid_input("q = " + std::to_string(a.q) + " is not a prime power");
    return Field::make(p, m);
  }
  if (!a.p) throw invalid_input("give either --q or --p (with --m)");
  return Field::make(a.p, a.m ? a.m : 1);
}

std::vector<std::uint64_t> parse_q_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoull(item));
  }
  if (out.empty()) throw invalid_input("empty field list");
  return out;
}

bool method_feasible(const std::string& method, const Field& f, int n, std::uint64_t budget) {
  if (method == "formula") return n >= 2 && n <= 4;
  if (method == "burnside")
    return n <= kMaxDim && BigUint(f.q() - 1).pow(static_cast<unsigned>(n)) <= BigUint(budget);
  if (method == "orbit") {
    // the automatic sweeps cap the orbit scan well below the hard budget;
    // an explicit --method orbit is bounded only by --budget
    std::uint64_t cap = std::min<std::uint64_t>(budget, 1ull << 26);
    return n <= kMaxDim && BigUint(f.q()).pow(static_cast<unsigned>(n * n)) <= BigUint(cap);
  }
  return false;
}

CountReport run_method(const std::string& method, const Field& f, int n, std::uint64_t budget,
                       unsigned threads) {
  auto start = std::chrono::steady_clock::now();
  CountReport r;
  r.n = n;
  r.q = f.q();
  r.p = f.p();
  r.m = f.m();
  r.method = method;
  if (method == "formula") {
    if (n < 2 || n > 4) throw invalid_input("--method formula needs n in {2, 3, 4}");
    r.N = closed_form::count(f, n);
    for (const Partition& mu : partitions(n)) {
      r.contributions.push_back({mu, closed_form::partition_contribution(f, mu.parts)});
    }
  } else if (method == "burnside") {
    BurnsideOptions opts;
    opts.torus_budget = budget;
    opts.threads = threads;
    return count_classes_burnside(f, n, opts);
  } else if (method == "orbit") {
    OrbitPartition orbits = enumerate_orbits(f, n, budget);
    r.N = static_cast<unsigned long long>(orbits.representatives.size());
  } else {
    throw invalid_input("unknown method '" + method + "'");
  }
  r.elapsed_ms = static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
          .count());
  return r;
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw invalid_input("cannot open output file " + path);
  return file;
}

int cmd_count(const FieldArgs& fa, int n, const std::string& method, const std::string& format,
              const std::string& out_path, std::uint64_t budget, unsigned threads) {
  Field f = resolve_field(fa);
  std::vector<std::string> methods;
  if (method == "all") {
    for (const char* name : {"formula", "burnside", "orbit"}) {
      if (method_feasible(name, f, n, budget)) {
        methods.push_back(name);
      } else {
        std::cerr << "note: method " << name << " skipped for n=" << n << ", q=" << f.q()
                  << " (infeasible at this budget)\n";
      }
    }
    if (methods.empty()) throw budget_exceeded("no method is feasible at this budget", 0, budget);
  } else {
    methods.push_back(method);
  }

  std::vector<CountReport> reports;
  for (const auto& name : methods) {
    if (method == "all") {
      // a method can still refuse deeper in (e.g. fixed-point budgets);
      // in the "all" sweep that demotes it to a skip
      try {
        reports.push_back(run_method(name, f, n, budget, threads));
      } catch (const budget_exceeded& e) {
        std::cerr << "note: method " << name << " skipped: " << e.what() << "\n";
      }
    } else {
      reports.push_back(run_method(name, f, n, budget, threads));
    }
  }
  if (reports.empty()) throw budget_exceeded("no method is feasible at this budget", 0, budget);

  bool mismatch = false;
  for (size_t i = 1; i < reports.size(); ++i) {
    if (reports[i].N != reports[0].N) mismatch = true;
  }

  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  if (format == "json") {
    if (reports.size() == 1) {
      os << report_to_json(reports[0]).dump(2) << "\n";
    } else {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      os << arr.dump(2) << "\n";
    }
  } else if (format == "csv") {
    os << "n,q,p,m,method,N,elapsed_ms\n";
    for (const auto& r : reports) {
      os << r.n << "," << r.q << "," << r.p << "," << r.m << "," << r.method << ","
         << r.N.to_string() << "," << r.elapsed_ms << "\n";
    }
  } else {
    for (const auto& r : reports) report_to_text(os, r);
  }
  if (mismatch) {
    std::cerr << "error: methods disagree\n";
    return kExitMismatch;
  }
  return kExitOk;
}

int cmd_validate(int n_max, const std::string& q_list, std::uint64_t budget, unsigned threads,
                 const std::string& out_path) {
  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  bool all_ok = true;
  for (std::uint64_t q : parse_q_list(q_list)) {
    std::uint64_t p = 0;
    int m = 0;
    if (!factor_prime_power(q, &p, &m)) throw invalid_input("q = " + std::to_string(q) + " is not a prime power");
    Field f = Field::make(p, m);
    for (int n = 1; n <= n_max; ++n) {
      std::vector<CountReport> reports;
      for (const char* name : {"formula", "burnside", "orbit"}) {
        if (method_feasible(name, f, n, budget)) {
          try {
            reports.push_back(run_method(name, f, n, budget, threads));
          } catch (const budget_exceeded& e) {
            os << "n=" << n << " q=" << q << ": " << name << " infeasible (" << e.what() << ")\n";
          }
        }
      }
      if (reports.size() < 2 && !(n == 1 && !reports.empty())) {
        os << "n=" << n << " q=" << q << ": fewer than two feasible methods, skipped\n";
        continue;
      }
      bool ok = true;
      for (size_t i = 1; i < reports.size(); ++i) ok &= reports[i].N == reports[0].N;

      // per-partition comparison between the engine and the closed forms
      std::string b_note;
      const CountReport* burnside_report = nullptr;
      for (const auto& r : reports)
        if (r.method == "burnside") burnside_report = &r;
      if (burnside_report && n >= 2 && n <= 4) {
        for (const auto& contrib : burnside_report->contributions) {
          BigUint expect = closed_form::partition_contribution(f, contrib.partition.parts);
          if (expect != contrib.value) {
            ok = false;
            b_note += " B(" + contrib.partition.to_string() + ") engine=" +
                      contrib.value.to_string() + " formula=" + expect.to_string();
          }
        }
        if (b_note.empty()) b_note = " B-contributions agree";
      }

      os << "n=" << n << " q=" << q << ":";
      for (const auto& r : reports) os << " " << r.method << "=" << r.N.to_string();
      os << (ok ? " OK" : " MISMATCH") << b_note << "\n";
      all_ok &= ok;
    }
  }
  return all_ok ? kExitOk : kExitMismatch;
}

int cmd_table(int n, const std::string& q_list, const std::string& methods_arg,
              const std::string& format, const std::string& out_path, std::uint64_t budget,
              unsigned threads) {
  std::vector<std::string> methods;
  {
    std::stringstream ss(methods_arg);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) continue;
      if (item != "formula" && item != "burnside" && item != "orbit")
        throw invalid_input("unknown method '" + item + "'");
      methods.push_back(item);
    }
  }
  struct TableRow {
    std::uint64_t q, p;
    int m;
    closed_form::CaseKey key;
    std::map<std::string, std::string> counts;
  };
  std::vector<TableRow> rows;
  for (std::uint64_t q : parse_q_list(q_list)) {
    std::uint64_t p = 0;
    int m = 0;
    if (!factor_prime_power(q, &p, &m)) throw invalid_input("q = " + std::to_string(q) + " is not a prime power");
    Field f = Field::make(p, m);
    TableRow row{q, p, m, closed_form::case_key(f), {}};
    for (const auto& name : methods) {
      if (!method_feasible(name, f, n, budget)) {
        std::cerr << "note: method " << name << " skipped for q=" << q << "\n";
        row.counts[name] = "";
        continue;
      }
      try {
        row.counts[name] = run_method(name, f, n, budget, threads).N.to_string();
      } catch (const budget_exceeded& e) {
        std::cerr << "note: method " << name << " skipped for q=" << q << ": " << e.what() << "\n";
        row.counts[name] = "";
      }
    }
    rows.push_back(std::move(row));
  }

  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j = {{"q", r.q},           {"p", r.p},           {"m", r.m},
                          {"P3", (int)r.key.p3}, {"P4", (int)r.key.p4}, {"P5", (int)r.key.p5},
                          {"P7", (int)r.key.p7}, {"P15", (int)r.key.p15}};
      for (const auto& [name, value] : r.counts) j["N_" + name] = value;
      arr.push_back(j);
    }
    os << arr.dump(2) << "\n";
  } else {
    os << "q,p,m,P3,P4,P5,P7,P15";
    for (const auto& name : methods) os << ",N_" << name;
    os << "\n";
    for (const auto& r : rows) {
      os << r.q << "," << r.p << "," << r.m << "," << r.key.p3 << "," << r.key.p4 << ","
         << r.key.p5 << "," << r.key.p7 << "," << r.key.p15;
      for (const auto& name : methods) os << "," << r.counts.at(name);
      os << "\n";
    }
  }
  return kExitOk;
}

int cmd_orbits(const FieldArgs& fa, int n, const std::string& format, const std::string& out_path,
               std::uint64_t budget, bool use_generators) {
  Field f = resolve_field(fa);
  OrbitPartition orbits = enumerate_orbits(f, n, budget, use_generators);

  std::ofstream file;
  std::ostream& os = open_out(file, out_path);
  if (format == "json") {
    nlohmann::json j;
    j["n"] = n;
    j["q"] = f.q();
    j["count"] = orbits.representatives.size();
    j["group_order"] = orbits.group_order.to_string();
    j["total"] = orbits.total.to_string();
    j["orbits"] = nlohmann::json::array();
    for (size_t i = 0; i < orbits.representatives.size(); ++i) {
      nlohmann::json rep = nlohmann::json::array();
      for (int r = 0; r < n; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < n; ++c) row.push_back(orbits.representatives[i].at(r, c));
        rep.push_back(row);
      }
      j["orbits"].push_back({{"size", orbits.orbit_sizes[i]}, {"representative", rep}});
    }
    os << j.dump(2) << "\n";
  } else if (format == "csv") {
    os << "orbit,size,representative\n";
    for (size_t i = 0; i < orbits.representatives.size(); ++i) {
      os << i << "," << orbits.orbit_sizes[i] << ",";
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
          if (r || c) os << " ";
          os << orbits.representatives[i].at(r, c);
        }
      os << "\n";
    }
  } else {
    os << orbits.representatives.size() << " orbits on GL_" << n << "(" << f.describe()
       << "), |G| = " << orbits.group_order.to_string() << ", sizes sum to "
       << orbits.total.to_string() << "\n";
    for (size_t i = 0; i < orbits.representatives.size(); ++i) {
      os << "orbit " << i << " size " << orbits.orbit_sizes[i] << " representative";
      for (int r = 0; r < n; ++r) {
        os << " [";
        for (int c = 0; c < n; ++c) {
          if (c) os << " ";
          os << orbits.representatives[i].at(r, c);
        }
        os << "]";
      }
      os << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact isomorphism-class counts for idempotent evolution algebras over F_q"};
  app.require_subcommand(1);

  FieldArgs fa;
  int n = 2;
  std::string method = "all";
  std::string format = "text";
  std::string out_path;
  std::uint64_t budget = 1ull << 32;
  unsigned threads = 0;
  bool use_generators = false;
  int n_max = 2;
  std::string q_list;
  std::string table_methods = "formula,burnside";

  auto add_field_opts = [&](CLI::App* cmd) {
    auto* q_opt = cmd->add_option("--q", fa.q, "field size, a prime power");
    auto* p_opt = cmd->add_option("--p", fa.p, "field characteristic (prime)");
    cmd->add_option("--m", fa.m, "extension degree (with --p)")->default_val(1);
    q_opt->excludes(p_opt);
    p_opt->excludes(q_opt);
  };
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--budget", budget, "enumeration budget")->envname("EVOCOUNT_BUDGET");
    cmd->add_option("--threads", threads, "worker cap (0 = hardware)");
    cmd->add_option("--format", format, "text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", out_path, "output file (default stdout)");
  };

  CLI::App* count = app.add_subcommand("count", "count isomorphism classes");
  count->add_option("--n", n, "algebra dimension")->required();
  add_field_opts(count);
  count->add_option("--method", method, "formula | burnside | orbit | all")
      ->check(CLI::IsMember({"formula", "burnside", "orbit", "all"}));
  add_common(count);

  CLI::App* validate = app.add_subcommand("validate", "cross-check every feasible method");
  validate->add_option("--n-max", n_max, "check dimensions 1..n_max")->required();
  validate->add_option("--q", q_list, "comma-separated field sizes")->required();
  validate->add_option("--budget", budget, "enumeration budget")->envname("EVOCOUNT_BUDGET");
  validate->add_option("--threads", threads, "worker cap (0 = hardware)");
  validate->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* table = app.add_subcommand("table", "one row per field");
  table->add_option("--n", n, "algebra dimension")->required();
  table->add_option("--q", q_list, "comma-separated field sizes")->required();
  table->add_option("--method", table_methods, "comma-separated methods");
  table->add_option("--budget", budget, "enumeration budget")->envname("EVOCOUNT_BUDGET");
  table->add_option("--threads", threads, "worker cap (0 = hardware)");
  table->add_option("--format", format, "csv | json | text")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  table->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* orbits = app.add_subcommand("orbits", "canonical orbit representatives");
  orbits->add_option("--n", n, "algebra dimension")->required();
  add_field_opts(orbits);
  orbits->add_flag("--generators", use_generators, "grow orbits by generator closure");
  add_common(orbits);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (count->parsed()) return cmd_count(fa, n, method, format, out_path, budget, threads);
    if (validate->parsed()) return cmd_validate(n_max, q_list, budget, threads, out_path);
    if (table->parsed()) {
      if (table->count("--format") == 0) format = "csv";
      return cmd_table(n, q_list, table_methods, format, out_path, budget, threads);
    }
    if (orbits->parsed()) return cmd_orbits(fa, n, format, out_path, budget, use_generators);
  } catch (const budget_exceeded& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const internal_error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
