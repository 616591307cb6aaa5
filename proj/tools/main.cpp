#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "octa/gallery.hpp"
#include "octa/iso_search.hpp"
#include "octa/serialize.hpp"

using namespace octa;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void print_entry(const ReportEntry& e) {
  std::cout << "[" << e.status << "] " << e.name;
  if (!e.detail.empty()) std::cout << ": " << e.detail;
  std::cout << " (" << e.time_ms << " ms)\n";
}

int finish(const Report& report, const std::string& report_path) {
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write report file " << report_path << "\n";
      return 2;
    }
    out << report.to_json();
  }
  return report.exit_code();
}

struct TimedCheck {
  Report& report;
  ReportEntry entry;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  TimedCheck(Report& r, std::string name) : report(r) { entry.name = std::move(name); }
  void done(bool ok, std::string detail = {}, std::vector<std::string> payload = {}) {
    entry.status = ok ? "pass" : "fail";
    entry.detail = std::move(detail);
    entry.payload = std::move(payload);
    entry.time_ms = ms_since(t0);
    print_entry(entry);
    report.add(entry);
  }
  void inconclusive(std::string detail) {
    entry.status = "inconclusive";
    entry.detail = std::move(detail);
    entry.time_ms = ms_since(t0);
    print_entry(entry);
    report.add(entry);
  }
};

int run_verify(const std::string& input, const std::string& check, const std::string& report_path) {
  Report report;
  PeriodicDiagram d = load_diagram_file(input);
  TimedCheck t(report, check);
  if (check == "pretriangle") {
    CheckReport r = is_periodic_pretriangle_report(d);
    t.done(r.ok, r.reason);
  } else if (check == "triangle") {
    if (d.n != 2) throw ContractError("triangle check requires n = 2");
    CheckReport pre = is_periodic_pretriangle_report(d);
    if (!pre.ok) {
      t.done(false, pre.reason);
    } else {
      DistinguishedReport r = is_distinguished_report(triangle_of(d));
      t.done(r.distinguished, r.reason);
    }
  } else if (check == "octahedron") {
    CheckReport r = is_verdier_octahedron_report(d);
    t.done(r.ok, r.reason);
  } else {
    throw ContractError("unknown check name: " + check);
  }
  return finish(report, report_path);
}

// Witnesses are re-verified independently before being reported.
ReportEntry iso_entry(const std::string& name, const PeriodicDiagram& left,
                      const PeriodicDiagram& right, const IsoSearchResult& r, double time_ms) {
  ReportEntry e;
  e.name = name;
  e.time_ms = time_ms;
  if (r.status == SearchStatus::BudgetExhausted) {
    e.status = "inconclusive";
    e.detail = "budget exhausted after " + std::to_string(r.nodes) + " nodes";
    return e;
  }
  for (const DiagramIso& w : r.witnesses)
    if (!verify_diagram_iso(left, right, w)) {
      e.status = "fail";
      e.detail = "a search witness failed the independent re-check";
      return e;
    }
  e.status = "pass";
  if (r.witness_count == 0) {
    e.detail = "no isomorphism (exhaustive)";
  } else {
    e.detail = std::to_string(r.witness_count) + " witness(es)";
    size_t shown = std::min<size_t>(r.witnesses.size(), 25);
    for (size_t i = 0; i < shown; ++i) e.payload.push_back(iso_to_json_lines(r.witnesses[i]));
  }
  return e;
}

int run_iso(const std::string& left_path, const std::string& right_path, bool all,
            std::uint64_t budget, int jobs, const std::string& report_path) {
  PeriodicDiagram left = load_diagram_file(left_path);
  PeriodicDiagram right = load_diagram_file(right_path);
  if (left.ctx != right.ctx || left.n != right.n)
    throw ContractError("diagram headers (p, m, n) do not match");

  Report report;
  auto t0 = std::chrono::steady_clock::now();
  IsoSearchOptions opts;
  opts.mode = all ? SearchMode::All : SearchMode::First;
  opts.budget = budget;
  opts.jobs = jobs;
  IsoSearchResult r = find_periodic_isos(left, right, opts);
  ReportEntry e = iso_entry("iso-search", left, right, r, ms_since(t0));
  print_entry(e);
  report.add(e);
  return finish(report, report_path);
}

int run_gallery(const std::string& name, int n, Int p, const std::string& out_path) {
  auto gname = gallery_name_from_string(name);
  if (!gname) throw ContractError("unknown gallery name: " + name);
  PeriodicDiagram d = gallery_diagram({*gname, n, p});
  save_diagram_file(d, out_path);
  std::cout << "wrote " << name << " (n=" << n << ", p=" << p << ") to " << out_path << "\n";
  return 0;
}

int run_reproduce(int n, Int p, std::uint64_t budget, int jobs, const std::string& report_path) {
  Report report;

  {
    TimedCheck t(report, "staircase-box-property");
    auto err = box_check(gen_Y(n, p));
    t.done(!err.has_value(), err.value_or(""));
  }
  {
    TimedCheck t(report, "staircase-standardisation-unchanged");
    EDiagram y = gen_Y(n, p);
    StandardizeResult res = standardize_column(y);
    bool ok = res.diagram == stable_image(y);
    for (const auto& tau : res.tau) ok = ok && tau == stable_identity(y.ctx, tau.src());
    t.done(ok);
  }

  PeriodicDiagram x = gen_X(n, p);
  PeriodicDiagram xt = gen_Xtilde(n, p);
  {
    TimedCheck t(report, "pretriangle-X");
    CheckReport r = is_periodic_pretriangle_report(x);
    t.done(r.ok, r.reason);
  }
  {
    TimedCheck t(report, "pretriangle-Xtilde");
    CheckReport r = is_periodic_pretriangle_report(xt);
    t.done(r.ok, r.reason);
  }

  for (int k = 0; k <= n; ++k) {
    TimedCheck t(report, "restriction-isomorphism-k" + std::to_string(k));
    PeriodicDiagram rx = restrict_diagram(x, k);
    PeriodicDiagram rxt = restrict_diagram(xt, k);
    DiagramIso w = explicit_witness_iso(k, n, p);
    bool ok = verify_diagram_iso(rx, rxt, w);
    std::string detail = ok ? "explicit witness verified" : "explicit witness rejected";
    if (k == 1 || k == n) {
      ok = ok && rx == rxt;
      detail += ok ? "; literal equality" : "; literal equality fails";
    }
    IsoSearchOptions opts;
    opts.mode = SearchMode::First;
    opts.budget = budget;
    IsoSearchResult r = find_periodic_isos(rx, rxt, opts);
    if (r.status == SearchStatus::BudgetExhausted) {
      t.inconclusive("search budget exhausted");
      continue;
    }
    ok = ok && r.witness_count >= 1;
    t.done(ok, detail, {iso_to_json_lines(w)});
  }

  std::optional<IsoSearchResult> noniso;
  {
    TimedCheck t(report, "nonisomorphism-exhaustive");
    IsoSearchOptions opts;
    opts.mode = SearchMode::All;
    opts.budget = budget;
    opts.jobs = jobs;
    IsoSearchResult r = find_periodic_isos(x, xt, opts);
    if (r.status == SearchStatus::BudgetExhausted) {
      t.inconclusive("search budget exhausted after " + std::to_string(r.nodes) + " nodes");
    } else {
      t.done(r.witness_count == 0, "exhaustive search, " + std::to_string(r.nodes) + " nodes");
      noniso = std::move(r);
    }
  }

  if (n == 3) {
    {
      TimedCheck t(report, "verdier-octahedron-X");
      CheckReport r = is_verdier_octahedron_report(x);
      t.done(r.ok, r.reason);
    }
    {
      TimedCheck t(report, "verdier-octahedron-Xtilde");
      CheckReport r = is_verdier_octahedron_report(xt);
      t.done(r.ok, r.reason);
    }
    {
      TimedCheck t(report, "octahedra-nonisomorphic");
      if (noniso)
        t.done(noniso->witness_count == 0, "certified by the exhaustive search above");
      else
        t.inconclusive("search budget exhausted");
    }
    for (bool tilde : {false, true}) {
      TimedCheck t(report, std::string("extra-triangles-") + (tilde ? "Xtilde" : "X"));
      auto [t1, t2] = bbd_extra_triangles(tilde ? xt : x);
      DistinguishedReport r1 = is_distinguished_report(t1);
      DistinguishedReport r2 = is_distinguished_report(t2);
      t.done(r1.distinguished && r2.distinguished, r1.distinguished ? r2.reason : r1.reason);
    }
  }

  return finish(report, report_path);
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("OCTA_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end && *end == '\0' && v > 0) set_enumeration_cap(v);
  }

  CLI::App app{"Exact-arithmetic verification of triangulated-diagram axioms over Z/p^m"};
  app.require_subcommand(1);

  std::string input, check, report_path;
  auto* verify = app.add_subcommand("verify", "Run a named check on a diagram file");
  verify->add_option("--input", input, "diagram file")->required();
  verify->add_option("--check", check, "pretriangle | triangle | octahedron")->required();
  verify->add_option("--report", report_path, "write a JSON report");

  std::string left, right;
  bool all = false;
  std::uint64_t budget = 1'000'000'000;
  int jobs = 1;
  auto* iso = app.add_subcommand("iso", "Search for periodic isomorphisms between two diagrams");
  iso->add_option("--left", left, "left diagram file")->required();
  iso->add_option("--right", right, "right diagram file")->required();
  iso->add_flag("--all", all, "enumerate all witnesses instead of the first");
  iso->add_option("--budget", budget, "node budget for the search");
  iso->add_option("--jobs", jobs, "worker threads (deterministic output order)");
  iso->add_option("--report", report_path, "write a JSON report");

  std::string name, out_path;
  int n = 3;
  Int p = 2;
  auto* gallery = app.add_subcommand("gallery", "Emit a built-in diagram to a file");
  gallery->add_option("--name", name, "Y | X | Xtilde | OctX | OctXtilde")->required();
  gallery->add_option("--n", n, "strip size n >= 3")->required();
  gallery->add_option("--p", p, "prime p")->required();
  gallery->add_option("--out", out_path, "output file")->required();

  auto* reproduce = app.add_subcommand("reproduce", "Run every built-in verification for (n, p)");
  reproduce->add_option("--n", n, "strip size n >= 3")->required();
  reproduce->add_option("--p", p, "prime p")->required();
  reproduce->add_option("--budget", budget, "node budget for the searches");
  reproduce->add_option("--jobs", jobs, "worker threads for the searches");
  reproduce->add_option("--report", report_path, "write a JSON report");

  try {
    app.parse(argc, argv);
    if (*verify) return run_verify(input, check, report_path);
    if (*iso) return run_iso(left, right, all, budget, jobs, report_path);
    if (*gallery) return run_gallery(name, n, p, out_path);
    if (*reproduce) return run_reproduce(n, p, budget, jobs, report_path);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EnumTooLargeError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
