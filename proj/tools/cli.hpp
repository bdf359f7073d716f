#pragma once

// Command-line driver. Reports go to `out`, diagnostics to `err`.
// Exit codes: 0 success, 2 parse error, 3 invalid ring, 4 internal failure.

#include "fdz/fdz.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fdz::cli {

enum Exit { ok = 0, parse_error = 2, invalid_ring = 3, internal = 4 };

/// Raised for malformed command arguments that CLI11 itself accepts.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GSpec {
  Integer e;
  Vector d;
};

/// "e=E,d=VEC" where VEC is a list of integers separated by ':', ',' or
/// spaces, optionally in brackets.
inline GSpec parse_g(const std::string& s) {
  const auto dpos = s.find("d=");
  if (s.rfind("e=", 0) != 0 || dpos == std::string::npos) throw UsageError("--g expects e=E,d=VEC, got '" + s + "'");
  std::string e = s.substr(2, dpos - 2);
  while (!e.empty() && (e.back() == ',' || e.back() == ' ')) e.pop_back();
  std::string d = s.substr(dpos + 2);
  for (char& c : d)
    if (c == ':' || c == ',' || c == '[' || c == ']' || c == '(' || c == ')') c = ' ';
  GSpec g;
  try {
    g.e = detail::parse_integer(e, 0);
    for (const auto& w : detail::words(d)) g.d.push_back(detail::parse_integer(w, 0));
  } catch (const RingFileError&) {
    throw UsageError("--g expects e=E,d=VEC, got '" + s + "'");
  }
  if (g.d.empty()) throw UsageError("--g has an empty value vector");
  return g;
}

/// "name,k=N" for a builtin formula.
inline Formula parse_builtin(const std::string& s) {
  const auto comma = s.find(",k=");
  if (comma == std::string::npos) throw UsageError("--builtin expects NAME,k=N, got '" + s + "'");
  const std::string name = s.substr(0, comma);
  long k = 0;
  try {
    k = std::stol(s.substr(comma + 3));
  } catch (const std::exception&) {
    throw UsageError("--builtin expects NAME,k=N, got '" + s + "'");
  }
  if (k < 1) throw UsageError("--builtin needs k >= 1");
  try {
    return builtin_formula(name, static_cast<std::size_t>(k));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RingFileError("cannot open " + path, 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure and model theory of rings of finite rank over Z", "fdz"};
  app.require_subcommand(1);
  unsigned seed = 0;
  app.add_option("--seed", seed, "tie-breaking order for bounded searches (0 = canonical)");

  std::string file, file_b, dir, formula_file, builtin_spec;
  long bound = 5, mod = 0;
  bool use_pa = false, sixterm = false, compact = false;
  std::vector<std::string> g_specs;

  auto* analyze = app.add_subcommand("analyze", "ideal chain, predicates and verdicts");
  analyze->add_option("FILE", file)->required();
  auto* classify = app.add_subcommand("classify", "classification verdicts with citations");
  classify->add_option("FILE", file)->required();
  classify->add_flag("--pa", use_pa, "use P(A) instead of P(f) for super tameness");
  auto* pf = app.add_subcommand("pf", "the scalar rings P(f) and P(A) with their actions");
  pf->add_option("FILE", file)->required();
  auto* eq = app.add_subcommand("eqcheck", "isomorphism and elementary equivalence");
  eq->add_option("FILE_A", file)->required();
  eq->add_option("FILE_B", file_b)->required();
  eq->add_option("--bound", bound, "coefficient bound for generator images")->check(CLI::Range(0L, 1000L));
  auto* deform = app.add_subcommand("deform", "deformation by a cocycle on N");
  deform->add_option("FILE", file)->required();
  deform->add_option("--g", g_specs, "e=E,d=VEC, one per cyclic factor of N");
  deform->add_flag("--check-sixterm", sixterm, "compare the six-term sequences with the base");
  deform->add_option("--bound", bound, "coefficient bound for the searches")->check(CLI::Range(0L, 1000L));
  auto* mc = app.add_subcommand("modelcheck", "evaluate a formula on a finite quotient");
  mc->add_option("FILE", file)->required();
  mc->add_option("--mod", mod, "reduce modulo n first")->check(CLI::Range(1L, 1L << 20));
  auto* bopt = mc->add_option("--builtin", builtin_spec, "NAME,k=N with NAME in theta, phi, psi, Psi");
  auto* fopt = mc->add_option("--formula", formula_file, "file with one formula");
  bopt->excludes(fopt);
  auto* corpus = app.add_subcommand("corpus", "classification table of every .ring file in a directory");
  corpus->add_option("DIR", dir)->required();
  for (auto* s : {analyze, classify, pf, eq, deform, mc, corpus})
    s->add_flag("--compact", compact, "single-line JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return Exit::ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return Exit::parse_error;
  }

  const auto start = std::chrono::steady_clock::now();
  IsoSearchOptions search;
  search.seed = seed;
  auto emit = [&](report::Json j) {
    j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << (compact ? j.dump() : j.dump(2)) << "\n";
  };

  try {
    if (*analyze) {
      const FdzRing a = read_ring_file(file);
      report::Json j = report::analysis(a);
      j["classification"] = report::classification(classify_ring(a));
      emit(j);
    } else if (*classify) {
      const FdzRing a = read_ring_file(file);
      report::Json j;
      j["input"] = report::ring_summary(a);
      j["scalar_ring"] = use_pa ? "P(A)" : "P(f)";
      j.update(report::classification(classify_ring(a, {use_pa})));
      emit(j);
    } else if (*pf) {
      const FdzRing a = read_ring_file(file);
      const InducedMap m = induced_bilinear_map(a);
      report::Json j;
      j["input"] = report::ring_summary(a);
      auto one = [&](const char* name, auto&& build) {
        try {
          const ScalarRingAction s = build();
          report::Json r = report::scalar_ring(s);
          r["ring_file"] = serialize_ring(s.ring);
          j[name] = r;
        } catch (const PfUndefined& e) {
          j[name] = {{"error", e.what()}};
        }
      };
      one("P(f)", [&] { return pf_ring(m.f); });
      one("P(A)", [&] { return pa_ring(m); });
      emit(j);
    } else if (*eq) {
      const FdzRing a = read_ring_file(file), b = read_ring_file(file_b);
      const EquivalenceResult e = equivalence_verdict(a, b, bound, search);
      report::Json j;
      j["inputs"] = {report::ring_summary(a), report::ring_summary(b)};
      j["verdict"] = to_string(e.verdict);
      j["reason"] = e.reason;
      j["equivalence"] = report::equivalence(e);
      j["isomorphism"] = report::iso(iso_search(a, b, bound, search));
      emit(j);
    } else if (*deform) {
      const FdzRing a = read_ring_file(file);
      const DeformationData dd = deformation_data(a);
      std::vector<Vector> values;
      if (g_specs.empty()) values.assign(dd.n_orders.size(), a.zero());
      if (!g_specs.empty() && g_specs.size() != dd.n_orders.size())
        throw InvalidDeformation("N has " + std::to_string(dd.n_orders.size()) + " cyclic factor(s) but " +
                                 std::to_string(g_specs.size()) + " --g value(s) were given");
      for (std::size_t i = 0; i < g_specs.size(); ++i) {
        const GSpec g = parse_g(g_specs[i]);
        if (g.e != dd.n_orders[i])
          throw InvalidDeformation("--g number " + std::to_string(i + 1) + " has e=" + g.e.get_str() +
                                   " but the factor of N has order " + dd.n_orders[i].get_str());
        values.push_back(g.d);
      }
      DeformationSpec spec{a, n_cocycle(a, dd, values), std::nullopt, std::nullopt};
      const DeformationResult res = build_deformation(spec);
      const FdzRing& b = res.ring();
      report::Json j;
      j["input"] = report::ring_summary(a);
      j["N"] = report::vector(dd.n_orders);
      report::Json gs = report::Json::array();
      for (const auto& v : values) gs.push_back(report::vector(a.reduce(v)));
      j["g"] = gs;
      j["ring"] = report::ring_summary(b);
      j["ring_file"] = serialize_ring(b);
      j["annihilator_ok"] = res.annihilator_ok;
      j["independence_checked"] = res.independence_checked;
      const auto mm = invariant_profile(a).first_mismatch(invariant_profile(b));
      j["profile_equal"] = report::yes_no(!mm);
      if (mm) j["profile_mismatch"] = *mm;
      if (sixterm) {
        SixTermOptions so;
        so.coeff_bound = bound;
        so.search = search;
        j["sixterm"] = report::sixterm(verify_sixterm(a, b, so));
        j["equivalence"] = report::equivalence(equivalence_verdict(a, b, bound, search));
      }
      emit(j);
    } else if (*mc) {
      FdzRing a = read_ring_file(file);
      if (mod > 0) a = reduce_mod_n(a, Integer(mod)).ring;
      if (bopt->count() + fopt->count() != 1) throw UsageError("modelcheck needs --builtin or --formula");
      const Formula f = bopt->count() ? parse_builtin(builtin_spec) : parse_formula(read_text(formula_file));
      const auto fv = free_variables(f);
      if (fv.size() > 1)
        throw UsageError("formula has " + std::to_string(fv.size()) + " free variables; at most one is supported");
      ModelChecker checker(a);
      report::Json j;
      j["ring"] = report::ring_summary(a);
      if (mod > 0) j["modulus"] = mod;
      j["formula"] = to_string(f);
      j["free_variables"] = fv;
      if (fv.empty()) {
        j["truth"] = checker.evaluate(f);
      } else {
        const auto ds = checker.defined_set(f);
        report::Json el = report::Json::array();
        for (const auto& x : ds) el.push_back(report::vector(x));
        j["defined_set"] = el;
        j["size"] = ds.size();
        const IdealChain c = characteristic_ideals(a);
        std::size_t in_sq = 0;
        bool all_in = true;
        for (const auto& x : ds) all_in = all_in && c.sq.contains(x);
        for (const auto& x : a.elements()) in_sq += c.sq.contains(x);
        j["square_size"] = in_sq;
        j["equals_square"] = all_in && in_sq == ds.size();
      }
      emit(j);
    } else if (*corpus) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".ring") files.push_back(e.path());
      std::sort(files.begin(), files.end());
      report::Json rows = report::Json::array();
      int code = Exit::ok;
      for (const auto& p : files) {
        report::Json row;
        row["file"] = p.filename().string();
        try {
          const FdzRing a = read_ring_file(p.string());
          const ClassificationReport r = classify_ring(a);
          row["rank"] = a.rank();
          row["orders"] = report::vector(a.orders());
          row["tame"] = report::yes_no(r.tame);
          row["regular"] = report::yes_no(r.regular);
          row["qfa"] = to_string(r.qfa);
          row["super_tame"] = to_string(r.super_tame);
          row["bi_interpretable"] = to_string(r.bi_interpretable);
        } catch (const RingFileError& e) {
          row["error"] = e.what();
          code = std::max<int>(code, Exit::parse_error);
          err << p.string() << ": " << e.what() << "\n";
        } catch (const InvalidRing& e) {
          row["error"] = e.what();
          code = std::max<int>(code, Exit::invalid_ring);
          err << p.string() << ": " << e.what() << "\n";
        }
        rows.push_back(row);
      }
      report::Json j;
      j["directory"] = dir;
      j["rings"] = rows;
      emit(j);
      return code;
    }
  } catch (const RingFileError& e) {
    err << "fdz: parse error: " << e.what() << "\n";
    return Exit::parse_error;
  } catch (const FormulaParseError& e) {
    err << "fdz: parse error: " << e.what() << "\n";
    return Exit::parse_error;
  } catch (const UsageError& e) {
    err << "fdz: " << e.what() << "\n";
    return Exit::parse_error;
  } catch (const InvalidRing& e) {
    err << "fdz: invalid ring: " << e.what() << "\n";
    return Exit::invalid_ring;
  } catch (const InvalidDeformation& e) {
    err << "fdz: invalid deformation: " << e.what() << "\n";
    return Exit::invalid_ring;
  } catch (const ModelCheckError& e) {
    err << "fdz: " << e.what() << "\n";
    return Exit::invalid_ring;
  } catch (const std::exception& e) {
    err << "fdz: internal error: " << e.what() << "\n";
    return Exit::internal;
  }
  return Exit::ok;
}

}  // namespace fdz::cli
