#include "thetacalc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "thetacalc/verify.hpp"

namespace thetacalc::cli {

namespace {

using io::Json;
using mukai::MukaiVector;

Integer parse_integer_arg(const std::string& text, const std::string& what) {
  Integer out;
  if (text.empty() || out.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0) {
    throw std::invalid_argument(what + " must be an integer, got '" + text + "'");
  }
  return out;
}

const char* theorem_name(Theorem t) {
  switch (t) {
    case Theorem::Main:
      return "main";
    case Theorem::Two:
      return "two";
    case Theorem::Three:
      return "three";
    case Theorem::All:
      return "all";
  }
  return "all";
}

using Evaluator = formulas::ChiResult (*)(const MukaiVector&, const MukaiVector&);

const std::vector<std::pair<Theorem, Evaluator>>& evaluators() {
  static const std::vector<std::pair<Theorem, Evaluator>> list = {
      {Theorem::Main, &formulas::chi_fixed_det},
      {Theorem::Two, &formulas::chi_fixed_fm_det},
      {Theorem::Three, &formulas::chi_arbitrary_det},
  };
  return list;
}

bool row_less(const PairRow& a, const PairRow& b) {
  const auto key = [](const PairRow& r) {
    return std::tie(r.v.c1.n, r.v.r, r.v.c1.k, r.v.chi, r.w.r, r.w.c1.k, r.w.chi);
  };
  return key(a) < key(b);
}

PairRow make_row(const MukaiVector& v, const MukaiVector& w) {
  PairRow row{v, w, mukai::dv(v), mukai::dv(w), {}, {}, {}, {}, false};
  if (row.dv == 0) row.flags.push_back("dv0");
  if (row.dw == 0) row.flags.push_back("dw0");
  for (const auto& [theorem, eval] : evaluators()) {
    std::optional<Rational>& slot =
        theorem == Theorem::Main ? row.chi_main : (theorem == Theorem::Two ? row.chi_two : row.chi_three);
    const std::string name = theorem_name(theorem);
    try {
      const formulas::ChiResult result = eval(v, w);
      slot = result.value;
      if (!result.integral) {
        row.flags.push_back("nonint:" + name);
        if (result.branch == "generic") row.generic_nonintegral = true;
      }
    } catch (const std::domain_error&) {
      row.flags.push_back("na:" + name);
    }
  }
  const auto report = mukai::check_assumptions(v, w);
  const int h2 = report.h2_vanishing_direction.value_or(0);
  row.flags.push_back(h2 > 0 ? "h2:+" : (h2 < 0 ? "h2:-" : "h2:0"));
  return row;
}

std::string optional_value(const std::optional<Rational>& x) { return x ? to_string(*x) : ""; }

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

Json row_to_json(const PairRow& row) {
  Json out{{"n", row.v.n().get_str()},
           {"v", Json::array({row.v.r.get_str(), row.v.k().get_str(), row.v.chi.get_str()})},
           {"w", Json::array({row.w.r.get_str(), row.w.k().get_str(), row.w.chi.get_str()})},
           {"d_v", row.dv.get_str()},
           {"d_w", row.dw.get_str()}};
  out["chi_main"] = row.chi_main ? Json(to_string(*row.chi_main)) : Json(nullptr);
  out["chi_two"] = row.chi_two ? Json(to_string(*row.chi_two)) : Json(nullptr);
  out["chi_three"] = row.chi_three ? Json(to_string(*row.chi_three)) : Json(nullptr);
  out["flags"] = row.flags;
  return out;
}

void print_banner(std::ostream& err) {
  for (const auto& note : convention_notes()) err << "# " << note << '\n';
}

int write_text(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot write " << path << '\n';
    return kUsageError;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing " << path << '\n';
    return kUsageError;
  }
  return kSuccess;
}

void print_report_line(const verify::IdentityReport& r, std::ostream& out) {
  out << (r.pass ? "PASS " : "FAIL ") << r.identity_id << ' ' << verify::to_string(r.mode);
  if (r.mode == verify::Mode::Numeric) {
    out << " #" << r.trial;
    for (const auto& [key, value] : r.instantiation) out << ' ' << key << '=' << value;
  }
  out << '\n';
  if (!r.pass) {
    for (const auto& res : r.residuals) {
      if (!res.zero) out << "    " << res.label << " = " << res.value << '\n';
    }
  }
}

}  // namespace

std::vector<std::string> convention_notes() {
  return {
      "Hilbert scheme of n points: v = (1, 0, -n), so that d_v = n and the moduli space has dimension 2n + 2.",
      "lambda-hat is the degree-2 part of the cohomological Fourier-Mukai transform, "
      "lambda-hat = -(d f3^f4 + e f1^f2) for lambda = d f1v^f2v + e f3v^f4v.",
      "Hhat = -lambda-hat(H), so fm(r, kH, chi) = (chi, -k Hhat, r); only squares of c1(vhat (x) what) enter "
      "the formulas.",
      "Fiber integration moves the fiber generators to the front; c1(P)^4/4! integrates to 1 on A x Ahat.",
  };
}

Theorem parse_theorem(const std::string& name) {
  if (name == "main") return Theorem::Main;
  if (name == "two") return Theorem::Two;
  if (name == "three") return Theorem::Three;
  if (name == "all") return Theorem::All;
  throw std::invalid_argument("theorem must be one of main, two, three, all; got '" + name + "'");
}

Json eval_document(const MukaiVector& v, const MukaiVector& w, Theorem theorem) {
  const Integer chi_tensor = mukai::euler_chi_tensor(v, w);
  if (chi_tensor != 0) {
    throw std::domain_error("v and w are not orthogonal: chi(v (x) w) = r_w chi_v + c1(v).c1(w) + r_v chi_w = " +
                            chi_tensor.get_str());
  }
  Json doc{{"n", v.n().get_str()},
           {"v", io::to_json(v)},
           {"w", io::to_json(w)},
           {"chi_tensor", chi_tensor.get_str()},
           {"d_v", mukai::dv(v).get_str()},
           {"d_w", mukai::dv(w).get_str()}};
  doc["admissibility"] = Json{{"v", io::to_json(mukai::check_assumptions(v, w))},
                              {"w", io::to_json(mukai::check_assumptions(w, v))}};
  Json values = Json::object();
  Json results = Json::object();
  for (const auto& [which, eval] : evaluators()) {
    if (theorem != Theorem::All && theorem != which) continue;
    const std::string name = theorem_name(which);
    try {
      const auto result = eval(v, w);
      values[name] = to_string(result.value);
      results[name] = io::to_json(result);
    } catch (const std::domain_error& e) {
      results[name] = Json{{"error", e.what()}};
    }
  }
  doc["values"] = values;
  doc["results"] = results;
  doc["conventions"] = convention_notes();
  return doc;
}

Json kummer_document(const formulas::KummerClass& kc) {
  const auto kummer = formulas::chi_kummer_lemma(kc);
  const auto hilbert = formulas::chi_hilbert_egl(kc);
  const Rational pull1 = hilbert.value - Rational(kc.chiD) / Rational(kc.n * kc.n) * kummer.value;
  Json doc{{"n", kc.n.get_str()},
           {"chiD", kc.chiD.get_str()},
           {"r", kc.r.get_str()},
           {"kummer", to_string(kummer.value)},
           {"hilbert", to_string(hilbert.value)},
           {"hilbert_integral", hilbert.integral},
           {"pull1_residual", to_string(pull1)}};
  if (kc.n >= 3) {
    const Integer chi_bb = formulas::chi_from_bb(kc);
    doc["bb_form"] = formulas::bb_form(kc).get_str();
    doc["bb_chi"] = chi_bb.get_str();
    doc["bb_matches_kummer"] = Rational(chi_bb) == kummer.value;
  }
  return doc;
}

std::vector<PairRow> enumerate_pairs(const EnumerateBounds& bounds, unsigned threads) {
  if (bounds.max_rank < 0 || bounds.max_k < 0 || bounds.max_chi < 0) {
    throw std::invalid_argument("enumeration bounds must be >= 0");
  }
  struct Task {
    std::size_t block;
    std::size_t index;
  };
  std::vector<std::vector<MukaiVector>> blocks;
  std::vector<Task> tasks;
  for (long n : bounds.n_values) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    std::vector<MukaiVector> vectors;
    for (long r = 0; r <= bounds.max_rank; ++r) {
      for (long k = -bounds.max_k; k <= bounds.max_k; ++k) {
        for (long chi = -bounds.max_chi; chi <= bounds.max_chi; ++chi) {
          const auto v = mukai::make_vector(r, k, chi, n);
          const auto report = mukai::check_assumptions(v);
          if (report.primitive && report.positive) vectors.push_back(v);
        }
      }
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) tasks.push_back({blocks.size(), i});
    blocks.push_back(std::move(vectors));
  }

  std::vector<std::vector<PairRow>> found(tasks.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t t = next.fetch_add(1);
      if (t >= tasks.size()) return;
      const auto& vectors = blocks[tasks[t].block];
      const MukaiVector& v = vectors[tasks[t].index];
      for (const auto& w : vectors) {
        if (mukai::euler_chi_tensor(v, w) == 0) found[t].push_back(make_row(v, w));
      }
    }
  };
  unsigned count = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
  count = static_cast<unsigned>(std::min<std::size_t>(count, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < count; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<PairRow> rows;
  for (auto& part : found) {
    for (auto& row : part) rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), row_less);
  return rows;
}

std::string rows_to_csv(const std::vector<PairRow>& rows) {
  std::ostringstream out;
  out << "n,v_r,v_k,v_chi,w_r,w_k,w_chi,d_v,d_w,chi_main,chi_two,chi_three,flags\n";
  for (const auto& r : rows) {
    out << r.v.n() << ',' << r.v.r << ',' << r.v.k() << ',' << r.v.chi << ',' << r.w.r << ',' << r.w.k() << ','
        << r.w.chi << ',' << r.dv << ',' << r.dw << ',' << optional_value(r.chi_main) << ','
        << optional_value(r.chi_two) << ',' << optional_value(r.chi_three) << ',' << join_flags(r.flags) << '\n';
  }
  return out.str();
}

Json enumerate_summary(const std::vector<PairRow>& rows) {
  std::size_t special = 0;
  std::size_t undefined = 0;
  Json nonintegral = Json::array();
  for (const auto& r : rows) {
    if (r.dv == 0 || r.dw == 0) ++special;
    if (!r.chi_main || !r.chi_two || !r.chi_three) ++undefined;
    if (r.generic_nonintegral) nonintegral.push_back(row_to_json(r));
  }
  return Json{{"rows", std::to_string(rows.size())},
              {"special_branch_rows", std::to_string(special)},
              {"rows_with_undefined_values", std::to_string(undefined)},
              {"integrality_audit", Json{{"nonintegral_count", std::to_string(nonintegral.size())},
                                         {"nonintegral", nonintegral}}}};
}

Json rows_to_json(const EnumerateBounds& bounds, const std::vector<PairRow>& rows) {
  Json n_values = Json::array();
  for (long n : bounds.n_values) n_values.push_back(std::to_string(n));
  Json doc{{"bounds", Json{{"n", n_values},
                           {"max_rank", std::to_string(bounds.max_rank)},
                           {"max_k", std::to_string(bounds.max_k)},
                           {"max_chi", std::to_string(bounds.max_chi)}}}};
  Json list = Json::array();
  for (const auto& r : rows) list.push_back(row_to_json(r));
  doc["rows"] = list;
  doc["summary"] = enumerate_summary(rows);
  return doc;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Theta Euler characteristics on moduli of sheaves over abelian surfaces"};
  app.name("thetacalc");
  app.require_subcommand(1);
  app.fallthrough();
  bool verbose = false;
  app.add_flag("--verbose", verbose, "Print the sign conventions in use to stderr");

  auto* eval = app.add_subcommand("eval", "Evaluate the Euler characteristic formulas for a pair (v, w)");
  std::string eval_n, eval_v, eval_w, eval_theorem = "all";
  eval->add_option("--n", eval_n, "H^2 = 2n")->required();
  eval->add_option("--v", eval_v, "r,k,chi")->required();
  eval->add_option("--w", eval_w, "r,k,chi")->required();
  eval->add_option("--theorem", eval_theorem, "main, two, three or all")->capture_default_str();

  auto* enumerate = app.add_subcommand("enumerate", "Tabulate all admissible orthogonal pairs within bounds");
  EnumerateBounds bounds;
  std::string out_path, format = "csv";
  unsigned enum_threads = 0;
  enumerate->add_option("--n", bounds.n_values, "One or more values of n")->capture_default_str();
  enumerate->add_option("--max-rank", bounds.max_rank)->capture_default_str();
  enumerate->add_option("--max-k", bounds.max_k)->capture_default_str();
  enumerate->add_option("--max-chi", bounds.max_chi)->capture_default_str();
  enumerate->add_option("--out", out_path, "Output file (stdout when omitted)");
  enumerate->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  enumerate->add_option("--threads", enum_threads, "0 uses every core")->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "Run the identity suite");
  bool verify_all = false, verify_json = false, verify_quiet = false, list_only = false, corrupt = false;
  std::vector<std::string> only;
  std::uint64_t seed = 42;
  int trials = 200;
  unsigned verify_threads = 0;
  auto* all_opt = verify_cmd->add_flag("--all", verify_all, "Run every identity (default)");
  verify_cmd->add_option("--only", only, "Identity ids or family prefixes")->excludes(all_opt);
  verify_cmd->add_option("--seed", seed)->capture_default_str();
  verify_cmd->add_option("--trials", trials)->check(CLI::NonNegativeNumber)->capture_default_str();
  verify_cmd->add_option("--threads", verify_threads, "0 uses every core")->capture_default_str();
  verify_cmd->add_flag("--json", verify_json, "Print the reports as a JSON array");
  verify_cmd->add_flag("--quiet", verify_quiet, "Print only failures and the summary");
  verify_cmd->add_flag("--list", list_only, "List the registered identities");
  verify_cmd->add_flag("--corrupt-sign", corrupt, "Negative control: flip the sign of Phi_Lhat")->group("");

  auto* kummer = app.add_subcommand("kummer", "Kummer and Hilbert scheme Euler characteristics");
  std::string k_n, k_chid, k_r;
  kummer->add_option("--n", k_n)->required();
  kummer->add_option("--chiD", k_chid)->required();
  kummer->add_option("--r", k_r)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  if (verbose) print_banner(err);

  try {
    if (eval->parsed()) {
      const Integer n = parse_integer_arg(eval_n, "--n");
      const Theorem theorem = parse_theorem(eval_theorem);
      const auto v = mukai::parse_vector(eval_v, n);
      const auto w = mukai::parse_vector(eval_w, n);
      Json doc;
      try {
        doc = eval_document(v, w, theorem);
      } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      out << doc.dump(2) << '\n';
      if (theorem != Theorem::All && doc["results"][theorem_name(theorem)].contains("error")) return kUsageError;
      return kSuccess;
    }

    if (enumerate->parsed()) {
      const auto rows = enumerate_pairs(bounds, enum_threads);
      const std::string table = format == "csv" ? rows_to_csv(rows) : rows_to_json(bounds, rows).dump(2) + "\n";
      Json summary = enumerate_summary(rows);
      if (out_path.empty()) {
        out << table;
        err << summary.dump(2) << '\n';
        return kSuccess;
      }
      if (const int status = write_text(out_path, table, err); status != kSuccess) return status;
      summary["out"] = out_path;
      summary["format"] = format;
      out << summary.dump(2) << '\n';
      return kSuccess;
    }

    if (verify_cmd->parsed()) {
      if (list_only) {
        for (const auto& info : verify::registry()) {
          out << info.id << (info.symbolic ? "" : " (numeric only)") << ": " << info.statement << '\n';
        }
        return kSuccess;
      }
      verify::SuiteOptions options;
      options.seed = seed;
      options.trials = trials;
      options.threads = verify_threads;
      options.verify.corrupt_sign = corrupt;
      if (!only.empty()) options.only = only;
      std::vector<verify::IdentityReport> reports;
      try {
        reports = verify::run_suite(options);
      } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
      }
      const bool pass = verify::all_pass(reports);
      if (verify_json) {
        out << io::to_json(reports).dump(2) << '\n';
      } else {
        std::size_t failed = 0;
        std::vector<std::string> ids;
        for (const auto& r : reports) {
          if (!r.pass) ++failed;
          if (ids.empty() || ids.back() != r.identity_id) ids.push_back(r.identity_id);
          if (!verify_quiet || !r.pass) print_report_line(r, out);
        }
        out << "summary: " << ids.size() << " identities, " << reports.size() << " reports, " << failed
            << " failed\n";
      }
      return pass ? kSuccess : kVerificationFailure;
    }

    if (kummer->parsed()) {
      const formulas::KummerClass kc{parse_integer_arg(k_chid, "--chiD"), parse_integer_arg(k_r, "--r"),
                                     parse_integer_arg(k_n, "--n")};
      out << kummer_document(kc).dump(2) << '\n';
      return kSuccess;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace thetacalc::cli
