#include "gammatail/cli.hpp"

#include "gammatail/acceptance.hpp"
#include "gammatail/certify.hpp"
#include "gammatail/error.hpp"
#include "gammatail/median.hpp"
#include "gammatail/oracle.hpp"
#include "gammatail/parallel.hpp"
#include "gammatail/specfun.hpp"
#include "gammatail/tailprob.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace gammatail::cli {
namespace {

using Json = nlohmann::ordered_json;

struct Common {
  Precision prec;
  int threads = 1;
  bool json = false;
  std::string out_path;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--rel-tol", c.prec.rel_tol, "Relative tolerance");
  sub->add_option("--abs-tol", c.prec.abs_tol, "Absolute tolerance");
  sub->add_option("--max-iter", c.prec.max_iter, "Iteration cap");
  sub->add_option("--strict-margin", c.prec.strict_margin,
                  "Required ratio of a difference to its error bound");
  sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 256));
  sub->add_option("--out", c.out_path, "Write output to this file");
  sub->add_flag("--json", c.json, "JSON output instead of CSV");
}

void add_scan(CLI::App* sub, certify::ScanSpec& s, std::string& scale) {
  sub->add_option("--a-min", s.a_min, "Smallest shape");
  sub->add_option("--a-max", s.a_max, "Largest shape");
  sub->add_option("--n", s.n, "Grid points");
  sub->add_option("--scale", scale, "Grid spacing")->check(CLI::IsMember({"log", "linear"}));
}

Json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string csv_line(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + '\n';
}

Json witness_json(const std::optional<certify::Witness>& w) {
  if (!w) return nullptr;
  Json j;
  j["kind"] = w->kind;
  j["a"] = {w->a1, w->a2, w->a3};
  j["p"] = {w->p1, w->p2, w->p3};
  j["err"] = {w->e1, w->e2, w->e3};
  j["margin_ratio"] = num(w->margin_ratio());
  return j;
}

struct Outcome {
  int code = kOk;
  std::string text;
};

Outcome do_eval(double a, double c, bool use_oracle, const Common& com) {
  const tail::TailEvaluation e = tail::evaluate({a, c});
  std::optional<double> o;
  if (use_oracle) o = oracle::oracle_tail_prob(a, c);
  if (com.json) {
    Json j;
    j["a"] = a;
    j["c"] = c;
    j["p"] = e.value;
    j["err_bound"] = e.error;
    j["method"] = specfun::to_string(e.method);
    if (o) j["p_oracle"] = *o;
    return {kOk, j.dump(2) + '\n'};
  }
  std::vector<std::string> head{"a", "c", "p", "err_bound", "method"};
  std::vector<std::string> row{format_double(a), format_double(c), format_double(e.value),
                               format_double(e.error), std::string(specfun::to_string(e.method))};
  if (o) {
    head.push_back("p_oracle");
    row.push_back(format_double(*o));
  }
  return {kOk, csv_line(head) + csv_line(row)};
}

Outcome do_scan(double c, const certify::ScanSpec& scan, bool use_oracle, const Common& com) {
  const std::vector<double> grid = scan.grid();
  std::vector<tail::TailEvaluation> ev = certify::evaluate_grid(grid, c, com.threads);
  if (use_oracle) {
    for (std::size_t i = 0; i < grid.size(); ++i) ev[i].value = oracle::oracle_tail_prob(grid[i], c);
  }
  Json arr = Json::array();
  std::string csv = csv_line({"a", "p", "delta", "err_bound"});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::optional<double> delta;
    if (i > 0) delta = ev[i].value - ev[i - 1].value;
    if (com.json) {
      Json j;
      j["a"] = grid[i];
      j["p"] = ev[i].value;
      j["delta"] = delta ? Json(*delta) : Json(nullptr);
      j["err_bound"] = ev[i].error;
      arr.push_back(j);
    } else {
      csv += csv_line({format_double(grid[i]), format_double(ev[i].value),
                       delta ? format_double(*delta) : "", format_double(ev[i].error)});
    }
  }
  return {kOk, com.json ? arr.dump(2) + '\n' : csv};
}

Outcome do_certify(double c, const certify::ScanSpec& scan, double a_budget, const Common& com) {
  const certify::MonotoneVerdict v = certify::certify_monotone(c, scan, com.prec, com.threads);
  std::string expected;
  std::string status;
  std::optional<certify::Witness> witness = v.witness;
  if (c >= 0.0 || c <= -1.0 / 3.0) {
    const auto want = c >= 0.0 ? certify::Direction::increasing : certify::Direction::decreasing;
    expected = std::string(certify::to_string(want));
    if (v.direction == want) {
      status = "consistent";
    } else if (v.direction == certify::Direction::inconclusive) {
      status = "inconclusive";
    } else {
      status = "contradiction";
    }
  } else {
    expected = "non_monotone";
    if (v.direction == certify::Direction::non_monotone) {
      status = "consistent";
    } else {
      try {
        witness = certify::find_witness(c, com.prec, a_budget);
        status = "consistent";
      } catch (const CertificationError&) {
        status = "inconclusive";
      }
    }
  }
  const int code = status == "consistent"      ? kOk
                   : status == "contradiction" ? kCertificationFailure
                                               : kInconclusive;
  Json j;
  j["c"] = c;
  j["direction"] = certify::to_string(v.direction);
  j["expected"] = expected;
  j["status"] = status;
  j["margin_ratio"] = num(v.margin_ratio);
  j["scan"] = {{"a_min", scan.a_min},
               {"a_max", scan.a_max},
               {"n", scan.n},
               {"scale", certify::to_string(scan.scale)}};
  j["plateau_points"] = v.plateau_points;
  j["increasing_steps"] = v.increasing_steps;
  j["decreasing_steps"] = v.decreasing_steps;
  j["uncertified_steps"] = v.uncertified_steps;
  j["witness"] = witness_json(witness);
  j["offending"] = v.offending ? Json{{"lo", v.offending->lo}, {"hi", v.offending->hi}}
                               : Json(nullptr);
  return {code, j.dump(2) + '\n'};
}

Outcome do_median(const std::vector<double>& as, const Common& com) {
  std::vector<median::MedianResult> rows(as.size());
  parallel_for(as.size(), com.threads,
               [&](std::size_t i) { rows[i] = median::gamma_median(as[i], com.prec); });
  int code = kOk;
  Json arr = Json::array();
  std::string csv = csv_line({"a", "median", "offset", "residual"});
  for (const auto& r : rows) {
    if (!(r.offset > -1.0 / 3.0 && r.offset < 0.0)) code = kCertificationFailure;
    if (com.json) {
      arr.push_back({{"a", r.a}, {"median", r.median}, {"offset", r.offset},
                     {"residual", r.residual}, {"offset_certified", r.offset_certified}});
    } else {
      csv += csv_line({format_double(r.a), format_double(r.median), format_double(r.offset),
                       format_double(r.residual)});
    }
  }
  return {code, com.json ? arr.dump(2) + '\n' : csv};
}

Outcome do_means(double x, double y, const Common& com) {
  if (!(x > 0.0 && y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("means: x and y must be positive and finite");
  }
  if (!(x < y)) throw DomainError("means: need x < y");
  const certify::MeanGaps m = certify::mean_gaps(x, y);
  const certify::MeanChainReport rep = certify::check_mean_chain({{x, y}}, com.prec);
  const bool chain_ok = rep.failures == 0;
  const int code = chain_ok ? kOk : kInconclusive;
  if (com.json) {
    Json j;
    j["x"] = x;
    j["y"] = y;
    j["geo"] = m.geo;
    j["L"] = m.log_mean;
    j["G_tilde"] = m.g_tilde;
    j["arith"] = m.arith;
    j["chain_ok"] = chain_ok;
    return {code, j.dump(2) + '\n'};
  }
  return {code, csv_line({"geo", "L", "G_tilde", "arith", "chain_ok"}) +
                    csv_line({format_double(m.geo), format_double(m.log_mean),
                              format_double(m.g_tilde), format_double(m.arith),
                              chain_ok ? "true" : "false"})};
}

Outcome do_verify_all(int fault, const Common& com) {
  acceptance::Options opts;
  opts.prec = com.prec;
  opts.threads = com.threads;
  opts.inject_fault = fault;
  const auto results = acceptance::run_all(opts);
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  const int code = all ? kOk : kCertificationFailure;
  if (com.json) return {code, acceptance::to_json(results) + '\n'};
  std::string text;
  for (const auto& r : results) {
    text += (r.pass ? "PASS " : "FAIL ") + std::to_string(r.id) + " " + r.name + ": " +
            r.detail + '\n';
  }
  text += all ? "all criteria passed\n" : "some criteria failed\n";
  return {code, text};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Centred gamma tail probabilities: evaluation and monotonicity certification",
               "gammatail"};
  app.require_subcommand(1);

  Common com;
  double a = 1.0;
  double c = 0.0;
  bool use_oracle = false;
  int fault = 0;
  double a_budget = 1e6;
  double x = 0.0;
  double y = 0.0;
  certify::ScanSpec scan;
  std::string scale = "log";
  std::optional<double> median_a;

  auto* eval = app.add_subcommand("eval", "Evaluate p_c(a) = Q(a, a + c)");
  eval->add_option("--a", a, "Shape")->required();
  eval->add_option("--c", c, "Offset")->required();
  eval->add_flag("--use-oracle", use_oracle)->group("");
  add_common(eval, com);

  auto* sc = app.add_subcommand("scan", "Tabulate p_c over a grid of shapes");
  sc->add_option("--c", c, "Offset")->required();
  add_scan(sc, scan, scale);
  sc->add_flag("--use-oracle", use_oracle)->group("");
  add_common(sc, com);

  auto* cert = app.add_subcommand("certify", "Certify the monotonicity regime for an offset");
  cert->add_option("--c", c, "Offset")->required();
  add_scan(cert, scan, scale);
  cert->add_option("--a-budget", a_budget, "Largest shape tried by the witness search");
  add_common(cert, com);

  auto* med = app.add_subcommand("median", "Median of Gamma(a, 1)");
  med->add_option("--a", median_a, "Single shape");
  add_scan(med, scan, scale);
  add_common(med, com);

  auto* means = app.add_subcommand("means", "Geometric, logarithmic, refined and arithmetic means");
  means->add_option("--x", x, "Smaller argument")->required();
  means->add_option("--y", y, "Larger argument")->required();
  add_common(means, com);

  auto* verify = app.add_subcommand("verify-all", "Run every acceptance check");
  verify->add_option("--inject-fault", fault)->group("");
  add_common(verify, com);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help(e.get_name() == "--help" ? "" : e.get_name());
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  scan.scale = scale == "log" ? certify::Scale::log : certify::Scale::linear;

  Outcome result;
  try {
    com.prec.validate();
    if (eval->parsed()) {
      tail::TailQuery{a, c}.validate();
      result = do_eval(a, c, use_oracle, com);
    } else if (sc->parsed()) {
      if (!std::isfinite(c)) throw DomainError("scan: c must be finite");
      result = do_scan(c, scan, use_oracle, com);
    } else if (cert->parsed()) {
      if (!std::isfinite(c)) throw DomainError("certify: c must be finite");
      if (c < 0.0 && cert->count("--a-min") == 0) scan.a_min = -c + 0.01;
      result = do_certify(c, scan, a_budget, com);
    } else if (med->parsed()) {
      result = do_median(median_a ? std::vector<double>{*median_a} : scan.grid(), com);
    } else if (means->parsed()) {
      result = do_means(x, y, com);
    } else {
      if (fault < 0 || fault > acceptance::kCriterionCount) {
        throw DomainError("verify-all: --inject-fault must name a criterion");
      }
      result = do_verify_all(fault, com);
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const CertificationError& e) {
    err << "certification failure: " << e.what() << '\n';
    return kCertificationFailure;
  } catch (const ConvergenceError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  } catch (const DegenerateError& e) {
    err << "inconclusive: " << e.what() << '\n';
    return kInconclusive;
  }

  if (!com.out_path.empty()) {
    std::ofstream f(com.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot open " << com.out_path << '\n';
      return kInvalidInput;
    }
    f << result.text;
  } else {
    out << result.text;
  }
  return result.code;
}

}  // namespace gammatail::cli
