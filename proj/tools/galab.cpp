// galab: command line front end.
//
// Exit codes: 0 success / invertible, 2 not invertible (or a failed check),
// 3 inconclusive, 1 usage or internal error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "galab/character.hpp"
#include "galab/error.hpp"
#include "galab/invertibility.hpp"
#include "galab/json_io.hpp"
#include "galab/lab.hpp"
#include "galab/operators.hpp"

namespace {

using namespace galab;

constexpr int kOk = 0;
constexpr int kNotInvertible = 2;
constexpr int kInconclusive = 3;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::invertible:
      return kOk;
    case Verdict::not_invertible:
      return kNotInvertible;
    case Verdict::inconclusive:
      return kInconclusive;
  }
  return 1;
}

struct Output {
  std::string report;
  bool json = false;

  void add(CLI::App* app) {
    app->add_option("--report", report, "Write the JSON report to this file");
    app->add_flag("--json", json, "Print the JSON report instead of text");
  }

  void emit(const std::string& text, const Json& j) const {
    if (json)
      std::cout << dump(j) << '\n';
    else
      std::cout << text;
    if (!report.empty()) write_json_file(report, j);
  }
};

// Scalars print as-is; arrays and objects are summarized.
std::string summarize(const Json& j, int indent = 0) {
  std::ostringstream os;
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    os << pad << it.key() << ": ";
    if (v.is_object() && v.contains("terms"))
      os << v["terms"].size() << " terms\n";
    else if (v.is_array() && v.size() > 8)
      os << '[' << v.size() << " entries]\n";
    else if (v.is_string())
      os << v.get<std::string>() << '\n';
    else
      os << v.dump() << '\n';
  }
  return os.str();
}

Element parse_element(const GroupSpec& g, const std::string& text) {
  try {
    return element_from_json(g, Json::parse(text));
  } catch (const nlohmann::json::parse_error&) {
    throw UsageError("cannot parse element \"" + text + "\" (use JSON, e.g. 0 or [1,-2])");
  }
}

CoefficientTable read_table(const std::string& path) {
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("coefficients")) j = j["coefficients"];
  if (!j.is_array()) throw UsageError(path + ": expected an array of {\"n\",\"re\",\"im\"}");
  CoefficientTable t;
  for (const auto& e : j)
    t[e.at("n").get<std::int64_t>()] = Complex(e.value("re", 0.0), e.value("im", 0.0));
  return t;
}

// "2..64" (diagonal range), "4x6" (one tuple), "8"; comma separated.
std::vector<std::vector<std::int64_t>> parse_moduli(const std::string& text, int rank) {
  std::vector<std::vector<std::int64_t>> out;
  std::stringstream ss(text);
  std::string item;
  const auto to_int = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<std::int64_t>(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad modulus \"" + s + "\" in \"" + text + "\"");
    }
  };
  while (std::getline(ss, item, ',')) {
    if (const auto dots = item.find(".."); dots != std::string::npos) {
      const auto more = diagonal_moduli(rank, to_int(item.substr(0, dots)), to_int(item.substr(dots + 2)));
      out.insert(out.end(), more.begin(), more.end());
    } else if (item.find('x') != std::string::npos) {
      std::vector<std::int64_t> tuple;
      std::stringstream ts(item);
      std::string part;
      while (std::getline(ts, part, 'x')) tuple.push_back(to_int(part));
      out.push_back(std::move(tuple));
    } else {
      out.emplace_back(static_cast<std::size_t>(rank), to_int(item));
    }
  }
  if (out.empty()) throw UsageError("no moduli given");
  return out;
}

Method parse_method(const std::string& m) {
  if (m == "auto") return Method::automatic;
  if (m == "finite") return Method::finite;
  if (m == "wiener") return Method::wiener;
  if (m == "fft") return Method::fft;
  if (m == "neumann") return Method::neumann;
  throw UsageError("unknown method \"" + m + "\"");
}

std::string certificate_text(const Json& j) { return summarize(j); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"galab: convolution operators and invertibility in group algebras"};
  app.require_subcommand(1);
  std::function<int()> run;

  // invert ------------------------------------------------------------------
  struct {
    std::string input, weight, method = "auto", pivot;
    int grid = 64, n = 512, k = 40;
    double tol = 1e-10;
    Output out;
  } inv;
  auto* invert_cmd = app.add_subcommand("invert", "Invert f, choosing an oracle by group kind");
  invert_cmd->add_option("--input", inv.input, "Element JSON")->required();
  invert_cmd->add_option("--weight", inv.weight, "Weight JSON");
  invert_cmd->add_option("--method", inv.method, "auto|finite|wiener|fft|neumann")->capture_default_str();
  invert_cmd->add_option("--pivot", inv.pivot, "Neumann pivot element as JSON");
  invert_cmd->add_option("--grid", inv.grid, "Wiener grid points per axis")->capture_default_str();
  invert_cmd->add_option("--N", inv.n, "FFT size per axis")->capture_default_str();
  invert_cmd->add_option("--K", inv.k, "Neumann terms")->capture_default_str();
  invert_cmd->add_option("--tol", inv.tol, "Residual tolerance")->capture_default_str();
  inv.out.add(invert_cmd);
  invert_cmd->callback([&] {
    run = [&] {
      const AnyElement any = algebra_from_json(read_json_file(inv.input));
      const GroupSpec g = std::visit([](const auto& f) { return f.group(); }, any);
      std::optional<Weight> w;
      if (!inv.weight.empty()) w = weight_from_json(g, read_json_file(inv.weight));
      const Method method = parse_method(inv.method);

      Certificate cert;
      const auto* exact = std::get_if<ExactElement>(&any);
      if (exact && g.is_finite() && (method == Method::automatic || method == Method::finite) &&
          (!w || w->is_constant())) {
        cert = invert_finite(*exact);
      } else {
        InvertOptions o;
        o.method = method;
        o.grid = inv.grid;
        o.fft_size = inv.n;
        o.terms = inv.k;
        o.tol = inv.tol;
        if (!inv.pivot.empty()) o.pivot = parse_element(g, inv.pivot);
        const AlgebraElement f = exact ? to_float(*exact) : std::get<AlgebraElement>(any);
        cert = invert(f, w ? &*w : nullptr, o);
      }
      const Json j = to_json(cert, g);
      inv.out.emit(certificate_text(j), j);
      return exit_code(cert.verdict);
    };
  });

  // certify -----------------------------------------------------------------
  struct {
    std::string input;
    int grid = 64;
    double tol = 1e-10, root_tol = 1e-9;
    Output out;
  } cer;
  auto* certify_cmd = app.add_subcommand("certify", "Wiener grid certificate on Z^d");
  certify_cmd->add_option("--input", cer.input, "Element JSON")->required();
  certify_cmd->add_option("--grid", cer.grid, "Grid points per axis")->capture_default_str();
  certify_cmd->add_option("--tol", cer.tol, "Residual tolerance")->capture_default_str();
  certify_cmd->add_option("--root-tol", cer.root_tol, "On-circle threshold for roots")->capture_default_str();
  cer.out.add(certify_cmd);
  certify_cmd->callback([&] {
    run = [&] {
      const AlgebraElement f = float_element_from_json(read_json_file(cer.input));
      WienerOptions o;
      o.grid = cer.grid;
      o.tol = cer.tol;
      o.root_tolerance = cer.root_tol;
      const Certificate cert = wiener_certify(f, o);
      const Json j = to_json(cert, f.group());
      cer.out.emit(certificate_text(j), j);
      return exit_code(cert.verdict);
    };
  });

  // check-weight ------------------------------------------------------------
  struct {
    std::string weight, group;
    int radius = 6;
    double rel_tol = 1e-12;
    Output out;
  } cw;
  auto* check_cmd = app.add_subcommand("check-weight", "Submultiplicativity, symmetry and minimum on a ball");
  check_cmd->add_option("--weight", cw.weight, "Weight JSON")->required();
  check_cmd->add_option("--group", cw.group, "Group JSON")->required();
  check_cmd->add_option("--radius", cw.radius, "Ball radius")->capture_default_str();
  check_cmd->add_option("--rel-tol", cw.rel_tol, "Relative comparison tolerance")->capture_default_str();
  cw.out.add(check_cmd);
  check_cmd->callback([&] {
    run = [&] {
      const GroupSpec g = group_from_json(read_json_file(cw.group));
      const Weight w = weight_from_json(g, read_json_file(cw.weight));
      const WeightReport r = check_weight(w, g.ball(cw.radius), cw.rel_tol);
      Json j = to_json(r, g);
      j["radius"] = cw.radius;
      cw.out.emit(summarize(j), j);
      return kOk;
    };
  });

  // dominate ----------------------------------------------------------------
  struct {
    std::string weight, group;
    int radius = 50, rank = 1;
    Output out;
  } dom;
  auto* dom_cmd = app.add_subcommand("dominate", "Character phi <= w on a ball of Z^d");
  dom_cmd->add_option("--weight", dom.weight, "Weight JSON")->required();
  dom_cmd->add_option("--radius", dom.radius, "Ball radius")->capture_default_str();
  dom_cmd->add_option("--group", dom.group, "Group JSON (default Z^rank)");
  dom_cmd->add_option("--rank", dom.rank, "Lattice rank when --group is absent")->capture_default_str();
  dom.out.add(dom_cmd);
  dom_cmd->callback([&] {
    run = [&] {
      const GroupSpec g = dom.group.empty() ? GroupSpec::lattice(dom.rank) : group_from_json(read_json_file(dom.group));
      const Weight w = weight_from_json(g, read_json_file(dom.weight));
      const DominationResult r = dominate_character(w, dom.radius);
      const Json j = to_json(r, g);
      dom.out.emit(summarize(j), j);
      return r.feasible ? kOk : kNotInvertible;
    };
  });

  // probe -------------------------------------------------------------------
  struct {
    std::string input, moduli = "2..64";
    Output out;
  } pr;
  auto* probe_cmd = app.add_subcommand("probe", "Spectra of f on finite quotients of Z^d");
  probe_cmd->add_option("--input", pr.input, "Element JSON")->required();
  probe_cmd->add_option("--moduli", pr.moduli, "e.g. 2..64, 8, 4x6 (comma separated)")->capture_default_str();
  pr.out.add(probe_cmd);
  probe_cmd->callback([&] {
    run = [&] {
      const AlgebraElement f = float_element_from_json(read_json_file(pr.input));
      if (f.group().kind() != GroupKind::lattice) throw UsageError("probe needs an element of l1(Z^d)");
      const auto probes = probe_quotients(f, parse_moduli(pr.moduli, f.group().rank()));
      std::ostringstream os;
      int code = kOk;
      for (const auto& p : probes) {
        os << "moduli " << Json(p.moduli).dump() << ": " << (p.nonsingular ? "nonsingular" : "SINGULAR")
           << "  min|lambda| = " << p.min_modulus << " at k = " << Json(p.frequency).dump()
           << (p.exact ? "  (exact rank)" : "") << '\n';
        if (!p.nonsingular) code = p.exact ? kNotInvertible : std::max(code, kInconclusive);
      }
      pr.out.emit(os.str(), Json{{"probes", to_json(probes)}});
      return code;
    };
  });

  // scenario ----------------------------------------------------------------
  auto* scen = app.add_subcommand("scenario", "Scripted counterexample reproductions");
  scen->require_subcommand(1);
  struct {
    int n = 1000;
    Output out;
  } lp;
  auto* lp_cmd = scen->add_subcommand("lp", "f = delta_0 - delta_1 on bounded sequences");
  lp_cmd->add_option("--N", lp.n, "Window radius")->capture_default_str();
  lp.out.add(lp_cmd);
  lp_cmd->callback([&] {
    run = [&] {
      const ScenarioReport r = scenario_lp(lp.n);
      lp.out.emit(r.text(), r.to_json());
      return r.payload.at("reproduced").get<bool>() ? kOk : kInconclusive;
    };
  });
  struct {
    TorusOptions opts;
    std::string coefficients, target;
    Output out;
  } tor;
  auto* torus_cmd = scen->add_subcommand("torus", "Fourier multiplier r^|n| on the circle");
  torus_cmd->add_option("--r", tor.opts.r, "Decay ratio in (0,1)")->capture_default_str();
  torus_cmd->add_option("--N", tor.opts.n, "Max frequency")->capture_default_str();
  torus_cmd->add_option("--target-degree", tor.opts.target_degree, "Square-wave target degree")->capture_default_str();
  torus_cmd->add_option("--coefficients", tor.coefficients, "JSON table of f^(n) replacing r^|n|");
  torus_cmd->add_option("--target", tor.target, "JSON table of the target p^(n)");
  tor.out.add(torus_cmd);
  torus_cmd->callback([&] {
    run = [&] {
      if (!tor.coefficients.empty()) tor.opts.coefficients = read_table(tor.coefficients);
      if (!tor.target.empty()) tor.opts.target = read_table(tor.target);
      const ScenarioReport r = scenario_torus(tor.opts);
      tor.out.emit(r.text(), r.to_json());
      return r.payload.at("non_decay").get<bool>() ? kOk : kInconclusive;
    };
  });

  // df-check ----------------------------------------------------------------
  struct {
    std::string f, g, weight;
    double tol = 1e-10, slack = 10.0;
    Output out;
  } df;
  auto* df_cmd = app.add_subcommand("df-check", "Left inverse implies right inverse, numerically or exactly");
  df_cmd->add_option("--f", df.f, "Element JSON")->required();
  df_cmd->add_option("--g", df.g, "Candidate inverse JSON")->required();
  df_cmd->add_option("--weight", df.weight, "Weight JSON");
  df_cmd->add_option("--tol", df.tol, "Left residual tolerance")->capture_default_str();
  df_cmd->add_option("--slack", df.slack, "Allowed right/left tolerance factor")->capture_default_str();
  df.out.add(df_cmd);
  df_cmd->callback([&] {
    run = [&] {
      const AnyElement f = algebra_from_json(read_json_file(df.f));
      const AnyElement g = algebra_from_json(read_json_file(df.g));
      const GroupSpec grp = std::visit([](const auto& e) { return e.group(); }, f);
      std::optional<Weight> w;
      if (!df.weight.empty()) w = weight_from_json(grp, read_json_file(df.weight));
      const Weight* wp = w ? &*w : nullptr;
      DirectFinitenessReport r;
      if (std::holds_alternative<ExactElement>(f) && std::holds_alternative<ExactElement>(g)) {
        r = verify_direct_finiteness(std::get<ExactElement>(f), std::get<ExactElement>(g), wp, df.tol, df.slack);
      } else {
        const auto as_float = [](const AnyElement& e) {
          if (const auto* x = std::get_if<ExactElement>(&e)) return to_float(*x);
          return std::get<AlgebraElement>(e);
        };
        r = verify_direct_finiteness(as_float(f), as_float(g), wp, df.tol, df.slack);
      }
      const Json j = to_json(r);
      df.out.emit(summarize(j), j);
      return r.pass ? kOk : kNotInvertible;
    };
  });

  // matrix ------------------------------------------------------------------
  struct {
    std::string input, weight;
    int radius = 2;
    Output out;
  } mx;
  auto* mx_cmd = app.add_subcommand("matrix", "Dense export of the windowed operator rho_f on ball(radius)");
  mx_cmd->add_option("--input", mx.input, "Element JSON")->required();
  mx_cmd->add_option("--weight", mx.weight, "Weight JSON");
  mx_cmd->add_option("--radius", mx.radius, "Output window radius")->capture_default_str();
  mx.out.add(mx_cmd);
  mx_cmd->callback([&] {
    run = [&] {
      const AlgebraElement f = float_element_from_json(read_json_file(mx.input));
      std::optional<Weight> w;
      if (!mx.weight.empty()) w = weight_from_json(f.group(), read_json_file(mx.weight));
      const WindowedOperator op = assemble_matrix(f, f.group().ball(mx.radius), w ? &*w : nullptr);
      const Json j = to_json(op);
      std::ostringstream os;
      os << "rows " << op.output_window().size() << ", columns " << op.input_window().size() << ", nonzeros "
         << op.matrix().nonZeros() << '\n';
      mx.out.emit(os.str(), j);
      return kOk;
    };
  });

  try {
    app.parse(argc, argv);
    return run ? run() : 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "galab: " << e.what() << '\n';
    return 1;
  }
}
