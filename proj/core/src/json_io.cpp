#include "galab/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "galab/error.hpp"

namespace galab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw UsageError(std::string("missing JSON field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad JSON field \"") + key + "\": " + e.what());
  }
}

// NaN and infinities have no JSON spelling; they become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json element_list(const GroupSpec& g, const std::vector<Element>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(element_to_json(g, x));
  return out;
}

Json complex_list(const std::vector<Complex>& zs) {
  Json out = Json::array();
  for (const auto& z : zs) out.push_back(complex_to_json(z));
  return out;
}

mpq_class rational_from_json(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return mpq_class(std::to_string(v.get<std::int64_t>()));
  if (v.is_number()) return exact_from_double(v.get<double>());
  throw UsageError("amplitude must be a number or a rational string");
}

}  // namespace

// ---------------------------------------------------------------------------
// Groups and elements

GroupSpec group_from_json(const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "Z" || kind == "lattice") return GroupSpec::lattice(get<int>(j, "rank"));
  if (kind == "free") return GroupSpec::free(get<int>(j, "rank"));
  if (kind == "cayley") {
    const auto table = get<std::vector<std::vector<int>>>(j, "table");
    if (j.contains("order") && get<std::size_t>(j, "order") != table.size())
      throw UsageError("Cayley \"order\" does not match the table size");
    return GroupSpec::cayley(table, j.contains("identity") ? get<int>(j, "identity") : 0);
  }
  if (kind == "cyclic") return cyclic_group(get<int>(j, "order"));
  if (kind == "dihedral") return dihedral_group(get<int>(j, "n"));
  if (kind == "symmetric") return symmetric_group(get<int>(j, "n"));
  if (kind == "quaternion") return quaternion_group();
  if (kind == "cyclic_product") {
    const auto m = get<std::vector<std::int64_t>>(j, "moduli");
    return cyclic_product_group(m);
  }
  throw UsageError("unknown group kind \"" + kind + "\"");
}

Json to_json(const GroupSpec& g) {
  Json j;
  switch (g.kind()) {
    case GroupKind::lattice:
      j["kind"] = "Z";
      j["rank"] = g.rank();
      break;
    case GroupKind::free:
      j["kind"] = "free";
      j["rank"] = g.rank();
      break;
    case GroupKind::cayley: {
      const auto n = g.order();
      const auto t = g.table();
      j["kind"] = "cayley";
      j["order"] = n;
      Json rows = Json::array();
      for (std::size_t i = 0; i < n; ++i) rows.push_back(std::vector<int>(t.begin() + static_cast<std::ptrdiff_t>(i * n), t.begin() + static_cast<std::ptrdiff_t>((i + 1) * n)));
      j["table"] = std::move(rows);
      j["identity"] = g.identity()[0];
      break;
    }
  }
  return j;
}

Element element_from_json(const GroupSpec& g, const Json& j) {
  Element x;
  try {
    if (g.kind() == GroupKind::cayley) {
      x = j.is_array() ? Element(j.get<std::vector<std::int64_t>>()) : Element::index(j.get<std::int64_t>());
    } else {
      x = Element(j.get<std::vector<std::int64_t>>());
    }
  } catch (const nlohmann::json::exception&) {
    throw UsageError("cannot read group element from " + j.dump());
  }
  g.require(x);
  return x;
}

Json element_to_json(const GroupSpec& g, const Element& x) {
  if (g.kind() == GroupKind::cayley) return x[0];
  return x.vec();
}

Json complex_to_json(const Complex& z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json exact_to_json(const ExactComplex& z) { return Json{{"re", to_string(z.re)}, {"im", to_string(z.im)}}; }

// ---------------------------------------------------------------------------
// Algebra elements

AnyElement algebra_from_json(const Json& j) {
  const GroupSpec g = group_from_json(field(j, "group"));
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) throw UsageError("\"terms\" must be an array");
  bool exact = false;
  for (const auto& t : terms)
    if ((t.contains("re") && t["re"].is_string()) || (t.contains("im") && t["im"].is_string())) exact = true;

  if (exact) {
    ExactElement f(g);
    for (const auto& t : terms) {
      const Element x = element_from_json(g, field(t, "x"));
      f.add_term(x, ExactComplex(t.contains("re") ? rational_from_json(t["re"]) : mpq_class(0),
                                 t.contains("im") ? rational_from_json(t["im"]) : mpq_class(0)));
    }
    return f;
  }
  AlgebraElement f(g);
  for (const auto& t : terms) {
    const Element x = element_from_json(g, field(t, "x"));
    const double re = t.contains("re") ? get<double>(t, "re") : 0.0;
    const double im = t.contains("im") ? get<double>(t, "im") : 0.0;
    f.add_term(x, Complex(re, im));
  }
  return f;
}

AlgebraElement float_element_from_json(const Json& j) {
  auto any = algebra_from_json(j);
  if (auto* e = std::get_if<ExactElement>(&any)) return to_float(*e);
  return std::get<AlgebraElement>(std::move(any));
}

Json to_json(const AlgebraElement& f) {
  Json terms = Json::array();
  for (const auto& [x, c] : f.terms())
    terms.push_back(Json{{"x", element_to_json(f.group(), x)}, {"re", number(c.real())}, {"im", number(c.imag())}});
  return Json{{"group", to_json(f.group())}, {"terms", std::move(terms)}};
}

Json to_json(const ExactElement& f) {
  Json terms = Json::array();
  for (const auto& [x, c] : f.terms())
    terms.push_back(Json{{"x", element_to_json(f.group(), x)}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
  return Json{{"group", to_json(f.group())}, {"terms", std::move(terms)}};
}

// ---------------------------------------------------------------------------
// Weights

Weight weight_from_json(const GroupSpec& g, const Json& j) {
  const auto kind = get<std::string>(j, "kind");
  if (kind == "constant") return Weight::constant(g);
  if (kind == "exp_symmetric") return Weight::exp_symmetric(g, get<double>(j, "base"));
  if (kind == "polynomial") return Weight::polynomial(g, get<double>(j, "beta"));
  if (kind == "exp_directional") return Weight::exp_directional(g, get<std::vector<double>>(j, "a"));
  if (kind == "character") return Weight::character(g, Character(get<std::vector<double>>(j, "c")));
  if (kind == "table") {
    Weight::Extension ext = Weight::Extension::error;
    if (j.contains("extension")) {
      const auto e = get<std::string>(j, "extension");
      if (e == "multiplicative_envelope")
        ext = Weight::Extension::multiplicative_envelope;
      else if (e != "error")
        throw UsageError("unknown table extension \"" + e + "\"");
    }
    return Weight::table(g, get<int>(j, "ball_radius"), get<std::vector<double>>(j, "values"), ext);
  }
  if (kind == "product") {
    const Json& fs = field(j, "factors");
    if (!fs.is_array() || fs.empty()) throw UsageError("\"factors\" must be a non-empty array");
    Weight w = weight_from_json(g, fs[0]);
    for (std::size_t i = 1; i < fs.size(); ++i) w = Weight::product(w, weight_from_json(g, fs[i]));
    return w;
  }
  if (kind == "quotient")
    return Weight::quotient(weight_from_json(g, field(j, "weight")), Character(get<std::vector<double>>(j, "character")));
  throw UsageError("unknown weight kind \"" + kind + "\"");
}

Json to_json(const Weight& w) {
  switch (w.kind()) {
    case Weight::Kind::constant:
      return Json{{"kind", "constant"}};
    case Weight::Kind::exp_symmetric:
      return Json{{"kind", "exp_symmetric"}, {"base", w.base()}};
    case Weight::Kind::polynomial:
      return Json{{"kind", "polynomial"}, {"beta", w.beta()}};
    case Weight::Kind::exp_directional:
      return Json{{"kind", "exp_directional"}, {"a", w.vector()}};
    case Weight::Kind::character:
      return Json{{"kind", "character"}, {"c", w.divisor()->exponent()}};
    case Weight::Kind::table:
      return Json{{"kind", "table"},
                  {"ball_radius", w.table_radius()},
                  {"values", w.table_values()},
                  {"extension", w.extension() == Weight::Extension::error ? "error" : "multiplicative_envelope"}};
    case Weight::Kind::product: {
      auto [a, b] = w.factors();
      return Json{{"kind", "product"}, {"factors", Json::array({to_json(*a), to_json(*b)})}};
    }
    case Weight::Kind::quotient:
      return Json{{"kind", "quotient"}, {"weight", to_json(*w.numerator())}, {"character", w.divisor()->exponent()}};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Reports

Json to_json(const Certificate& c, const GroupSpec& g) {
  Json j;
  j["verdict"] = to_string(c.verdict);
  j["kind"] = to_string(c.kind());

  std::visit(
      [&](const auto& p) {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, ExactFinitePayload>) {
          j["order"] = p.order;
          j["exact_mode"] = p.exact_mode;
          if (!p.exact_kernel.empty()) {
            Json k = Json::array();
            for (const auto& v : p.exact_kernel) k.push_back(exact_to_json(v));
            j["kernel"] = std::move(k);
          } else if (!p.kernel.empty()) {
            j["kernel"] = complex_list(p.kernel);
          }
          if (p.exact_mode) j["residuals_exact_zero"] = p.residuals_exact_zero;
        } else if constexpr (std::is_same_v<P, WienerPayload>) {
          j["grid"] = p.grid;
          j["grid_min"] = number(p.grid_min);
          j["grid_argmin"] = p.grid_argmin;
          j["lipschitz"] = number(p.lipschitz);
          j["spacing"] = number(p.spacing);
          j["margin"] = number(p.margin);
          if (!p.roots.empty() || p.nearest_root_distance) {
            j["roots"] = complex_list(p.roots);
            j["root_tolerance"] = p.root_tolerance;
            if (p.nearest_root_distance) j["nearest_root_distance"] = number(*p.nearest_root_distance);
          }
          if (p.witness_root) j["witness_root"] = complex_to_json(*p.witness_root);
          if (p.witness_theta) j["witness_theta"] = number(*p.witness_theta);
          if (p.witness_modulus) j["witness_modulus"] = number(*p.witness_modulus);
          if (p.inverse_fft_size) j["inverse_fft_size"] = *p.inverse_fft_size;
        } else if constexpr (std::is_same_v<P, NeumannPayload>) {
          j["pivot"] = element_to_json(g, p.pivot);
          j["ratio"] = number(p.ratio);
          j["terms"] = p.terms;
          j["tail_bound"] = number(p.tail_bound);
        } else if constexpr (std::is_same_v<P, FftPayload>) {
          j["N"] = p.size;
          j["min_symbol_modulus"] = number(p.min_symbol_modulus);
          if (p.offending_frequency) j["offending_frequency"] = *p.offending_frequency;
        } else {
          j["moduli"] = p.moduli;
          j["frequency"] = p.frequency;
          j["modulus"] = number(p.modulus);
          j["exact"] = p.exact;
        }
      },
      c.payload);

  if (c.kind() == CertificateKind::exact_finite) {
    const auto& p = c.as<ExactFinitePayload>();
    if (p.exact_inverse) j["inverse"] = to_json(*p.exact_inverse);
    else if (c.inverse) j["inverse"] = to_json(*c.inverse);
  } else if (c.inverse) {
    j["inverse"] = to_json(*c.inverse);
  }
  if (c.residual) j["residual"] = number(*c.residual);
  if (c.right_residual) j["right_residual"] = number(*c.right_residual);
  j["tolerance"] = c.tolerance;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Json to_json(const WeightReport& r, const GroupSpec& g) {
  Json j;
  j["submultiplicative"] = r.submultiplicative;
  if (r.worst_pair)
    j["worst_pair"] = Json::array({element_to_json(g, r.worst_pair->first), element_to_json(g, r.worst_pair->second)});
  j["worst_ratio"] = number(r.worst_ratio);
  j["symmetric"] = r.symmetric;
  if (r.asymmetric_at) j["asymmetric_at"] = element_to_json(g, *r.asymmetric_at);
  j["min_value"] = number(r.min_value);
  j["argmin"] = element_to_json(g, r.argmin);
  j["pairs_checked"] = r.pairs_checked;
  j["relative_tolerance"] = r.relative_tolerance;
  return j;
}

Json to_json(const DominationResult& r, const GroupSpec& g) {
  Json j;
  j["feasible"] = r.feasible;
  j["radius"] = r.radius;
  j["method"] = r.method;
  if (r.feasible) j["c"] = r.phi.exponent();
  if (r.interval) j["interval"] = Json::array({number(r.interval->first), number(r.interval->second)});
  j["max_violation"] = number(r.max_violation);
  if (!r.certificate.empty()) j["certificate"] = element_list(g, r.certificate);
  return j;
}

Json to_json(const std::vector<QuotientProbe>& probes) {
  Json arr = Json::array();
  for (const auto& p : probes)
    arr.push_back(Json{{"moduli", p.moduli},
                       {"nonsingular", p.nonsingular},
                       {"min_modulus", number(p.min_modulus)},
                       {"frequency", p.frequency},
                       {"exact", p.exact}});
  return arr;
}

Json to_json(const DirectFinitenessReport& r) {
  return Json{{"left_residual", number(r.left_residual)},
              {"right_residual", number(r.right_residual)},
              {"tolerance", r.tolerance},
              {"slack", r.slack},
              {"exact_zero", r.exact_zero},
              {"pass", r.pass}};
}

Json to_json(const WindowedOperator& op) {
  const GroupSpec& g = op.element().group();
  const Eigen::MatrixXcd m = op.dense();
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(Json::array({number(m(i, k).real()), number(m(i, k).imag())}));
    rows.push_back(std::move(row));
  }
  Json j;
  j["element"] = to_json(op.element());
  if (op.weight()) j["weight"] = to_json(*op.weight());
  j["output_window"] = element_list(g, op.output_window().elements());
  j["input_window"] = element_list(g, op.input_window().elements());
  j["matrix"] = std::move(rows);
  return j;
}

// ---------------------------------------------------------------------------

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path.string());
  out << dump(j) << '\n';
}

std::string dump(const Json& j) { return j.dump(2); }

}  // namespace galab
