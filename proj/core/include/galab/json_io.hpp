#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "galab/algebra.hpp"
#include "galab/character.hpp"
#include "galab/invertibility.hpp"
#include "galab/operators.hpp"
#include "galab/weight.hpp"

namespace galab {

/// Insertion-ordered so that reports are byte-stable.
using Json = nlohmann::ordered_json;

// Groups accept {"kind":"Z","rank":d}, {"kind":"free","rank":k} and
// {"kind":"cayley","order":n,"table":[[...]],"identity":i}. Named finite groups
// ("cyclic" with "order", "dihedral" with "n", "symmetric" with "n",
// "quaternion", "cyclic_product" with "moduli") are expanded to Cayley tables.
GroupSpec group_from_json(const Json& j);
Json to_json(const GroupSpec& g);

Element element_from_json(const GroupSpec& g, const Json& j);
Json element_to_json(const GroupSpec& g, const Element& x);

Json complex_to_json(const Complex& z);
Json exact_to_json(const ExactComplex& z);

/// Any string amplitude ("1/4", "0.25") selects exact mode for the whole element.
using AnyElement = std::variant<AlgebraElement, ExactElement>;
AnyElement algebra_from_json(const Json& j);
/// Same as algebra_from_json but always returns the float form.
AlgebraElement float_element_from_json(const Json& j);
Json to_json(const AlgebraElement& f);
Json to_json(const ExactElement& f);

Weight weight_from_json(const GroupSpec& g, const Json& j);
Json to_json(const Weight& w);

Json to_json(const Certificate& c, const GroupSpec& g);
Json to_json(const WeightReport& r, const GroupSpec& g);
Json to_json(const DominationResult& r, const GroupSpec& g);
Json to_json(const std::vector<QuotientProbe>& probes);
Json to_json(const DirectFinitenessReport& r);
/// Dense row-major export with both windows.
Json to_json(const WindowedOperator& op);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& j);
/// Two-space indentation, shortest round-trip doubles.
std::string dump(const Json& j);

}  // namespace galab
