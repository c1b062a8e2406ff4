#include "dioph/certificate.hpp"

#include <stdexcept>

namespace dioph {

using nlohmann::json;

namespace {

json dec(std::uint64_t v) { return std::to_string(v); }
json dec(const Integer& v) { return v.get_str(10); }

json class_json(const ResidueClass& c) { return json{{"M", dec(c.M)}, {"r", dec(c.r)}}; }

[[noreturn]] void malformed(const std::string& field, const std::string& why) {
  throw MalformedCertificate("malformed certificate: " + field + ": " + why);
}

// Runs f, turning any other invalid_argument into a MalformedCertificate at `path`.
template <class F>
auto guarded(const std::string& path, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const MalformedCertificate&) {
    throw;
  } catch (const std::invalid_argument& e) {
    malformed(path, e.what());
  }
}

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) malformed(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path + "." + key, "missing");
  return *it;
}

std::string text(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_string()) malformed(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Integer integer(const json& obj, const char* key, const std::string& path) {
  const std::string v = text(obj, key, path);
  return guarded(path + "." + key, [&] { return parse_integer(v); });
}

std::uint64_t natural(const json& obj, const char* key, const std::string& path) {
  std::uint64_t out = 0;
  if (!fits_u64(integer(obj, key, path), out)) malformed(path + "." + key, "out of range");
  return out;
}

const json& array(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_array()) malformed(path + "." + key, "expected an array");
  return v;
}

std::uint64_t natural_item(const json& v, const std::string& path) {
  std::uint64_t out = 0;
  if (!v.is_string()) malformed(path, "expected a decimal string");
  if (!fits_u64(guarded(path, [&] { return parse_integer(v.get<std::string>()); }), out)) malformed(path, "out of range");
  return out;
}

ResidueClass class_from(const json& v, const std::string& path) {
  const auto r = natural(v, "r", path), M = natural(v, "M", path);
  if (M == 0 || r >= M) malformed(path, "residue class needs 0 <= r < M");
  return {r, M};
}

std::uint64_t config_natural(const json& v, const char* key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) return parse_u64(v.get<std::string>());
  throw std::invalid_argument(std::string("sieve config: ") + key + " must be a non-negative integer");
}

}  // namespace

json certificate_to_json(const Certificate& cert) {
  json known = json::array();
  for (const auto& k : cert.known_solutions) known.push_back({{"n", dec(k.n)}, {"x", dec(k.x)}});

  json gates = json::array();
  for (const auto& s : cert.gate_steps) {
    json classes = json::array(), residual = json::array();
    for (const auto& c : s.classes_eliminated) classes.push_back(class_json(c));
    for (auto n : s.residual_explicit_n) residual.push_back(dec(n));
    gates.push_back({{"kind", std::string(to_string(s.kind))},
                     {"classes_eliminated", classes},
                     {"residual_explicit_n", residual},
                     {"hypothesis_trace", s.hypothesis_trace}});
  }

  json witnesses = json::array();
  for (const auto& w : cert.sieve_classes) {
    json values = json::array();
    for (auto v : w.values) values.push_back(dec(v));
    witnesses.push_back({{"class", class_json(w.cls)},
                         {"modulus", dec(w.modulus)},
                         {"value_form", std::string(to_string(w.form))},
                         {"preperiod_bound", dec(w.preperiod_bound)},
                         {"values", values}});
  }

  json exceptional = json::array();
  for (const auto& e : cert.exceptional_n) {
    json item{{"n", dec(e.n)}, {"verdict", e.solution ? "solution" : "non-solution"}};
    if (e.solution) item["x"] = dec(e.x);
    exceptional.push_back(item);
  }

  json surviving = json::array();
  for (const auto& c : cert.surviving_classes) surviving.push_back(class_json(c));

  return json{{"schema_version", kSchemaVersion},
              {"pair", {{"a", dec(cert.pair.a)}, {"b", dec(cert.pair.b)}}},
              {"claim", cert.claim},
              {"known_solutions", known},
              {"gate_steps", gates},
              {"sieve_classes", witnesses},
              {"exceptional_n", exceptional},
              {"assumptions", cert.assumptions},
              {"status", std::string(to_string(cert.status))},
              {"surviving_classes", surviving}};
}

Certificate certificate_from_json(const json& j) {
  if (!j.is_object()) malformed("$", "expected an object");
  if (text(j, "schema_version", "$") != kSchemaVersion) malformed("$.schema_version", "unsupported version");

  Certificate cert;
  const json& pair = field(j, "pair", "$");
  const Integer a = integer(pair, "a", "$.pair"), b = integer(pair, "b", "$.pair");
  cert.pair = guarded("$.pair", [&] { return Pair::make(a, b); });
  cert.claim = text(j, "claim", "$");

  const json& known = array(j, "known_solutions", "$");
  for (std::size_t i = 0; i < known.size(); ++i) {
    const std::string path = "$.known_solutions[" + std::to_string(i) + "]";
    cert.known_solutions.push_back({natural(known[i], "n", path), integer(known[i], "x", path)});
  }

  const json& gates = array(j, "gate_steps", "$");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string path = "$.gate_steps[" + std::to_string(i) + "]";
    GateStep s;
    const std::string kind = text(gates[i], "kind", path);
    s.kind = guarded(path + ".kind", [&] { return parse_gate_kind(kind); });
    const json& classes = array(gates[i], "classes_eliminated", path);
    for (std::size_t k = 0; k < classes.size(); ++k)
      s.classes_eliminated.push_back(class_from(classes[k], path + ".classes_eliminated[" + std::to_string(k) + "]"));
    const json& residual = array(gates[i], "residual_explicit_n", path);
    for (std::size_t k = 0; k < residual.size(); ++k)
      s.residual_explicit_n.push_back(natural_item(residual[k], path + ".residual_explicit_n[" + std::to_string(k) + "]"));
    s.hypothesis_trace = text(gates[i], "hypothesis_trace", path);
    cert.gate_steps.push_back(std::move(s));
  }

  const json& witnesses = array(j, "sieve_classes", "$");
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const std::string path = "$.sieve_classes[" + std::to_string(i) + "]";
    Witness w;
    w.cls = class_from(field(witnesses[i], "class", path), path + ".class");
    w.modulus = natural(witnesses[i], "modulus", path);
    if (w.modulus < 3) malformed(path + ".modulus", "must be >= 3");
    const std::string form = text(witnesses[i], "value_form", path);
    w.form = guarded(path + ".value_form", [&] { return parse_target_form(form); });
    w.preperiod_bound = natural(witnesses[i], "preperiod_bound", path);
    const json& values = array(witnesses[i], "values", path);
    for (std::size_t k = 0; k < values.size(); ++k)
      w.values.push_back(natural_item(values[k], path + ".values[" + std::to_string(k) + "]"));
    cert.sieve_classes.push_back(std::move(w));
  }

  const json& exceptional = array(j, "exceptional_n", "$");
  for (std::size_t i = 0; i < exceptional.size(); ++i) {
    const std::string path = "$.exceptional_n[" + std::to_string(i) + "]";
    ExplicitCheck e;
    e.n = natural(exceptional[i], "n", path);
    const std::string verdict = text(exceptional[i], "verdict", path);
    if (verdict == "solution") {
      e.solution = true;
      e.x = integer(exceptional[i], "x", path);
    } else if (verdict != "non-solution") {
      malformed(path + ".verdict", "expected 'solution' or 'non-solution'");
    }
    cert.exceptional_n.push_back(std::move(e));
  }

  const json& assumptions = array(j, "assumptions", "$");
  for (std::size_t i = 0; i < assumptions.size(); ++i) {
    if (!assumptions[i].is_string()) malformed("$.assumptions[" + std::to_string(i) + "]", "expected a string");
    cert.assumptions.push_back(assumptions[i].get<std::string>());
  }

  const std::string status = text(j, "status", "$");
  cert.status = guarded("$.status", [&] { return parse_status(status); });

  const json& surviving = array(j, "surviving_classes", "$");
  for (std::size_t i = 0; i < surviving.size(); ++i)
    cert.surviving_classes.push_back(class_from(surviving[i], "$.surviving_classes[" + std::to_string(i) + "]"));
  return cert;
}

std::string serialize_certificate(const Certificate& cert) {
  return certificate_to_json(cert).dump(-1, ' ', true) + "\n";
}

Certificate parse_certificate(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    malformed("$", std::string("not JSON: ") + e.what());
  }
  return certificate_from_json(j);
}

SieveConfig sieve_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("sieve config must be a JSON object");
  SieveConfig c;
  for (const auto& [key, v] : j.items()) {
    if (key == "moduli_pool" || key == "splitting") {
      if (!v.is_array()) throw std::invalid_argument("sieve config: " + key + " must be an array");
      std::vector<std::uint64_t> xs;
      for (const auto& x : v) xs.push_back(config_natural(x, key.c_str()));
      (key == "moduli_pool" ? c.moduli_pool : c.splitting) = std::move(xs);
    } else if (key == "max_modulus") {
      c.max_modulus = config_natural(v, "max_modulus");
    } else if (key == "explicit_bound") {
      c.explicit_bound = config_natural(v, "explicit_bound");
    } else if (key == "max_period") {
      c.max_period = config_natural(v, "max_period");
    } else if (key == "factor_bound") {
      c.factor_bound = config_natural(v, "factor_bound");
    } else if (key == "structural_gates") {
      if (!v.is_boolean()) throw std::invalid_argument("sieve config: structural_gates must be a boolean");
      c.structural_gates = v.get<bool>();
    } else {
      throw std::invalid_argument("sieve config: unknown key '" + key + "'");
    }
  }
  for (auto m : c.moduli_pool)
    if (m < 3) throw std::invalid_argument("sieve config: moduli must be >= 3");
  return c;
}

}  // namespace dioph
