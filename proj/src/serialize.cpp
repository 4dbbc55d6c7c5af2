#include "dwmod/serialize.hpp"

#include <charconv>
#include <system_error>

#include "dwmod/error.hpp"

namespace dwmod {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::Parse, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t size_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    parse_fail(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

template <typename F>
auto wrap(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    parse_fail(e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidState || e.code() == Errc::Parse) throw;
    parse_fail(e.what());
  }
}

}  // namespace

Json to_json(const ComplexMatrix& a) {
  Json entries = Json::array();
  for (const cplx& z : a.entries()) entries.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix complex_matrix_from_json(const Json& j) {
  return wrap([&] {
    const std::size_t rows = size_field(j, "rows");
    const std::size_t cols = size_field(j, "cols");
    const Json& entries = field(j, "entries");
    if (!entries.is_array()) parse_fail("'entries' must be an array");
    std::vector<cplx> values;
    values.reserve(entries.size());
    for (const Json& e : entries) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) parse_fail("entry must be [re, im]");
      values.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return ComplexMatrix(rows, cols, std::move(values));
  });
}

Json to_json(const ModuleElement& x) {
  Json j = to_json(x.mat());
  j["algebra_dim"] = x.algebra_dim();
  return j;
}

Json to_json(const AlgebraElement& a) {
  Json j = to_json(a.mat());
  j["algebra_dim"] = a.algebra_dim();
  return j;
}

ModuleElement module_element_from_json(const Json& j) {
  return wrap([&] {
    ModuleElement x(complex_matrix_from_json(j));
    if (size_field(j, "algebra_dim") != x.algebra_dim()) parse_fail("module element cols differ from algebra_dim");
    return x;
  });
}

AlgebraElement algebra_element_from_json(const Json& j) {
  return wrap([&] {
    AlgebraElement a(complex_matrix_from_json(j));
    if (size_field(j, "algebra_dim") != a.algebra_dim()) parse_fail("algebra element size differs from algebra_dim");
    return a;
  });
}

Json to_json(const CoisometryFamily& f) {
  Json elems = Json::array();
  for (const auto& a : f.elems) elems.push_back(to_json(a));
  return Json{{"construction", std::string(to_string(f.construction))}, {"elems", std::move(elems)}};
}

CoisometryFamily family_from_json(const Json& j) {
  return wrap([&] {
    CoisometryFamily f{{}, construction_from_string(field(j, "construction").get<std::string>())};
    for (const Json& e : field(j, "elems")) f.elems.push_back(algebra_element_from_json(e));
    return f;
  });
}

Json to_json(const Instance& inst) {
  Json xs = Json::array(), as = Json::array();
  for (const auto& x : inst.xs) xs.push_back(to_json(x));
  for (const auto& a : inst.as) as.push_back(to_json(a));
  return Json{{"d", inst.d},
              {"m", inst.m},
              {"n", inst.n()},
              {"xs", std::move(xs)},
              {"as", std::move(as)},
              {"family_tag", std::string(to_string(inst.family))}};
}

Instance instance_from_json(const Json& j) {
  return wrap([&] {
    Instance inst;
    inst.d = size_field(j, "d");
    inst.m = size_field(j, "m");
    const std::size_t n = size_field(j, "n");
    for (const Json& x : field(j, "xs")) inst.xs.push_back(module_element_from_json(x));
    for (const Json& a : field(j, "as")) inst.as.push_back(algebra_element_from_json(a));
    inst.family = construction_from_string(field(j, "family_tag").get<std::string>());
    if (inst.xs.size() != n || inst.as.size() != n) parse_fail("'n' does not match the element lists");
    return inst;
  });
}

Json to_json(const Certificate& cert) {
  return Json{{"case_tag", std::string(to_string(cert.case_tag))},
              {"i", cert.i},
              {"l", cert.l ? Json(*cert.l) : Json(nullptr)},
              {"rho", to_json(cert.state.rho())},
              {"residuals", cert.residuals},
              {"feasible", cert.feasible}};
}

Certificate certificate_from_json(const Json& j) {
  return wrap([&] {
    const CaseTag tag = case_tag_from_string(field(j, "case_tag").get<std::string>());
    const std::size_t i = size_field(j, "i");
    std::optional<std::size_t> l;
    if (!field(j, "l").is_null()) l = size_field(j, "l");
    State state(complex_matrix_from_json(field(j, "rho")));
    return Certificate{tag, i, l, std::move(state), field(j, "residuals").get<std::vector<double>>(),
                       field(j, "feasible").get<bool>()};
  });
}

Json to_json(const BoundReport& r) {
  return Json{{"lhs", r.lhs},
              {"upper", r.upper},
              {"upper_argmin", r.upper_argmin},
              {"lower", r.lower},
              {"lower_argmax", r.lower_argmax},
              {"slack_upper", r.slack_upper},
              {"slack_lower", r.slack_lower}};
}

Json to_json(const ConstraintSet& cs) {
  Json targets = Json::array();
  for (const auto& t : cs.targets) targets.push_back(Json{{"b", to_json(t.b)}, {"c", t.c}});
  return Json{{"d", cs.d}, {"targets", std::move(targets)}};
}

ConstraintSet constraint_set_from_json(const Json& j) {
  return wrap([&] {
    ConstraintSet cs{size_field(j, "d"), {}};
    for (const Json& t : field(j, "targets")) {
      cs.targets.push_back({complex_matrix_from_json(field(t, "b")), field(t, "c").get<double>()});
    }
    return cs;
  });
}

Json to_json(const OracleResult& r) {
  return Json{{"feasible", r.feasible},
              {"margin", r.margin},
              {"witness", Json::array({r.witness[0], r.witness[1], r.witness[2]})},
              {"lipschitz", r.lipschitz},
              {"step", r.step}};
}

Json to_json(const ShiftCheckReport& r) {
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    violations.push_back(Json{{"identity", v.identity}, {"j", v.j}, {"k", v.k}, {"basis", v.basis}});
  }
  return Json{{"n", r.n},
              {"N", r.truncation},
              {"window", r.window},
              {"checks", r.checks},
              {"violations", std::move(violations)}};
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  if (res.ec != std::errc()) throw Error(Errc::Parse, "double formatting failed");
  return std::string(buf, res.ptr);
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace dwmod
