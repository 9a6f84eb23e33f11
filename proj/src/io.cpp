#include "spreclone/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "spreclone/error.hpp"

namespace spreclone::io {

namespace {

[[noreturn]] void parse_error(const std::string& message) { throw Error(ErrorKind::Parse, message); }

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) parse_error(std::string("missing field '") + name + "'");
  return j.at(name);
}

int int_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) parse_error(std::string("field '") + name + "' must be an integer");
  return v.get<int>();
}

Elem element(const Json& j, const Monoid& monoid) {
  if (!j.is_string()) parse_error("monoid elements are given by name");
  const auto index = monoid.index_of(j.get<std::string>());
  if (!index) throw Error(ErrorKind::BadSignum, "unknown monoid element '" + j.get<std::string>() + "'");
  return *index;
}

std::vector<Value> tuple_from_json(const Json& j, int k, int m) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) parse_error("tuple length differs from the arity");
  std::vector<Value> t;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= k) parse_error("tuple entry outside the base set");
    t.push_back(static_cast<Value>(v.get<int>()));
  }
  return t;
}

Json tuple_to_json(TupleIndex index, int k, int m) {
  Json out = Json::array();
  for (Value v : decode(index, k, m)) out.push_back(static_cast<int>(v));
  return out;
}

void render(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  auto scalar_array = [](const Json& a) {
    return std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })); });
  };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const Json& v = it.value();
      if (v.is_primitive() || (v.is_array() && scalar_array(v))) {
        out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << pad << it.key() << ":\n";
        render(v, indent + 1, out);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive() || (v.is_array() && scalar_array(v))) {
        out << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        out << pad << "-\n";
        render(v, indent + 1, out);
      }
    }
  } else {
    out << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "': " + e.what());
  }
}

Monoid monoid_from_json(const Json& j) {
  const Json& elements = field(j, "elements");
  const Json& table = field(j, "table");
  if (!elements.is_array() || !table.is_array()) parse_error("'elements' and 'table' must be arrays");
  std::vector<std::string> names;
  for (const auto& e : elements) {
    if (!e.is_string()) parse_error("element names must be strings");
    names.push_back(e.get<std::string>());
  }
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : table) {
    if (!row.is_array()) parse_error("table rows must be arrays");
    std::vector<std::string> out;
    for (const auto& c : row) {
      if (!c.is_string()) parse_error("table entries must be element names");
      out.push_back(c.get<std::string>());
    }
    cells.push_back(std::move(out));
  }
  const Json& unit = field(j, "unit");
  if (!unit.is_string()) parse_error("'unit' must be an element name");
  return Monoid::validate(std::move(names), unit.get<std::string>(), cells);
}

Json to_json(const Monoid& monoid) {
  Json table = Json::array();
  for (std::size_t a = 0; a < monoid.size(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < monoid.size(); ++b) row.push_back(monoid.name(monoid.mul(static_cast<Elem>(a), static_cast<Elem>(b))));
    table.push_back(std::move(row));
  }
  return Json{{"elements", monoid.names()}, {"unit", monoid.name(monoid.unit())}, {"table", std::move(table)}};
}

Monoid load_monoid(const std::string& source) {
  if (auto builtin = Monoid::builtin(source)) return *builtin;
  return monoid_from_json(read_json_file(source));
}

SignedOp op_from_json(const Json& j, const Monoid& monoid) {
  const int k = int_field(j, "domain_size");
  const int n = int_field(j, "arity");
  const Json& signum_json = field(j, "signum");
  const Json& values_json = field(j, "values");
  if (!signum_json.is_array() || static_cast<int>(signum_json.size()) != n) {
    throw Error(ErrorKind::ArityMismatch, "signum length differs from arity");
  }
  Signum signum;
  for (const auto& s : signum_json) signum.push_back(element(s, monoid));
  if (!values_json.is_array()) parse_error("'values' must be an array");
  std::vector<Value> values;
  for (const auto& v : values_json) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= k) parse_error("table value outside the base set");
    values.push_back(static_cast<Value>(v.get<int>()));
  }
  if (static_cast<int>(signum.size()) != n) throw Error(ErrorKind::ArityMismatch, "signum length differs from arity");
  return SignedOp(k, std::move(signum), std::move(values));
}

Json to_json(const SignedOp& f, const Monoid& monoid) {
  Json signum = Json::array();
  for (Elem s : f.signum()) signum.push_back(monoid.name(s));
  Json values = Json::array();
  for (Value v : f.table().values()) values.push_back(static_cast<int>(v));
  return Json{{"domain_size", f.domain_size()}, {"arity", f.arity()}, {"signum", std::move(signum)}, {"values", std::move(values)}};
}

std::vector<SignedOp> ops_from_json(const Json& j, const Monoid& monoid) {
  std::vector<SignedOp> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(op_from_json(x, monoid));
  } else {
    out.push_back(op_from_json(j, monoid));
  }
  return out;
}

std::vector<Operation> operations_from_json(const Json& j) {
  auto one = [](const Json& x) {
    const int k = int_field(x, "domain_size");
    const int n = int_field(x, "arity");
    const Json& values_json = field(x, "values");
    if (!values_json.is_array()) parse_error("'values' must be an array");
    std::vector<Value> values;
    for (const auto& v : values_json) {
      if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= k) parse_error("table value outside the base set");
      values.push_back(static_cast<Value>(v.get<int>()));
    }
    return Operation(k, n, std::move(values));
  };
  std::vector<Operation> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(one(x));
  } else {
    out.push_back(one(j));
  }
  return out;
}

Json to_json(const Operation& f) {
  Json values = Json::array();
  for (Value v : f.values()) values.push_back(static_cast<int>(v));
  return Json{{"domain_size", f.domain_size()}, {"arity", f.arity()}, {"values", std::move(values)}};
}

SRelation relation_from_json(const Json& j, const Monoid& monoid) {
  const int k = int_field(j, "domain_size");
  const int m = int_field(j, "arity");
  SRelation r(k, m, monoid.size());
  if (j.contains("parts")) {
    const Json& parts = j.at("parts");
    if (!parts.is_object()) parse_error("'parts' must be an object keyed by element name");
    for (auto it = parts.begin(); it != parts.end(); ++it) {
      const Elem s = element(Json(it.key()), monoid);
      if (!it.value().is_array()) parse_error("each part is an array of tuples");
      for (const auto& t : it.value()) r.part(s).insert(tuple_from_json(t, k, m));
    }
  }
  return r;
}

Json to_json(const SRelation& r, const Monoid& monoid) {
  Json parts = Json::object();
  for (std::size_t s = 0; s < r.monoid_size(); ++s) {
    const Relation& p = r.part(static_cast<Elem>(s));
    if (p.empty()) continue;
    Json tuples = Json::array();
    p.for_each([&](TupleIndex i) { tuples.push_back(tuple_to_json(i, r.domain_size(), r.arity())); });
    parts[monoid.name(static_cast<Elem>(s))] = std::move(tuples);
  }
  return Json{{"domain_size", r.domain_size()}, {"arity", r.arity()}, {"parts", std::move(parts)}};
}

std::vector<SRelation> relations_from_json(const Json& j, const Monoid& monoid) {
  std::vector<SRelation> out;
  if (j.is_array()) {
    for (const auto& x : j) out.push_back(relation_from_json(x, monoid));
  } else {
    out.push_back(relation_from_json(j, monoid));
  }
  return out;
}

Json to_json(const PreservationWitness& w, int k, const Monoid& monoid) {
  Json columns = Json::array();
  for (TupleIndex c : w.columns) columns.push_back(tuple_to_json(c, k, w.relation_arity));
  return Json{{"violated_s", monoid.name(w.violated_s)},
              {"columns", std::move(columns)},
              {"image", tuple_to_json(w.image, k, w.relation_arity)}};
}

Json to_json(const PrecloneFragment& fragment, const Monoid& monoid) {
  Json members = Json::array();
  for (const auto& f : fragment.members) members.push_back(to_json(f, monoid));
  return Json{{"caps", Json{{"op_arity", fragment.arity_cap}, {"slack", fragment.slack}}},
              {"saturated_arities", fragment.saturated_arities()},
              {"budget_exhausted", fragment.budget_exhausted},
              {"count", fragment.members.size()},
              {"members", std::move(members)}};
}

Json to_json(const RelCloneFragment& fragment, const Monoid& monoid) {
  Json members = Json::array();
  for (const auto& r : fragment.members) members.push_back(to_json(r, monoid));
  std::vector<int> saturated;
  if (fragment.saturated)
    for (int m = 1; m <= fragment.arity_cap; ++m) saturated.push_back(m);
  return Json{{"caps", Json{{"rel_arity", fragment.arity_cap}, {"slack", fragment.slack}}},
              {"saturated_arities", saturated},
              {"count", fragment.members.size()},
              {"members", std::move(members)}};
}

std::string render_text(const Json& j) {
  std::ostringstream out;
  render(j, 0, out);
  return out.str();
}

}  // namespace spreclone::io
