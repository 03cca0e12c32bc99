// Validates one JSON document from stdin against the schema file given as
// the sole argument.  Supports the subset of draft-07 the report schema
// uses: $ref into $defs, type, enum, const, minimum, properties, required,
// additionalProperties, items, oneOf, anyOf.  Exit 0 when valid, 1 with a
// path-annotated reason on stderr when not, 2 on usage errors.

#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

namespace {

using Json = nlohmann::json;

class Validator {
 public:
  explicit Validator(const Json& root) : root_(root) {}

  // First failure wins; error() holds it afterwards.
  bool validate(const Json& schema, const Json& value,
                const std::string& path) {
    if (auto ref = schema.find("$ref"); ref != schema.end())
      return validate(resolve(ref->get<std::string>()), value, path);

    if (auto alts = schema.find("oneOf"); alts != schema.end()) {
      int hits = 0;
      for (const auto& alt : *alts) {
        Validator probe(root_);
        if (probe.validate(alt, value, path)) ++hits;
      }
      if (hits != 1)
        return fail(path, "matches " + std::to_string(hits) +
                              " oneOf alternatives instead of exactly 1");
    }
    if (auto alts = schema.find("anyOf"); alts != schema.end()) {
      bool any = false;
      for (const auto& alt : *alts) {
        Validator probe(root_);
        if (probe.validate(alt, value, path)) any = true;
      }
      if (!any) return fail(path, "matches no anyOf alternative");
    }

    if (auto c = schema.find("const"); c != schema.end())
      if (value != *c) return fail(path, "is not the constant " + c->dump());
    if (auto e = schema.find("enum"); e != schema.end()) {
      bool found = false;
      for (const auto& option : *e) found = found || value == option;
      if (!found) return fail(path, "is outside the enum " + e->dump());
    }

    if (auto t = schema.find("type"); t != schema.end()) {
      bool ok = false;
      if (t->is_array())
        for (const auto& name : *t)
          ok = ok || hasType(value, name.get<std::string>());
      else
        ok = hasType(value, t->get<std::string>());
      if (!ok)
        return fail(path, "has type " + std::string(value.type_name()) +
                              ", wanted " + t->dump());
    }

    if (auto m = schema.find("minimum"); m != schema.end())
      if (value.is_number() &&
          value.get<double>() < m->get<double>())
        return fail(path, "is below the minimum " + m->dump());

    if (value.is_object()) {
      const Json* props = nullptr;
      if (auto p = schema.find("properties"); p != schema.end()) {
        props = &*p;
        for (auto it = p->begin(); it != p->end(); ++it)
          if (value.contains(it.key()))
            if (!validate(it.value(), value[it.key()], path + "/" + it.key()))
              return false;
      }
      if (auto req = schema.find("required"); req != schema.end())
        for (const auto& key : *req)
          if (!value.contains(key.get<std::string>()))
            return fail(path, "lacks required key " + key.dump());
      if (auto extra = schema.find("additionalProperties");
          extra != schema.end()) {
        for (auto it = value.begin(); it != value.end(); ++it) {
          if (props && props->contains(it.key())) continue;
          if (extra->is_boolean()) {
            if (!extra->get<bool>())
              return fail(path, "has undeclared key \"" + it.key() + "\"");
          } else if (!validate(*extra, it.value(), path + "/" + it.key())) {
            return false;
          }
        }
      }
    }

    if (value.is_array()) {
      if (auto items = schema.find("items"); items != schema.end()) {
        for (std::size_t i = 0; i < value.size(); ++i)
          if (!validate(*items, value[i], path + "/" + std::to_string(i)))
            return false;
      }
    }

    return error_.empty();
  }

  const std::string& error() const { return error_; }

 private:
  bool fail(const std::string& path, const std::string& what) {
    if (error_.empty())
      error_ = (path.empty() ? "document" : path) + " " + what;
    return false;
  }

  static bool hasType(const Json& v, const std::string& name) {
    if (name == "object") return v.is_object();
    if (name == "array") return v.is_array();
    if (name == "string") return v.is_string();
    if (name == "integer") return v.is_number_integer();
    if (name == "number") return v.is_number();
    if (name == "boolean") return v.is_boolean();
    if (name == "null") return v.is_null();
    return false;
  }

  const Json& resolve(const std::string& ref) {
    const std::string prefix = "#/$defs/";
    if (ref.rfind(prefix, 0) != 0 ||
        !root_.contains("$defs") ||
        !root_["$defs"].contains(ref.substr(prefix.size())))
      throw std::runtime_error("unresolvable $ref " + ref);
    return root_["$defs"][ref.substr(prefix.size())];
  }

  const Json& root_;
  std::string error_;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: schema_check SCHEMA_FILE < document.json\n";
    return 2;
  }
  Json schema, value;
  try {
    std::ifstream in(argv[1]);
    if (!in) {
      std::cerr << "schema_check: cannot open " << argv[1] << "\n";
      return 2;
    }
    schema = Json::parse(in);
    value = Json::parse(std::cin);
  } catch (const Json::parse_error& e) {
    std::cerr << "schema_check: " << e.what() << "\n";
    return 2;
  }
  try {
    Validator v(schema);
    if (v.validate(schema, value, "")) return 0;
    std::cerr << "schema_check: " << v.error() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "schema_check: " << e.what() << "\n";
    return 2;
  }
}
