#include "minkhelix/schema.hpp"

#include "minkhelix/error.hpp"

#include <map>

namespace minkhelix {

namespace detail {
const std::map<std::string, std::string_view, std::less<>>& embedded_schemas();
}

using nlohmann::json;

const json& schema(std::string_view name)
{
    static const auto parsed = [] {
        std::map<std::string, json, std::less<>> out;
        for (const auto& [key, text] : detail::embedded_schemas()) out.emplace(key, json::parse(text));
        return out;
    }();
    const auto it = parsed.find(name);
    if (it == parsed.end()) fail(ErrorKind::InvalidSpec, "no schema named '" + std::string(name) + "'");
    return it->second;
}

namespace {

bool has_type(const json& v, const std::string& type)
{
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "number") return v.is_number();
    if (type == "integer") {
        if (v.is_number_integer()) return true;
        return v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()));
    }
    return false;
}

void check(const json& v, const json& s, const std::string& path, std::vector<std::string>& errors)
{
    auto error = [&](const std::string& what) { errors.push_back((path.empty() ? "/" : path) + ": " + what); };

    if (const auto t = s.find("type"); t != s.end()) {
        bool ok = false;
        if (t->is_string()) {
            ok = has_type(v, t->get<std::string>());
        } else {
            for (const auto& alt : *t) ok = ok || has_type(v, alt.get<std::string>());
        }
        if (!ok) {
            error("expected type " + t->dump() + ", got " + v.type_name());
            return;
        }
    }
    if (const auto e = s.find("enum"); e != s.end()) {
        bool ok = false;
        for (const auto& option : *e) ok = ok || option == v;
        if (!ok) error("value " + v.dump() + " not in " + e->dump());
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (const auto m = s.find("minimum"); m != s.end() && x < m->get<double>()) error("below minimum " + m->dump());
        if (const auto m = s.find("maximum"); m != s.end() && x > m->get<double>()) error("above maximum " + m->dump());
        if (const auto m = s.find("exclusiveMinimum"); m != s.end() && !(x > m->get<double>()))
            error("not above " + m->dump());
    }
    if (v.is_array()) {
        if (const auto m = s.find("minItems"); m != s.end() && v.size() < m->get<std::size_t>())
            error("fewer than " + m->dump() + " items");
        if (const auto m = s.find("maxItems"); m != s.end() && v.size() > m->get<std::size_t>())
            error("more than " + m->dump() + " items");
        if (const auto items = s.find("items"); items != s.end())
            for (std::size_t i = 0; i < v.size(); ++i) check(v[i], *items, path + "/" + std::to_string(i), errors);
    }
    if (v.is_object()) {
        if (const auto req = s.find("required"); req != s.end())
            for (const auto& key : *req)
                if (!v.contains(key.get<std::string>())) error("missing required property " + key.dump());
        const auto props = s.find("properties");
        const auto extra = s.find("additionalProperties");
        for (const auto& [key, value] : v.items()) {
            const std::string child = path + "/" + key;
            if (props != s.end() && props->contains(key)) {
                check(value, (*props)[key], child, errors);
            } else if (extra != s.end()) {
                if (extra->is_boolean()) {
                    if (!extra->get<bool>()) error("unexpected property \"" + key + "\"");
                } else {
                    check(value, *extra, child, errors);
                }
            }
        }
    }
}

}  // namespace

std::vector<std::string> validate_json(const json& instance, const json& schema)
{
    std::vector<std::string> errors;
    check(instance, schema, "", errors);
    return errors;
}

void require_valid(const json& instance, std::string_view schema_name)
{
    const auto errors = validate_json(instance, schema(schema_name));
    if (errors.empty()) return;
    std::string msg = std::string(schema_name) + " validation failed";
    for (const auto& e : errors) msg += "\n  " + e;
    fail(ErrorKind::InvalidSpec, msg);
}

}  // namespace minkhelix
