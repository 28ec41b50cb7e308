#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "entropia/ingestion.hpp"

namespace entropia {
namespace {

using json = nlohmann::ordered_json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& context) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw SchemaError("unknown key '" + key + "' in " + context);
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& context) {
    if (!obj.contains(key)) {
        throw SchemaError("missing key '" + key + "' in " + context);
    }
    return obj.at(key);
}

std::string require_string(const json& obj, const std::string& key,
                           const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_string()) throw SchemaError("key '" + key + "' in " + context + " must be a string");
    return v.get<std::string>();
}

long require_count(const json& obj, const std::string& key, const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_number_integer() || v.get<long>() < 0) {
        throw SchemaError("key '" + key + "' in " + context + " must be a non-negative integer");
    }
    return v.get<long>();
}

const json& require_array(const json& obj, const std::string& key,
                          const std::string& context) {
    const json& v = require(obj, key, context);
    if (!v.is_array()) throw SchemaError("key '" + key + "' in " + context + " must be an array");
    return v;
}

MethodDef read_method(const json& j, const std::string& context) {
    if (!j.is_object()) throw SchemaError("method entry in " + context + " must be an object");
    reject_unknown_keys(j, {"name", "arity", "decision_points", "calls", "field_uses"},
                        context);
    MethodDef m;
    m.name = require_string(j, "name", context);
    m.arity = static_cast<int>(require_count(j, "arity", context));
    m.decision_points = static_cast<int>(require_count(j, "decision_points", context));
    for (const auto& cj : require_array(j, "calls", context)) {
        if (!cj.is_object()) throw SchemaError("call entry in " + context + " must be an object");
        const std::string call_ctx = "call of " + context;
        reject_unknown_keys(cj, {"receiver", "method", "arity"}, call_ctx);
        CallSite cs;
        cs.receiver = require_string(cj, "receiver", call_ctx);
        cs.method = require_string(cj, "method", call_ctx);
        cs.arity = static_cast<int>(require_count(cj, "arity", call_ctx));
        m.calls.push_back(std::move(cs));
    }
    for (const auto& fu : require_array(j, "field_uses", context)) {
        if (!fu.is_string()) throw SchemaError("field_uses in " + context + " must hold strings");
        m.field_uses.insert(fu.get<std::string>());
    }
    return m;
}

SourceStats read_stats(const json& j) {
    if (!j.is_object()) throw SchemaError("'stats' must be an object");
    reject_unknown_keys(j,
                        {"files", "total_lines", "blank_lines", "comment_lines", "code_lines",
                         "executable_statements", "declarative_statements"},
                        "stats");
    SourceStats s;
    s.files = require_count(j, "files", "stats");
    s.total_lines = require_count(j, "total_lines", "stats");
    s.blank_lines = require_count(j, "blank_lines", "stats");
    s.comment_lines = require_count(j, "comment_lines", "stats");
    s.code_lines = require_count(j, "code_lines", "stats");
    s.executable_statements = require_count(j, "executable_statements", "stats");
    s.declarative_statements = require_count(j, "declarative_statements", "stats");
    return s;
}

}  // namespace

ClassModel interchange_from_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid interchange JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("interchange document must be an object");
    reject_unknown_keys(j, {"classes", "stats"}, "document");

    std::vector<ClassDef> classes;
    std::set<std::string> declared;
    for (const auto& cj : require_array(j, "classes", "document")) {
        if (!cj.is_object()) throw SchemaError("class entry must be an object");
        reject_unknown_keys(cj, {"name", "parent", "fields", "methods"}, "class");
        ClassDef c;
        c.name = require_string(cj, "name", "class");
        const std::string ctx = "class '" + c.name + "'";
        if (cj.contains("parent")) {
            if (!cj.at("parent").is_string()) {
                throw SchemaError("key 'parent' in " + ctx + " must be a string");
            }
            c.parent = cj.at("parent").get<std::string>();
        }
        for (const auto& fj : require_array(cj, "fields", ctx)) {
            if (!fj.is_object()) throw SchemaError("field entry in " + ctx + " must be an object");
            reject_unknown_keys(fj, {"name", "type"}, "field of " + ctx);
            c.fields.push_back({require_string(fj, "name", ctx), require_string(fj, "type", ctx)});
        }
        for (const auto& mj : require_array(cj, "methods", ctx)) {
            c.methods.push_back(read_method(mj, "method of " + ctx));
        }
        declared.insert(c.name);
        classes.push_back(std::move(c));
    }

    std::optional<SourceStats> stats;
    if (j.contains("stats")) stats = read_stats(j.at("stats"));

    // Parents that do not resolve inside the document are external classes.
    std::set<std::string> externals;
    for (const auto& c : classes) {
        if (c.parent && !declared.count(*c.parent)) externals.insert(*c.parent);
    }
    return ClassModel::build(std::move(classes), std::move(stats), std::move(externals));
}

ClassModel load_interchange(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open interchange file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return interchange_from_string(text);
}

std::string interchange_to_string(const ClassModel& model) {
    json doc;
    doc["classes"] = json::array();
    for (const auto& c : model.classes()) {
        json cj;
        cj["name"] = c.name;
        if (c.parent) cj["parent"] = *c.parent;
        cj["fields"] = json::array();
        for (const auto& f : c.fields) {
            cj["fields"].push_back({{"name", f.name}, {"type", f.declared_type}});
        }
        cj["methods"] = json::array();
        for (const auto& m : c.methods) {
            json mj;
            mj["name"] = m.name;
            mj["arity"] = m.arity;
            mj["decision_points"] = m.decision_points;
            mj["calls"] = json::array();
            for (const auto& call : m.calls) {
                mj["calls"].push_back({{"receiver", call.receiver},
                                       {"method", call.method},
                                       {"arity", call.arity}});
            }
            mj["field_uses"] = json::array();
            for (const auto& fu : m.field_uses) mj["field_uses"].push_back(fu);
            cj["methods"].push_back(std::move(mj));
        }
        doc["classes"].push_back(std::move(cj));
    }
    if (model.stats()) {
        const SourceStats& s = *model.stats();
        doc["stats"] = {{"files", s.files},
                        {"total_lines", s.total_lines},
                        {"blank_lines", s.blank_lines},
                        {"comment_lines", s.comment_lines},
                        {"code_lines", s.code_lines},
                        {"executable_statements", s.executable_statements},
                        {"declarative_statements", s.declarative_statements}};
    }
    return doc.dump(2) + "\n";
}

void dump_interchange(const ClassModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write interchange file '" + path + "'");
    out << interchange_to_string(model);
    if (!out) throw std::runtime_error("failed writing interchange file '" + path + "'");
}

}  // namespace entropia
