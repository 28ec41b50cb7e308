#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "entropia/class_model.hpp"
#include "entropia/ingestion.hpp"

namespace test_support {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("missing test input: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::vector<std::pair<std::string, std::string>> corpus_sources() {
    const std::string dir = std::string(FIXTURES_DIR) + "/corpus/";
    std::vector<std::pair<std::string, std::string>> out;
    for (const char* name : {"geometry.moo", "bank.moo", "parser.moo"}) {
        out.emplace_back(name, read_file(dir + name));
    }
    return out;
}

inline entropia::ClassModel corpus_model() {
    return entropia::parse_source(corpus_sources());
}

inline entropia::MethodDef make_method(std::string name, int arity, int dp,
                                       std::set<std::string> uses = {},
                                       std::vector<entropia::CallSite> calls = {}) {
    entropia::MethodDef m;
    m.name = std::move(name);
    m.arity = arity;
    m.decision_points = dp;
    m.field_uses = std::move(uses);
    m.calls = std::move(calls);
    return m;
}

}  // namespace test_support
