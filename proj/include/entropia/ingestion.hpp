#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entropia/class_model.hpp"

namespace entropia {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::string file, int line, int column, const std::string& expected,
                const std::string& got);

    const std::string& file() const { return file_; }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    std::string file_;
    int line_ = 0;
    int column_ = 0;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Parses MiniOO source files into a resolved ClassModel. Call receivers are
// resolved syntactically through declared types of parameters, locals and
// (possibly inherited) fields; anything else is treated as a class name and
// marked external when it is not declared in the model.
ClassModel parse_source(const std::vector<std::pair<std::string, std::string>>& files);

// Line-classification used for SourceStats: blank = whitespace only,
// comment = only comment content, everything else (including mixed
// code+comment lines) = code.
SourceStats classify_lines(const std::string& text);

// JSON interchange round-trip. Unknown keys are rejected.
ClassModel load_interchange(const std::string& path);
void dump_interchange(const ClassModel& model, const std::string& path);

std::string interchange_to_string(const ClassModel& model);
ClassModel interchange_from_string(const std::string& text);

}  // namespace entropia
