#pragma once

#include "drshift/graph_model.hpp"

#include <stdexcept>
#include <string>

namespace drshift {

struct parse_error : std::runtime_error {
    int line;
    int column;
    parse_error(int line_, int column_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ", column " +
                             std::to_string(column_) + ": " + what),
          line(line_), column(column_) {}
};

// Line-oriented format:
//   # comment
//   vertex NAME
//   edge NAME SRC -> {V1,V2,...}
// A range with more than one vertex makes the file an ultragraph.
Ultragraph parse_graph_text(const std::string& text);
Ultragraph load_graph_file(const std::string& path);

} // namespace drshift
